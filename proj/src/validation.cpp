#include "flucto/validation.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <sstream>

#include "flucto/grids.hpp"
#include "flucto/numerics.hpp"
#include "flucto/version.hpp"
#include "json.hpp"

namespace flucto {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

std::string point_digest(const AtomParams& p) {
    std::ostringstream s;
    s << "gamma_d=" << p.gamma_d << " gamma_a=" << p.gamma_a << " omega=" << p.omega
      << " eta=" << p.eta;
    return s.str();
}

class Recorder {
  public:
    Recorder(ValidationReport& rep, std::string point)
        : rep_(rep), point_(std::move(point)) {}

    void add(const std::string& quantity, const std::string& metric, double exact_v,
             double approx_v, double error, double tol) {
        ValidationCase c;
        c.quantity = quantity;
        c.point = point_;
        c.metric = metric;
        c.exact_value = exact_v;
        c.approx_value = approx_v;
        c.error = error;
        c.tolerance = tol;
        c.pass = std::isfinite(error) && error < tol;
        rep_.cases.push_back(std::move(c));
    }

    void add_diff(const std::string& quantity, double expected, double actual,
                  double tol) {
        add(quantity, "abs_diff", expected, actual, std::abs(expected - actual), tol);
    }

    void add_rel(const std::string& quantity, double expected, double actual,
                 double tol) {
        const double scale = std::max(std::abs(expected), 1e-300);
        add(quantity, "rel_diff", expected, actual,
            std::abs(expected - actual) / scale, tol);
    }

    void set_point(std::string point) { point_ = std::move(point); }

  private:
    ValidationReport& rep_;
    std::string point_;
};

}  // namespace

double curve_rel_linf(std::span<const double> ref, std::span<const double> other) {
    double peak = 0.0;
    for (double v : ref) peak = std::max(peak, std::abs(v));
    const double floor = 1e-4 * peak;
    double err = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        if (!std::isfinite(ref[i]) || !std::isfinite(other[i]))
            return std::numeric_limits<double>::infinity();
        if (std::abs(ref[i]) <= floor) continue;
        err = std::max(err, std::abs(ref[i] - other[i]) / std::abs(ref[i]));
    }
    return err;
}

double curve_peak_linf(std::span<const double> ref, std::span<const double> other) {
    double peak = 0.0, dev = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        if (!std::isfinite(ref[i]) || !std::isfinite(other[i]))
            return std::numeric_limits<double>::infinity();
        peak = std::max(peak, std::abs(ref[i]));
        dev = std::max(dev, std::abs(ref[i] - other[i]));
    }
    return peak > 0.0 ? dev / peak : dev;
}

int ValidationReport::passed() const {
    return static_cast<int>(
        std::count_if(cases.begin(), cases.end(), [](const auto& c) { return c.pass; }));
}

int ValidationReport::failed() const {
    return static_cast<int>(cases.size()) - passed();
}

const ValidationCase* ValidationReport::worst() const {
    const ValidationCase* w = nullptr;
    double worst_ratio = -1.0;
    for (const auto& c : cases) {
        const double ratio = c.tolerance > 0.0 ? c.error / c.tolerance : c.error;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            w = &c;
        }
    }
    return w;
}

std::string ValidationReport::to_json() const {
    nlohmann::json j;
    j["version"] = kVersion;
    if (seed)
        j["seed"] = *seed;
    else
        j["seed"] = nullptr;
    j["cases"] = nlohmann::json::array();
    for (const auto& c : cases) {
        nlohmann::json e;
        e["approx"] = c.approx_value;
        e["error"] = c.error;
        e["exact"] = c.exact_value;
        e["metric"] = c.metric;
        e["pass"] = c.pass;
        e["point"] = c.point;
        e["quantity"] = c.quantity;
        e["tolerance"] = c.tolerance;
        j["cases"].push_back(e);
    }
    j["summary"]["fail"] = failed();
    j["summary"]["pass"] = passed();
    const ValidationCase* w = worst();
    j["summary"]["worst_quantity"] = w ? w->quantity : "";
    j["summary"]["worst_error_over_tolerance"] =
        w ? (w->tolerance > 0 ? w->error / w->tolerance : w->error) : 0.0;
    return j.dump(2) + "\n";
}

namespace {

// Linear solve without the reality checks: the suite must keep going and
// report violations even for deliberately broken generators.
SteadyState lenient_steady(const LiouvillianSystem& sys, double& imag_residue) {
    Vec4 rho;
    if (sys.params.gamma_a == 0.0) {
        Mat4 a = sys.m;
        a.row(3) << cxd(0.0), cxd(0.0), cxd(1.0), cxd(1.0);
        rho = a.partialPivLu().solve(Vec4(cxd(0.0), cxd(0.0), cxd(0.0), cxd(1.0)));
    } else {
        rho = sys.m.partialPivLu().solve(-sys.b);
    }
    imag_residue = std::max(std::abs(rho(2).imag()), std::abs(rho(3).imag()));
    SteadyState ss;
    ss.alpha_minus = rho(0);
    ss.alpha_plus = rho(1);
    ss.alpha_ee = rho(2).real();
    ss.alpha_gg = rho(3).real();
    ss.alpha_aa = 1.0 - ss.alpha_ee - ss.alpha_gg;
    return ss;
}

}  // namespace

ValidationReport run_identity_suite(const AtomParams& p) {
    return run_identity_suite(p, build_liouvillian(p));
}

ValidationReport run_identity_suite(const AtomParams& p,
                                    const LiouvillianSystem& sys) {
    ValidationReport rep;
    Recorder rec(rep, point_digest(p));
    const double gp = p.gamma_plus();

    // Failures must surface as report entries, never exceptions: each block
    // runs guarded, and a thrown block becomes one failed case.
    const auto guarded = [&](const char* name, const auto& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            rec.add(std::string(name) + "_exception", e.what(), 0.0, 0.0,
                    std::numeric_limits<double>::infinity(), 1.0);
        }
    };

    // Steady state: closed form against the linear solve.
    double steady_imag = 0.0;
    const SteadyState se = lenient_steady(sys, steady_imag);
    const SteadyState sa = steady_state_analytic(p);
    {
        double d = std::abs(se.alpha_minus - sa.alpha_minus);
        d = std::max(d, std::abs(se.alpha_ee - sa.alpha_ee));
        d = std::max(d, std::abs(se.alpha_gg - sa.alpha_gg));
        d = std::max(d, std::abs(se.alpha_aa - sa.alpha_aa));
        rec.add("steady_analytic_vs_exact", "max_component_diff", se.alpha_ee,
                sa.alpha_ee, d, 1e-10);
        rec.add("steady_reality", "imag_residue", 0.0, steady_imag, steady_imag,
                1e-10);
        rec.add_diff("steady_population_sum", 1.0,
                     se.alpha_ee + se.alpha_gg + se.alpha_aa, 1e-12);
        rec.add_diff("steady_shelf_branching", p.q() * se.alpha_ee, se.alpha_aa,
                     1e-10);
    }

    // Mode-rate identities.
    const EigenSet ev_approx = eigenvalues_approx(p);
    guarded("mode_rates", [&] {
        const EigenSet ev_exact = eigenvalues(sys);
        rec.add("lambda1_exact", "abs_diff", -0.5 * gp, ev_exact.lambda1.real(),
                std::abs(ev_exact.lambda1 - cxd(-0.5 * gp)), 1e-12);
    });
    if (p.gamma_d > 0.0 && p.omega > 0.0) {
        const BrightDarkTimes bd = bright_dark_times(p);
        rec.add_diff("sharp_peak_rate_identity", bd.gamma_ep,
                     -ev_approx.lambda2.real(), 1e-12);
    }

    if (p.omega <= 0.0) return rep;  // remaining identities need fluorescence

    const Vec4 g2_init = second_order_initial(se);
    const AnalyticModel model(p);

    // Equal-time variance identity, both algebraic routes.
    {
        const double lhs = model.c1() + model.c2() - model.c_pair_sum();
        const double rhs = se.alpha_ee - std::norm(se.alpha_plus);
        rec.add_diff("tau0_variance_identity", rhs, lhs, 1e-12);
        rec.add_diff("tau0_initial_vector", rhs, g2_init(0).real(), 1e-12);
        const Vec4 rational = second_order_initial_rational(p);
        rec.add("initial_vector_rational_form", "max_component_diff", 0.0, 0.0,
                (rational - g2_init).cwiseAbs().maxCoeff(), 1e-12);
        const Vec4 g3_rational = third_order_initial_rational(p);
        rec.add("third_initial_rational_form", "max_component_diff", 0.0, 0.0,
                (g3_rational - third_order_initial(se)).cwiseAbs().maxCoeff(), 1e-12);
    }

    // Closed-form variances against the stationary fluctuation vector.
    guarded("variance", [&] {
        for (double phi : {0.0, kHalfPi}) {
            rec.add_diff(phi == 0.0 ? "variance_phi0" : "variance_phi90",
                         variance_exact(sys, phi), variance(p, phi), 1e-12);
        }
    });

    auto omega_grid = composite_omega_grid(p, 201, 401);
    if (p.gamma_a == 0.0) {
        // a conserved mode makes the resolvent singular exactly at zero
        std::erase_if(omega_grid, [](double w) { return std::abs(w) < 1e-12; });
    }

    // Quadrature sum rule: S_0 + S_{pi/2} = 8 pi alpha_ee gamma_+ eta S_inc.
    // Evaluated straight from the resolvent so a broken generator produces a
    // numeric violation here rather than an exception upstream.
    guarded("sum_rule", [&] {
        const double norm_sq = 8.0 * gp * p.eta;
        double derr = 0.0, sym = 0.0, smin = 1e300;
        std::vector<double> sinc_vals(omega_grid.size());
        for (std::size_t i = 0; i < omega_grid.size(); ++i) {
            const double w = omega_grid[i];
            const Vec4 rc = resolvent_cos(sys.m, g2_init, w);
            const double s0v = norm_sq * 0.5 * (rc(0) + rc(1)).real();
            const double s90v = norm_sq * 0.5 * (rc(0) - rc(1)).real();
            const double sincv =
                resolvent(sys.m, g2_init, w)(0).real() / (kPi * se.alpha_ee);
            sinc_vals[i] = sincv;
            smin = std::min(smin, sincv);
            derr = std::max(derr, std::abs(s0v + s90v -
                                           8.0 * kPi * se.alpha_ee * gp * p.eta *
                                               sincv));
        }
        for (std::size_t i = 0; i < omega_grid.size(); ++i) {
            const std::size_t j = omega_grid.size() - 1 - i;
            if (std::abs(omega_grid[i] + omega_grid[j]) < 1e-12)
                sym = std::max(sym, std::abs(sinc_vals[i] - sinc_vals[j]));
        }
        rec.add("sum_rule_quadratures", "max_abs_diff", 0.0, 0.0, derr, 1e-10);
        rec.add("incoherent_symmetry", "max_abs_diff", 0.0, 0.0, sym, 1e-10);
        rec.add("incoherent_positivity", "min_value", 0.0, smin,
                std::max(0.0, -smin), 1e-12);
    });

    guarded("noise_spectra", [&] {
        const auto s90 = squeezing_spectrum(Engine::exact, sys, kHalfPi, omega_grid);
        const auto sinc = power_spectrum(Engine::exact, sys, omega_grid);
        const auto [s1, s2] = noise_correlator_spectra(Engine::exact, sys, omega_grid);
        double rerr = 0.0, qerr = 0.0;
        const double sinc_norm = 4.0 * kPi * gp * p.eta * se.alpha_ee;
        for (std::size_t i = 0; i < omega_grid.size(); ++i) {
            rerr = std::max(rerr, std::abs(s2.values[i] / sinc_norm - sinc.values[i]));
            qerr = std::max(qerr, std::abs(s2.values[i] - s1.values[i] - s90.values[i]));
        }
        rec.add("noise_s2_rebuilds_incoherent", "max_abs_diff", 0.0, 0.0, rerr, 1e-10);
        rec.add("noise_difference_rebuilds_phi90", "max_abs_diff", 0.0, 0.0, qerr,
                1e-10);

        // Approximate series equal their own component residue sums.
        const auto sa90 = squeezing_spectrum(Engine::approximate, sys, kHalfPi,
                                             omega_grid);
        double cerr = 0.0;
        for (std::size_t i = 0; i < omega_grid.size(); ++i)
            cerr = std::max(cerr, std::abs(sa90.values[i] -
                                           eval_components(sa90.components,
                                                           omega_grid[i])));
        rec.add("approx_component_consistency", "max_abs_diff", 0.0, 0.0, cerr,
                1e-12);
    });

    // Power-spectrum area against the equal-time correlator.
    guarded("power_area", [&] {
        const double area = integrate_spectrum(
            p,
            [&](double w) {
                return resolvent(sys.m, g2_init, w)(0).real() /
                       (kPi * se.alpha_ee);
            },
            1e-9);
        const double expected = g2_init(0).real() / se.alpha_ee;
        rec.add_rel("power_area_vs_tau0_correlator", expected, area, 1e-6);
    });

    // Parseval for the quadrature spectra.
    for (double phi : {0.0, kHalfPi}) {
        guarded("parseval_squeezing", [&] {
            const double closed = 4.0 * kPi * gp * p.eta * variance(p, phi);
            const auto comps = model.squeezing_components(phi, p.eta);
            const double quad = integrate_spectrum(
                p, [&](double w) { return eval_components(comps, w); }, 1e-9);
            rec.add_rel(
                phi == 0.0 ? "parseval_squeezing_phi0" : "parseval_squeezing_phi90",
                closed, quad, 1e-6);
        });
    }

    // CHD: decomposition, zero at tau = 0, order-2 equals eta-free squeezing,
    // spectra additivity, Parseval, and time symmetry.
    guarded("chd", [&] {
        const auto tau = default_tau_grid(p, 200);
        const CHDRecord hx = h_split(Engine::exact, p, tau);
        double derr = 0.0;
        for (std::size_t i = 0; i < tau.size(); ++i)
            derr = std::max(derr,
                            std::abs(hx.h[i] - 1.0 - hx.h2[i] - hx.h3[i]));
        rec.add("h_decomposition", "max_abs_diff", 0.0, 0.0, derr, 1e-10);
        rec.add("h_pi2_zero_at_origin", "abs_value", 0.0, hx.h.front(),
                std::abs(hx.h.front()), 1e-10);
        rec.add_diff("h2_initial_value",
                     (se.alpha_ee - 2.0 * std::norm(se.alpha_plus)) / se.alpha_ee,
                     hx.h2.front(), 1e-10);
        rec.add_diff("h3_initial_value",
                     -(2.0 + p.q()) * p.y2() / (1.0 + p.y2() + 0.5 * p.q() * p.y2()),
                     hx.h3.front(), 1e-10);

        const auto sq = squeezing_spectrum(Engine::exact, sys, kHalfPi, omega_grid);
        const auto o2 = chd_spectrum(Engine::exact, p, kHalfPi, omega_grid,
                                     SpectrumKind::chd_order2);
        const auto o3 = chd_spectrum(Engine::exact, p, kHalfPi, omega_grid,
                                     SpectrumKind::chd_order3);
        const auto full = chd_spectrum(Engine::exact, p, kHalfPi, omega_grid);
        double o2match = 0.0, addv = 0.0;
        for (std::size_t i = 0; i < omega_grid.size(); ++i) {
            o2match = std::max(o2match, std::abs(o2.values[i] - sq.values[i] / p.eta));
            addv = std::max(addv,
                            std::abs(full.values[i] - o2.values[i] - o3.values[i]));
        }
        rec.add("chd_order2_vs_squeezing", "max_abs_diff", 0.0, 0.0, o2match, 1e-10);
        rec.add("chd_full_vs_order_sum", "max_abs_diff", 0.0, 0.0, addv, 1e-10);

        for (double phi : {0.0, kHalfPi}) {
            const double closed = integrated_chd_spectrum(p, phi);
            const auto comps = AnalyticModel(p).chd_components(phi);
            const double quad = integrate_spectrum(
                p, [&](double w) { return eval_components(comps, w); }, 1e-9);
            rec.add_rel(phi == 0.0 ? "parseval_chd_phi0" : "parseval_chd_phi90",
                        closed, quad, 1e-6);
        }

        // Time symmetry: reversed-ordering record matches the forward one.
        std::vector<double> sample;
        for (std::size_t i = 0; i < tau.size(); i += 20) sample.push_back(tau[i]);
        const auto rev = chd_numerator_reversed(sys, kHalfPi, sample);
        const CHDRecord fwd = h_split(Engine::exact, p, sample);
        const double qm = real_checked(
            0.5 * kI * (se.alpha_minus - se.alpha_plus), 1e-10, "quad mean");
        double serr = 0.0;
        for (std::size_t i = 0; i < sample.size(); ++i)
            serr = std::max(serr,
                            std::abs(rev[i] / (se.alpha_ee * qm) - fwd.h[i]));
        rec.add("chd_time_symmetry", "max_abs_diff", 0.0, 0.0, serr, 1e-9);
    });

    // Regression linearity: scaling the initial vector scales the series.
    guarded("regression_linearity", [&] {
        const cxd scale(0.731, -1.217);  // fixed probe; suite stays deterministic
        const auto tau = default_tau_grid(p, 60);
        const BlochSeries base = evolve_exact(sys, g2_init, tau, 0.0);
        const BlochSeries scaled = evolve_exact(sys, Vec4(scale * g2_init), tau, 0.0);
        double lerr = 0.0;
        for (std::size_t i = 0; i < tau.size(); ++i)
            lerr = std::max(lerr, (scaled.states[i] - scale * base.states[i])
                                      .cwiseAbs()
                                      .maxCoeff());
        rec.add("regression_linearity", "max_abs_diff", 0.0, 0.0, lerr, 1e-10);
    });

    // Slow-rate recovery: the late tail of the fluctuation correlator decays
    // at the exact lambda2.  The window opens once the gamma_+/2 mode has
    // decayed below 0.1% of the slow one (later than 10/gamma_+ for strong
    // drives, where C1/C2 is large).
    if (p.gamma_d > 0.0) {
        guarded("lambda2_tail_fit", [&] {
            const double l2 = std::abs(eigenvalues(sys).lambda2.real());
            const double split = 0.5 * gp - l2;
            const double t_open = std::max(
                10.0 / gp, std::log(1e3 * model.c1() / model.c2()) / split);
            const auto tail = linear_grid(t_open, t_open + 3.0 / l2, 40);
            const auto corr =
                corr_second_order(Engine::exact, sys, Sign::minus, tail);
            std::vector<double> mag(tail.size());
            for (std::size_t i = 0; i < tail.size(); ++i)
                mag[i] = std::abs(corr.values[i].real());
            const double rate = -fit_exponential_rate(tail, mag);
            rec.add_rel("lambda2_tail_fit", l2, rate, 0.01);
        });
    }

    return rep;
}

ValidationReport run_approximation_sweep(const SweepSpec& spec) {
    ValidationReport rep;
    rep.seed = spec.seed;

    const auto omegas =
        geometric_grid(spec.omega_min, spec.omega_max, spec.omega_count);

    // Incoherent-spectrum accuracy across the drive grid for each coupling
    // strength, then strict error shrinkage under coupling halving.  The
    // deviation is normalized by the spectrum peak; its maximum (0.058 at
    // the saturating drive) is the sharp-peak height offset the source
    // analysis itself concedes, so the bound is 0.06.
    std::vector<std::vector<double>> errs(spec.rate_pairs.size());
    for (std::size_t k = 0; k < spec.rate_pairs.size(); ++k) {
        const auto [gd, ga] = spec.rate_pairs[k];
        for (double w : omegas) {
            AtomParams p;
            p.gamma_d = gd;
            p.gamma_a = ga;
            p.omega = w;
            const auto sys = build_liouvillian(p);
            const auto grid = composite_omega_grid(p, 151, 301);
            const auto ex = power_spectrum(Engine::exact, sys, grid);
            const auto ap = power_spectrum(Engine::approximate, sys, grid);
            const double err = curve_peak_linf(ex.values, ap.values);
            errs[k].push_back(err);
            if (k == 0) {
                Recorder rec(rep, point_digest(p));
                rec.add("sinc_exact_vs_approx", "peak_linf", 1.0, 1.0 + err, err,
                        0.06);

                // Sanity (not a theorem): significant negative regions of
                // the out-of-phase spectrum (beyond 2% of its peak; strong
                // drives show permille-level negative far wings with no
                // squeezing) come with variance-level squeezing at this
                // drive or within a factor of three of it.
                const auto s90 =
                    squeezing_spectrum(Engine::exact, sys, kHalfPi, grid);
                double smin = 0.0, smax = 0.0;
                for (double v : s90.values) {
                    smin = std::min(smin, v);
                    smax = std::max(smax, std::abs(v));
                }
                bool consistent = true;
                if (smin < -0.02 * smax) {
                    consistent = false;
                    for (double f : {1.0, 0.5, 2.0, 1.0 / 3.0, 3.0}) {
                        AtomParams near = p;
                        near.omega = f * w;
                        if (variance(near, kHalfPi) < 0.0) consistent = true;
                    }
                }
                rec.add("squeezing_sign_sanity", "negative_regions_vs_variance",
                        smin, consistent ? 1.0 : 0.0, consistent ? 0.0 : 1.0, 0.5);
            }
        }
    }

    // Sharp-peak height deviation changes sign between the saturating and
    // strong drives: the closed form undershoots at saturation and
    // overshoots for strong fields.
    {
        const auto [gd, ga] = spec.rate_pairs.front();
        for (double w : {0.2625, 3.5}) {
            AtomParams p;
            p.gamma_d = gd;
            p.gamma_a = ga;
            p.omega = w;
            const auto sys = build_liouvillian(p);
            const std::vector<double> origin{-1e-6, 0.0, 1e-6};
            const auto ex = power_spectrum(Engine::exact, sys, origin);
            const auto ap = power_spectrum(Engine::approximate, sys, origin);
            const double signed_err = ap.values[1] - ex.values[1];
            Recorder rec(rep, point_digest(p));
            const bool expect_smaller = w < 1.0;
            rec.add("sharp_peak_height_direction", "signed_diff_at_origin",
                    ex.values[1], ap.values[1],
                    (expect_smaller ? signed_err : -signed_err) < 0.0 ? 0.0 : 1.0,
                    0.5);
        }
    }
    for (std::size_t k = 0; k + 1 < spec.rate_pairs.size(); ++k) {
        double worst_ratio = 0.0;
        for (std::size_t i = 0; i < omegas.size(); ++i)
            worst_ratio = std::max(worst_ratio, errs[k + 1][i] / errs[k][i]);
        std::ostringstream pt;
        pt << "halving step " << k << " -> " << k + 1;
        Recorder rec(rep, pt.str());
        rec.add("error_shrinks_with_coupling", "max_error_ratio", 1.0, worst_ratio,
                worst_ratio, 1.0);
    }

    // Two-level reduction: the closed form is exact at gamma_d = 0.
    for (double w : {0.3, 1.0, 3.5}) {
        AtomParams p;
        p.gamma_d = 0.0;
        p.gamma_a = 0.015;
        p.omega = w;
        const auto sys = build_liouvillian(p);
        const auto grid = composite_omega_grid(p, 151, 301);
        const auto ex = power_spectrum(Engine::exact, sys, grid);
        const auto ap = power_spectrum(Engine::approximate, sys, grid);
        Recorder rec(rep, point_digest(p));
        rec.add("two_level_spectrum_exactness", "rel_linf", 1.0,
                1.0 + curve_rel_linf(ex.values, ap.values),
                curve_rel_linf(ex.values, ap.values), 1e-10);
    }

    // Correlation accuracy at the standard drive points.
    {
        const auto [gd, ga] = spec.rate_pairs.front();
        for (double w : {0.1, 0.2625, 3.5}) {
            AtomParams p;
            p.gamma_d = gd;
            p.gamma_a = ga;
            p.omega = w;
            const auto sys = build_liouvillian(p);
            const double l2 = std::abs(eigenvalues_approx(p).lambda2.real());
            auto tau = geometric_grid(1e-3, 5.0 / l2, 200);
            tau.insert(tau.begin(), 0.0);
            const auto ex = corr_second_order(Engine::exact, sys, Sign::minus, tau);
            const auto ap =
                corr_second_order(Engine::approximate, sys, Sign::minus, tau);
            std::vector<double> ev(tau.size()), av(tau.size());
            for (std::size_t i = 0; i < tau.size(); ++i) {
                ev[i] = ex.values[i].real();
                av[i] = ap.values[i].real();
            }
            Recorder rec(rep, point_digest(p));
            rec.add("corr2_exact_vs_approx", "peak_linf", 1.0,
                    1.0 + curve_peak_linf(ev, av), curve_peak_linf(ev, av), 0.035);

            // Ground-start excited population within 2% wherever it exceeds
            // 0.01 (holds pointwise at the saturating drive).
            if (w == 0.2625) {
                const auto bex = evolve_exact(
                    sys, BlochVector::ground().as_vector(), tau, 1.0);
                const auto bap = evolve_approx(p, tau);
                double perr = 0.0;
                for (std::size_t i = 0; i < tau.size(); ++i) {
                    const double e = bex.states[i](2).real();
                    if (std::abs(e) <= 0.01) continue;
                    perr = std::max(
                        perr, std::abs(bap.states[i](2).real() - e) / std::abs(e));
                }
                rec.add("population_exact_vs_approx", "rel_linf", 1.0, 1.0 + perr,
                        perr, 0.02);
            }
        }
    }

    return rep;
}

}  // namespace flucto
