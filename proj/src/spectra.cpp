#include "flucto/spectra.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "flucto/numerics.hpp"
#include "flucto/parallel.hpp"

namespace flucto {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

void check_omega_grid(std::span<const double> w) {
    if (w.size() < 2) throw std::invalid_argument("omega grid needs >= 2 points");
    for (std::size_t i = 1; i < w.size(); ++i)
        if (!(w[i] > w[i - 1]))
            throw std::invalid_argument("omega grid must be strictly increasing");
}

void require_driven(const LiouvillianSystem& sys) {
    if (sys.params.omega <= 0.0)
        throw std::domain_error("spectrum undefined at omega = 0 (no fluorescence)");
}

bool is_pi_half(double phi) {
    if (std::abs(phi) < 1e-12) return false;
    if (std::abs(phi - kHalfPi) < 1e-12) return true;
    throw std::invalid_argument("phi must be 0 or pi/2");
}

std::vector<double> sample_components(const std::vector<LorentzComponent>& comps,
                                      std::span<const double> omega) {
    std::vector<double> vals(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i)
        vals[i] = eval_components(comps, omega[i]);
    return vals;
}

}  // namespace

std::string spectrum_kind_name(SpectrumKind k) {
    switch (k) {
        case SpectrumKind::incoherent_power: return "incoherent_power";
        case SpectrumKind::squeezing_phi0: return "squeezing_phi0";
        case SpectrumKind::squeezing_phi90: return "squeezing_phi90";
        case SpectrumKind::chd_phi0: return "chd_phi0";
        case SpectrumKind::chd_phi90: return "chd_phi90";
        case SpectrumKind::chd_order2: return "chd_order2";
        case SpectrumKind::chd_order3: return "chd_order3";
        case SpectrumKind::noise_s1: return "noise_s1";
        case SpectrumKind::noise_s2: return "noise_s2";
    }
    return "?";
}

SpectralNorms SpectralNorms::from(const AtomParams& p,
                                  const SteadyState& exact_steady) {
    SpectralNorms n;
    n.power = 1.0 / (kPi * exact_steady.alpha_ee);
    n.squeezing = 8.0 * p.gamma_plus() * p.eta;
    n.noise_corr = 4.0 * p.gamma_plus() * p.eta;
    n.chd = 4.0 * p.gamma_plus() * exact_steady.alpha_ee;
    return n;
}

Vec4 resolvent(const Mat4& m, const Vec4& g0, double omega) {
    Mat4 a = -m;
    for (int i = 0; i < 4; ++i) a(i, i) += kI * omega;
    Vec4 x = a.partialPivLu().solve(g0);
    if (!x.allFinite()) {
        std::ostringstream msg;
        msg << "resolvent singular at omega=" << omega
            << " (a zero-rate mode, e.g. gamma_a = 0); evaluate off the "
               "singular frequency";
        throw std::runtime_error(msg.str());
    }
    return x;
}

Vec4 resolvent_cos(const Mat4& m, const Vec4& g0, double omega) {
    return 0.5 * (resolvent(m, g0, omega) + resolvent(m, g0, -omega));
}

SpectrumSeries power_spectrum(Engine engine, const LiouvillianSystem& sys,
                              std::span<const double> omega_grid) {
    require_driven(sys);
    check_omega_grid(omega_grid);

    SpectrumSeries s;
    s.kind = SpectrumKind::incoherent_power;
    s.engine = engine;
    s.omega.assign(omega_grid.begin(), omega_grid.end());

    const AnalyticModel model(sys.params);
    s.coherent_weight = model.coherent_weight();

    if (engine == Engine::approximate) {
        s.components = model.incoherent_components();
        s.values = sample_components(s.components, omega_grid);
        return s;
    }

    const SteadyState ss = steady_state_exact(sys);
    const Vec4 g0 = second_order_initial(ss);
    const double norm = SpectralNorms::from(sys.params, ss).power;
    s.values.resize(omega_grid.size());
    parallel_for(omega_grid.size(), [&](std::size_t i) {
        s.values[i] = norm * resolvent(sys.m, g0, omega_grid[i])(0).real();
    });
    return s;
}

SpectrumSeries squeezing_spectrum(Engine engine, const LiouvillianSystem& sys,
                                  double phi, std::span<const double> omega_grid) {
    require_driven(sys);
    check_omega_grid(omega_grid);
    const bool out_of_phase = is_pi_half(phi);

    SpectrumSeries s;
    s.kind = out_of_phase ? SpectrumKind::squeezing_phi90 : SpectrumKind::squeezing_phi0;
    s.engine = engine;
    s.omega.assign(omega_grid.begin(), omega_grid.end());

    if (engine == Engine::approximate) {
        const AnalyticModel model(sys.params);
        s.components = model.squeezing_components(phi, sys.params.eta);
        s.values = sample_components(s.components, omega_grid);
        return s;
    }

    const SteadyState ss = steady_state_exact(sys);
    const Vec4 g0 = second_order_initial(ss);
    const double norm = SpectralNorms::from(sys.params, ss).squeezing;
    const cxd rot = std::exp(-2.0 * kI * phi);
    s.values.resize(omega_grid.size());
    parallel_for(omega_grid.size(), [&](std::size_t i) {
        const Vec4 rc = resolvent_cos(sys.m, g0, omega_grid[i]);
        s.values[i] = norm * (0.5 * (rc(0) + rot * rc(1))).real();
    });
    return s;
}

std::pair<SpectrumSeries, SpectrumSeries> noise_correlator_spectra(
    Engine engine, const LiouvillianSystem& sys, std::span<const double> omega_grid) {
    require_driven(sys);
    check_omega_grid(omega_grid);

    SpectrumSeries s1, s2;
    s1.kind = SpectrumKind::noise_s1;
    s2.kind = SpectrumKind::noise_s2;
    s1.engine = s2.engine = engine;
    s1.omega.assign(omega_grid.begin(), omega_grid.end());
    s2.omega = s1.omega;

    if (engine == Engine::approximate) {
        const AnalyticModel model(sys.params);
        s1.components = model.noise_s1_components(sys.params.eta);
        s2.components = model.noise_s2_components(sys.params.eta);
        s1.values = sample_components(s1.components, omega_grid);
        s2.values = sample_components(s2.components, omega_grid);
        return {s1, s2};
    }

    const SteadyState ss = steady_state_exact(sys);
    const Vec4 g0 = second_order_initial(ss);
    const double norm = SpectralNorms::from(sys.params, ss).noise_corr;
    s1.values.resize(omega_grid.size());
    s2.values.resize(omega_grid.size());
    parallel_for(omega_grid.size(), [&](std::size_t i) {
        const Vec4 rc = resolvent_cos(sys.m, g0, omega_grid[i]);
        s1.values[i] = norm * rc(1).real();
        s2.values[i] = norm * rc(0).real();
    });
    return {s1, s2};
}

double variance(const AtomParams& p, double phi) {
    return AnalyticModel(p).variance(phi);
}

double variance_exact(const LiouvillianSystem& sys, double phi) {
    is_pi_half(phi);
    const Vec4 g0 = second_order_initial(steady_state_exact(sys));
    const cxd rot = std::exp(-2.0 * kI * phi);
    return (g0(0) + rot * g0(1)).real();
}

double integrated_squeezing_spectrum(const AtomParams& p, double phi) {
    const AnalyticModel model(p);
    return components_area(model.squeezing_components(phi, p.eta));
}

double sharp_peak_halfwidth_exact(const LiouvillianSystem& sys) {
    require_driven(sys);
    const SteadyState ss = steady_state_exact(sys);
    const Vec4 g0 = second_order_initial(ss);
    const ModeDecomposition dec = decompose(sys.m);
    if (!dec.usable)
        throw std::runtime_error(
            "sharp_peak_halfwidth_exact: defective generator, no mode split");

    // locate the slow mode
    const cxd l2_ref = eigenvalues_approx(sys.params).lambda2;
    int slow = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(dec.evals(i) - l2_ref) < std::abs(dec.evals(slow) - l2_ref))
            slow = i;

    // a conserved (zero-rate) mode has no finite-width feature to fit, and
    // its residue is pure roundoff
    if (std::abs(dec.evals(slow).real()) < 1e-10 * sys.params.gamma_plus())
        throw std::runtime_error(
            "sharp_peak_halfwidth_exact: no narrow central feature (slow mode "
            "carries no weight)");

    const Vec4 w = dec.vectors_inv * g0;
    const double norm = SpectralNorms::from(sys.params, ss).power;
    const auto sharp_only = [&](double omega) {
        const cxd r = dec.vectors(0, slow) * w(slow) / (kI * omega - dec.evals(slow));
        return norm * r.real();
    };

    const double peak = sharp_only(0.0);
    const double span = 100.0 * std::abs(dec.evals(slow).real());
    const double broad_scale = norm * g0.cwiseAbs().maxCoeff() / sys.params.gamma_plus();
    if (!(peak > 1e-8 * broad_scale))
        throw std::runtime_error(
            "sharp_peak_halfwidth_exact: no narrow central feature (slow mode "
            "carries no weight)");
    return bisect_root([&](double x) { return sharp_only(x) - 0.5 * peak; }, 0.0,
                       span, 1e-12);
}

double integrate_spectrum(const AtomParams& p,
                          const std::function<double(double)>& s, double abs_tol) {
    const double sharp = std::abs(eigenvalues_approx(p).lambda2);
    const double side = std::abs(p.delta().imag());
    std::vector<double> breaks{0.0};
    if (sharp > 0.0) {
        breaks.push_back(-10.0 * sharp);
        breaks.push_back(10.0 * sharp);
    }
    if (side > 0.0) {
        breaks.push_back(-side);
        breaks.push_back(side);
    }
    const double scale = std::max(p.gamma_plus(), p.omega);
    return integrate_real_line(s, scale, breaks, abs_tol);
}

}  // namespace flucto
