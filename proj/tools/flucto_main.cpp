// Command-line front end: steady states, mode rates, transients,
// correlations, emission/squeezing/CHD spectra, variances, figure-data
// reproduction, and the exact-vs-analytic validation suite.

#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flucto/chd.hpp"
#include "flucto/figures.hpp"
#include "flucto/grids.hpp"
#include "flucto/io.hpp"
#include "flucto/spectra.hpp"
#include "flucto/validation.hpp"
#include "flucto/version.hpp"

namespace {

using namespace flucto;

constexpr double kHalfPi = 0.5 * std::numbers::pi;

struct CommonOpts {
    double omega = 0.2625;
    double gamma_d = 0.05;
    double gamma_a = 0.015;
    double eta = 1.0;
    double e_off = 0.0;
    int phi_deg = 90;
    std::string engine = "exact";
    std::string output;
    std::string format = "csv";

    // grids
    double tau_min = 1e-3, tau_max = 0.0;
    int tau_count = 400;
    std::string tau_spacing = "geometric";
    double w_min = 0.0, w_max = 0.0;
    int w_count = 601;
    std::string w_spacing = "composite";

    AtomParams params() const {
        AtomParams p;
        p.omega = omega;
        p.gamma_d = gamma_d;
        p.gamma_a = gamma_a;
        p.eta = eta;
        p.e_off = e_off;
        p.validate();
        return p;
    }

    double phi() const {
        if (phi_deg == 0) return 0.0;
        if (phi_deg == 90) return kHalfPi;
        throw std::invalid_argument("--phi must be 0 or 90 (degrees)");
    }

    std::vector<Engine> engines() const {
        if (engine == "exact") return {Engine::exact};
        if (engine == "approx") return {Engine::approximate};
        if (engine == "both") return {Engine::exact, Engine::approximate};
        throw std::invalid_argument("--engine must be exact|approx|both");
    }

    std::vector<double> tau_grid(const AtomParams& p) const {
        if (tau_spacing == "composite")
            throw std::invalid_argument("composite spacing is only valid for omega grids");
        if (tau_max > 0.0) {
            if (tau_spacing == "linear")
                return linear_grid(tau_min, tau_max, tau_count);
            auto g = geometric_grid(tau_min, tau_max, tau_count - 1);
            g.insert(g.begin(), 0.0);
            return g;
        }
        return default_tau_grid(p, tau_count);
    }

    std::vector<double> omega_grid(const AtomParams& p) const {
        if (w_spacing == "composite") return composite_omega_grid(p, w_count, 2 * w_count);
        if (w_max <= w_min) throw std::invalid_argument("need --wmax > --wmin");
        return make_grid(parse_spacing(w_spacing), w_min, w_max, w_count, p);
    }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_tau, bool with_omega) {
    cmd->add_option("--omega,-O", o.omega, "Rabi frequency (units of gamma)");
    cmd->add_option("--gamma-d", o.gamma_d, "decay rate e -> shelf");
    cmd->add_option("--gamma-a", o.gamma_a, "decay rate shelf -> g");
    cmd->add_option("--eta", o.eta, "detection efficiency in (0,1]");
    cmd->add_option("--e-off", o.e_off,
                    "coherent offset for phi=0 CHD (0 = signal-matched)");
    cmd->add_option("--engine", o.engine, "exact|approx|both");
    cmd->add_option("--output,-o", o.output, "output file (default: stdout)");
    cmd->add_option("--format", o.format, "csv|json");
    if (with_tau) {
        cmd->add_option("--tmin", o.tau_min, "delay grid start");
        cmd->add_option("--tmax", o.tau_max, "delay grid end (0 = auto)");
        cmd->add_option("--tcount", o.tau_count, "delay grid points")
            ->check(CLI::Range(2, 2000000));
        cmd->add_option("--tspacing", o.tau_spacing, "linear|geometric");
    }
    if (with_omega) {
        cmd->add_option("--wmin", o.w_min, "frequency grid start");
        cmd->add_option("--wmax", o.w_max, "frequency grid end");
        cmd->add_option("--wcount", o.w_count, "frequency grid points")
            ->check(CLI::Range(2, 2000000));
        cmd->add_option("--wspacing", o.w_spacing, "linear|geometric|composite");
    }
}

void stamp(ColumnTable& t, const CommonOpts& o, const std::string& subcommand,
           const std::string& grid_desc) {
    t.add_meta("tool", std::string("flucto ") + kVersion);
    t.add_meta("subcommand", subcommand);
    t.add_meta("gamma", 1.0);
    t.add_meta("gamma_d", o.gamma_d);
    t.add_meta("gamma_a", o.gamma_a);
    t.add_meta("omega", o.omega);
    t.add_meta("eta", o.eta);
    t.add_meta("e_off", o.e_off);
    t.add_meta("engine", o.engine);
    if (!grid_desc.empty()) t.add_meta("grid", grid_desc);
}

void emit(const ColumnTable& t, const CommonOpts& o) {
    const std::string body = o.format == "json" ? to_json(t) : to_csv(t);
    if (o.format != "json" && o.format != "csv")
        throw std::invalid_argument("--format must be csv or json");
    if (o.output.empty())
        std::cout << body;
    else
        write_file(o.output, body);
}

std::vector<double> real_parts(const std::vector<cxd>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].real();
    return r;
}

std::vector<double> imag_parts(const std::vector<cxd>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].imag();
    return r;
}

int cmd_steady(const CommonOpts& o) {
    const AtomParams p = o.params();
    const auto as_column = [](const SteadyState& ss) -> std::vector<double> {
        return {ss.alpha_minus.real(), ss.alpha_minus.imag(), ss.alpha_ee,
                ss.alpha_gg, ss.alpha_aa};
    };
    ColumnTable t;
    stamp(t, o, "steady", "");
    t.add_meta("rows", "re_alpha_minus,im_alpha_minus,alpha_ee,alpha_gg,alpha_aa");
    t.add_column("exact", as_column(steady_state_exact(build_liouvillian(p))));
    t.add_column("analytic", as_column(steady_state_analytic(p)));
    emit(t, o);
    return 0;
}

int cmd_eigen(const CommonOpts& o) {
    const AtomParams p = o.params();
    const auto ex = eigenvalues(build_liouvillian(p));
    const auto ap = eigenvalues_approx(p);
    ColumnTable t;
    stamp(t, o, "eigen", "");
    t.meta.emplace_back("rows", "lambda1,lambda2,lambda_plus,lambda_minus");
    t.add_column("exact_re", {ex.lambda1.real(), ex.lambda2.real(),
                              ex.lambda_plus.real(), ex.lambda_minus.real()});
    t.add_column("exact_im", {ex.lambda1.imag(), ex.lambda2.imag(),
                              ex.lambda_plus.imag(), ex.lambda_minus.imag()});
    t.add_column("approx_re", {ap.lambda1.real(), ap.lambda2.real(),
                               ap.lambda_plus.real(), ap.lambda_minus.real()});
    t.add_column("approx_im", {ap.lambda1.imag(), ap.lambda2.imag(),
                               ap.lambda_plus.imag(), ap.lambda_minus.imag()});
    emit(t, o);
    return 0;
}

int cmd_evolve(const CommonOpts& o) {
    const AtomParams p = o.params();
    const auto sys = build_liouvillian(p);
    const auto tau = o.tau_grid(p);
    ColumnTable t;
    stamp(t, o, "evolve", "tau " + o.tau_spacing);
    t.add_column("tau", tau);
    for (Engine e : o.engines()) {
        const BlochSeries s =
            e == Engine::exact
                ? evolve_exact(sys, BlochVector::ground().as_vector(), tau, 1.0)
                : evolve_approx(p, tau);
        const std::string tag = engine_name(e);
        std::vector<double> sm_re(tau.size()), sm_im(tau.size()), see(tau.size()),
            sgg(tau.size());
        for (std::size_t i = 0; i < tau.size(); ++i) {
            sm_re[i] = s.states[i](0).real();
            sm_im[i] = s.states[i](0).imag();
            see[i] = s.states[i](2).real();
            sgg[i] = s.states[i](3).real();
        }
        t.add_column("re_sminus_" + tag, sm_re);
        t.add_column("im_sminus_" + tag, sm_im);
        t.add_column("ee_" + tag, see);
        t.add_column("gg_" + tag, sgg);
    }
    emit(t, o);
    return 0;
}

int cmd_corr(const CommonOpts& o, const std::string& kind) {
    const AtomParams p = o.params();
    const auto sys = build_liouvillian(p);
    const auto tau = o.tau_grid(p);
    ColumnTable t;
    stamp(t, o, "corr", "tau " + o.tau_spacing);
    t.add_meta("kind", kind);
    t.add_column("tau", tau);

    for (Engine e : o.engines()) {
        const std::string tag = engine_name(e);
        if (kind == "second_minus" || kind == "second_plus") {
            const auto cs = corr_second_order(
                e, sys, kind == "second_minus" ? Sign::minus : Sign::plus, tau);
            t.add_column("re_" + tag, real_parts(cs.values));
            t.add_column("im_" + tag, imag_parts(cs.values));
        } else if (kind == "sandwich") {
            const auto bs = corr_third_order_sandwich(e, sys, tau);
            for (int c = 0; c < 4; ++c) {
                const char* names[] = {"sminus", "splus", "ee", "gg"};
                const auto cs = bs.component(c, CorrKind::third_order_sandwich);
                t.add_column(std::string("re_") + names[c] + "_" + tag,
                             real_parts(cs.values));
                t.add_column(std::string("im_") + names[c] + "_" + tag,
                             imag_parts(cs.values));
            }
        } else if (kind == "third_fluct") {
            if (e == Engine::approximate)
                throw std::invalid_argument(
                    "third_fluct has no closed form; use --engine exact");
            const auto bs = corr_third_order_fluct(sys, tau);
            for (int c = 0; c < 4; ++c) {
                const char* names[] = {"sminus", "splus", "ee", "gg"};
                const auto cs = bs.component(c, CorrKind::third_order_fluct);
                t.add_column(std::string("re_") + names[c] + "_" + tag,
                             real_parts(cs.values));
                t.add_column(std::string("im_") + names[c] + "_" + tag,
                             imag_parts(cs.values));
            }
        } else {
            throw std::invalid_argument(
                "--kind must be second_minus|second_plus|sandwich|third_fluct");
        }
    }
    emit(t, o);
    return 0;
}

int cmd_spectrum(const CommonOpts& o, const std::string& kind) {
    const AtomParams p = o.params();
    const auto sys = build_liouvillian(p);
    const auto grid = o.omega_grid(p);
    ColumnTable t;
    stamp(t, o, "spectrum", "omega " + o.w_spacing);
    t.add_meta("kind", kind);
    t.add_column("omega", grid);

    for (Engine e : o.engines()) {
        const std::string tag = engine_name(e);
        if (kind == "incoherent") {
            const auto s = power_spectrum(e, sys, grid);
            t.add_meta("coherent_weight_" + tag, s.coherent_weight);
            t.add_column("s_" + tag, s.values);
        } else if (kind == "squeezing") {
            const auto s = squeezing_spectrum(e, sys, o.phi(), grid);
            t.add_column("s_" + tag, s.values);
        } else if (kind == "noise") {
            const auto [s1, s2] = noise_correlator_spectra(e, sys, grid);
            t.add_column("s1_" + tag, s1.values);
            t.add_column("s2_" + tag, s2.values);
        } else {
            throw std::invalid_argument("--kind must be incoherent|squeezing|noise");
        }
    }
    emit(t, o);
    return 0;
}

int cmd_variance(const CommonOpts& o) {
    const AtomParams p = o.params();
    ColumnTable t;
    stamp(t, o, "variance", "");
    t.meta.emplace_back("rows", "v_phi0,v_phi90");
    t.add_column("closed_form", {variance(p, 0.0), variance(p, kHalfPi)});
    const auto sys = build_liouvillian(p);
    t.add_column("exact", {variance_exact(sys, 0.0), variance_exact(sys, kHalfPi)});
    t.add_column("integrated_over_4pi_gamma_eta",
                 {integrated_squeezing_spectrum(p, 0.0) /
                      (4.0 * std::numbers::pi * p.gamma_plus() * p.eta),
                  integrated_squeezing_spectrum(p, kHalfPi) /
                      (4.0 * std::numbers::pi * p.gamma_plus() * p.eta)});
    emit(t, o);
    return 0;
}

int cmd_chd(const CommonOpts& o, bool spectrum_mode) {
    const AtomParams p = o.params();
    ColumnTable t;
    if (spectrum_mode) {
        const auto grid = o.omega_grid(p);
        stamp(t, o, "chd-spectrum", "omega " + o.w_spacing);
        t.add_column("omega", grid);
        for (Engine e : o.engines()) {
            const std::string tag = engine_name(e);
            t.add_column("s_" + tag,
                         chd_spectrum(e, p, o.phi(), grid).values);
            t.add_column("s2_" + tag,
                         chd_spectrum(e, p, o.phi(), grid, SpectrumKind::chd_order2)
                             .values);
            t.add_column("s3_" + tag,
                         chd_spectrum(e, p, o.phi(), grid, SpectrumKind::chd_order3)
                             .values);
        }
        t.add_meta("integrated_closed_form", integrated_chd_spectrum(p, o.phi()));
    } else {
        const auto tau = o.tau_grid(p);
        stamp(t, o, "chd", "tau " + o.tau_spacing);
        t.add_column("tau", tau);
        for (Engine e : o.engines()) {
            const std::string tag = engine_name(e);
            const CHDRecord rec = h_correlation(e, p, o.phi(), tau);
            t.add_column("h_" + tag, rec.h);
            t.add_column("h2_" + tag, rec.h2);
            t.add_column("h3_" + tag, rec.h3);
        }
    }
    emit(t, o);
    return 0;
}

int cmd_validate(const CommonOpts& o, const std::string& report_path, bool sweep) {
    const AtomParams p = o.params();
    ValidationReport rep = run_identity_suite(p);
    if (sweep) {
        const ValidationReport sw = run_approximation_sweep();
        rep.cases.insert(rep.cases.end(), sw.cases.begin(), sw.cases.end());
    }
    write_file(report_path, rep.to_json());
    std::printf("validation: %d passed, %d failed (report: %s)\n", rep.passed(),
                rep.failed(), report_path.c_str());
    for (const auto& c : rep.cases)
        if (!c.pass)
            std::printf("  FAIL %s [%s] error=%.3e tol=%.3e\n", c.quantity.c_str(),
                        c.point.c_str(), c.error, c.tolerance);
    return rep.failed() == 0 ? 0 : 3;
}

int cmd_figure(int number, const std::string& outdir) {
    const FigureData fig = figure_data(number);
    const auto files = write_figure(fig, outdir);
    for (const auto& f : files) std::printf("wrote %s\n", f.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("flucto ") + kVersion +
                 " - fluctuation phenomenology of intermittent resonance "
                 "fluorescence"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string corr_kind = "second_minus";
    std::string spectrum_kind = "incoherent";
    std::string report_path = "validation_report.json";
    bool chd_as_spectrum = false;
    bool with_sweep = false;
    int figure_number = 2;
    std::string figure_dir = ".";

    auto* steady = app.add_subcommand("steady", "stationary moments");
    add_common(steady, o, false, false);

    auto* eigen = app.add_subcommand("eigen", "decay-mode rates");
    add_common(eigen, o, false, false);

    auto* evolve = app.add_subcommand("evolve", "ground-start expectation values");
    add_common(evolve, o, true, false);

    auto* corr = app.add_subcommand("corr", "two-time correlations");
    corr->add_option("--kind", corr_kind,
                     "second_minus|second_plus|sandwich|third_fluct");
    add_common(corr, o, true, false);

    auto* spectrum = app.add_subcommand("spectrum", "emission/quadrature spectra");
    spectrum->add_option("--kind", spectrum_kind, "incoherent|squeezing|noise");
    spectrum->add_option("--phi", o.phi_deg, "quadrature phase in degrees (0|90)");
    add_common(spectrum, o, false, true);

    auto* variance_cmd = app.add_subcommand("variance", "quadrature variances");
    add_common(variance_cmd, o, false, false);

    auto* chd = app.add_subcommand("chd", "amplitude-intensity correlation");
    chd->add_option("--phi", o.phi_deg, "quadrature phase in degrees (0|90)");
    chd->add_flag("--spectrum", chd_as_spectrum, "emit the CHD spectra instead");
    add_common(chd, o, true, true);

    auto* validate = app.add_subcommand("validate", "identity + accuracy suite");
    validate->add_option("--report", report_path, "report path (JSON)");
    validate->add_flag("--sweep", with_sweep, "include the approximation sweep");
    add_common(validate, o, false, false);

    auto* figure = app.add_subcommand("figure", "reproduce published curve data");
    figure->add_option("number", figure_number, "figure number (2-7)")->required();
    figure->add_option("--outdir", figure_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // unknown flag / bad value -> usage error
    }

    try {
        if (steady->parsed()) return cmd_steady(o);
        if (eigen->parsed()) return cmd_eigen(o);
        if (evolve->parsed()) return cmd_evolve(o);
        if (corr->parsed()) return cmd_corr(o, corr_kind);
        if (spectrum->parsed()) return cmd_spectrum(o, spectrum_kind);
        if (variance_cmd->parsed()) return cmd_variance(o);
        if (chd->parsed()) return cmd_chd(o, chd_as_spectrum);
        if (validate->parsed()) return cmd_validate(o, report_path, with_sweep);
        if (figure->parsed()) return cmd_figure(figure_number, figure_dir);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "parameter error: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "parameter error: %s\n", e.what());
        return 1;
    } catch (const FileError& e) {
        std::fprintf(stderr, "output error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    }
    return 0;
}
