#include "flucto/figures.hpp"

#include <numbers>
#include <stdexcept>

#include "flucto/chd.hpp"
#include "flucto/grids.hpp"
#include "flucto/spectra.hpp"
#include "flucto/version.hpp"
#include "json.hpp"

namespace flucto {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

AtomParams standard_params(double omega) {
    AtomParams p;
    p.gamma_d = 0.05;
    p.gamma_a = 0.015;
    p.omega = omega;
    return p;
}

AtomParams two_level(const AtomParams& p) {
    AtomParams q = p;
    q.gamma_d = 0.0;
    q.gamma_a = 0.0;
    return q;
}

void stamp(ColumnTable& t, const AtomParams& p, const std::string& what) {
    t.add_meta("tool", std::string("flucto ") + kVersion);
    t.add_meta("content", what);
    t.add_meta("gamma", p.gamma);
    t.add_meta("gamma_d", p.gamma_d);
    t.add_meta("gamma_a", p.gamma_a);
    t.add_meta("omega", p.omega);
    t.add_meta("eta", p.eta);
}

FigurePanel incoherent_panel(const std::string& name, double omega) {
    const AtomParams p = standard_params(omega);
    const auto sys = build_liouvillian(p);
    const auto grid = composite_omega_grid(p);
    const auto ex = power_spectrum(Engine::exact, sys, grid);
    const auto ap = power_spectrum(Engine::approximate, sys, grid);
    const auto sys2 = build_liouvillian(two_level(p));
    const auto la2 = power_spectrum(Engine::approximate, sys2, grid);

    FigurePanel panel{name, p, {}};
    stamp(panel.table, p, "incoherent spectrum, exact/approximate/two-level");
    panel.table.add_meta("coherent_weight_exact", ex.coherent_weight);
    panel.table.add_column("omega", grid);
    panel.table.add_column("s_exact", ex.values);
    panel.table.add_column("s_approx", ap.values);
    panel.table.add_column("s_2la", la2.values);
    return panel;
}

FigurePanel squeezing_panel(const std::string& name, double omega) {
    const AtomParams p = standard_params(omega);
    const auto sys = build_liouvillian(p);
    const auto grid = composite_omega_grid(p);
    const auto ex = squeezing_spectrum(Engine::exact, sys, kHalfPi, grid);
    const auto ap = squeezing_spectrum(Engine::approximate, sys, kHalfPi, grid);
    const auto sys2 = build_liouvillian(two_level(p));
    const auto la2 = squeezing_spectrum(Engine::approximate, sys2, kHalfPi, grid);

    FigurePanel panel{name, p, {}};
    stamp(panel.table, p, "phi=pi/2 squeezing spectrum, exact/approximate/two-level");
    panel.table.add_column("omega", grid);
    panel.table.add_column("s_exact", ex.values);
    panel.table.add_column("s_approx", ap.values);
    panel.table.add_column("s_2la", la2.values);
    return panel;
}

FigurePanel noise_panel() {
    const AtomParams p = standard_params(3.5);
    const auto sys = build_liouvillian(p);
    const auto grid = composite_omega_grid(p);
    const auto [s1, s2] = noise_correlator_spectra(Engine::exact, sys, grid);

    FigurePanel panel{"fig4", p, {}};
    stamp(panel.table, p, "noise-correlation spectra S1 (plus) and S2 (minus)");
    panel.table.add_column("omega", grid);
    panel.table.add_column("s1", s1.values);
    panel.table.add_column("s2", s2.values);
    return panel;
}

FigurePanel variance_panel() {
    const AtomParams ref = standard_params(1.0);
    const auto omegas = linear_grid(0.0, 2.0, 401);

    std::vector<double> v0_3(omegas.size()), v90_3(omegas.size());
    std::vector<double> v0_2(omegas.size()), v90_2(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        AtomParams p3 = standard_params(omegas[i]);
        AtomParams p2 = two_level(p3);
        v0_3[i] = variance(p3, 0.0);
        v90_3[i] = variance(p3, kHalfPi);
        v0_2[i] = variance(p2, 0.0);
        v90_2[i] = variance(p2, kHalfPi);
    }

    FigurePanel panel{"fig5", ref, {}};
    stamp(panel.table, ref, "quadrature variances vs drive, three- and two-level");
    panel.table.add_column("omega_rabi", omegas);
    panel.table.add_column("v0_3la", v0_3);
    panel.table.add_column("vpi2_3la", v90_3);
    panel.table.add_column("v0_2la", v0_2);
    panel.table.add_column("vpi2_2la", v90_2);
    return panel;
}

FigurePanel h_panel(const std::string& name, double omega) {
    const AtomParams p = standard_params(omega);
    const auto tau = default_tau_grid(p, 500);
    const CHDRecord rec = h_split(Engine::approximate, p, tau);

    std::vector<double> one_plus_h2(rec.h2.size());
    for (std::size_t i = 0; i < rec.h2.size(); ++i) one_plus_h2[i] = 1.0 + rec.h2[i];

    FigurePanel panel{name, p, {}};
    stamp(panel.table, p, "CHD amplitude-intensity correlation h_{pi/2} and parts");
    panel.table.add_column("tau", rec.tau);
    panel.table.add_column("h", rec.h);
    panel.table.add_column("one_plus_h2", one_plus_h2);
    panel.table.add_column("h3", rec.h3);
    return panel;
}

FigurePanel chd_spectrum_panel(const std::string& name, double omega) {
    const AtomParams p = standard_params(omega);
    const AtomParams p2 = two_level(p);
    const auto grid = composite_omega_grid(p);
    const auto full3 = chd_spectrum(Engine::approximate, p, kHalfPi, grid);
    const auto full2 = chd_spectrum(Engine::approximate, p2, kHalfPi, grid);
    const auto o3_3 = chd_spectrum(Engine::approximate, p, kHalfPi, grid,
                                   SpectrumKind::chd_order3);
    const auto o3_2 = chd_spectrum(Engine::approximate, p2, kHalfPi, grid,
                                   SpectrumKind::chd_order3);

    FigurePanel panel{name, p, {}};
    stamp(panel.table, p, "CHD spectra (full and third order), three- and two-level");
    panel.table.add_column("omega", grid);
    panel.table.add_column("s_3la", full3.values);
    panel.table.add_column("s_2la", full2.values);
    panel.table.add_column("s3_3la", o3_3.values);
    panel.table.add_column("s3_2la", o3_2.values);
    return panel;
}

}  // namespace

FigureData figure_data(int number) {
    FigureData fig;
    fig.number = number;
    switch (number) {
        case 2:
            fig.panels.push_back(incoherent_panel("fig2a", 0.2625));
            fig.panels.push_back(incoherent_panel("fig2b", 3.5));
            break;
        case 3:
            fig.panels.push_back(squeezing_panel("fig3a", 0.1));
            fig.panels.push_back(squeezing_panel("fig3b", 0.2625));
            fig.panels.push_back(squeezing_panel("fig3c", 3.5));
            break;
        case 4:
            fig.panels.push_back(noise_panel());
            break;
        case 5:
            fig.panels.push_back(variance_panel());
            break;
        case 6:
            fig.panels.push_back(h_panel("fig6a", 0.2625));
            fig.panels.push_back(h_panel("fig6b", 3.5));
            break;
        case 7:
            fig.panels.push_back(chd_spectrum_panel("fig7a", 0.1));
            fig.panels.push_back(chd_spectrum_panel("fig7b", 0.2625));
            fig.panels.push_back(chd_spectrum_panel("fig7c", 3.5));
            break;
        default:
            throw std::invalid_argument("figure number must be in 2..7");
    }
    return fig;
}

std::vector<std::string> write_figure(const FigureData& fig,
                                      const std::string& outdir) {
    std::vector<std::string> written;
    nlohmann::json manifest;
    manifest["figure"] = fig.number;
    manifest["tool"] = std::string("flucto ") + kVersion;
    manifest["panels"] = nlohmann::json::array();

    for (const auto& panel : fig.panels) {
        const std::string path = outdir + "/" + panel.name + ".csv";
        write_file(path, to_csv(panel.table));
        written.push_back(path);

        nlohmann::json meta;
        meta["file"] = panel.name + ".csv";
        meta["gamma_d"] = panel.params.gamma_d;
        meta["gamma_a"] = panel.params.gamma_a;
        meta["omega"] = panel.params.omega;
        meta["eta"] = panel.params.eta;
        manifest["panels"].push_back(meta);
    }

    const std::string mpath =
        outdir + "/figure" + std::to_string(fig.number) + ".json";
    write_file(mpath, manifest.dump(2) + "\n");
    written.push_back(mpath);
    return written;
}

}  // namespace flucto
