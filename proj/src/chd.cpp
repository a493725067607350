#include "flucto/chd.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "flucto/numerics.hpp"
#include "flucto/parallel.hpp"

namespace flucto {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

bool is_pi_half(double phi) {
    if (std::abs(phi) < 1e-12) return false;
    if (std::abs(phi - kHalfPi) < 1e-12) return true;
    throw std::invalid_argument("phi must be 0 or pi/2");
}

void require_driven(const AtomParams& p) {
    if (p.omega <= 0.0)
        throw std::domain_error("CHD correlation needs omega > 0");
}

// sigma_{pi/2} component of a propagated vector: (i/2)(v_- - v_+).
cxd quad_pi2(const Vec4& v) { return 0.5 * kI * (v(0) - v(1)); }

struct ExactChd {
    LiouvillianSystem sys;
    SteadyState ss;
    double quad_mean;  // <sigma_{pi/2}>_st, real and positive for omega > 0
    Vec4 dev_ground;   // ground start minus steady state (homogeneous mode content)
    Vec4 g2_init;      // second-order fluctuation vector
    Vec4 g3_init;      // third-order fluctuation vector

    explicit ExactChd(const AtomParams& p)
        : sys(build_liouvillian(p)), ss(steady_state_exact(sys)) {
        quad_mean = real_checked(quad_pi2(ss.as_vector()), 1e-10, "quadrature mean");
        dev_ground = BlochVector::ground().as_vector() - ss.as_vector();
        g2_init = second_order_initial(ss);
        g3_init = third_order_initial(ss);
    }
};

}  // namespace

double effective_offset(const AtomParams& p, const SteadyState& exact_steady) {
    const double e = p.e_off > 0.0 ? p.e_off : std::sqrt(exact_steady.alpha_ee);
    if (!(exact_steady.alpha_ee + e * e > 0.0))
        throw std::runtime_error(
            "phi = 0 quadrature mean is zero on resonance; set e_off > 0 to add a "
            "coherent offset");
    return e;
}

CHDRecord h_split(Engine engine, const AtomParams& p,
                  std::span<const double> tau_grid) {
    require_driven(p);
    check_tau_grid(tau_grid);

    CHDRecord rec;
    rec.tau.assign(tau_grid.begin(), tau_grid.end());
    rec.phi = kHalfPi;
    rec.engine = engine;
    const std::size_t n = tau_grid.size();
    rec.h.resize(n);
    rec.h2.resize(n);
    rec.h3.resize(n);

    if (engine == Engine::approximate) {
        const AnalyticModel model(p);
        for (std::size_t i = 0; i < n; ++i) {
            rec.h[i] = model.h_pi2(tau_grid[i]);
            rec.h2[i] = model.h2_pi2(tau_grid[i]);
            rec.h3[i] = rec.h[i] - 1.0 - rec.h2[i];
        }
        return rec;
    }

    const ExactChd ctx(p);
    const BlochSeries dev = evolve_exact(ctx.sys, ctx.dev_ground, tau_grid, 0.0);
    const BlochSeries g2 = evolve_exact(ctx.sys, ctx.g2_init, tau_grid, 0.0);
    const BlochSeries g3 = evolve_exact(ctx.sys, ctx.g3_init, tau_grid, 0.0);

    const double a = ctx.quad_mean;
    const double aee = ctx.ss.alpha_ee;
    for (std::size_t i = 0; i < n; ++i) {
        rec.h[i] = 1.0 + real_checked(quad_pi2(dev.states[i]), 1e-9, "h") / a;
        const cxd k2 = quad_pi2(g2.states[i]);
        rec.h2[i] =
            2.0 * (ctx.ss.alpha_minus * k2).real() / (a * aee);
        rec.h3[i] = real_checked(quad_pi2(g3.states[i]), 1e-9, "h3") / (a * aee);
    }
    return rec;
}

CHDRecord h_correlation(Engine engine, const AtomParams& p, double phi,
                        std::span<const double> tau_grid) {
    require_driven(p);
    if (is_pi_half(phi)) return h_split(engine, p, tau_grid);
    check_tau_grid(tau_grid);

    // In-phase quadrature with coherent offset.  The (sigma_- + sigma_+)
    // combination is an exact single-rate mode of the generator, so both
    // engines share the closed form; the third-order part vanishes on
    // resonance.
    const SteadyState ss = steady_state_exact(build_liouvillian(p));
    const double e = effective_offset(p, ss);
    const double contrast = ss.alpha_ee / (ss.alpha_ee + e * e);
    const double rate = 0.5 * p.gamma_plus();

    CHDRecord rec;
    rec.tau.assign(tau_grid.begin(), tau_grid.end());
    rec.phi = 0.0;
    rec.engine = engine;
    rec.h.reserve(tau_grid.size());
    for (double t : tau_grid) rec.h.push_back(1.0 + contrast * std::exp(-rate * t));
    rec.h2.resize(tau_grid.size());
    rec.h3.assign(tau_grid.size(), 0.0);
    for (std::size_t i = 0; i < tau_grid.size(); ++i) rec.h2[i] = rec.h[i] - 1.0;
    return rec;
}

SpectrumSeries chd_spectrum(Engine engine, const AtomParams& p, double phi,
                            std::span<const double> omega_grid, SpectrumKind part) {
    require_driven(p);
    if (omega_grid.size() < 2)
        throw std::invalid_argument("omega grid needs >= 2 points");
    const bool out_of_phase = is_pi_half(phi);

    SpectrumSeries s;
    s.engine = engine;
    s.omega.assign(omega_grid.begin(), omega_grid.end());
    if (part == SpectrumKind::chd_phi0 || part == SpectrumKind::chd_phi90)
        part = out_of_phase ? SpectrumKind::chd_phi90 : SpectrumKind::chd_phi0;
    s.kind = part;

    if (engine == Engine::approximate) {
        const AnalyticModel model(p);
        switch (part) {
            case SpectrumKind::chd_order2:
                s.components = model.chd_order2_components(phi);
                break;
            case SpectrumKind::chd_order3:
                s.components = model.chd_order3_components(phi);
                break;
            default:
                s.components = model.chd_components(phi);
                break;
        }
        s.values.resize(omega_grid.size());
        for (std::size_t i = 0; i < omega_grid.size(); ++i)
            s.values[i] = eval_components(s.components, omega_grid[i]);
        return s;
    }

    const ExactChd ctx(p);
    const double norm_chd = SpectralNorms::from(p, ctx.ss).chd;
    const double gp = p.gamma_plus();
    s.values.resize(omega_grid.size());

    if (!out_of_phase) {
        if (part == SpectrumKind::chd_order3) {
            std::fill(s.values.begin(), s.values.end(), 0.0);
            return s;
        }
        // Offset-independent: cosine transform of the exact single-rate
        // in-phase correlator, via the resolvent on the fluctuation vector.
        parallel_for(omega_grid.size(), [&](std::size_t i) {
            const Vec4 rc = resolvent_cos(ctx.sys.m, ctx.g2_init, omega_grid[i]);
            s.values[i] = 4.0 * gp * (rc(0) + rc(1)).real();
        });
        return s;
    }

    switch (part) {
        case SpectrumKind::chd_order2:
            parallel_for(omega_grid.size(), [&](std::size_t i) {
                const Vec4 rc = resolvent_cos(ctx.sys.m, ctx.g2_init, omega_grid[i]);
                s.values[i] = 4.0 * gp * (rc(0) - rc(1)).real();
            });
            break;
        case SpectrumKind::chd_order3:
            parallel_for(omega_grid.size(), [&](std::size_t i) {
                const Vec4 rc = resolvent_cos(ctx.sys.m, ctx.g3_init, omega_grid[i]);
                s.values[i] =
                    4.0 * gp / ctx.quad_mean * quad_pi2(rc).real();
            });
            break;
        default:
            parallel_for(omega_grid.size(), [&](std::size_t i) {
                const Vec4 rc =
                    resolvent_cos(ctx.sys.m, ctx.dev_ground, omega_grid[i]);
                s.values[i] =
                    norm_chd / ctx.quad_mean * quad_pi2(rc).real();
            });
            break;
    }
    return s;
}

double integrated_chd_spectrum(const AtomParams& p, double phi) {
    require_driven(p);
    const AnalyticModel model(p);
    return components_area(model.chd_components(phi));
}

double chd_excess_noise_factor(const AtomParams& p) {
    p.validate();
    const double y2 = p.y2();
    return 1.0 + 3.0 * p.q() * y2 / (4.0 * (1.0 + y2));
}

}  // namespace flucto
