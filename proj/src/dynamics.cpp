#include "flucto/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "flucto/numerics.hpp"

namespace flucto {

std::string engine_name(Engine e) {
    return e == Engine::exact ? "exact" : "approx";
}

void check_tau_grid(std::span<const double> tau_grid) {
    if (tau_grid.empty()) throw std::invalid_argument("empty tau grid");
    if (tau_grid.front() < 0.0)
        throw std::invalid_argument("tau grid must be non-negative");
    for (std::size_t i = 1; i < tau_grid.size(); ++i)
        if (!(tau_grid[i] > tau_grid[i - 1]))
            throw std::invalid_argument("tau grid must be strictly increasing");
}

CorrelationSeries BlochSeries::component(int idx, CorrKind kind) const {
    CorrelationSeries cs;
    cs.tau = tau;
    cs.kind = kind;
    cs.engine = engine;
    cs.values.reserve(states.size());
    for (const auto& s : states) cs.values.push_back(s(idx));
    return cs;
}

BlochSeries evolve_exact(const LiouvillianSystem& sys, const Vec4& g0,
                         std::span<const double> tau_grid, double weight,
                         bool force_ode) {
    check_tau_grid(tau_grid);
    BlochSeries out;
    out.engine = Engine::exact;
    out.tau.assign(tau_grid.begin(), tau_grid.end());

    const Vec4 drive = weight * sys.b;
    const ModeDecomposition dec = force_ode ? ModeDecomposition{} : decompose(sys.m);
    if (!force_ode && !dec.usable)
        std::fprintf(stderr,
                     "flucto: generator eigenbasis ill-conditioned (cond %.2e); "
                     "falling back to adaptive integration\n",
                     dec.vcond);

    if (dec.usable) {
        // Split off the constant particular solution when driven; the
        // homogeneous remainder propagates mode by mode.
        Vec4 part = Vec4::Zero();
        if (weight != 0.0 && sys.params.gamma_a != 0.0)
            part = sys.m.partialPivLu().solve(-drive);
        const Vec4 w = dec.vectors_inv * (g0 - part);
        out.states.reserve(tau_grid.size());
        for (double t : tau_grid) {
            Vec4 phase;
            for (int i = 0; i < 4; ++i) phase(i) = std::exp(dec.evals(i) * t) * w(i);
            out.states.push_back(part + dec.vectors * phase);
        }
        return out;
    }

    out.states = integrate_linear_ode(sys.m, drive, g0, tau_grid, 1e-10);
    return out;
}

BlochSeries evolve_approx(const AtomParams& p, std::span<const double> tau_grid) {
    check_tau_grid(tau_grid);
    const AnalyticModel model(p);
    BlochSeries out;
    out.engine = Engine::approximate;
    out.tau.assign(tau_grid.begin(), tau_grid.end());
    out.states.reserve(tau_grid.size());
    for (double t : tau_grid) out.states.push_back(model.bloch_ground(t));
    return out;
}

Vec4 second_order_initial(const SteadyState& ss) {
    const cxd ap = ss.alpha_plus;
    const cxd am = ss.alpha_minus;
    return Vec4(ss.alpha_ee - ap * am, -ap * ap, -ap * ss.alpha_ee,
                ap * (1.0 - ss.alpha_gg));
}

Vec4 second_order_initial_rational(const AtomParams& p) {
    const double q = p.q();
    const double gp = p.gamma_plus();
    const double w2 = p.omega * p.omega;
    const double n = (2.0 + q) * w2 + gp * gp;
    const double pref = w2 / (n * n);
    return pref * Vec4(cxd((2.0 + q) * w2), cxd(gp * gp), -kI * gp * p.omega,
                       kI * (1.0 + q) * gp * p.omega);
}

Vec4 third_order_initial(const SteadyState& ss) {
    const cxd ap = ss.alpha_plus;
    const cxd am = ss.alpha_minus;
    const cxd dip = ap * am - ss.alpha_ee;
    const cxd pop = 2.0 * ap * am - ss.alpha_ee;
    return Vec4(2.0 * am * dip, 2.0 * ap * dip, ss.alpha_ee * pop,
                (ss.alpha_gg - 1.0) * pop);
}

Vec4 third_order_initial_rational(const AtomParams& p) {
    const double q = p.q();
    const double gp = p.gamma_plus();
    const double w2 = p.omega * p.omega;
    const double n = (2.0 + q) * w2 + gp * gp;
    const double pref = w2 * w2 / (n * n * n);
    const double pop = gp * gp - (2.0 + q) * w2;
    // The sigma_gg entry is -(1+q) times the sigma_ee one; expanding the
    // operator product (sigma_+ sigma_gg sigma_- = sigma_ee etc.) fixes the
    // sign unambiguously.
    return pref * Vec4(kI * 2.0 * (2.0 + q) * gp * p.omega,
                       -kI * 2.0 * (2.0 + q) * gp * p.omega, cxd(pop),
                       cxd(-(1.0 + q) * pop));
}

namespace {

void require_driven(const LiouvillianSystem& sys, const char* what) {
    if (sys.params.omega <= 0.0)
        throw std::domain_error(std::string(what) +
                                ": correlator vanishes identically at omega = 0");
}

}  // namespace

CorrelationSeries corr_second_order(Engine engine, const LiouvillianSystem& sys,
                                    Sign sign, std::span<const double> tau_grid) {
    require_driven(sys, "corr_second_order");
    const CorrKind kind = sign == Sign::minus ? CorrKind::second_order_fluct_minus
                                              : CorrKind::second_order_fluct_plus;

    if (engine == Engine::exact) {
        const Vec4 g0 = second_order_initial(steady_state_exact(sys));
        const BlochSeries series = evolve_exact(sys, g0, tau_grid, 0.0);
        return series.component(sign == Sign::minus ? 0 : 1, kind);
    }

    const AnalyticModel model(sys.params);
    CorrelationSeries cs;
    cs.tau.assign(tau_grid.begin(), tau_grid.end());
    cs.kind = kind;
    cs.engine = Engine::approximate;
    cs.values.reserve(tau_grid.size());
    for (double t : tau_grid)
        cs.values.push_back(sign == Sign::minus ? model.second_order_minus(t)
                                                : model.second_order_plus(t));
    return cs;
}

BlochSeries corr_third_order_sandwich(Engine engine, const LiouvillianSystem& sys,
                                      std::span<const double> tau_grid) {
    require_driven(sys, "corr_third_order_sandwich");
    const SteadyState ss = steady_state_exact(sys);

    BlochSeries series = engine == Engine::exact
                             ? evolve_exact(sys, BlochVector::ground().as_vector(),
                                            tau_grid, 1.0)
                             : evolve_approx(sys.params, tau_grid);
    for (auto& s : series.states) s *= ss.alpha_ee;
    return series;
}

BlochSeries corr_third_order_fluct(const LiouvillianSystem& sys,
                                   std::span<const double> tau_grid) {
    require_driven(sys, "corr_third_order_fluct");
    const Vec4 g0 = third_order_initial(steady_state_exact(sys));
    return evolve_exact(sys, g0, tau_grid, 0.0);
}

std::vector<double> chd_numerator_reversed(const LiouvillianSystem& sys, double phi,
                                           std::span<const double> tau_grid) {
    require_driven(sys, "chd_numerator_reversed");
    const SteadyState ss = steady_state_exact(sys);

    // Underlying operator product rho_st sigma_+, written in the Bloch
    // sector; it carries trace alpha_+, so the drive enters with that
    // weight.  The conjugate product sigma_- rho_st contributes the complex
    // conjugate of the sigma_ee component, hence the Re[] below.
    const Vec4 r0(cxd(ss.alpha_ee), 0.0, 0.0, ss.alpha_plus);
    const Mat4& m = sys.m;
    const ModeDecomposition dec = decompose(m);

    std::vector<double> out;
    out.reserve(tau_grid.size());
    const cxd phase = std::exp(-kI * phi);

    if (dec.usable) {
        Vec4 part = Vec4::Zero();
        if (sys.params.gamma_a != 0.0)
            part = m.partialPivLu().solve(-(ss.alpha_plus * sys.b));
        const Vec4 w = dec.vectors_inv * (r0 - part);
        for (double t : tau_grid) {
            Vec4 ph;
            for (int i = 0; i < 4; ++i) ph(i) = std::exp(dec.evals(i) * t) * w(i);
            const Vec4 r = part + dec.vectors * ph;
            out.push_back((phase * r(2)).real());
        }
    } else {
        const auto states =
            integrate_linear_ode(m, ss.alpha_plus * sys.b, r0, tau_grid, 1e-10);
        for (const auto& r : states) out.push_back((phase * r(2)).real());
    }
    return out;
}

}  // namespace flucto
