#pragma once

#include <span>
#include <vector>

#include "flucto/analytic.hpp"
#include "flucto/model.hpp"

namespace flucto {

enum class Engine { exact, approximate };
std::string engine_name(Engine e);

enum class CorrKind {
    expectation,
    second_order_fluct_minus,
    second_order_fluct_plus,
    third_order_sandwich,
    third_order_fluct,
};

enum class Sign { minus, plus };

/// Expectation values of the atomic vector (sigma_-, sigma_+, sigma_ee,
/// sigma_gg); physically valid when the second entry conjugates the first
/// and the populations are real in [0,1].
struct BlochVector {
    cxd s_minus, s_plus, s_ee, s_gg;

    Vec4 as_vector() const { return Vec4(s_minus, s_plus, s_ee, s_gg); }
    static BlochVector ground() { return {0.0, 0.0, 0.0, 1.0}; }
    static BlochVector from(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }
};

/// One scalar correlation on a delay grid (strictly increasing, >= 0).
struct CorrelationSeries {
    std::vector<double> tau;
    std::vector<cxd> values;
    CorrKind kind = CorrKind::expectation;
    Engine engine = Engine::exact;
};

/// All four vector components on a shared delay grid.
struct BlochSeries {
    std::vector<double> tau;
    std::vector<Vec4> states;
    Engine engine = Engine::exact;

    CorrelationSeries component(int idx, CorrKind kind) const;
};

/// Propagate dg/dtau = M g + weight*b from g0, sampled on tau_grid.
/// weight = 1 evolves true expectation values, weight = 0 the homogeneous
/// fluctuation correlators.  Uses the eigendecomposition of M; when the
/// eigenvector basis is ill-conditioned (condition number > 1e8) it falls
/// back to adaptive integration at relative tolerance 1e-10.  force_ode
/// exists for backend cross-checks.
BlochSeries evolve_exact(const LiouvillianSystem& sys, const Vec4& g0,
                         std::span<const double> tau_grid, double weight = 0.0,
                         bool force_ode = false);

/// Closed-form ground-start expectation values (hyperbolic forms with the
/// delta -> 0 limit built in).
BlochSeries evolve_approx(const AtomParams& p, std::span<const double> tau_grid);

/// Stationary fluctuation sandwich <Delta sigma_+ Delta s>_st, the initial
/// vector of the second-order regression.
Vec4 second_order_initial(const SteadyState& ss);

/// Same vector written in the rational form Omega^2/N^2 * (...), with
/// N = (2+q) Omega^2 + gamma_plus^2; used as an independent cross-check.
Vec4 second_order_initial_rational(const AtomParams& p);

/// <Delta sigma_+ Delta s Delta sigma_->_st, the third-order initial vector.
Vec4 third_order_initial(const SteadyState& ss);
Vec4 third_order_initial_rational(const AtomParams& p);

/// <Delta sigma_+(0) Delta sigma_-+(tau)>_st.
CorrelationSeries corr_second_order(Engine engine, const LiouvillianSystem& sys,
                                    Sign sign, std::span<const double> tau_grid);

/// <sigma_+(0) s(tau) sigma_-(0)>_st = alpha_ee * <s(tau)> from the ground
/// state: the collapsed-state evolution after a photon detection.
BlochSeries corr_third_order_sandwich(Engine engine, const LiouvillianSystem& sys,
                                      std::span<const double> tau_grid);

/// <Delta sigma_+(0) Delta s(tau) Delta sigma_-(0)>_st (exact engine only;
/// no closed form is transcribed for these amplitudes).
BlochSeries corr_third_order_fluct(const LiouvillianSystem& sys,
                                   std::span<const double> tau_grid);

/// Reversed-ordering CHD numerator used by the time-symmetry check:
/// Re[e^{-i phi} <sigma_+(0) (sigma_+ sigma_-)(tau)>-type regression] for
/// the record where the intensity is detected after the quadrature.
std::vector<double> chd_numerator_reversed(const LiouvillianSystem& sys, double phi,
                                           std::span<const double> tau_grid);

void check_tau_grid(std::span<const double> tau_grid);

}  // namespace flucto
