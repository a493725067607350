#pragma once

#include <array>
#include <complex>
#include <string>

#include <Eigen/Dense>

namespace flucto {

using cxd = std::complex<double>;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;

inline constexpr cxd kI{0.0, 1.0};

/// Laser-driven three-level atom with shelving.  The laser couples |g> and
/// |e> at Rabi frequency omega; |e> decays back to |g> at rate gamma and
/// into the metastable shelf |a> at rate gamma_d; |a> drains to |g> at
/// gamma_a.  gamma sets the unit of rate (1 by convention), so all other
/// rates and frequencies are measured in units of gamma.
struct AtomParams {
    double gamma = 1.0;
    double gamma_d = 0.0;
    double gamma_a = 0.0;
    double omega = 0.0;
    double eta = 1.0;    // combined collection/detection efficiency, in (0,1]
    double e_off = 0.0;  // coherent offset amplitude for the phi=0 CHD
                         // quadrature; 0 selects the signal-matched default
                         // e_off^2 = alpha_ee

    /// Throws std::invalid_argument when a constraint is violated.
    void validate() const;

    double gamma_plus() const { return gamma + gamma_d; }
    double gamma_minus() const { return gamma - gamma_a; }

    /// Branching ratio gamma_d/gamma_a; defined as 0 when gamma_d = 0 so the
    /// two-level limit is reachable without dividing by zero.
    double q() const { return gamma_d == 0.0 ? 0.0 : gamma_d / gamma_a; }

    /// Dimensionless drive Y = sqrt(2) omega / gamma_plus.
    double y() const;
    double y2() const;

    /// delta = (gamma_plus/4) sqrt(1 - 8 Y^2); imaginary above saturation.
    cxd delta() const;

    /// True within 1e-8 of the saturation point 8 Y^2 = 1, where the
    /// lambda_+/lambda_- mode pair degenerates and closed forms need their
    /// delta -> 0 limits.
    bool near_saturation() const;
};

/// Bloch-sector generator: d/dt rho = m rho + b for the coefficient vector
/// rho = (rho_eg, rho_ge, rho_ee, rho_gg), i.e. the expectation ordering
/// (sigma_-, sigma_+, sigma_ee, sigma_gg).  The shelf population rho_aa is
/// eliminated through probability conservation, which is what produces the
/// inhomogeneous vector b = (0, 0, 0, gamma_a).
struct LiouvillianSystem {
    Mat4 m;
    Vec4 b;
    AtomParams params;
};

LiouvillianSystem build_liouvillian(const AtomParams& p);

/// Stationary first moments.  alpha_minus = <sigma_->, purely imaginary on
/// resonance with negative imaginary part for omega > 0.
struct SteadyState {
    cxd alpha_minus;
    cxd alpha_plus;
    double alpha_ee = 0.0;
    double alpha_gg = 0.0;
    double alpha_aa = 0.0;

    Vec4 as_vector() const {
        return Vec4(alpha_minus, alpha_plus, cxd(alpha_ee), cxd(alpha_gg));
    }
};

/// Linear solve of m rho + b = 0 (null-space construction when gamma_a = 0).
/// Residual above 1e-12 raises std::runtime_error with a condition estimate.
SteadyState steady_state_exact(const LiouvillianSystem& sys);

/// Closed-form stationary moments; exact on resonance for all valid params.
SteadyState steady_state_analytic(const AtomParams& p);

enum class EigenSource { exact, approximate };

/// The four decay modes of the Bloch generator.  lambda1 = -gamma_plus/2 is
/// exact for every parameter point; lambda2 is the slow shelving rate; the
/// lambda_+/- pair carries the damped Rabi precession and is complex above
/// saturation (8 Y^2 > 1), where lambda_plus = conj(lambda_minus).
struct EigenSet {
    cxd lambda1;
    cxd lambda2;
    cxd lambda_plus;
    cxd lambda_minus;
    EigenSource source = EigenSource::exact;

    /// Sorted by descending real part, then ascending imaginary part.
    std::array<cxd, 4> ordered() const;
};

/// Dense eigensolve of m; labels are assigned by nearest distance to the
/// closed-form set so that lambda1/lambda2/lambda_+- keep their meaning.
EigenSet eigenvalues(const LiouvillianSystem& sys);

/// Closed-form mode rates.  lambda2 keeps gamma^2 (not gamma_plus^2) in its
/// denominator, matching the telegraph-model rate 1/T_B + 1/T_D exactly.
EigenSet eigenvalues_approx(const AtomParams& p);

struct BrightDarkTimes {
    double t_bright = 0.0;
    double t_dark = 0.0;
    double gamma_ep = 0.0;  // 1/t_bright + 1/t_dark = -lambda2 (closed form)
};

/// Mean bright/dark interval lengths of the blinking fluorescence and the
/// resulting sharp-peak width.  Requires gamma_d, gamma_a, omega > 0.
BrightDarkTimes bright_dark_times(const AtomParams& p);

/// Eigendecomposition of the generator plus a usability verdict for the
/// propagation backend.  vcond is the eigenvector-matrix condition number;
/// above 1e8 the matrix is treated as defective and callers fall back to
/// direct integration.
struct ModeDecomposition {
    Vec4 evals;
    Mat4 vectors;
    Mat4 vectors_inv;
    double vcond = 0.0;
    bool usable = false;
};

ModeDecomposition decompose(const Mat4& m);

/// Check that a physically real value has no spurious imaginary residue
/// (complex arithmetic is used throughout, including below saturation).
double real_checked(cxd z, double tol = 1e-10, const char* what = "value");

}  // namespace flucto
