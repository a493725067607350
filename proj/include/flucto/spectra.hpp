#pragma once

#include <span>
#include <string>
#include <vector>

#include "flucto/analytic.hpp"
#include "flucto/dynamics.hpp"
#include "flucto/model.hpp"

namespace flucto {

enum class SpectrumKind {
    incoherent_power,
    squeezing_phi0,
    squeezing_phi90,
    chd_phi0,
    chd_phi90,
    chd_order2,
    chd_order3,
    noise_s1,
    noise_s2,
};

std::string spectrum_kind_name(SpectrumKind k);

/// Sampled spectrum on a frequency grid (relative to the laser, units of
/// gamma).  The elastic delta line is never rasterized: its weight is the
/// separate scalar coherent_weight.  Approximate-engine series carry their
/// Lorentzian breakdown in components; values always equal the residue sum
/// of that list.
struct SpectrumSeries {
    std::vector<double> omega;
    std::vector<double> values;
    double coherent_weight = 0.0;
    std::vector<LorentzComponent> components;
    SpectrumKind kind = SpectrumKind::incoherent_power;
    Engine engine = Engine::exact;
};

/// Normalization constants shared by every spectral formula, kept in one
/// place so prefactors cannot drift between modules.
struct SpectralNorms {
    double power = 0.0;       // 1 / (pi alpha_ee)
    double squeezing = 0.0;   // 8 gamma_plus eta
    double noise_corr = 0.0;  // 4 gamma_plus eta
    double chd = 0.0;         // 4 gamma_plus alpha_ee (alpha_ee from the exact solve)

    static SpectralNorms from(const AtomParams& p, const SteadyState& exact_steady);
};

/// One-sided Fourier transform of the propagated vector,
/// F(w) = (i w I - M)^{-1} g0.
Vec4 resolvent(const Mat4& m, const Vec4& g0, double omega);

/// Cosine transform, (1/2)[(i w I - M)^{-1} + (-i w I - M)^{-1}] g0.
Vec4 resolvent_cos(const Mat4& m, const Vec4& g0, double omega);

/// Incoherent (inelastic) emission spectrum plus the coherent line weight.
/// Exact engine: resolvent acting on the second-order fluctuation vector.
/// Approximate engine: four-Lorentzian closed form.
SpectrumSeries power_spectrum(Engine engine, const LiouvillianSystem& sys,
                              std::span<const double> omega_grid);

/// Balanced-homodyne quadrature ("squeezing") spectrum for phi in {0, pi/2}.
SpectrumSeries squeezing_spectrum(Engine engine, const LiouvillianSystem& sys,
                                  double phi, std::span<const double> omega_grid);

/// Cosine-transform spectra of the two dipole noise correlations
/// <Dsigma_+(0) Dsigma_+(tau)> (first) and <Dsigma_+(0) Dsigma_-(tau)>
/// (second); their sum and difference rebuild the phi = 0 and phi = pi/2
/// quadrature spectra.
std::pair<SpectrumSeries, SpectrumSeries> noise_correlator_spectra(
    Engine engine, const LiouvillianSystem& sys, std::span<const double> omega_grid);

/// Quadrature noise variance; negative values certify squeezing.  Closed
/// form; variance_exact builds the same number from the stationary
/// fluctuation vector of the exact solve.
double variance(const AtomParams& p, double phi);
double variance_exact(const LiouvillianSystem& sys, double phi);

/// Closed-form area of the quadrature spectrum, equal to
/// 4 pi gamma_plus eta V_phi.
double integrated_squeezing_spectrum(const AtomParams& p, double phi);

/// Numerical quadrature of a spectrum callable over the real line, with
/// panel seeds at the sharp-peak shoulder and the sideband positions.
double integrate_spectrum(const AtomParams& p,
                          const std::function<double(double)>& s,
                          double abs_tol = 1e-8);

/// Half-width at half maximum of the narrow central feature of the exact
/// incoherent spectrum, isolated by removing the slow shelving mode's
/// residue from the full mode sum and bisecting on what remains.
double sharp_peak_halfwidth_exact(const LiouvillianSystem& sys);

}  // namespace flucto
