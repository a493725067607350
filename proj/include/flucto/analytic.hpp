#pragma once

#include <vector>

#include "flucto/model.hpp"

namespace flucto {

/// One term of a closed-form spectrum.  order 1 contributes
/// Re[coeff * pole / (w^2 + pole^2)]; order 2 is the derivative shape
/// Re[coeff * (w^2 - pole^2) / (w^2 + pole^2)^2] that appears when the
/// lambda_+/- pair degenerates at saturation.  Complex poles always occur in
/// conjugate pairs so that sampled values are real.
struct LorentzComponent {
    cxd coeff;
    cxd pole;
    int order = 1;
};

double eval_components(const std::vector<LorentzComponent>& comps, double omega);

/// Closed-form area of the spectrum over the whole real line.  Order-2
/// terms integrate to zero, so only simple poles contribute -pi*Re(coeff).
double components_area(const std::vector<LorentzComponent>& comps);

/// sinh(z)/z, series-expanded near zero; safe for real and imaginary z.
cxd sinhc(cxd z);

/// Closed-form model of the fluctuation dynamics: mode rates and the
/// amplitudes of every correlation used by the spectra and CHD modules.
/// The lambda_+/- amplitude pair (c_plus/c_minus, b_plus/b_minus) diverges
/// individually at the saturation point 8Y^2 = 1, so time-domain evaluation
/// always goes through the recombined cosh/sinhc forms and frequency-domain
/// component lists switch to a merged simple + order-2 pole there.
class AnalyticModel {
  public:
    explicit AnalyticModel(const AtomParams& p);

    const AtomParams& params() const { return params_; }
    double gamma_plus() const { return gp_; }
    double y2() const { return y2_; }
    double q() const { return q_; }
    double denom() const { return d_; }  // 1 + Y^2 + (q/2) Y^2
    double x() const { return x_; }      // q Y^2 / (1 + Y^2)
    cxd delta() const { return delta_; }
    bool degenerate() const { return degenerate_; }

    cxd lambda1() const { return lambda1_; }
    cxd lambda2() const { return lambda2_; }
    cxd lambda_plus() const { return lambda_p_; }
    cxd lambda_minus() const { return lambda_m_; }

    double c1() const { return c1_; }
    double c2() const { return c2_; }
    /// C_+ + C_-  (finite for every drive strength).
    double c_pair_sum() const { return c_pair_sum_; }
    /// delta * (C_+ - C_-), the finite combination entering the order-2 pole.
    double c_pair_diff_delta() const { return c_pair_diff_delta_; }
    /// Individual C_+/C_-; only meaningful away from saturation.
    cxd c_plus() const;
    cxd c_minus() const;

    /// B_+ + B_- and delta * (B_+ - B_-) for the CHD correlation.
    double b_pair_sum() const { return b_pair_sum_; }
    double b_pair_diff_delta() const { return b_pair_diff_delta_; }
    cxd b_plus() const;
    cxd b_minus() const;

    // --- time domain -----------------------------------------------------

    /// Transient envelope f(t): zero at t = 0, decaying combination of the
    /// lambda2 and lambda_+/- modes.
    cxd transient_f(double t) const;

    /// Ground-start expectation values (sigma_-, sigma_+, sigma_ee, sigma_gg).
    Vec4 bloch_ground(double t) const;

    /// <Delta sigma_+(0) Delta sigma_-+(tau)>; real on resonance.
    double second_order_minus(double tau) const;
    double second_order_plus(double tau) const;

    /// CHD amplitude-intensity correlation h_{pi/2} and its second-order
    /// part; the third-order part is h - 1 - h2 (its closed-form amplitudes
    /// are not transcribed anywhere, see chd module notes).
    double h_pi2(double tau) const;
    double h2_pi2(double tau) const;

    // --- frequency domain ------------------------------------------------

    std::vector<LorentzComponent> incoherent_components() const;
    double coherent_weight() const;  // weight of the elastic delta line

    std::vector<LorentzComponent> squeezing_components(double phi, double eta) const;
    std::vector<LorentzComponent> noise_s1_components(double eta) const;
    std::vector<LorentzComponent> noise_s2_components(double eta) const;

    std::vector<LorentzComponent> chd_components(double phi) const;
    std::vector<LorentzComponent> chd_order2_components(double phi) const;
    std::vector<LorentzComponent> chd_order3_components(double phi) const;

    /// Quadrature variances V_0 = 2 C_1 and V_{pi/2} = 2(C_2 - C_+ - C_-).
    /// Normalized so that the area identity Int S_phi dw = 4 pi gamma_+ eta
    /// V_phi holds; negative values certify squeezing.
    double variance(double phi) const;

  private:
    /// C_+ e^{l+ t} + C_- e^{l- t} evaluated through cosh/sinhc, given the
    /// finite combinations s = C_+ + C_- and dd = delta*(C_+ - C_-).
    cxd pair_exp(double s, double dd, double t) const;

    /// Lorentzian pair for coefficients (cp, cm) at lambda_+/-, merged into
    /// simple + order-2 poles at saturation.
    void append_pair(std::vector<LorentzComponent>& out, double sum,
                     double diff_delta) const;

    AtomParams params_;
    double gp_ = 0.0, y2_ = 0.0, q_ = 0.0, d_ = 0.0, x_ = 0.0;
    cxd delta_, lambda1_, lambda2_, lambda_p_, lambda_m_;
    bool degenerate_ = false;
    double c1_ = 0.0, c2_ = 0.0;
    double c_pair_sum_ = 0.0, c_pair_diff_delta_ = 0.0;
    double b_pair_sum_ = 0.0, b_pair_diff_delta_ = 0.0;
    SteadyState steady_;
};

}  // namespace flucto
