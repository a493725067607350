#include "flucto/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace flucto {

namespace {

constexpr double kPi = std::numbers::pi;

enum class Quadrature { in_phase, out_of_phase };

Quadrature classify_phi(double phi) {
    if (std::abs(phi) < 1e-12) return Quadrature::in_phase;
    if (std::abs(phi - 0.5 * kPi) < 1e-12) return Quadrature::out_of_phase;
    throw std::invalid_argument(
        "phi must be 0 or pi/2; only these quadratures are defined");
}

}  // namespace

cxd sinhc(cxd z) {
    if (std::abs(z) < 1e-4) {
        const cxd z2 = z * z;
        return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0);
    }
    return std::sinh(z) / z;
}

double eval_components(const std::vector<LorentzComponent>& comps, double omega) {
    const double w2 = omega * omega;
    cxd acc = 0.0;
    for (const auto& c : comps) {
        const cxd p2 = c.pole * c.pole;
        if (c.order == 1)
            acc += c.coeff * c.pole / (w2 + p2);
        else
            acc += c.coeff * (w2 - p2) / ((w2 + p2) * (w2 + p2));
    }
    return acc.real();
}

double components_area(const std::vector<LorentzComponent>& comps) {
    double area = 0.0;
    for (const auto& c : comps)
        if (c.order == 1) area -= kPi * c.coeff.real();
    return area;
}

AnalyticModel::AnalyticModel(const AtomParams& p) : params_(p) {
    p.validate();
    gp_ = p.gamma_plus();
    y2_ = p.y2();
    q_ = p.q();
    d_ = 1.0 + y2_ + 0.5 * q_ * y2_;
    x_ = q_ * y2_ / (1.0 + y2_);
    delta_ = p.delta();
    degenerate_ = p.near_saturation();

    const EigenSet ev = eigenvalues_approx(p);
    lambda1_ = ev.lambda1;
    lambda2_ = ev.lambda2;
    lambda_p_ = ev.lambda_plus;
    lambda_m_ = ev.lambda_minus;

    c1_ = 0.25 * y2_ / d_;
    c2_ = 0.25 * q_ * y2_ * y2_ / ((1.0 + y2_) * d_ * d_);

    // The lambda_+ mode carries the [1-Y^2 + (1-5Y^2) gamma_+/(4 delta)]
    // amplitude (it dominates the weak-field quadrature spectrum with the
    // gamma_+/2 width); the conjugate combination sits on lambda_-.
    const double k = y2_ / (8.0 * (1.0 + y2_) * d_);
    c_pair_sum_ = 2.0 * k * (1.0 - y2_);
    c_pair_diff_delta_ = k * (1.0 - 5.0 * y2_) * gp_ / 2.0;

    b_pair_sum_ = 1.0 + 0.5 * x_;
    b_pair_diff_delta_ = b_pair_sum_ * (1.0 - 2.0 * y2_) * gp_ / 4.0;

    steady_ = steady_state_analytic(p);
}

cxd AnalyticModel::c_plus() const {
    return 0.5 * (c_pair_sum_ + c_pair_diff_delta_ / delta_);
}

cxd AnalyticModel::c_minus() const {
    return 0.5 * (c_pair_sum_ - c_pair_diff_delta_ / delta_);
}

cxd AnalyticModel::b_plus() const {
    return 0.5 * (b_pair_sum_ + b_pair_diff_delta_ / delta_);
}

cxd AnalyticModel::b_minus() const {
    return 0.5 * (b_pair_sum_ - b_pair_diff_delta_ / delta_);
}

cxd AnalyticModel::pair_exp(double s, double dd, double t) const {
    const cxd dt = delta_ * t;
    return std::exp(-0.75 * gp_ * t) * (s * std::cosh(dt) + dd * t * sinhc(dt));
}

cxd AnalyticModel::transient_f(double t) const {
    const cxd dt = delta_ * t;
    return std::exp(lambda2_ * t) -
           std::exp(-0.75 * gp_ * t) *
               (std::cosh(dt) + 0.75 * gp_ * t * sinhc(dt));
}

Vec4 AnalyticModel::bloch_ground(double t) const {
    const double yy = params_.y();
    const cxd f = transient_f(t);
    const cxd dt = delta_ * t;
    const cxd rabi_term = std::sqrt(2.0) * yy * 0.25 * gp_ * t *
                          std::exp(-0.75 * gp_ * t) * sinhc(dt);
    const cxd slow = 1.0 - std::exp(lambda2_ * t);

    const cxd sm = -kI * ((yy / std::sqrt(2.0)) / (1.0 + y2_) * f + rabi_term) +
                   steady_.alpha_minus * slow;
    const cxd see = 0.5 * y2_ / (1.0 + y2_) * f + steady_.alpha_ee * slow;
    const cxd sgg = std::exp(lambda2_ * t) - 0.5 * y2_ / (1.0 + y2_) * f +
                    steady_.alpha_gg * slow;
    return Vec4(sm, std::conj(sm), see, sgg);
}

double AnalyticModel::second_order_minus(double tau) const {
    const cxd v = c1_ * std::exp(lambda1_ * tau) -
                  pair_exp(c_pair_sum_, c_pair_diff_delta_, tau) +
                  c2_ * std::exp(lambda2_ * tau);
    return real_checked(v, 1e-10, "second-order correlation");
}

double AnalyticModel::second_order_plus(double tau) const {
    const cxd v = c1_ * std::exp(lambda1_ * tau) +
                  pair_exp(c_pair_sum_, c_pair_diff_delta_, tau) -
                  c2_ * std::exp(lambda2_ * tau);
    return real_checked(v, 1e-10, "second-order correlation");
}

double AnalyticModel::h_pi2(double tau) const {
    const cxd v = 1.0 - pair_exp(b_pair_sum_, b_pair_diff_delta_, tau) +
                  0.5 * x_ * std::exp(lambda2_ * tau);
    return real_checked(v, 1e-10, "h correlation");
}

double AnalyticModel::h2_pi2(double tau) const {
    const cxd v = (2.0 / steady_.alpha_ee) *
                  (c2_ * std::exp(lambda2_ * tau) -
                   pair_exp(c_pair_sum_, c_pair_diff_delta_, tau));
    return real_checked(v, 1e-9, "h2 correlation");
}

void AnalyticModel::append_pair(std::vector<LorentzComponent>& out, double sum,
                                double diff_delta) const {
    const cxd pole0 = cxd(-0.75 * gp_);
    if (degenerate_) {
        out.push_back({cxd(sum), pole0, 1});
        out.push_back({cxd(diff_delta), pole0, 2});
    } else {
        const cxd cp = 0.5 * (sum + diff_delta / delta_);
        const cxd cm = 0.5 * (sum - diff_delta / delta_);
        out.push_back({cp, lambda_p_, 1});
        out.push_back({cm, lambda_m_, 1});
    }
}

std::vector<LorentzComponent> AnalyticModel::incoherent_components() const {
    const double norm = 1.0 / (kPi * steady_.alpha_ee);
    std::vector<LorentzComponent> out;
    out.push_back({cxd(-c1_ * norm), lambda1_, 1});
    out.push_back({cxd(-c2_ * norm), lambda2_, 1});
    append_pair(out, c_pair_sum_ * norm, c_pair_diff_delta_ * norm);
    return out;
}

double AnalyticModel::coherent_weight() const { return 1.0 / (kPi * d_); }

std::vector<LorentzComponent> AnalyticModel::squeezing_components(double phi,
                                                                  double eta) const {
    const double n = 8.0 * gp_ * eta;
    std::vector<LorentzComponent> out;
    if (classify_phi(phi) == Quadrature::in_phase) {
        out.push_back({cxd(-n * c1_), lambda1_, 1});
    } else {
        append_pair(out, n * c_pair_sum_, n * c_pair_diff_delta_);
        out.push_back({cxd(-n * c2_), lambda2_, 1});
    }
    return out;
}

std::vector<LorentzComponent> AnalyticModel::noise_s1_components(double eta) const {
    const double n = 4.0 * gp_ * eta;
    std::vector<LorentzComponent> out;
    out.push_back({cxd(-n * c1_), lambda1_, 1});
    append_pair(out, -n * c_pair_sum_, -n * c_pair_diff_delta_);
    out.push_back({cxd(n * c2_), lambda2_, 1});
    return out;
}

std::vector<LorentzComponent> AnalyticModel::noise_s2_components(double eta) const {
    const double n = 4.0 * gp_ * eta;
    std::vector<LorentzComponent> out;
    out.push_back({cxd(-n * c1_), lambda1_, 1});
    append_pair(out, n * c_pair_sum_, n * c_pair_diff_delta_);
    out.push_back({cxd(-n * c2_), lambda2_, 1});
    return out;
}

std::vector<LorentzComponent> AnalyticModel::chd_components(double phi) const {
    const double n = 4.0 * gp_ * steady_.alpha_ee;
    std::vector<LorentzComponent> out;
    if (classify_phi(phi) == Quadrature::in_phase) {
        // Offset-independent: the replacement alpha_ee -> alpha_ee + e_off^2
        // in the normalization cancels against the contrast of h_0.
        out.push_back({cxd(-n), lambda1_, 1});
    } else {
        append_pair(out, n * b_pair_sum_, n * b_pair_diff_delta_);
        out.push_back({cxd(-n * 0.5 * x_), lambda2_, 1});
    }
    return out;
}

std::vector<LorentzComponent> AnalyticModel::chd_order2_components(double phi) const {
    if (classify_phi(phi) == Quadrature::in_phase) return chd_components(phi);
    const double n = 8.0 * gp_;
    std::vector<LorentzComponent> out;
    append_pair(out, n * c_pair_sum_, n * c_pair_diff_delta_);
    out.push_back({cxd(-n * c2_), lambda2_, 1});
    return out;
}

std::vector<LorentzComponent> AnalyticModel::chd_order3_components(double phi) const {
    std::vector<LorentzComponent> out;
    if (classify_phi(phi) == Quadrature::in_phase) return out;  // vanishes on resonance
    const double nf = 4.0 * gp_ * steady_.alpha_ee;
    const double n2 = 8.0 * gp_;
    append_pair(out, nf * b_pair_sum_ - n2 * c_pair_sum_,
                nf * b_pair_diff_delta_ - n2 * c_pair_diff_delta_);
    out.push_back({cxd(-nf * 0.5 * x_ + n2 * c2_), lambda2_, 1});
    return out;
}

double AnalyticModel::variance(double phi) const {
    if (classify_phi(phi) == Quadrature::in_phase) return 2.0 * c1_;
    return 2.0 * (c2_ - c_pair_sum_);
}

}  // namespace flucto
