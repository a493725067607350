#include "flucto/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace flucto {

void AtomParams::validate() const {
    std::ostringstream err;
    if (!(gamma > 0.0))
        err << "gamma must be > 0 (got " << gamma << ")";
    else if (gamma_d < 0.0)
        err << "gamma_d must be >= 0 (got " << gamma_d << ")";
    else if (gamma_a < 0.0)
        err << "gamma_a must be >= 0 (got " << gamma_a << ")";
    else if (gamma_d > 0.0 && !(gamma_a > 0.0))
        err << "gamma_a must be > 0 when gamma_d > 0 (shelving needs an escape path)";
    else if (omega < 0.0)
        err << "omega must be >= 0 (got " << omega << ")";
    else if (!(eta > 0.0) || eta > 1.0)
        err << "eta must be in (0,1] (got " << eta << ")";
    else if (e_off < 0.0)
        err << "e_off must be >= 0 (got " << e_off << ")";
    if (!err.str().empty()) throw std::invalid_argument("AtomParams: " + err.str());
}

double AtomParams::y() const { return std::sqrt(2.0) * omega / gamma_plus(); }

double AtomParams::y2() const {
    const double yy = y();
    return yy * yy;
}

cxd AtomParams::delta() const {
    return 0.25 * gamma_plus() * std::sqrt(cxd(1.0 - 8.0 * y2()));
}

bool AtomParams::near_saturation() const { return std::abs(8.0 * y2() - 1.0) < 1e-8; }

LiouvillianSystem build_liouvillian(const AtomParams& p) {
    p.validate();
    const double gp = p.gamma_plus();
    const double gm = p.gamma_minus();
    const cxd io2 = kI * (0.5 * p.omega);

    Mat4 m;
    m << cxd(-0.5 * gp), cxd(0.0), io2, -io2,
         cxd(0.0), cxd(-0.5 * gp), -io2, io2,
         io2, -io2, cxd(-gp), cxd(0.0),
         -io2, io2, cxd(gm), cxd(-p.gamma_a);

    Vec4 b(cxd(0.0), cxd(0.0), cxd(0.0), cxd(p.gamma_a));
    return LiouvillianSystem{m, b, p};
}

SteadyState steady_state_exact(const LiouvillianSystem& sys) {
    const AtomParams& p = sys.params;
    Vec4 rho;

    if (p.gamma_a == 0.0) {
        // No drain from the shelf.  With gamma_d = 0 (the only valid case)
        // the generator is rank-3: replace the redundant rho_gg row by the
        // trace constraint rho_ee + rho_gg = 1 of the closed two-level
        // sector.
        Mat4 a = sys.m;
        a.row(3) << cxd(0.0), cxd(0.0), cxd(1.0), cxd(1.0);
        Vec4 rhs(cxd(0.0), cxd(0.0), cxd(0.0), cxd(1.0));
        rho = a.partialPivLu().solve(rhs);
    } else {
        rho = sys.m.partialPivLu().solve(-sys.b);
    }

    const double resid = (sys.m * rho + sys.b).cwiseAbs().maxCoeff();
    if (!(resid < 1e-12) && p.gamma_a != 0.0) {
        const double cond =
            sys.m.cwiseAbs().maxCoeff() * sys.m.inverse().cwiseAbs().maxCoeff();
        std::ostringstream msg;
        msg << "steady_state_exact: singular system, residual " << resid
            << ", condition estimate " << cond;
        throw std::runtime_error(msg.str());
    }

    SteadyState ss;
    ss.alpha_minus = rho(0);
    ss.alpha_plus = rho(1);
    ss.alpha_ee = real_checked(rho(2), 1e-10, "alpha_ee");
    ss.alpha_gg = real_checked(rho(3), 1e-10, "alpha_gg");
    ss.alpha_aa = 1.0 - ss.alpha_ee - ss.alpha_gg;
    if (std::abs(ss.alpha_aa) < 1e-14) ss.alpha_aa = std::abs(ss.alpha_aa);
    return ss;
}

SteadyState steady_state_analytic(const AtomParams& p) {
    p.validate();
    const double y2 = p.y2();
    const double q = p.q();
    const double d = 1.0 + y2 + 0.5 * q * y2;

    SteadyState ss;
    ss.alpha_minus = -kI * (p.y() / std::sqrt(2.0)) / d;
    ss.alpha_plus = std::conj(ss.alpha_minus);
    ss.alpha_ee = 0.5 * y2 / d;
    ss.alpha_gg = (1.0 + 0.5 * y2) / d;
    ss.alpha_aa = q * ss.alpha_ee;
    return ss;
}

std::array<cxd, 4> EigenSet::ordered() const {
    std::array<cxd, 4> v{lambda1, lambda2, lambda_plus, lambda_minus};
    std::sort(v.begin(), v.end(), [](cxd a, cxd b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() < b.imag();
    });
    return v;
}

EigenSet eigenvalues_approx(const AtomParams& p) {
    p.validate();
    const double gp = p.gamma_plus();
    const double w2 = p.omega * p.omega;
    const cxd d = p.delta();

    EigenSet e;
    e.source = EigenSource::approximate;
    e.lambda1 = cxd(-0.5 * gp);
    // gamma^2 (not gamma_plus^2) in the denominator: this is the form whose
    // negative equals the telegraph rate 1/T_B + 1/T_D identically.
    e.lambda2 = cxd(-p.gamma_a * (1.0 + p.q() * w2 / (2.0 * w2 + p.gamma * p.gamma)));
    e.lambda_plus = cxd(-0.75 * gp) + d;
    e.lambda_minus = cxd(-0.75 * gp) - d;
    return e;
}

EigenSet eigenvalues(const LiouvillianSystem& sys) {
    Eigen::ComplexEigenSolver<Mat4> solver(sys.m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigenvalues: eigensolver did not converge");
    Vec4 ev = solver.eigenvalues();

    // Assign labels by nearest-distance matching against the closed-form
    // set, minimizing total distance over all pairings.
    const EigenSet ref = eigenvalues_approx(sys.params);
    const std::array<cxd, 4> target{ref.lambda1, ref.lambda2, ref.lambda_plus,
                                    ref.lambda_minus};
    std::array<int, 4> idx{0, 1, 2, 3};
    std::array<int, 4> best = idx;
    double best_cost = -1.0;
    std::sort(idx.begin(), idx.end());
    do {
        double cost = 0.0;
        for (int k = 0; k < 4; ++k) cost += std::abs(ev(idx[k]) - target[k]);
        if (best_cost < 0.0 || cost < best_cost) {
            best_cost = cost;
            best = idx;
        }
    } while (std::next_permutation(idx.begin(), idx.end()));

    EigenSet e;
    e.source = EigenSource::exact;
    e.lambda1 = ev(best[0]);
    e.lambda2 = ev(best[1]);
    e.lambda_plus = ev(best[2]);
    e.lambda_minus = ev(best[3]);
    return e;
}

BrightDarkTimes bright_dark_times(const AtomParams& p) {
    p.validate();
    if (p.gamma_d == 0.0 || p.omega == 0.0)
        throw std::domain_error(
            "bright_dark_times: infinite bright period (needs gamma_d > 0 and omega > 0)");
    if (p.gamma_a == 0.0)
        throw std::domain_error("bright_dark_times: infinite dark period (gamma_a = 0)");

    const double w2 = p.omega * p.omega;
    BrightDarkTimes t;
    t.t_bright = (2.0 * w2 + p.gamma * p.gamma) / (p.gamma_d * w2);
    t.t_dark = 1.0 / p.gamma_a;
    t.gamma_ep = 1.0 / t.t_bright + 1.0 / t.t_dark;
    return t;
}

ModeDecomposition decompose(const Mat4& m) {
    ModeDecomposition d;
    Eigen::ComplexEigenSolver<Mat4> solver(m, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
        d.usable = false;
        return d;
    }
    d.evals = solver.eigenvalues();
    d.vectors = solver.eigenvectors();

    Eigen::JacobiSVD<Mat4> svd(d.vectors);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    d.vcond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    d.usable = d.vcond < 1e8;
    if (d.usable) d.vectors_inv = d.vectors.partialPivLu().inverse();
    return d;
}

double real_checked(cxd z, double tol, const char* what) {
    const double scale = std::max(1.0, std::abs(z));
    if (std::abs(z.imag()) > tol * scale) {
        std::ostringstream msg;
        msg << what << ": imaginary residue " << z.imag() << " exceeds tolerance "
            << tol;
        throw std::runtime_error(msg.str());
    }
    return z.real();
}

}  // namespace flucto
