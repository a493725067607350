#include "flucto/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace flucto {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

}  // namespace

std::vector<Vec4> integrate_linear_ode(const Mat4& m, const Vec4& drive,
                                       const Vec4& g0, std::span<const double> times,
                                       double rel_tol) {
    const auto rhs = [&](const Vec4& g) -> Vec4 { return m * g + drive; };

    std::vector<Vec4> out;
    out.reserve(times.size());

    Vec4 g = g0;
    double t = 0.0;
    Vec4 k1 = rhs(g);

    const double scale_m = m.cwiseAbs().maxCoeff();
    double h = scale_m > 0.0 ? 0.01 / scale_m : 0.1;
    const double abs_tol = rel_tol * 1e-3;

    for (double target : times) {
        if (target < t)
            throw std::invalid_argument("integrate_linear_ode: times must ascend");
        while (t < target) {
            bool clipped = false;
            if (t + h >= target) {
                h = target - t;
                clipped = true;
            }
            const Vec4 k2 = rhs(g + h * kA21 * k1);
            const Vec4 k3 = rhs(g + h * (kA31 * k1 + kA32 * k2));
            const Vec4 k4 = rhs(g + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
            const Vec4 k5 =
                rhs(g + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
            const Vec4 k6 = rhs(g + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 +
                                         kA64 * k4 + kA65 * k5));
            const Vec4 g5 =
                g + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
            const Vec4 k7 = rhs(g5);
            const Vec4 err_vec = h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 +
                                      kE6 * k6 + kE7 * k7);

            double err = 0.0;
            for (int i = 0; i < 4; ++i) {
                const double sc =
                    abs_tol + rel_tol * std::max(std::abs(g(i)), std::abs(g5(i)));
                err = std::max(err, std::abs(err_vec(i)) / sc);
            }

            if (err <= 1.0) {
                t = clipped ? target : t + h;
                g = g5;
                k1 = k7;  // FSAL
            }
            const double fac =
                std::clamp(0.9 * std::pow(err > 0.0 ? err : 1e-10, -0.2), 0.2, 5.0);
            h = std::max(h, 1e-300) * fac;
            if (h < 1e-14 * std::max(1.0, std::abs(t)))
                throw std::runtime_error("integrate_linear_ode: step size underflow");
        }
        out.push_back(g);
    }
    return out;
}

namespace {

// Kronrod 15-point nodes/weights on [-1,1] (positive half) and the embedded
// Gauss 7-point weights.
constexpr double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                            0.741531185599394, 0.586087235467691, 0.405845151377397,
                            0.207784955007898, 0.0};
constexpr double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                            0.140653259715525, 0.169004726639267, 0.190350578064785,
                            0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

struct PanelResult {
    double integral;
    double error;
};

PanelResult gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);

    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - hw * kXgk[i]);
        fv[14 - i] = f(c + hw * kXgk[i]);
    }
    fv[7] = f(c);

    double res_k = kWgk[7] * fv[7];
    double res_g = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) res_k += kWgk[i] * (fv[i] + fv[14 - i]);
    for (int i = 0; i < 3; ++i)
        res_g += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);

    PanelResult r;
    r.integral = res_k * hw;
    r.error = std::abs((res_k - res_g) * hw);
    return r;
}

void integrate_panel(const std::function<double(double)>& f, double a, double b,
                     double tol, int depth, double& acc, double& err_acc) {
    const PanelResult r = gauss_kronrod(f, a, b);
    if (r.error <= tol || depth >= 50) {
        if (depth >= 50 && r.error > 100.0 * tol)
            throw std::runtime_error(
                "integrate_adaptive: panel limit reached before convergence "
                "(narrow feature may need an explicit breakpoint)");
        acc += r.integral;
        err_acc += r.error;
        return;
    }
    const double c = 0.5 * (a + b);
    integrate_panel(f, a, c, 0.5 * tol, depth + 1, acc, err_acc);
    integrate_panel(f, c, b, 0.5 * tol, depth + 1, acc, err_acc);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol) {
    double acc = 0.0, err = 0.0;
    integrate_panel(f, a, b, abs_tol, 0, acc, err);
    return acc;
}

double integrate_real_line(const std::function<double(double)>& f, double scale,
                           std::span<const double> breakpoints, double abs_tol) {
    constexpr double kPi = std::numbers::pi;
    const auto g = [&](double theta) {
        const double c = std::cos(theta);
        const double w = scale * std::tan(theta);
        return f(w) * scale / (c * c);
    };

    std::vector<double> cuts{-0.5 * kPi, 0.5 * kPi};
    for (double w : breakpoints) {
        const double th = std::atan(w / scale);
        cuts.push_back(th);
        // bracket each feature so the first panel does not straddle it
        cuts.push_back(std::atan((w - 1e-3 * scale) / scale));
        cuts.push_back(std::atan((w + 1e-3 * scale) / scale));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    const double panel_tol = abs_tol / static_cast<double>(cuts.size());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] - cuts[i] < 1e-15) continue;
        total += integrate_adaptive(g, cuts[i], cuts[i + 1], panel_tol);
    }
    return total;
}

double fit_exponential_rate(std::span<const double> t, std::span<const double> y) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double a = std::abs(y[i]);
        if (a <= 0.0) continue;
        const double ly = std::log(a);
        sx += t[i];
        sy += ly;
        sxx += t[i] * t[i];
        sxy += t[i] * ly;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("fit_exponential_rate: too few points");
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

double dominant_frequency(std::span<const double> t, std::span<const double> y,
                          double f_min, double f_max, int n_scan) {
    const auto power = [&](double freq) {
        double cr = 0.0, ci = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            cr += y[i] * std::cos(freq * t[i]);
            ci += y[i] * std::sin(freq * t[i]);
        }
        return cr * cr + ci * ci;
    };

    double best_f = f_min, best_p = -1.0;
    for (int k = 0; k <= n_scan; ++k) {
        const double fr = f_min + (f_max - f_min) * k / n_scan;
        const double p = power(fr);
        if (p > best_p) {
            best_p = p;
            best_f = fr;
        }
    }
    const double df = (f_max - f_min) / n_scan;
    return minimize_scalar([&](double fr) { return -power(fr); },
                           std::max(f_min, best_f - 2 * df),
                           std::min(f_max, best_f + 2 * df), 1e-6 * df);
}

double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double x_tol) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0)
        throw std::invalid_argument("bisect_root: endpoints do not bracket a root");
    while (b - a > x_tol) {
        const double c = 0.5 * (a + b);
        const double fc = f(c);
        if (fc == 0.0) return c;
        if (fa * fc < 0.0) {
            b = c;
            fb = fc;
        } else {
            a = c;
            fa = fc;
        }
    }
    return 0.5 * (a + b);
}

double minimize_scalar(const std::function<double(double)>& f, double a, double b,
                       double x_tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > x_tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace flucto
