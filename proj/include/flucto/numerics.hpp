#pragma once

#include <functional>
#include <span>
#include <vector>

#include "flucto/model.hpp"

namespace flucto {

/// Integrate dg/dt = m g + drive from g0 over [0, t_max], sampling the
/// solution at the requested times (ascending, first may be 0).  Adaptive
/// Dormand-Prince 5(4) with the given relative tolerance; steps are clipped
/// so every sample time is hit exactly.  Throws std::runtime_error when the
/// step size underflows.
std::vector<Vec4> integrate_linear_ode(const Mat4& m, const Vec4& drive,
                                       const Vec4& g0, std::span<const double> times,
                                       double rel_tol = 1e-10);

/// Adaptive Gauss-Kronrod (G7/K15) quadrature of f over [a, b] to the given
/// absolute tolerance.  Throws std::runtime_error if the panel subdivision
/// limit is reached before convergence.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-8);

/// Integral of f over the whole real line via the tan substitution
/// w = scale * tan(theta).  breakpoints lists features (sharp peaks,
/// sideband positions) that seed the initial panel split so narrow
/// structures are not missed.
double integrate_real_line(const std::function<double(double)>& f, double scale,
                           std::span<const double> breakpoints,
                           double abs_tol = 1e-8);

/// Least-squares fit of log|y| = log(a) + r*t; returns the rate r.
/// Points with |y| = 0 are skipped.
double fit_exponential_rate(std::span<const double> t, std::span<const double> y);

/// Location of the dominant frequency of a real signal by direct
/// periodogram scan over [f_min, f_max] (n_scan candidate frequencies,
/// golden-section refinement around the best).
double dominant_frequency(std::span<const double> t, std::span<const double> y,
                          double f_min, double f_max, int n_scan = 2000);

/// Root of f on [a, b] by bisection; f(a) and f(b) must bracket.
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double x_tol = 1e-12);

/// Minimum location of f on [a, b] by golden-section search.
double minimize_scalar(const std::function<double(double)>& f, double a, double b,
                       double x_tol = 1e-10);

}  // namespace flucto
