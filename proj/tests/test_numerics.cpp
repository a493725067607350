#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "flucto/grids.hpp"
#include "flucto/model.hpp"
#include "flucto/numerics.hpp"

using namespace flucto;
using doctest::Approx;

constexpr double kPi = std::numbers::pi;

TEST_CASE("linear ODE integrator against a diagonalizable generator") {
    // dg/dt = M g + b with known solution through the eigenbasis
    AtomParams p;
    p.gamma_d = 0.05;
    p.gamma_a = 0.015;
    p.omega = 1.2;
    const auto sys = build_liouvillian(p);

    const Vec4 g0(cxd(0.1, -0.3), cxd(0.1, 0.3), cxd(0.4), cxd(0.2));
    const std::vector<double> times{0.0, 0.05, 0.7, 3.0, 12.0, 60.0};

    const auto dec = decompose(sys.m);
    REQUIRE(dec.usable);
    const Vec4 part = sys.m.partialPivLu().solve(-sys.b);
    const Vec4 w = dec.vectors_inv * (g0 - part);

    const auto numeric = integrate_linear_ode(sys.m, sys.b, g0, times, 1e-11);
    for (std::size_t k = 0; k < times.size(); ++k) {
        Vec4 ph;
        for (int i = 0; i < 4; ++i) ph(i) = std::exp(dec.evals(i) * times[k]) * w(i);
        const Vec4 expected = part + dec.vectors * ph;
        CHECK((numeric[k] - expected).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("ODE integrator input validation") {
    AtomParams p;
    p.omega = 0.5;
    const auto sys = build_liouvillian(p);
    const std::vector<double> bad{1.0, 0.5};
    CHECK_THROWS_AS(
        integrate_linear_ode(sys.m, sys.b, Vec4::Zero(), bad, 1e-10),
        std::invalid_argument);
}

TEST_CASE("Gauss-Kronrod quadrature on closed forms") {
    CHECK(integrate_adaptive([](double x) { return x * x; }, 0.0, 3.0, 1e-12) ==
          Approx(9.0).epsilon(1e-12));
    CHECK(integrate_adaptive([](double x) { return std::exp(-x); }, 0.0, 40.0,
                             1e-12) == Approx(1.0).epsilon(1e-10));
    // oscillatory
    CHECK(integrate_adaptive([](double x) { return std::cos(10.0 * x); }, 0.0,
                             kPi, 1e-12) == Approx(0.0).epsilon(1e-10));
}

TEST_CASE("real-line quadrature of Lorentzians") {
    SUBCASE("unit-width") {
        const double v = integrate_real_line(
            [](double w) { return 1.0 / (w * w + 1.0); }, 1.0, {}, 1e-10);
        CHECK(v == Approx(kPi).epsilon(1e-9));
    }

    SUBCASE("narrow peak needs its breakpoint") {
        const double hw = 1e-3;  // thousand times narrower than the map scale
        const std::vector<double> breaks{-10.0 * hw, 0.0, 10.0 * hw};
        const double v = integrate_real_line(
            [&](double w) { return hw / (w * w + hw * hw); }, 1.0, breaks, 1e-10);
        CHECK(v == Approx(kPi).epsilon(1e-8));
    }

    SUBCASE("two disparate scales") {
        const double hw = 2e-3;
        const auto f = [&](double w) {
            return 0.5 / (w * w + 0.25) + hw / (w * w + hw * hw);
        };
        const std::vector<double> breaks{-10.0 * hw, 0.0, 10.0 * hw};
        const double v = integrate_real_line(f, 1.0, breaks, 1e-10);
        CHECK(v == Approx(2.0 * kPi).epsilon(1e-8));
    }
}

TEST_CASE("exponential rate fit") {
    const auto t = linear_grid(0.0, 10.0, 50);
    std::vector<double> y(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) y[i] = 3.0 * std::exp(-0.37 * t[i]);
    CHECK(fit_exponential_rate(t, y) == Approx(-0.37).epsilon(1e-12));
}

TEST_CASE("dominant frequency of a damped oscillation") {
    const auto t = linear_grid(0.0, 40.0, 4000);
    std::vector<double> y(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        y[i] = std::exp(-0.05 * t[i]) * std::cos(2.31 * t[i]);
    CHECK(dominant_frequency(t, y, 0.5, 5.0) == Approx(2.31).epsilon(2e-3));
}

TEST_CASE("bisection and golden-section helpers") {
    CHECK(bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0) ==
          Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK_THROWS_AS(bisect_root([](double x) { return x * x + 1.0; }, 0.0, 1.0),
                    std::invalid_argument);
    CHECK(minimize_scalar([](double x) { return (x - 0.7) * (x - 0.7); }, 0.0, 2.0) ==
          Approx(0.7).epsilon(1e-7));
}

TEST_CASE("grid builders") {
    const auto lin = linear_grid(-2.0, 2.0, 5);
    CHECK(lin.size() == 5);
    CHECK(lin[0] == -2.0);
    CHECK(lin[2] == Approx(0.0));
    CHECK(lin[4] == 2.0);

    const auto geo = geometric_grid(1e-3, 10.0, 9);
    CHECK(geo.front() == Approx(1e-3));
    CHECK(geo.back() == 10.0);
    const double r0 = geo[1] / geo[0];
    const double r1 = geo[5] / geo[4];
    CHECK(r0 == Approx(r1).epsilon(1e-10));

    CHECK_THROWS_AS(linear_grid(0.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(geometric_grid(0.0, 1.0, 4), std::invalid_argument);

    AtomParams p;
    p.gamma_d = 0.05;
    p.gamma_a = 0.015;
    p.omega = 0.2625;
    const auto tau = default_tau_grid(p, 100);
    CHECK(tau.front() == 0.0);
    CHECK(tau.size() == 100);
    for (std::size_t i = 1; i < tau.size(); ++i) CHECK(tau[i] > tau[i - 1]);

    const auto wg = composite_omega_grid(p, 51, 101);
    CHECK(wg.front() == Approx(-3.0 * (p.omega + p.gamma_plus())));
    for (std::size_t i = 1; i < wg.size(); ++i) CHECK(wg[i] > wg[i - 1]);
    // the dense panel actually concentrates points near zero
    int n_inner = 0;
    const double sharp = 10.0 * 0.018028;
    for (double w : wg) n_inner += std::abs(w) <= sharp;
    CHECK(n_inner >= 51);

    CHECK(parse_spacing("linear") == GridSpacing::linear);
    CHECK_THROWS_AS(parse_spacing("cubic"), std::invalid_argument);
}
