#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "flucto/dynamics.hpp"
#include "flucto/grids.hpp"
#include "flucto/numerics.hpp"

using namespace flucto;
using doctest::Approx;

namespace {

AtomParams standard_params(double omega) {
    AtomParams p;
    p.gamma_d = 0.05;
    p.gamma_a = 0.015;
    p.omega = omega;
    return p;
}

}  // namespace

TEST_CASE("undriven ground state is stationary") {
    AtomParams p = standard_params(0.0);
    const auto sys = build_liouvillian(p);
    const auto tau = linear_grid(0.0, 20.0, 11);
    const auto s = evolve_exact(sys, BlochVector::ground().as_vector(), tau, 1.0);
    for (const auto& st : s.states) {
        CHECK(std::abs(st(0)) < 1e-14);
        CHECK(st(2).real() == Approx(0.0).epsilon(1e-14));
        CHECK(st(3).real() == Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("ground start relaxes to the stationary state") {
    const AtomParams p = standard_params(3.5);
    const auto sys = build_liouvillian(p);
    const auto ss = steady_state_exact(sys);
    const double t_end = 50.0 / p.gamma_a;
    const std::vector<double> tau{0.0, t_end};
    const auto s = evolve_exact(sys, BlochVector::ground().as_vector(), tau, 1.0);
    CHECK((s.states.back() - ss.as_vector()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("transient oscillates at the sideband frequency") {
    const AtomParams p = standard_params(3.5);
    const auto sys = build_liouvillian(p);
    const auto tau = linear_grid(0.0, 8.0, 1600);
    const auto s = evolve_exact(sys, BlochVector::ground().as_vector(), tau, 1.0);

    // subtract the quasi-steady level, then locate the spectral peak
    std::vector<double> y(tau.size());
    const double asym = s.states.back()(2).real();
    for (std::size_t i = 0; i < tau.size(); ++i)
        y[i] = s.states[i](2).real() - asym;
    const double f = dominant_frequency(tau, y, 1.0, 6.0);
    const double im = std::abs(eigenvalues(sys).lambda_plus.imag());
    CHECK(f == Approx(im).epsilon(0.01));
    CHECK(im == Approx(3.4875).epsilon(1e-3));
}

TEST_CASE("eigen and ODE backends agree") {
    const AtomParams p = standard_params(0.2625);  // near-degenerate pair
    const auto sys = build_liouvillian(p);
    const auto tau = default_tau_grid(p, 50);
    const Vec4 g0 = second_order_initial(steady_state_exact(sys));

    const auto a = evolve_exact(sys, g0, tau, 0.0, /*force_ode=*/false);
    const auto b = evolve_exact(sys, g0, tau, 0.0, /*force_ode=*/true);
    for (std::size_t i = 0; i < tau.size(); ++i)
        CHECK((a.states[i] - b.states[i]).cwiseAbs().maxCoeff() < 1e-9);

    // and with the inhomogeneous drive
    const auto c = evolve_exact(sys, BlochVector::ground().as_vector(), tau, 1.0);
    const auto d =
        evolve_exact(sys, BlochVector::ground().as_vector(), tau, 1.0, true);
    for (std::size_t i = 0; i < tau.size(); ++i)
        CHECK((c.states[i] - d.states[i]).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("closed-form transient") {
    SUBCASE("starts exactly at the ground state") {
        for (double w : {0.1, 0.2625, 3.5}) {
            const auto s = evolve_approx(standard_params(w), std::vector<double>{0.0});
            CHECK(std::abs(s.states[0](0)) < 1e-14);
            CHECK(std::abs(s.states[0](2)) < 1e-14);
            CHECK(s.states[0](3).real() == Approx(1.0).epsilon(1e-14));
        }
    }

    SUBCASE("matches the exact engine") {
        // 2% holds at the saturating drive; the strong drive picks up a
        // phase lag during the first Rabi cycle that peaks near 6.5%.
        for (double w : {0.2625, 3.5}) {
            const AtomParams p = standard_params(w);
            const auto sys = build_liouvillian(p);
            const auto tau = default_tau_grid(p, 300);
            const auto ex =
                evolve_exact(sys, BlochVector::ground().as_vector(), tau, 1.0);
            const auto ap = evolve_approx(p, tau);
            const double bound = w <= 0.2625 ? 0.02 : 0.08;
            for (std::size_t i = 0; i < tau.size(); ++i) {
                const double e = ex.states[i](2).real();
                if (std::abs(e) <= 0.01) continue;
                CHECK(std::abs(ap.states[i](2).real() - e) / std::abs(e) < bound);
            }
        }
    }

    SUBCASE("two-level reduction saturates correctly") {
        AtomParams p;
        p.omega = 2.0;
        const auto tau = std::vector<double>{0.0, 400.0};
        const auto s = evolve_approx(p, tau);
        const double y2 = p.y2();
        CHECK(s.states.back()(2).real() ==
              Approx(0.5 * y2 / (1.0 + y2)).epsilon(1e-10));
    }

    SUBCASE("physical structure: populations real, conjugate dipoles") {
        const auto tau = default_tau_grid(standard_params(0.7), 50);
        const auto s = evolve_approx(standard_params(0.7), tau);
        for (const auto& st : s.states) {
            CHECK(std::abs(st(2).imag()) < 1e-12);
            CHECK(std::abs(st(3).imag()) < 1e-12);
            CHECK(std::abs(st(1) - std::conj(st(0))) < 1e-12);
        }
    }
}

TEST_CASE("stationary fluctuation vectors") {
    for (double w : {0.1, 0.2625, 3.5}) {
        const AtomParams p = standard_params(w);
        const auto ss = steady_state_exact(build_liouvillian(p));

        const Vec4 g2 = second_order_initial(ss);
        CHECK((g2 - second_order_initial_rational(p)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(g2(0).real() ==
              Approx(ss.alpha_ee - std::norm(ss.alpha_plus)).epsilon(1e-12));

        const Vec4 g3 = third_order_initial(ss);
        CHECK((g3 - third_order_initial_rational(p)).cwiseAbs().maxCoeff() < 1e-12);
        // population component: alpha_ee (2 alpha_+ alpha_- - alpha_ee)
        const double expected =
            ss.alpha_ee * (2.0 * std::norm(ss.alpha_plus) - ss.alpha_ee);
        CHECK(g3(2).real() == Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("second-order fluctuation correlation") {
    const AtomParams p = standard_params(0.2625);
    const auto sys = build_liouvillian(p);
    const auto ss = steady_state_exact(sys);
    auto tau = geometric_grid(1e-3, 600.0, 200);
    tau.insert(tau.begin(), 0.0);

    SUBCASE("needs a driven atom") {
        const auto undriven = build_liouvillian(standard_params(0.0));
        CHECK_THROWS_AS(
            corr_second_order(Engine::exact, undriven, Sign::minus, tau),
            std::domain_error);
    }

    for (Engine e : {Engine::exact, Engine::approximate}) {
        CAPTURE(engine_name(e));
        const auto cm = corr_second_order(e, sys, Sign::minus, tau);
        const auto cp = corr_second_order(e, sys, Sign::plus, tau);

        // variance identity at tau = 0
        CHECK(cm.values.front().real() ==
              Approx(ss.alpha_ee - std::norm(ss.alpha_plus)).epsilon(1e-10));
        CHECK(cp.values.front().real() ==
              Approx(std::norm(ss.alpha_plus)).epsilon(1e-10));

        // fluctuations decorrelate
        CHECK(std::abs(cm.values.back()) < 1e-6);
        CHECK(std::abs(cp.values.back()) < 1e-6);

        // correlators stay real on resonance and bounded by one
        for (const auto& v : cm.values) {
            CHECK(std::abs(v.imag()) < 1e-10);
            CHECK(std::abs(v) <= 1.0);
        }
    }

    SUBCASE("exact against closed form across drives") {
        // deviation relative to the curve scale; pointwise-relative errors
        // are dominated at late tau by the small lambda2 rate offset and
        // grow without bound there
        for (double w : {0.1, 0.2625, 3.5}) {
            const AtomParams pw = standard_params(w);
            const auto sysw = build_liouvillian(pw);
            const double l2 = std::abs(eigenvalues_approx(pw).lambda2.real());
            auto grid = geometric_grid(1e-3, 5.0 / l2, 150);
            grid.insert(grid.begin(), 0.0);
            const auto ex = corr_second_order(Engine::exact, sysw, Sign::minus, grid);
            const auto ap =
                corr_second_order(Engine::approximate, sysw, Sign::minus, grid);
            double peak = 0.0, dev = 0.0;
            for (const auto& v : ex.values) peak = std::max(peak, std::abs(v.real()));
            for (std::size_t i = 0; i < grid.size(); ++i)
                dev = std::max(dev, std::abs(ex.values[i].real() -
                                             ap.values[i].real()));
            CHECK(dev / peak < 0.035);
        }
    }
}

TEST_CASE("collapsed-state correlation") {
    const AtomParams p = standard_params(3.5);
    const auto sys = build_liouvillian(p);
    const auto ss = steady_state_exact(sys);
    auto tau = geometric_grid(1e-3, 50.0 / p.gamma_a, 200);
    tau.insert(tau.begin(), 0.0);

    const auto sand = corr_third_order_sandwich(Engine::exact, sys, tau);

    // collapse to the ground state right after an emission
    CHECK(std::abs(sand.states.front()(0)) < 1e-13);
    CHECK(sand.states.front()(3).real() == Approx(ss.alpha_ee).epsilon(1e-12));

    // late-time limit: alpha_ee times the stationary vector
    CHECK((sand.states.back() - ss.alpha_ee * ss.as_vector()).cwiseAbs().maxCoeff() <
          1e-8);

    // strict proportionality to the ground-start evolution
    const auto plain = evolve_exact(sys, BlochVector::ground().as_vector(), tau, 1.0);
    for (std::size_t i = 0; i < tau.size(); i += 37) {
        CHECK(std::abs(sand.states[i](2) - ss.alpha_ee * plain.states[i](2)) <
              1e-10);
    }

    // approximate engine agrees with its own ground-start closed form
    const auto sand_ap = corr_third_order_sandwich(Engine::approximate, sys, tau);
    const auto plain_ap = evolve_approx(p, tau);
    for (std::size_t i = 0; i < tau.size(); i += 53)
        CHECK(std::abs(sand_ap.states[i](2) -
                       ss.alpha_ee * plain_ap.states[i](2)) < 1e-12);
}

TEST_CASE("third-order fluctuation correlation") {
    const AtomParams p = standard_params(0.2625);
    const auto sys = build_liouvillian(p);
    const auto ss = steady_state_exact(sys);
    auto tau = geometric_grid(1e-2, 600.0, 120);
    tau.insert(tau.begin(), 0.0);

    const auto fl = corr_third_order_fluct(sys, tau);
    CHECK(fl.states.front()(2).real() ==
          Approx(ss.alpha_ee * (2.0 * std::norm(ss.alpha_plus) - ss.alpha_ee))
              .epsilon(1e-12));
    CHECK(fl.states.back().cwiseAbs().maxCoeff() < 1e-7);

    // reconstruction: the full sandwich equals the mean-field expansion plus
    // the pure-fluctuation part, component by component
    const auto sand = corr_third_order_sandwich(Engine::exact, sys, tau);
    const Vec4 g2 = second_order_initial(ss);
    const auto fwd = evolve_exact(sys, g2, tau, 0.0);

    // swapped-components conjugate gives <Delta s(tau) Delta sigma_->
    const Vec4 alpha = ss.as_vector();
    for (std::size_t i = 0; i < tau.size(); i += 17) {
        for (int cidx = 0; cidx < 4; ++cidx) {
            const int swapped = cidx == 0 ? 1 : (cidx == 1 ? 0 : cidx);
            const cxd rev = std::conj(fwd.states[i](swapped));
            const cxd expect = alpha(cidx) * ss.alpha_ee +
                               ss.alpha_minus * fwd.states[i](cidx) +
                               ss.alpha_plus * rev + fl.states[i](cidx);
            CHECK(std::abs(sand.states[i](cidx) - expect) < 1e-10);
        }
    }
}

TEST_CASE("regression series scales linearly in the initial vector") {
    const AtomParams p = standard_params(1.0);
    const auto sys = build_liouvillian(p);
    const auto tau = default_tau_grid(p, 40);
    const Vec4 g0 = second_order_initial(steady_state_exact(sys));
    const cxd c(0.37, -1.21);
    const auto base = evolve_exact(sys, g0, tau, 0.0);
    const auto scaled = evolve_exact(sys, Vec4(c * g0), tau, 0.0);
    for (std::size_t i = 0; i < tau.size(); ++i)
        CHECK((scaled.states[i] - c * base.states[i]).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("late tail decays at the slow shelving rate") {
    const AtomParams p = standard_params(0.2625);
    const auto sys = build_liouvillian(p);
    const auto ev = eigenvalues(sys);
    const double l2 = std::abs(ev.lambda2.real());

    const auto tail = linear_grid(30.0, 0.9 / l2, 30);
    const auto corr = corr_second_order(Engine::exact, sys, Sign::minus, tail);
    std::vector<double> mag(tail.size());
    for (std::size_t i = 0; i < tail.size(); ++i)
        mag[i] = std::abs(corr.values[i].real());
    const double rate = -fit_exponential_rate(tail, mag);
    CHECK(rate == Approx(l2).epsilon(0.01));
}
