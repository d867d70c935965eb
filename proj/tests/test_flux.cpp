#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "eqarea/flux.hpp"

using namespace eqarea;

TEST_CASE("rh_speed on Burgers") {
    FluxModel burgers = make_flux("burgers");
    CHECK(rh_speed(burgers, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rh_speed(burgers, 3.0, 0.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(rh_speed(burgers, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(rh_speed(burgers, 1.0, 1.0), DegenerateJump);
    CHECK_THROWS_AS(rh_speed(burgers, 1.0, 1.0 + 1e-13), DegenerateJump);
}

TEST_CASE("uniform convexity sampling") {
    FluxModel burgers = make_flux("burgers");
    ConvexityReport rep = verify_uniform_convexity(burgers, -1.0, 1.0, 100);
    CHECK(rep.ok);
    CHECK(rep.alpha_estimate == doctest::Approx(1.0).epsilon(1e-15));

    // F = u^4 fails at the origin (odd sample count puts a node there).
    FluxModel quartic;
    quartic.name = "quartic";
    quartic.F = [](double u) { return u * u * u * u; };
    quartic.dF = [](double u) { return 4.0 * u * u * u; };
    quartic.d2F = [](double u) { return 12.0 * u * u; };
    quartic.legendre = [](double u) { return 3.0 * u * u * u * u; };
    ConvexityReport bad = verify_uniform_convexity(quartic, -1.0, 1.0, 101);
    CHECK_FALSE(bad.ok);
    CHECK(bad.alpha_estimate == doctest::Approx(0.0).epsilon(1e-15));

    // Exponential flux: the sampled minimum of e^u on [0,1] sits at the
    // left endpoint, which the grid hits exactly.
    FluxModel expf = make_flux("exponential");
    double grid_min = std::exp(0.0);
    for (int i = 1; i < 100; ++i)
        grid_min = std::min(grid_min, std::exp(static_cast<double>(i) / 99.0));
    ConvexityReport e = verify_uniform_convexity(expf, 0.0, 1.0, 100);
    CHECK(e.ok);
    CHECK(e.alpha_estimate == doctest::Approx(grid_min).epsilon(1e-15));
}

TEST_CASE("numeric inverse of the characteristic speed") {
    FluxModel burgers = make_flux("burgers");
    CHECK(inv_dflux_numeric(burgers, 0.7, 0.0, 1.0) == doctest::Approx(0.7).epsilon(1e-13));

    FluxModel ql = make_flux("quadratic_linear", {1.0, 1.0});  // dF = u + 1
    CHECK(inv_dflux_numeric(ql, 2.0, 0.0, 3.0) == doctest::Approx(1.0).epsilon(1e-13));

    // Bisection oracle for e^u = 2 on [0, 2].
    FluxModel expf = make_flux("exponential");
    double lo = 0.0, hi = 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (std::exp(mid) < 2.0) lo = mid; else hi = mid;
    }
    double oracle_root = 0.5 * (lo + hi);
    CHECK(oracle_root == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    double u = inv_dflux_numeric(expf, 2.0, 0.0, 2.0);
    CHECK(u == doctest::Approx(oracle_root).epsilon(1e-12));
    CHECK(std::abs(expf.dF(u) - 2.0) <= 1e-13 * 2.0);

    CHECK_THROWS_AS(inv_dflux_numeric(burgers, 5.0, 0.0, 1.0), BracketError);
}

TEST_CASE("inverse round-trip over random states") {
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (const auto& name : {std::string("burgers"), std::string("exponential"),
                             std::string("quadratic_linear")}) {
        std::vector<double> coeffs;
        if (name == "quadratic_linear") coeffs = {0.8, -0.4};
        FluxModel m = make_flux(name, coeffs);
        for (int i = 0; i < 1000; ++i) {
            double u = dist(rng);
            double back = m.inverse_speed(m.dF(u), u - 1e-3, u + 1e-3);
            CHECK(std::abs(back - u) <= 1e-12 * std::max(1.0, std::abs(u)));
        }
    }
}

TEST_CASE("RH speed obeys the Lax ordering on random admissible pairs") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    FluxModel burgers = make_flux("burgers");
    FluxModel expf = make_flux("exponential");
    for (int i = 0; i < 500; ++i) {
        double a = dist(rng), b = dist(rng);
        double uL = std::max(a, b), uR = std::min(a, b);
        if (uL - uR <= 1e-6) continue;
        for (const FluxModel* m : {&burgers, &expf}) {
            double s = rh_speed(*m, uL, uR);
            CHECK(s > m->dF(uR));
            CHECK(s < m->dF(uL));
        }
    }
}

TEST_CASE("legendre term consistency and derivative") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    for (const auto& name : {std::string("burgers"), std::string("exponential"),
                             std::string("quadratic_linear")}) {
        std::vector<double> coeffs;
        if (name == "quadratic_linear") coeffs = {2.0, 0.5};
        FluxModel m = make_flux(name, coeffs);
        for (int i = 0; i < 200; ++i) {
            double u = dist(rng);
            double closed = m.legendre(u);
            double direct = m.dF(u) * u - m.F(u);
            CHECK(std::abs(closed - direct) <= 1e-14 * std::max(1.0, std::abs(direct)));
            // d/du legendre = u F''(u), central differences.
            double h = 1e-6;
            double fd = (m.legendre(u + h) - m.legendre(u - h)) / (2.0 * h);
            CHECK(std::abs(fd - u * m.d2F(u)) <= 1e-6 * std::max(1.0, std::abs(u * m.d2F(u))));
        }
    }
}

TEST_CASE("custom flux without a closed-form inverse uses the fallback") {
    FluxModel cosh_flux;
    cosh_flux.name = "cosh";
    cosh_flux.F = [](double u) { return std::cosh(u); };
    cosh_flux.dF = [](double u) { return std::sinh(u); };
    cosh_flux.d2F = [](double u) { return std::cosh(u); };
    cosh_flux.legendre = [](double u) { return u * std::sinh(u) - std::cosh(u); };
    CHECK_FALSE(cosh_flux.has_closed_inverse());
    for (double u : {0.2, 0.9, 1.7}) {
        double back = cosh_flux.inverse_speed(cosh_flux.dF(u), 0.0, 2.0);
        CHECK(back == doctest::Approx(u).epsilon(1e-12));
    }
}

TEST_CASE("flux construction errors") {
    CHECK_THROWS_AS(make_flux("unknown"), SpecError);
    CHECK_THROWS_AS(make_flux("quadratic_linear", {1.0}), SpecError);
    CHECK_THROWS_AS(make_flux("quadratic_linear", {-1.0, 0.0}), SpecError);
    CHECK_THROWS_AS(verify_uniform_convexity(make_flux("burgers"), 1.0, -1.0, 10), SpecError);
    CHECK_THROWS_AS(verify_uniform_convexity(make_flux("burgers"), -1.0, 1.0, 1), SpecError);
}
