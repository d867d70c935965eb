#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "eqarea/oracle.hpp"

using namespace eqarea;
using namespace eqarea::oracle;

TEST_CASE("triangle closed form") {
    CHECK(triangle_exact(0.0).shock_x == doctest::Approx(1.0));
    CHECK(triangle_exact(3.0).shock_x == doctest::Approx(2.0));
    CHECK(triangle_exact(10.0).shock_x == doctest::Approx(std::sqrt(11.0)).epsilon(1e-15));
    TriangleSolution s = triangle_exact(3.0);
    CHECK(s.eval(1.0) == doctest::Approx(0.25));
    CHECK(s.eval(2.5) == doctest::Approx(0.0));
    CHECK(s.eval(-1.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(triangle_exact(-1.0), SpecError);
}

TEST_CASE("riemann exact solution") {
    FluxModel burgers = make_flux("burgers");
    // Shock: RH speed 1/2, so at t=2 it sits at x=1.
    CHECK(riemann_exact(burgers, 1.0, 0.0, 2.0, 0.9) == doctest::Approx(1.0));
    CHECK(riemann_exact(burgers, 1.0, 0.0, 2.0, 1.1) == doctest::Approx(0.0));
    // Rarefaction fan u = x/t.
    CHECK(riemann_exact(burgers, 0.0, 1.0, 1.0, 0.5) == doctest::Approx(0.5));
    CHECK(riemann_exact(burgers, 0.0, 1.0, 1.0, -0.1) == doctest::Approx(0.0));
    CHECK(riemann_exact(burgers, 0.0, 1.0, 1.0, 1.2) == doctest::Approx(1.0));
    // Constant state.
    CHECK(riemann_exact(burgers, 0.7, 0.7, 1.0, 0.3) == doctest::Approx(0.7));
    // Convex flux with a linear part: speed (F(2)-F(0))/2 = 2.
    FluxModel ql = make_flux("quadratic_linear", {1.0, 1.0});
    CHECK(riemann_exact(ql, 2.0, 0.0, 1.0, 1.9) == doctest::Approx(2.0));
    CHECK(riemann_exact(ql, 2.0, 0.0, 1.0, 2.1) == doctest::Approx(0.0));
    CHECK_THROWS_AS(riemann_exact(burgers, 1.0, 0.0, 0.0, 0.0), SpecError);
}

TEST_CASE("front tracking: two-step collision in closed form") {
    FluxModel burgers = make_flux("burgers");
    // Speeds 2.5 and 1.0; 2.5 t = 1 + t gives t* = 2/3, x* = 5/3.
    double t_star = 1.0 / 1.5;
    double x_star = 1.0 + t_star;

    auto before = front_tracking_exact({3.0, 2.0, 0.0}, {0.0, 1.0}, burgers, 0.5);
    REQUIRE(before.fronts.size() == 2);
    CHECK(before.fronts[0].speed == doctest::Approx(2.5));
    CHECK(before.fronts[1].speed == doctest::Approx(1.0));
    CHECK(before.events.empty());

    auto after = front_tracking_exact({3.0, 2.0, 0.0}, {0.0, 1.0}, burgers, 1.0);
    REQUIRE(after.fronts.size() == 1);
    REQUIRE(after.events.size() == 1);
    CHECK(after.events[0].t == doctest::Approx(t_star).epsilon(1e-15));
    CHECK(after.events[0].x == doctest::Approx(x_star).epsilon(1e-15));
    CHECK(after.fronts[0].speed == doctest::Approx(1.5));
    CHECK(after.fronts[0].x == doctest::Approx(x_star + 1.5 * (1.0 - t_star)).epsilon(1e-15));
}

TEST_CASE("front tracking: single jump and three-step cascade") {
    FluxModel burgers = make_flux("burgers");
    auto single = front_tracking_exact({1.0, 0.0}, {0.0}, burgers, 8.0);
    REQUIRE(single.fronts.size() == 1);
    CHECK(single.fronts[0].x == doctest::Approx(4.0));
    CHECK(single.events.empty());

    // Levels {4,2,1,0} at positions {0,1,2}: speeds 3, 1.5, 0.5.
    // Front 1 catches front 2 at t = 1/1.5 = 2/3 at x = 2; merged (4,1)
    // moves at 2.5 and catches front 3 at t = 2/3 + (1/3)/2 = 5/6 at
    // x = 29/12; the final (4,0) front moves at speed 2.
    auto cascade = front_tracking_exact({4.0, 2.0, 1.0, 0.0}, {0.0, 1.0, 2.0}, burgers, 1.0);
    REQUIRE(cascade.events.size() == 2);
    CHECK(cascade.events[0].t == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(cascade.events[0].x == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(cascade.events[1].t == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    CHECK(cascade.events[1].x == doctest::Approx(29.0 / 12.0).epsilon(1e-15));
    REQUIRE(cascade.fronts.size() == 1);
    CHECK(cascade.fronts[0].speed == doctest::Approx(2.0));
    CHECK(cascade.fronts[0].uL == doctest::Approx(4.0));
    CHECK(cascade.fronts[0].uR == doctest::Approx(0.0));
}

TEST_CASE("front tracking conserves mass through events") {
    FluxModel burgers = make_flux("burgers");
    const double lo = -5.0, hi = 15.0;
    // Initial plateaus: 4 on [lo,0], 2 on [0,1], 1 on [1,2], 0 beyond.
    double m0 = 4.0 * (0.0 - lo) + 2.0 * 1.0 + 1.0 * 1.0;
    for (double t : {0.3, 2.0 / 3.0, 0.75, 5.0 / 6.0, 1.0, 2.0}) {
        double m = front_tracking_exact({4.0, 2.0, 1.0, 0.0}, {0.0, 1.0, 2.0}, burgers, t)
                       .total_mass(lo, hi);
        // Boundary flux imbalance F(4) - F(0) = 8 feeds the window.
        CHECK(std::abs(m - (m0 + 8.0 * t)) <= 1e-12 * std::max(1.0, m));
    }
}

TEST_CASE("front tracking input validation") {
    FluxModel burgers = make_flux("burgers");
    CHECK_THROWS_AS(front_tracking_exact({0.0, 1.0}, {0.0}, burgers, 1.0), UnsupportedData);
    CHECK_THROWS_AS(front_tracking_exact({1.0, 0.0}, {}, burgers, 1.0), SpecError);
    CHECK_THROWS_AS(front_tracking_exact({2.0, 1.0, 0.0}, {1.0, 0.0}, burgers, 1.0), SpecError);
}

TEST_CASE("godunov reference on the triangle") {
    FluxModel burgers = make_flux("burgers");
    auto initial = [](double x) { return (x >= 0.0 && x <= 1.0) ? x : 0.0; };
    auto sol = godunov_reference(burgers, initial, -1.0, 11.0, 4096, 0.9, 3.0);
    double xs = sol.shock_position(0.5, 0.0);
    CHECK(std::abs(xs - 2.0) <= sol.dx);  // within one cell of sqrt(1+3)
}

TEST_CASE("godunov keeps constants constant") {
    FluxModel burgers = make_flux("burgers");
    auto sol = godunov_reference(burgers, [](double) { return 0.4; }, 0.0, 1.0, 64, 0.5, 1.0);
    for (double u : sol.u) CHECK(u == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("godunov converges to the Riemann solution at first order") {
    FluxModel burgers = make_flux("burgers");
    auto initial = [](double x) { return x < 0.0 ? 1.0 : 0.0; };
    double t = 1.0;
    std::vector<double> errors;
    for (int nx : {128, 256, 512, 1024}) {
        auto sol = godunov_reference(burgers, initial, -1.0, 2.0, nx, 0.9, t);
        errors.push_back(sol.l1_error(
            [&](double x) { return riemann_exact(burgers, 1.0, 0.0, t, x); }));
    }
    double rate_sum = 0.0;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        double rate = std::log2(errors[i] / errors[i + 1]);
        rate_sum += rate;
        CHECK(rate >= 0.8);
    }
    CHECK(rate_sum / (errors.size() - 1) >= 0.8);
}

TEST_CASE("godunov parameter validation") {
    FluxModel burgers = make_flux("burgers");
    auto f = [](double) { return 0.0; };
    CHECK_THROWS_AS(godunov_reference(burgers, f, 0.0, 1.0, 8, 0.5, 1.0), SpecError);
    CHECK_THROWS_AS(godunov_reference(burgers, f, 0.0, 1.0, 64, 1.2, 1.0), CFLViolation);
    CHECK_THROWS_AS(godunov_reference(burgers, f, 0.0, 1.0, 64, 0.0, 1.0), CFLViolation);
}

TEST_CASE("godunov handles a transonic rarefaction (sonic fix)") {
    FluxModel burgers = make_flux("burgers");
    auto initial = [](double x) { return x < 0.0 ? -1.0 : 1.0; };
    double t = 0.5;
    auto sol = godunov_reference(burgers, initial, -2.0, 2.0, 512, 0.9, t);
    double err = sol.l1_error(
        [&](double x) { return riemann_exact(burgers, -1.0, 1.0, t, x); });
    CHECK(err < 0.02);  // no entropy glitch at the sonic point
}
