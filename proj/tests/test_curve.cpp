#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "eqarea/curve.hpp"
#include "eqarea/geometry.hpp"

using namespace eqarea;

namespace {

CurvePtr triangle_curve(int n = 64, int k = 16) {
    PiecewiseProfile p = build_profile({make_linear_piece(0.0, 1.0, 0.0, 1.0)}, 0.0, 0.0);
    return make_curve(make_flux("burgers"), p, n, k);
}

CurvePtr arctan_curve(int n = 64, int k = 16) {
    PiecewiseProfile p =
        build_profile({make_arctan_piece(-10.0, 10.0, 1.0, 1.0, -1.0, 0.0)}, 0.0, 0.0);
    return make_curve(make_flux("burgers"), p, n, k);
}

}  // namespace

TEST_CASE("flow_position of ramp and vertical nodes") {
    CurvePtr c = triangle_curve();
    for (double t : {0.0, 0.5, 2.0, 7.0}) {
        for (const Node& n : c->nodes()) {
            CurvePoint p = c->flow_position(n, t);
            CHECK(p.u == n.u);
            CHECK(p.x == doctest::Approx(n.x0 + n.u * t).epsilon(1e-15));
        }
    }
    // The ramp node (x0 = s, u = s) flows to (s + s t, s).
    CurvePoint mid = c->evaluate(0.4, 2.0);
    CHECK(mid.x == doctest::Approx(0.4 + 0.4 * 2.0).epsilon(1e-15));
    CHECK(mid.u == doctest::Approx(0.4));
    // A vertical node (1, z) flows to (1 + z t, z).
    CurvePoint v = c->evaluate(1.25, 2.0);  // z = 0.75 on the down segment
    CHECK(v.u == doctest::Approx(0.75));
    CHECK(v.x == doctest::Approx(1.0 + 0.75 * 2.0).epsilon(1e-15));
}

TEST_CASE("flow_velocity on smooth pieces and criticality") {
    CurvePtr c = triangle_curve();
    CurveVelocity v = c->velocity(0.5, 1.0);
    CHECK(v.vx == doctest::Approx(2.0));  // 1 + 1*1*1
    CHECK(v.vu == doctest::Approx(1.0));

    // Constant piece: (1, 0) for any t.
    PiecewiseProfile flat = build_profile({make_constant_piece(0.0, 1.0, 0.7)}, 0.7, 0.7);
    CurvePtr cf = make_curve(make_flux("burgers"), flat);
    CurveVelocity vf = cf->velocity(0.5, 9.0);
    CHECK(vf.vx == doctest::Approx(1.0));
    CHECK(vf.vu == doctest::Approx(0.0));

    // du = -1 at t = 1 is exactly critical.
    PiecewiseProfile down = build_profile({make_linear_piece(-1.0, 1.0, 0.0, -1.0)}, 1.0, -1.0);
    CurvePtr cd = make_curve(make_flux("burgers"), down);
    CurveVelocity vd = cd->velocity(1.0, 1.0);  // s=1 maps to x0=0
    CHECK(vd.vx == doctest::Approx(0.0));
    CHECK(vd.vu == doctest::Approx(-1.0));
}

TEST_CASE("velocity at a junction needs a side") {
    CurvePtr c = triangle_curve();
    CHECK_THROWS_AS(c->velocity(1.0, 0.5), JumpParameterError);
    CurveVelocity left = c->velocity(1.0, 0.5, JunctionSide::Left);
    CHECK(left.vu == doctest::Approx(1.0));  // ramp side
    CurveVelocity right = c->velocity(1.0, 0.5, JunctionSide::Right);
    CHECK(right.vu == doctest::Approx(-1.0));  // down the vertical
}

TEST_CASE("segment_area closed forms") {
    CurvePtr c = triangle_curve(2, 2);  // intervals: ramp, vertical
    for (double t : {0.0, 1.0, 3.0, 10.0}) {
        // Ramp: 1/2 + t/2, cross-checked against the integral of the
        // flowed top branch x/(1+t) over [0, 1+t].
        double ramp = c->segment_area(0, t);
        CHECK(ramp == doctest::Approx(0.5 + 0.5 * t).epsilon(1e-15));
        double oracle = 0.5 * (1.0 + t);  // int_0^{1+t} x/(1+t) dx
        CHECK(ramp == doctest::Approx(oracle).epsilon(1e-15));
        // Vertical u from 1 to 0: t (legendre(0) - legendre(1)) = -t/2.
        CHECK(c->segment_area(1, t) == doctest::Approx(-0.5 * t).epsilon(1e-15));
    }
    // Interval with equal endpoint states keeps its initial area.
    PiecewiseProfile flat = build_profile({make_constant_piece(0.0, 2.0, 1.3)}, 1.3, 1.3);
    CurvePtr cf = make_curve(make_flux("burgers"), flat, 2, 2);
    CHECK(cf->segment_area(0, 0.0) == doctest::Approx(2.6));
    CHECK(cf->segment_area(0, 57.0) == doctest::Approx(2.6));
}

TEST_CASE("total_area telescopes to the endpoint states") {
    CurvePtr c = triangle_curve();
    for (double t : {0.0, 1.0, 4.0, 10.0})
        CHECK(c->total_area(t) == doctest::Approx(0.5).epsilon(1e-14));

    PiecewiseProfile zero = build_profile({}, 0.0, 0.0);
    CurvePtr cz = make_curve(make_flux("burgers"), zero);
    CHECK(cz->total_area(5.0) == doctest::Approx(0.0));

    // Two plateaus {3, 2} of widths w1, w2 with zero tails either side.
    double w1 = 1.0, w2 = 1.5;
    PiecewiseProfile steps = build_profile({make_constant_piece(0.0, w1, 3.0),
                                            make_constant_piece(w1, w1 + w2, 2.0)},
                                           0.0, 0.0);
    CurvePtr cs = make_curve(make_flux("burgers"), steps);
    for (double t : {0.0, 0.7, 2.0})
        CHECK(cs->total_area(t) == doctest::Approx(3.0 * w1 + 2.0 * w2).epsilon(1e-14));
}

TEST_CASE("breaking_time") {
    CHECK(triangle_curve()->breaking_time() == 0.0);  // down-jump present

    // Smooth arctan hump without boundary jumps: grid-scan oracle.
    PiecewiseProfile smooth = build_profile(
        {make_arctan_piece(-10.0, 10.0, 1.0, 1.0, -1.0, 0.0)},
        1.0 + std::atan(10.0), 1.0 + std::atan(-10.0));
    CurvePtr cs = make_curve(make_flux("burgers"), smooth);
    double oracle = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 200000; ++i) {
        double x = -10.0 + 20.0 * i / 200000.0;
        double dg = -1.0 / (1.0 + x * x);
        if (dg < 0.0) oracle = std::min(oracle, -1.0 / dg);
    }
    CHECK(oracle == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cs->breaking_time() == doctest::Approx(1.0).epsilon(1e-10));

    // Monotone increasing data never breaks.
    PiecewiseProfile inc = build_profile({make_linear_piece(0.0, 1.0, 0.0, 1.0)}, 0.0, 1.0);
    CurvePtr ci = make_curve(make_flux("burgers"), inc);
    CHECK(std::isinf(ci->breaking_time()));
}

TEST_CASE("jacobian determinant is one") {
    CurvePtr c = triangle_curve();
    CHECK(c->jacobian_det(0.3, 0.0) == 1.0);
    CHECK(c->jacobian_det(1.5, 2.0) == 1.0);
    CHECK(c->jacobian_det(0.9, 1e6) == 1.0);
}

TEST_CASE("evaluate_curve examples") {
    CurvePtr c = triangle_curve();
    CurvePoint p = c->evaluate(0.5, 1.0);
    CHECK(p.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.u == doctest::Approx(0.5).epsilon(1e-15));
    // Node consistency.
    for (const Node& n : c->nodes()) {
        CurvePoint q = c->evaluate(n.s, 2.5);
        CurvePoint f = c->flow_position(n, 2.5);
        CHECK(q.x == doctest::Approx(f.x).epsilon(1e-15));
        CHECK(q.u == doctest::Approx(f.u).epsilon(1e-15));
    }
    // arctan curve at the parameter mapping to x0 = 0 (u = 1).
    CurvePtr ca = arctan_curve();
    double s_at_zero = 0.0;
    for (const TrackPtr& tp : ca->tracks())
        if (!tp->is_vertical()) s_at_zero = tp->s_begin() + (0.0 - tp->x0(tp->s_begin()));
    CurvePoint q = ca->evaluate(s_at_zero, 0.5);
    CHECK(q.x == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(q.u == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(c->evaluate(std::numeric_limits<double>::quiet_NaN(), 1.0), OutOfRange);
}

TEST_CASE("flow is a semigroup in time") {
    CurvePtr c = arctan_curve();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> spar(c->s_begin(), c->s_end());
    std::uniform_real_distribution<double> tpar(0.0, 5.0);
    for (int i = 0; i < 300; ++i) {
        double s = spar(rng);
        double t1 = tpar(rng), t2 = tpar(rng);
        CurvePoint a = c->evaluate(s, t1 + t2);
        CurvePoint b = c->evaluate(s, t1);
        double rebased = b.x + c->flux().dF(b.u) * t2;
        CHECK(std::abs(a.x - rebased) <= 1e-14 * std::max(1.0, std::abs(a.x)));
        CHECK(a.u == b.u);
    }
}

TEST_CASE("ledger conservation over random times") {
    CurvePtr c = triangle_curve();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> tpar(0.0, 100.0);
    double a0 = c->total_area(0.0);
    double leg_first = c->flux().legendre(c->nodes().front().u);
    double leg_last = c->flux().legendre(c->nodes().back().u);
    for (int i = 0; i < 100; ++i) {
        double t = tpar(rng);
        double predicted = a0 + t * (leg_last - leg_first);
        CHECK(std::abs(c->total_area(t) - predicted) <= 1e-13 * std::max(1.0, std::abs(predicted)));
    }
    // Quadrature route agrees with the ledger.
    for (double t : {0.0, 1.0, 10.0}) {
        double quad = multivalued_area(*c, t, c->s_begin(), c->s_end());
        CHECK(std::abs(quad - c->total_area(t)) <= 1e-12);
    }
}

TEST_CASE("geometric smoothness: velocity never vanishes on smooth curves") {
    PiecewiseProfile smooth = build_profile(
        {make_arctan_piece(-10.0, 10.0, 1.0, 1.0, -1.0, 0.0)},
        1.0 + std::atan(10.0), 1.0 + std::atan(-10.0));
    CurvePtr c = make_curve(make_flux("burgers"), smooth);
    for (int i = 1; i < 64; ++i) {
        double s = c->s_begin() + (c->s_end() - c->s_begin()) * i / 64.0;
        for (double t : {0.0, 0.5, 1.0, 2.0, 5.0}) {
            CurveVelocity v = c->velocity(s, t);
            CHECK(std::hypot(v.vx, v.vu) > 0.0);
            if (v.vu == 0.0) CHECK(v.vx == doctest::Approx(1.0));
        }
    }
}
