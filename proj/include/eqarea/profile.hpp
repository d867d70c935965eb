#ifndef EQAREA_PROFILE_HPP
#define EQAREA_PROFILE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eqarea/errors.hpp"
#include "eqarea/track.hpp"

namespace eqarea {

/// One smooth piece of the initial condition on [x_left, x_right].
/// g and dg are required; G (an antiderivative of g) is optional and,
/// when absent, per-interval areas fall back to adaptive quadrature.
struct Piece {
    double x_left = 0.0;
    double x_right = 0.0;
    std::function<double(double)> g;
    std::function<double(double)> dg;
    std::function<double(double)> G;  // may be empty
    std::string kind = "expression";

    bool has_antiderivative() const { return static_cast<bool>(G); }
};

enum class JumpDirection { Down, Up };  // Down: shock seed, Up: rarefaction seed

struct Jump {
    double x = 0.0;
    double u_left = 0.0;   // g(x-)
    double u_right = 0.0;  // g(x+)
    JumpDirection direction = JumpDirection::Down;
};

/// Piecewise-smooth initial condition with constant tails outside
/// [x_min, x_max]. Immutable after construction.
struct PiecewiseProfile {
    std::vector<Piece> pieces;  // tile [x_min, x_max], ordered
    std::vector<Jump> jumps;    // auto-detected, ordered by x
    double x_min = 0.0;
    double x_max = 0.0;
    double tail_left = 0.0;   // g(x) for x < x_min
    double tail_right = 0.0;  // g(x) for x > x_max

    double eval(double x) const;
    bool empty_support() const { return pieces.empty(); }
};

/// Validates piece tiling and smoothness (central-difference checks on
/// g' and G'), detects jumps between pieces and against the tails.
/// Throws SpecError on overlapping or gapped pieces, NonFiniteError on
/// non-finite samples.
PiecewiseProfile build_profile(std::vector<Piece> pieces,
                               double tail_left, double tail_right);

/// Piece factories for the shipped piece types.
Piece make_constant_piece(double x_left, double x_right, double c);
Piece make_linear_piece(double x_left, double x_right, double c0, double c1);
Piece make_polynomial_piece(double x_left, double x_right,
                            const std::vector<double>& coeffs);
/// g(x) = a + b atan(c x + d), with closed-form derivative and
/// antiderivative.
Piece make_arctan_piece(double x_left, double x_right,
                        double a, double b, double c, double d);

/// Sampled initial curve: nodes plus the exact per-interval parametric
/// areas at t = 0 and the analytic tracks backing the samples.
struct NodeSet {
    std::vector<Node> nodes;            // strictly increasing s
    std::vector<double> interval_area;  // size nodes.size() - 1
    std::vector<TrackPtr> tracks;       // ordered, contiguous in s
    double tail_left = 0.0;
    double tail_right = 0.0;

    double total_initial_area() const;
};

/// Samples the profile into a node set: n_per_piece nodes per smooth
/// piece (endpoints included) and k_per_jump equally spaced states per
/// vertical segment. The curve parameter advances by dx0 on smooth
/// pieces and by |du| across jumps, so the triangle profile of the
/// Burgers test case gets the parametrization s -> (s, s) on the ramp
/// and a unit-length vertical at the jump.
NodeSet sample_nodes(const PiecewiseProfile& profile, int n_per_piece,
                     int k_per_jump);

}  // namespace eqarea

#endif
