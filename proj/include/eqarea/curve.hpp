#ifndef EQAREA_CURVE_HPP
#define EQAREA_CURVE_HPP

#include <memory>
#include <vector>

#include "eqarea/flux.hpp"
#include "eqarea/profile.hpp"
#include "eqarea/track.hpp"

namespace eqarea {

struct CurvePoint {
    double x = 0.0;
    double u = 0.0;
};

struct CurveVelocity {
    double vx = 0.0;  // d x / d s
    double vu = 0.0;  // d u / d s
};

enum class JunctionSide { Auto, Left, Right };

/// The flowed parametric curve (x(s,t), u(s)). Evolution is lazy and
/// exact: nothing is stepped, every query takes the absolute time t and
/// evaluates the closed-form flow x = x0 + F'(u) (t - t_created).
/// Outside the node range the curve continues as constant tails.
/// Immutable; all evaluation is pure and concurrently callable.
class ParametricCurve {
public:
    ParametricCurve(FluxModel flux, NodeSet nodes, double t_created = 0.0);

    const FluxModel& flux() const { return flux_; }
    double created_time() const { return t_created_; }
    const std::vector<Node>& nodes() const { return nodes_.nodes; }
    const std::vector<TrackPtr>& tracks() const { return nodes_.tracks; }
    double tail_left_state() const { return nodes_.tail_left; }
    double tail_right_state() const { return nodes_.tail_right; }
    double s_begin() const { return nodes_.nodes.front().s; }
    double s_end() const { return nodes_.nodes.back().s; }

    /// Flow of a single node: (x0 + F'(u) (t - t_created), u).
    CurvePoint flow_position(const Node& node, double t) const;

    /// Point on the exact flowed curve at parameter s (tails included).
    CurvePoint evaluate(double s, double t) const;

    /// Velocity (x_s, u_s). Throws JumpParameterError when s sits
    /// exactly on a junction between tracks and side is Auto.
    CurveVelocity velocity(double s, double t,
                           JunctionSide side = JunctionSide::Auto) const;

    /// x_s only; junction values resolve to the containing track.
    double slope_x(double s, double t) const;

    /// u_s (time-invariant); zero on the constant tails.
    double slope_u(double s) const;

    /// Exact area of node interval i at time t:
    /// a_i + (t - t_created) (legendre(u_{i+1}) - legendre(u_i)).
    double segment_area(std::size_t interval, double t) const;

    /// Sum of segment areas; the time term telescopes to the endpoint
    /// states.
    double total_area(double t) const;

    /// First time (relative to the creation frame, reported absolute)
    /// at which x_s <= 0 somewhere. Zero elapsed time if a down-jump
    /// exists; +infinity when the curve never overturns.
    double breaking_time() const;

    /// Determinant of the flow-map Jacobian; identically one.
    double jacobian_det(double s, double t) const;

    /// Index of the track containing s (clamped to [0, tracks-1]).
    std::size_t track_index(double s) const;
    /// Junction parameters between consecutive tracks.
    std::vector<double> junction_params() const;

    /// Evaluation pinned to a specific track (s may equal a junction).
    CurvePoint evaluate_on_track(std::size_t track, double s, double t) const;
    double slope_x_on_track(std::size_t track, double s, double t) const;

private:
    double elapsed(double t) const;

    FluxModel flux_;
    NodeSet nodes_;
    double t_created_;
};

using CurvePtr = std::shared_ptr<const ParametricCurve>;

/// Curve from a profile in one call (sample_nodes + constructor).
CurvePtr make_curve(const FluxModel& flux, const PiecewiseProfile& profile,
                    int n_per_piece = 64, int k_per_jump = 16);

}  // namespace eqarea

#endif
