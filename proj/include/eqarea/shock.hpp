#ifndef EQAREA_SHOCK_HPP
#define EQAREA_SHOCK_HPP

#include <string>
#include <vector>

#include "eqarea/geometry.hpp"
#include "eqarea/interpolate.hpp"

namespace eqarea {

/// One tracked discontinuity of the weak solution. Every emitted record
/// satisfies uL > uR + eps and the Lax condition dF(uR) < speed < dF(uL).
struct ShockRecord {
    double t = 0.0;
    double X = 0.0;
    double uL = 0.0;
    double uR = 0.0;
    double speed = 0.0;
    int id = -1;
    std::vector<int> parents;  // empty: isolated; else merged(parents)

    std::string provenance() const;
};

/// Locates the shock of one S-curve fold as the root of the signed area
/// over the abscissa window; the record's states come from the root
/// triple. Throws NotSCurve when the fold is not an S-curve (caller
/// falls back to the generalized pair search) and NoRoot when the
/// signed area has no sign change over the fold.
ShockRecord locate_shock(const ParametricCurve& curve, double t,
                         const OverturnRegion& region);

/// Same solve, returning the pair (needed to split arcs).
EqualAreaPair locate_shock_pair(const ParametricCurve& curve, double t,
                                const OverturnRegion& region);

/// Full pair pipeline at time t: the S-curve route per fold with
/// automatic fallback to the generalized equal-area pairs, plus the
/// degenerate zero-width pairs of down-jump verticals at zero elapsed
/// time. Pairs with jumps below the degeneracy threshold are dropped.
std::vector<EqualAreaPair> locate_pairs(const ParametricCurve& curve, double t);

/// Single-valued view of the weak solution at a fixed time: ordered
/// arcs of the curve with a vertical shock line between consecutive
/// arcs.
class WeakSolutionView {
public:
    struct Arc {
        double s_lo = 0.0;
        double s_hi = 0.0;
        double x_lo = 0.0;
        double x_hi = 0.0;
    };

    WeakSolutionView(CurvePtr curve, double t, std::vector<EqualAreaPair> pairs);

    double time() const { return t_; }
    const CurvePtr& curve() const { return curve_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const std::vector<EqualAreaPair>& pairs() const { return pairs_; }
    const std::vector<ShockRecord>& shocks() const { return shocks_; }

    /// Weak solution value at abscissa x (left limit exactly at shocks).
    double eval(double x) const;

    /// Parameter window covered by the arcs: the node range extended to
    /// any pair bracket that reaches into the constant tails.
    double window_lo() const { return window_lo_; }
    double window_hi() const { return window_hi_; }

    /// Area of the projected solution over the parameter window; equals
    /// the curve's area over the same window up to the pair residuals.
    double total_area() const;

    /// Abscissa extent covered by arcs and shocks.
    double x_min() const;
    double x_max() const;

private:
    double window_lo_ = 0.0;
    double window_hi_ = 0.0;
    CurvePtr curve_;
    double t_;
    std::vector<EqualAreaPair> pairs_;
    std::vector<Arc> arcs_;
    std::vector<ShockRecord> shocks_;
};

WeakSolutionView project_weak_solution(CurvePtr curve, double t);

/// New curve at t_created = t: the projected arcs are kept exactly
/// (frozen evaluators over the parent curve, same parameters) and each
/// shock becomes a fresh vertical segment. Total area is preserved to
/// quadrature tolerance.
CurvePtr reinitialize(CurvePtr curve, double t, const WeakSolutionView& view,
                      int k_per_jump = 16);

enum class ReinitPolicy { Never, AfterCollision, EveryOutput };

struct TrackOptions {
    ReinitPolicy reinit = ReinitPolicy::Never;
    double collision_time_tol = 1e-12;
};

struct CollisionEvent {
    double t_star = 0.0;
    double x_star = 0.0;
    std::vector<int> parents;
    int merged_id = -1;
};

/// Snapshot of one output time inside track_shocks.
struct TrackOutput {
    double t = 0.0;
    CurvePtr frame;                    // curve active at this time
    std::vector<EqualAreaPair> pairs;  // located pairs
    std::vector<ShockRecord> records;  // pairs with ids threaded in time
};

struct TrackResult {
    std::vector<TrackOutput> outputs;
    std::vector<CollisionEvent> collisions;
    CurvePtr final_frame;

    /// Records of one shock id across time, in time order.
    std::vector<ShockRecord> series(int id) const;
    std::vector<int> ids() const;
};

/// Locates shocks at each output time, threads identities between
/// consecutive times by parameter-bracket overlap, merges colliding
/// shocks (collision time refined by bisection on bracket-overlap
/// onset) and applies the reinitialization policy.
TrackResult track_shocks(CurvePtr curve, const std::vector<double>& output_times,
                         const TrackOptions& options = {});

/// Weak-solution branch as a function of x with slope access.
struct ArcFunction {
    std::function<double(double)> value;
    std::function<double(double)> slope;
};

struct ShockState {
    double x = 0.0;
    double uL = 0.0;
    double uR = 0.0;
    double t = 0.0;
};

struct AppendixDiagnostics {
    Polynomial shock_poly;
    double residual = 0.0;
    double a1 = 0.0;  // flowed shock-line bracket
    double b1 = 0.0;
};

struct AppendixStep {
    double X_new = 0.0;
    AppendixDiagnostics diagnostics;
};

/// Direct root-finding advance of an isolated shock over one step dt:
/// cubic Hermite interpolants of the flowed left/right arcs and of the
/// flowed shock line turn the equal-area condition into a polynomial
/// whose unique root in the flowed bracket is the new shock position.
/// Throws NoRootInBracket / MultipleRoots on bracket contamination.
AppendixStep appendix_root_shock(const FluxModel& flux,
                                 const ArcFunction& left_arc,
                                 const ArcFunction& right_arc,
                                 const ShockState& state, double dt,
                                 int order = 3);

/// Appendix-mode tracking over output times (single isolated shock).
/// The first shocked output is located with the flow pipeline; each
/// later output advances the shock by appendix_root_shock with arcs
/// read off the exact curve.
std::vector<ShockRecord> track_shock_appendix(CurvePtr curve,
                                              const std::vector<double>& output_times);

}  // namespace eqarea

#endif
