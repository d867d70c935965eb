#ifndef EQAREA_GEOMETRY_HPP
#define EQAREA_GEOMETRY_HPP

#include <vector>

#include "eqarea/curve.hpp"

namespace eqarea {

/// Maximal parameter interval where x_s < 0 (the curve is multivalued
/// over the abscissa window [x_fold_left, x_fold_right]).
struct OverturnRegion {
    double s_lo = 0.0;
    double s_hi = 0.0;
    double x_fold_left = 0.0;   // x(s_hi, t), the local minimum
    double x_fold_right = 0.0;  // x(s_lo, t), the local maximum
};

/// The three parameters where a vertical line meets an S-curve fold.
struct TripleIntersection {
    double s0 = 0.0;
    double s_star = 0.0;
    double s1 = 0.0;
    double X = 0.0;
};

/// Maximal parameter span over which x(s, t) is monotone. sign is the
/// sign of x_s inside (0 for degenerate verticals at zero elapsed time).
struct MonotoneSegment {
    double s_lo = 0.0;
    double s_hi = 0.0;
    int sign = 1;
};

struct CurveScan {
    std::vector<MonotoneSegment> segments;
    std::vector<OverturnRegion> regions;
};

/// Partition of the curve at time t into monotone spans, with sign
/// changes located to 1e-12 in s.
CurveScan scan_curve(const ParametricCurve& curve, double t,
                     int samples_per_track = 1024);

/// All parameters s (sorted) with x(s, t) = X, including the constant
/// tails. Crossings are resolved to 1e-13 in s.
std::vector<double> vertical_line_crossings(const ParametricCurve& curve,
                                            double t, double X,
                                            const CurveScan& scan);

std::vector<OverturnRegion> find_overturned_regions(const ParametricCurve& curve,
                                                    double t);

/// The three crossing parameters of the vertical line at X through an
/// S-curve fold, with the slope-sign and state-ordering conditions
/// verified. Throws NotSCurve when the line crosses the curve a number
/// of times other than three.
TripleIntersection triple_intersection(const ParametricCurve& curve, double t,
                                       double X, const OverturnRegion& region);
TripleIntersection triple_intersection(const ParametricCurve& curve, double t,
                                       double X, const OverturnRegion& region,
                                       const CurveScan& scan);

/// Signed area about the candidate shock line (Green's-theorem route):
///   1/2 int_{s0}^{s1} (x u' - x_s u) ds
/// + 1/2 (x(s*) (u(s0) - u(s1)) + u(s*) (x(s1) - x(s0))).
/// Negative when the line sits left of the equal-area position,
/// strictly increasing in X across the fold.
double signed_area_adif(const ParametricCurve& curve, double t,
                        const TripleIntersection& tri);

/// Parametric area int_{s_a}^{s_b} u x_s ds. Uses the exact closed form
/// (profile antiderivative plus the legendre time term) where available
/// and adaptive quadrature elsewhere.
double multivalued_area(const ParametricCurve& curve, double t,
                        double s_a, double s_b);

/// A vertical-line replacement pair of the generalized equal-area
/// principle: x(s0,t) = x(s1,t) = X, zero parametric area in between,
/// u(s0) > u(s1), outward slopes positive.
struct EqualAreaPair {
    double s0 = 0.0;
    double s1 = 0.0;
    double X = 0.0;
    double uL = 0.0;
    double uR = 0.0;
    double window_lo = 0.0;  // abscissa window the root was isolated in
    double window_hi = 0.0;
    std::vector<std::size_t> region_indices;  // folds spanned by the pair
};

/// One pair per discontinuity of the weak solution. Clusters of folds
/// whose local pairs would interleave are merged and re-solved jointly
/// until the replacement yields a single-valued function. Throws
/// ProjectionInconsistent when no consistent pair set exists.
std::vector<EqualAreaPair> equal_area_pairs(const ParametricCurve& curve, double t);

}  // namespace eqarea

#endif
