#include "eqarea/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eqarea/interpolate.hpp"

namespace eqarea {

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Locates the sign change of x_s inside one track to 1e-12 in s.
double bisect_slope_flip(const ParametricCurve& curve, std::size_t track,
                         double t, double lo, double hi, int sign_lo) {
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-12) return mid;
        int sm = sign_of(curve.slope_x_on_track(track, mid, t));
        if (sm == sign_lo || sm == 0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

CurveScan scan_curve(const ParametricCurve& curve, double t,
                     int samples_per_track) {
    std::vector<MonotoneSegment> raw;
    const auto& tracks = curve.tracks();
    for (std::size_t ti = 0; ti < tracks.size(); ++ti) {
        const Track& tr = *tracks[ti];
        if (tr.is_vertical()) {
            double mid = 0.5 * (tr.s_begin() + tr.s_end());
            raw.push_back({tr.s_begin(), tr.s_end(),
                           sign_of(curve.slope_x_on_track(ti, mid, t))});
            continue;
        }
        const double a = tr.s_begin();
        const double b = tr.s_end();
        const int m = samples_per_track;
        double seg_start = a;
        int cur_sign = 0;
        double prev_s = a;
        for (int i = 0; i <= m; ++i) {
            double s = a + (b - a) * static_cast<double>(i) / m;
            int sg = sign_of(curve.slope_x_on_track(ti, s, t));
            if (sg == 0) { prev_s = s; continue; }  // tangency: keep scanning
            if (cur_sign == 0) {
                cur_sign = sg;
            } else if (sg != cur_sign) {
                double flip = bisect_slope_flip(curve, ti, t, prev_s, s, cur_sign);
                raw.push_back({seg_start, flip, cur_sign});
                seg_start = flip;
                cur_sign = sg;
            }
            prev_s = s;
        }
        if (cur_sign == 0) cur_sign = 1;  // flat in x_s over the whole track
        raw.push_back({seg_start, b, cur_sign});
    }

    CurveScan scan;
    for (const MonotoneSegment& seg : raw) {
        if (!scan.segments.empty() && scan.segments.back().sign == seg.sign) {
            scan.segments.back().s_hi = seg.s_hi;
        } else {
            scan.segments.push_back(seg);
        }
    }
    for (const MonotoneSegment& seg : scan.segments) {
        if (seg.sign < 0) {
            OverturnRegion r;
            r.s_lo = seg.s_lo;
            r.s_hi = seg.s_hi;
            r.x_fold_right = curve.evaluate(seg.s_lo, t).x;
            r.x_fold_left = curve.evaluate(seg.s_hi, t).x;
            scan.regions.push_back(r);
        }
    }
    return scan;
}

std::vector<OverturnRegion> find_overturned_regions(const ParametricCurve& curve,
                                                    double t) {
    return scan_curve(curve, t).regions;
}

std::vector<double> vertical_line_crossings(const ParametricCurve& curve,
                                            double t, double X,
                                            const CurveScan& scan) {
    std::vector<double> out;
    const double s_begin = curve.s_begin();
    const double s_end = curve.s_end();
    const double x_first = curve.evaluate(s_begin, t).x;
    const double x_last = curve.evaluate(s_end, t).x;

    if (X < x_first) out.push_back(s_begin - (x_first - X));

    for (const MonotoneSegment& seg : scan.segments) {
        if (seg.sign == 0) continue;  // zero x-width (vertical at zero elapsed time)
        double x_lo = curve.evaluate(seg.s_lo, t).x;
        double x_hi = curve.evaluate(seg.s_hi, t).x;
        double f_lo = x_lo - X;
        double f_hi = x_hi - X;
        if (f_lo == 0.0) { out.push_back(seg.s_lo); continue; }
        if (f_hi == 0.0) continue;  // owned by the next segment's lower end
        if ((f_lo > 0.0) == (f_hi > 0.0)) continue;
        double lo = seg.s_lo, hi = seg.s_hi;
        bool lo_neg = f_lo < 0.0;
        for (int it = 0; it < 90 && hi - lo > 1e-14; ++it) {
            double mid = 0.5 * (lo + hi);
            double fm = curve.evaluate(mid, t).x - X;
            if (fm == 0.0) { lo = hi = mid; break; }
            if ((fm < 0.0) == lo_neg) lo = mid; else hi = mid;
            if (hi - lo <= 1e-13) break;
        }
        out.push_back(0.5 * (lo + hi));
    }

    if (X > x_last) out.push_back(s_end + (X - x_last));

    std::sort(out.begin(), out.end());
    std::vector<double> dedup;
    for (double s : out)
        if (dedup.empty() || s - dedup.back() > 1e-11 * std::max(1.0, std::abs(s)))
            dedup.push_back(s);
    return dedup;
}

namespace {

// Integrand x u' - x_s u of the Green's-theorem signed area, valid on
// tracks and on the constant tails.
double adif_integrand(const ParametricCurve& curve, double t, double s) {
    if (s < curve.s_begin() || s > curve.s_end()) {
        double u = s < curve.s_begin() ? curve.tail_left_state()
                                       : curve.tail_right_state();
        return -u;  // x * 0 - 1 * u
    }
    std::size_t ti = curve.track_index(s);
    const Track& tr = *curve.tracks()[ti];
    CurvePoint p = curve.evaluate_on_track(ti, s, t);
    return p.x * tr.du(s) - curve.slope_x_on_track(ti, s, t) * p.u;
}

// Splits [a, b] at track junctions so quadrature only ever sees smooth
// integrands.
std::vector<double> smooth_breaks(const ParametricCurve& curve, double a, double b) {
    std::vector<double> cuts{a};
    for (double j : curve.junction_params())
        if (j > a && j < b) cuts.push_back(j);
    if (curve.s_begin() > a && curve.s_begin() < b) cuts.push_back(curve.s_begin());
    if (curve.s_end() > a && curve.s_end() < b) cuts.push_back(curve.s_end());
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

}  // namespace

double signed_area_adif(const ParametricCurve& curve, double t,
                        const TripleIntersection& tri) {
    if (!(tri.s0 <= tri.s_star && tri.s_star <= tri.s1))
        throw SpecError("signed_area_adif: triple not ordered");
    std::vector<double> cuts = smooth_breaks(curve, tri.s0, tri.s1);
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] <= cuts[i]) continue;
        integral += adaptive_quadrature(
            [&](double s) { return adif_integrand(curve, t, s); },
            cuts[i], cuts[i + 1], 1e-13);
    }
    CurvePoint p0 = curve.evaluate(tri.s0, t);
    CurvePoint ps = curve.evaluate(tri.s_star, t);
    CurvePoint p1 = curve.evaluate(tri.s1, t);
    double boundary = ps.x * (p0.u - p1.u) + ps.u * (p1.x - p0.x);
    return 0.5 * integral + 0.5 * boundary;
}

double multivalued_area(const ParametricCurve& curve, double t,
                        double s_a, double s_b) {
    if (!(s_a < s_b)) throw SpecError("multivalued_area: s_a < s_b required");
    const double tau = t - curve.created_time();
    double total = 0.0;

    // Constant-tail spans contribute u * (span) with no time term.
    double a = s_a, b = s_b;
    if (a < curve.s_begin()) {
        double hi = std::min(b, curve.s_begin());
        total += curve.tail_left_state() * (hi - a);
        a = hi;
    }
    if (b > curve.s_end()) {
        double lo = std::max(a, curve.s_end());
        total += curve.tail_right_state() * (b - lo);
        b = lo;
    }
    if (a >= b) return total;

    std::vector<double> cuts = smooth_breaks(curve, a, b);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double lo = cuts[i], hi = cuts[i + 1];
        if (hi <= lo) continue;
        std::size_t ti = curve.track_index(0.5 * (lo + hi));
        const Track& tr = *curve.tracks()[ti];
        double base;
        if (auto closed = tr.area0(lo, hi)) {
            base = *closed;
        } else {
            base = adaptive_quadrature(
                [&](double s) { return tr.u(s) * tr.dx0(s); }, lo, hi, 1e-13);
        }
        total += base + tau * (curve.flux().legendre(tr.u(hi)) -
                               curve.flux().legendre(tr.u(lo)));
    }
    return total;
}

TripleIntersection triple_intersection(const ParametricCurve& curve, double t,
                                       double X, const OverturnRegion& region) {
    return triple_intersection(curve, t, X, region, scan_curve(curve, t));
}

TripleIntersection triple_intersection(const ParametricCurve& curve, double t,
                                       double X, const OverturnRegion& region,
                                       const CurveScan& scan) {
    if (!(X > region.x_fold_left && X < region.x_fold_right))
        throw OutOfRange("triple_intersection: X outside the fold extent");
    std::vector<double> crossings = vertical_line_crossings(curve, t, X, scan);
    if (crossings.size() != 3)
        throw NotSCurve("vertical line at X = " + std::to_string(X) + " crosses " +
                        std::to_string(crossings.size()) + " times, expected 3");
    TripleIntersection tri;
    tri.s0 = crossings[0];
    tri.s_star = crossings[1];
    tri.s1 = crossings[2];
    tri.X = X;
    double u0 = curve.evaluate(tri.s0, t).u;
    double us = curve.evaluate(tri.s_star, t).u;
    double u1 = curve.evaluate(tri.s1, t).u;
    if (!(u0 > us && us > u1))
        throw NotSCurve("crossing states not strictly decreasing along the parametrization");
    if (!(curve.slope_x(tri.s_star, t) < 0.0))
        throw NotSCurve("middle crossing not on the overturned branch");
    if (!(curve.slope_x(tri.s0, t) > 0.0) || !(curve.slope_x(tri.s1, t) > 0.0))
        throw NotSCurve("outer crossings not on forward branches");
    return tri;
}

namespace {

struct PairEnds {
    double s0 = 0.0;
    double s1 = 0.0;
    bool ok = false;
};

PairEnds pair_ends(const ParametricCurve& curve, double t, const CurveScan& scan,
                   double sigma_first, double sigma_last, double X) {
    PairEnds ends;
    std::vector<double> crossings = vertical_line_crossings(curve, t, X, scan);
    const double slack = 1e-9 * std::max(1.0, std::abs(sigma_first) + std::abs(sigma_last));
    double best0 = -std::numeric_limits<double>::infinity();
    double best1 = std::numeric_limits<double>::infinity();
    for (double s : crossings) {
        if (s <= sigma_first + slack && s > best0) best0 = s;
        if (s >= sigma_last - slack && s < best1) best1 = s;
    }
    if (!std::isfinite(best0) || !std::isfinite(best1) || !(best0 < best1)) return ends;
    ends.s0 = best0;
    ends.s1 = best1;
    ends.ok = true;
    return ends;
}

struct ClusterSolve {
    bool ok = false;
    EqualAreaPair pair;
};

// Root of the zero-parametric-area condition over the cluster's
// abscissa window. Q(X) = int_{s0(X)}^{s1(X)} u x_s ds is strictly
// decreasing (dQ/dX = u(s1) - u(s0) < 0), so bisection is safe.
ClusterSolve solve_cluster(const ParametricCurve& curve, double t,
                           const CurveScan& scan,
                           const std::vector<OverturnRegion>& regions,
                           const std::vector<std::size_t>& members) {
    ClusterSolve out;
    const OverturnRegion& first = regions[members.front()];
    const OverturnRegion& last = regions[members.back()];
    double window_lo = last.x_fold_left;
    double window_hi = first.x_fold_right;
    if (!(window_lo < window_hi)) return out;

    auto q_at = [&](double X, PairEnds* ends_out) -> double {
        PairEnds ends = pair_ends(curve, t, scan, first.s_lo, last.s_hi, X);
        if (!ends.ok) throw NoRoot("equal-area pair endpoints missing");
        if (ends_out) *ends_out = ends;
        return multivalued_area(curve, t, ends.s0, ends.s1);
    };

    const double width = window_hi - window_lo;
    double lo = window_lo + 1e-9 * width;
    double hi = window_hi - 1e-9 * width;
    double q_lo, q_hi;
    try {
        q_lo = q_at(lo, nullptr);
        q_hi = q_at(hi, nullptr);
    } catch (const NoRoot&) {
        return out;
    }
    if (!(q_lo > 0.0) || !(q_hi < 0.0)) return out;

    double X = 0.0;
    for (int it = 0; it < 80 && hi - lo > 1e-13 * width; ++it) {
        X = 0.5 * (lo + hi);
        double q = q_at(X, nullptr);
        if (q > 0.0) lo = X; else hi = X;
    }
    X = 0.5 * (lo + hi);

    // Newton polish: dQ/dX = u(s1) - u(s0).
    PairEnds ends;
    for (int it = 0; it < 3; ++it) {
        double q = q_at(X, &ends);
        double u0 = curve.evaluate(ends.s0, t).u;
        double u1 = curve.evaluate(ends.s1, t).u;
        double d = u1 - u0;
        if (d == 0.0) break;
        double next = X - q / d;
        if (next > window_lo && next < window_hi) X = next; else break;
    }
    q_at(X, &ends);

    EqualAreaPair pair;
    pair.s0 = ends.s0;
    pair.s1 = ends.s1;
    pair.X = X;
    pair.uL = curve.evaluate(ends.s0, t).u;
    pair.uR = curve.evaluate(ends.s1, t).u;
    pair.window_lo = window_lo;
    pair.window_hi = window_hi;
    pair.region_indices = members;
    if (!(pair.uL > pair.uR)) return out;
    out.ok = true;
    out.pair = pair;
    return out;
}

}  // namespace

std::vector<EqualAreaPair> equal_area_pairs(const ParametricCurve& curve, double t) {
    CurveScan scan = scan_curve(curve, t);
    if (scan.regions.empty()) return {};

    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t i = 0; i < scan.regions.size(); ++i) clusters.push_back({i});

    std::vector<EqualAreaPair> pairs;
    const std::size_t max_rounds = scan.regions.size() + 2;
    for (std::size_t round = 0; round < max_rounds; ++round) {
        pairs.clear();
        std::vector<bool> failed(clusters.size(), false);
        bool any_failed = false;
        for (std::size_t c = 0; c < clusters.size(); ++c) {
            ClusterSolve solve = solve_cluster(curve, t, scan, scan.regions, clusters[c]);
            if (!solve.ok) {
                failed[c] = true;
                any_failed = true;
                pairs.push_back({});  // placeholder keeps indices aligned
            } else {
                pairs.push_back(solve.pair);
            }
        }

        std::size_t merge_at = clusters.size();  // merge clusters[merge_at], [merge_at+1]
        if (any_failed) {
            for (std::size_t c = 0; c < clusters.size(); ++c) {
                if (!failed[c]) continue;
                if (c + 1 < clusters.size()) { merge_at = c; break; }
                if (c > 0) { merge_at = c - 1; break; }
                throw ProjectionInconsistent(
                    "equal_area_pairs: no admissible pair for the only fold cluster");
            }
        } else {
            for (std::size_t c = 0; c + 1 < clusters.size(); ++c) {
                if (pairs[c].s1 >= pairs[c + 1].s0 || pairs[c].X >= pairs[c + 1].X) {
                    merge_at = c;
                    break;
                }
            }
        }

        if (merge_at == clusters.size()) break;  // consistent
        clusters[merge_at].insert(clusters[merge_at].end(),
                                  clusters[merge_at + 1].begin(),
                                  clusters[merge_at + 1].end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(merge_at) + 1);
        if (clusters.empty())
            throw ProjectionInconsistent("equal_area_pairs: cluster merging exhausted");
    }

    for (const EqualAreaPair& p : pairs)
        if (p.region_indices.empty())
            throw ProjectionInconsistent("equal_area_pairs: unresolved fold cluster");

    // A-posteriori single-valuedness: x strictly increasing over the
    // remaining arcs once each pair is replaced by a vertical line.
    auto check_arc = [&](double s_lo, double s_hi) {
        if (s_hi <= s_lo) return;
        const int m = 32;
        double prev = curve.evaluate(s_lo, t).x;
        for (int i = 1; i <= m; ++i) {
            double s = s_lo + (s_hi - s_lo) * static_cast<double>(i) / m;
            double x = curve.evaluate(s, t).x;
            if (x < prev - 1e-10 * std::max(1.0, std::abs(prev)))
                throw ProjectionInconsistent(
                    "projection leaves a multivalued arc near s = " + std::to_string(s));
            prev = x;
        }
    };
    check_arc(curve.s_begin(), pairs.front().s0);
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i)
        check_arc(pairs[i].s1, pairs[i + 1].s0);
    check_arc(pairs.back().s1, curve.s_end());

    return pairs;
}

}  // namespace eqarea
