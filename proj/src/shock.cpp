#include "eqarea/shock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace eqarea {

std::string ShockRecord::provenance() const {
    if (parents.empty()) return "isolated";
    std::ostringstream os;
    os << "merged(";
    for (std::size_t i = 0; i < parents.size(); ++i) {
        if (i) os << ",";
        os << parents[i];
    }
    os << ")";
    return os.str();
}

namespace {

void check_lax(const FluxModel& flux, const ShockRecord& rec) {
    double slack = 1e-12 * std::max({1.0, std::abs(flux.dF(rec.uL)),
                                     std::abs(flux.dF(rec.uR))});
    if (!(flux.dF(rec.uR) < rec.speed + slack && rec.speed < flux.dF(rec.uL) + slack))
        throw SolverError("emitted shock violates the Lax condition at t = " +
                          std::to_string(rec.t));
}

ShockRecord record_from_pair(const FluxModel& flux, double t,
                             const EqualAreaPair& pair) {
    ShockRecord rec;
    rec.t = t;
    rec.X = pair.X;
    rec.uL = pair.uL;
    rec.uR = pair.uR;
    rec.speed = rh_speed(flux, pair.uL, pair.uR);
    check_lax(flux, rec);
    return rec;
}

}  // namespace

EqualAreaPair locate_shock_pair(const ParametricCurve& curve, double t,
                                const OverturnRegion& region) {
    const double width = region.x_fold_right - region.x_fold_left;
    if (!(width > 0.0)) throw NoRoot("locate_shock: empty fold");
    const double inset = 1e-9 * width;
    double lo = region.x_fold_left + inset;
    double hi = region.x_fold_right - inset;

    const CurveScan scan = scan_curve(curve, t);
    auto adif = [&](double X, TripleIntersection* tri_out) {
        TripleIntersection tri = triple_intersection(curve, t, X, region, scan);
        if (tri_out) *tri_out = tri;
        return signed_area_adif(curve, t, tri);
    };

    double a_lo = adif(lo, nullptr);
    double a_hi = adif(hi, nullptr);
    if (!(a_lo < 0.0) || !(a_hi > 0.0))
        throw NoRoot("locate_shock: signed area has no sign change over the fold");

    // Bracket-guarded Newton on A_Dif (monotone increasing,
    // d A_Dif / d X = u(s0) - u(s1) > 0), bisection fallback.
    TripleIntersection tri;
    double X = 0.5 * (lo + hi);
    double a = adif(X, &tri);
    for (int it = 0; it < 80; ++it) {
        if (a < 0.0) lo = X; else hi = X;
        double d = curve.evaluate(tri.s0, t).u - curve.evaluate(tri.s1, t).u;
        double next = d > 0.0 ? X - a / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        bool converged = std::abs(next - X) <= 1e-15 * std::max(1.0, std::abs(X)) ||
                         hi - lo <= 1e-14 * width;
        X = next;
        a = adif(X, &tri);
        if (converged) break;
    }

    EqualAreaPair pair;
    pair.s0 = tri.s0;
    pair.s1 = tri.s1;
    pair.X = X;
    pair.uL = curve.evaluate(tri.s0, t).u;
    pair.uR = curve.evaluate(tri.s1, t).u;
    pair.window_lo = region.x_fold_left;
    pair.window_hi = region.x_fold_right;
    return pair;
}

ShockRecord locate_shock(const ParametricCurve& curve, double t,
                         const OverturnRegion& region) {
    return record_from_pair(curve.flux(), t, locate_shock_pair(curve, t, region));
}

namespace {

// Zero-width pairs for down-jump verticals at zero elapsed time (the
// fold has not opened yet; the shock sits exactly at the jump).
std::vector<EqualAreaPair> degenerate_jump_pairs(const ParametricCurve& curve) {
    std::vector<EqualAreaPair> out;
    for (const TrackPtr& tp : curve.tracks()) {
        auto jump = std::dynamic_pointer_cast<const JumpTrack>(tp);
        if (!jump || !jump->is_down_jump()) continue;
        EqualAreaPair p;
        p.s0 = jump->s_begin();
        p.s1 = jump->s_end();
        p.X = jump->abscissa();
        p.uL = jump->u(jump->s_begin());
        p.uR = jump->u(jump->s_end());
        p.window_lo = p.window_hi = p.X;
        out.push_back(p);
    }
    return out;
}

void drop_degenerate(std::vector<EqualAreaPair>& pairs) {
    pairs.erase(std::remove_if(pairs.begin(), pairs.end(),
                               [](const EqualAreaPair& p) {
                                   return p.uL - p.uR <= kDegenerateJumpEps;
                               }),
                pairs.end());
}

}  // namespace

std::vector<EqualAreaPair> locate_pairs(const ParametricCurve& curve, double t) {
    if (t - curve.created_time() <= 0.0) {
        auto pairs = degenerate_jump_pairs(curve);
        drop_degenerate(pairs);
        return pairs;
    }
    std::vector<OverturnRegion> regions = find_overturned_regions(curve, t);
    if (regions.empty()) return {};

    std::vector<EqualAreaPair> pairs;
    bool fallback = false;
    try {
        for (std::size_t i = 0; i < regions.size(); ++i) {
            EqualAreaPair p = locate_shock_pair(curve, t, regions[i]);
            p.region_indices = {i};
            pairs.push_back(p);
        }
        for (std::size_t i = 0; i + 1 < pairs.size(); ++i)
            if (pairs[i].s1 >= pairs[i + 1].s0 || pairs[i].X >= pairs[i + 1].X)
                fallback = true;  // interleaved S-curve pairs: not actually S-curves
    } catch (const NotSCurve&) {
        fallback = true;
    } catch (const NoRoot&) {
        fallback = true;
    }
    if (fallback) pairs = equal_area_pairs(curve, t);
    drop_degenerate(pairs);
    return pairs;
}

WeakSolutionView::WeakSolutionView(CurvePtr curve, double t,
                                   std::vector<EqualAreaPair> pairs)
    : curve_(std::move(curve)), t_(t), pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end(),
              [](const EqualAreaPair& a, const EqualAreaPair& b) { return a.s0 < b.s0; });
    window_lo_ = curve_->s_begin();
    window_hi_ = curve_->s_end();
    if (!pairs_.empty()) {
        window_lo_ = std::min(window_lo_, pairs_.front().s0);
        window_hi_ = std::max(window_hi_, pairs_.back().s1);
    }
    double cursor = window_lo_;
    auto push_arc = [&](double s_lo, double s_hi) {
        if (!(s_hi > s_lo)) return;
        Arc arc{s_lo, s_hi, 0.0, 0.0};
        arc.x_lo = curve_->evaluate(arc.s_lo, t_).x;
        arc.x_hi = curve_->evaluate(arc.s_hi, t_).x;
        arcs_.push_back(arc);
    };
    for (const EqualAreaPair& p : pairs_) {
        push_arc(cursor, p.s0);
        cursor = p.s1;
    }
    push_arc(cursor, window_hi_);
    for (const EqualAreaPair& p : pairs_)
        shocks_.push_back(record_from_pair(curve_->flux(), t_, p));
}

double WeakSolutionView::eval(double x) const {
    // Shocks separate the arcs; take the left limit exactly at a shock.
    for (const ShockRecord& s : shocks_)
        if (x == s.X) return s.uL;
    for (const Arc& arc : arcs_) {
        if (x < arc.x_lo || x > arc.x_hi) continue;
        double lo = arc.s_lo, hi = arc.s_hi;
        for (int it = 0; it < 90 && hi - lo > 1e-14; ++it) {
            double mid = 0.5 * (lo + hi);
            if (curve_->evaluate(mid, t_).x < x) lo = mid; else hi = mid;
        }
        return curve_->evaluate(0.5 * (lo + hi), t_).u;
    }
    // Off every arc: the solution continues as the constant state of
    // the nearest discontinuity side (tails included).
    double u = curve_->tail_left_state();
    for (const ShockRecord& s : shocks_) {
        if (x < s.X) return u;
        u = s.uR;
    }
    return shocks_.empty() ? curve_->tail_right_state() : u;
}

double WeakSolutionView::total_area() const {
    double area = 0.0;
    for (const Arc& arc : arcs_)
        if (arc.s_hi > arc.s_lo)
            area += multivalued_area(*curve_, t_, arc.s_lo, arc.s_hi);
    return area;
}

double WeakSolutionView::x_min() const {
    double m = std::numeric_limits<double>::infinity();
    for (const Arc& a : arcs_) m = std::min(m, a.x_lo);
    for (const ShockRecord& s : shocks_) m = std::min(m, s.X);
    return m;
}

double WeakSolutionView::x_max() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const Arc& a : arcs_) m = std::max(m, a.x_hi);
    for (const ShockRecord& s : shocks_) m = std::max(m, s.X);
    return m;
}

WeakSolutionView project_weak_solution(CurvePtr curve, double t) {
    return WeakSolutionView(curve, t, locate_pairs(*curve, t));
}

namespace {

/// Arc of a parent curve frozen at a fixed time; evaluating the child
/// at its own elapsed time reproduces the parent's flow exactly.
class FrozenArcTrack final : public Track {
public:
    FrozenArcTrack(CurvePtr base, double t_frozen, double s_lo, double s_hi)
        : Track(s_lo, s_hi), base_(std::move(base)), t_(t_frozen) {}

    double x0(double s) const override { return base_->evaluate(s, t_).x; }
    double dx0(double s) const override { return base_->slope_x(s, t_); }
    double u(double s) const override { return base_->evaluate(s, t_).u; }
    double du(double s) const override { return base_->slope_u(s); }
    bool is_vertical() const override { return false; }

private:
    CurvePtr base_;
    double t_;
};

}  // namespace

CurvePtr reinitialize(CurvePtr curve, double t, const WeakSolutionView& view,
                      int k_per_jump) {
    if (k_per_jump < 2) throw SpecError("reinitialize: k_per_jump >= 2 required");
    NodeSet ns;
    ns.tail_left = curve->tail_left_state();
    ns.tail_right = curve->tail_right_state();

    const std::vector<Node>& old_nodes = curve->nodes();

    auto push_node = [&](Node n) {
        if (!ns.nodes.empty() && n.s <= ns.nodes.back().s) return false;
        ns.nodes.push_back(n);
        return true;
    };
    auto arc_node = [&](double s, NodeKind kind) {
        Node n;
        n.s = s;
        n.x0 = curve->evaluate(s, t).x;
        n.u = curve->evaluate(s, t).u;
        n.du = curve->slope_u(s);
        n.kind = kind;
        return n;
    };

    // Interleave arcs (frozen, nodes reused) and fresh verticals.
    struct Span {
        bool vertical;
        double s_lo, s_hi;
        const EqualAreaPair* pair;
    };
    std::vector<Span> spans;
    {
        double cursor = curve->s_begin();
        for (const EqualAreaPair& p : view.pairs()) {
            if (p.s0 > cursor) spans.push_back({false, cursor, p.s0, nullptr});
            spans.push_back({true, p.s0, p.s1, &p});
            cursor = p.s1;
        }
        if (cursor < curve->s_end())
            spans.push_back({false, cursor, curve->s_end(), nullptr});
    }
    if (spans.empty()) throw ProjectionInconsistent("reinitialize: nothing to sample");

    for (const Span& span : spans) {
        std::size_t first_new_interval = ns.nodes.empty() ? 0 : ns.nodes.size() - 1;
        if (span.vertical) {
            const EqualAreaPair& p = *span.pair;
            ns.tracks.push_back(std::make_shared<JumpTrack>(p.s0, p.s1, p.X, p.uL, p.uR));
            for (int i = 0; i < k_per_jump; ++i) {
                double frac = static_cast<double>(i) / (k_per_jump - 1);
                Node n;
                n.s = p.s0 + (p.s1 - p.s0) * frac;
                n.x0 = p.X;
                n.u = p.uL + (p.uR - p.uL) * frac;
                n.du = (p.uR - p.uL) / (p.s1 - p.s0);
                n.kind = i == 0 ? NodeKind::JumpTop
                       : i == k_per_jump - 1 ? NodeKind::JumpBottom : NodeKind::Interior;
                if (i == 0 && !ns.nodes.empty()) {
                    ns.nodes.back().kind = NodeKind::JumpTop;
                } else {
                    push_node(n);
                }
            }
        } else {
            ns.tracks.push_back(
                std::make_shared<FrozenArcTrack>(curve, t, span.s_lo, span.s_hi));
            if (ns.nodes.empty() || ns.nodes.back().s < span.s_lo)
                push_node(arc_node(span.s_lo, NodeKind::Interior));
            for (const Node& n : old_nodes) {
                if (n.s <= span.s_lo + 1e-12 || n.s >= span.s_hi - 1e-12) continue;
                push_node(arc_node(n.s, NodeKind::Interior));
            }
            push_node(arc_node(span.s_hi, NodeKind::Interior));
        }
        // Exact interval areas in the frozen frame.
        for (std::size_t i = first_new_interval; i + 1 < ns.nodes.size(); ++i) {
            if (span.vertical) {
                ns.interval_area.push_back(0.0);
            } else {
                ns.interval_area.push_back(
                    multivalued_area(*curve, t, ns.nodes[i].s, ns.nodes[i + 1].s));
            }
        }
    }

    auto next = std::make_shared<ParametricCurve>(curve->flux(), std::move(ns), t);
    double before = multivalued_area(*curve, t, next->s_begin(), next->s_end());
    double after = next->total_area(t);
    if (std::abs(after - before) > 1e-10 * std::max(1.0, std::abs(before)))
        throw ProjectionInconsistent("reinitialize: area changed by " +
                                     std::to_string(after - before));
    return next;
}

std::vector<ShockRecord> TrackResult::series(int id) const {
    std::vector<ShockRecord> out;
    for (const TrackOutput& o : outputs)
        for (const ShockRecord& r : o.records)
            if (r.id == id) out.push_back(r);
    return out;
}

std::vector<int> TrackResult::ids() const {
    std::vector<int> out;
    for (const TrackOutput& o : outputs)
        for (const ShockRecord& r : o.records)
            if (std::find(out.begin(), out.end(), r.id) == out.end())
                out.push_back(r.id);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

bool intervals_overlap(double a_lo, double a_hi, double b_lo, double b_hi) {
    return std::max(a_lo, b_lo) <= std::min(a_hi, b_hi);
}

struct ActiveShock {
    int id;
    EqualAreaPair pair;
    std::vector<int> parents;
};

// Bisection on the onset of bracket overlap: before the collision the
// span holds several pairs, after it a single merged one.
CollisionEvent refine_collision(const ParametricCurve& frame, double t_before,
                                double t_after, const EqualAreaPair& merged,
                                std::vector<int> parents, int merged_id,
                                double time_tol) {
    auto count_in_span = [&](double t) {
        std::size_t n = 0;
        for (const EqualAreaPair& p : locate_pairs(frame, t))
            if (intervals_overlap(p.s0, p.s1, merged.s0, merged.s1)) ++n;
        return n;
    };
    double lo = t_before, hi = t_after;
    std::size_t n_before = count_in_span(t_before);
    for (int it = 0; it < 80 && hi - lo > time_tol; ++it) {
        double mid = 0.5 * (lo + hi);
        if (count_in_span(mid) < n_before) hi = mid; else lo = mid;
    }
    CollisionEvent ev;
    ev.t_star = 0.5 * (lo + hi);
    ev.parents = std::move(parents);
    ev.merged_id = merged_id;
    // Position at the refined time from the (just-)merged pair.
    std::vector<EqualAreaPair> at_hi = locate_pairs(frame, hi);
    double best = std::numeric_limits<double>::infinity();
    for (const EqualAreaPair& p : at_hi) {
        if (!intervals_overlap(p.s0, p.s1, merged.s0, merged.s1)) continue;
        double d = std::abs(p.X - merged.X);
        if (d < best) { best = d; ev.x_star = p.X; }
    }
    return ev;
}

}  // namespace

TrackResult track_shocks(CurvePtr curve, const std::vector<double>& output_times,
                         const TrackOptions& options) {
    if (output_times.empty())
        throw SpecError("track_shocks: output times must be non-empty");
    for (std::size_t i = 0; i + 1 < output_times.size(); ++i)
        if (!(output_times[i] < output_times[i + 1]))
            throw SpecError("track_shocks: output times must be strictly increasing");
    if (output_times.front() < curve->created_time())
        throw SpecError("track_shocks: output before curve creation time");

    TrackResult result;
    CurvePtr cur = std::move(curve);
    std::vector<ActiveShock> active;
    int next_id = 0;
    double t_prev = cur->created_time();

    for (double t : output_times) {
        std::vector<EqualAreaPair> pairs = locate_pairs(*cur, t);

        TrackOutput out;
        out.t = t;
        out.frame = cur;
        out.pairs = pairs;

        // First pass: thread identities by parameter-bracket overlap.
        std::vector<std::vector<int>> matched(pairs.size());
        std::vector<bool> parent_used(active.size(), false);
        for (std::size_t i = 0; i < pairs.size(); ++i)
            for (std::size_t a = 0; a < active.size(); ++a)
                if (intervals_overlap(pairs[i].s0, pairs[i].s1,
                                      active[a].pair.s0, active[a].pair.s1)) {
                    matched[i].push_back(active[a].id);
                    parent_used[a] = true;
                }
        // Second pass: unmatched pairs adopt the nearest unused parent
        // (sparse outputs can open a gap between the brackets).
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (!matched[i].empty()) continue;
            std::size_t nearest = active.size();
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < active.size(); ++a) {
                if (parent_used[a]) continue;
                double d = std::abs(active[a].pair.X - pairs[i].X);
                if (d < best) { best = d; nearest = a; }
            }
            if (nearest < active.size()) {
                matched[i].push_back(active[nearest].id);
                parent_used[nearest] = true;
            }
        }

        bool collided = false;
        std::vector<ActiveShock> next_active;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const EqualAreaPair& p = pairs[i];
            ShockRecord rec = record_from_pair(cur->flux(), t, p);
            if (matched[i].size() == 1) {
                rec.id = matched[i].front();
                for (const ActiveShock& a : active)
                    if (a.id == rec.id) rec.parents = a.parents;
            } else if (matched[i].size() > 1) {
                rec.id = next_id++;
                rec.parents = matched[i];
                collided = true;
                result.collisions.push_back(refine_collision(
                    *cur, t_prev, t, p, matched[i], rec.id, options.collision_time_tol));
            } else {
                rec.id = next_id++;
            }
            out.records.push_back(rec);
            next_active.push_back({rec.id, p, rec.parents});
        }
        active = std::move(next_active);
        result.outputs.push_back(out);

        bool do_reinit = options.reinit == ReinitPolicy::EveryOutput ||
                         (options.reinit == ReinitPolicy::AfterCollision && collided);
        if (do_reinit) {
            WeakSolutionView view(cur, t, pairs);
            cur = reinitialize(cur, t, view);
            // Parameters are preserved by reinitialization, so the
            // active brackets remain valid in the new frame.
        }
        t_prev = t;
    }
    result.final_frame = cur;
    return result;
}

namespace {

// Value/slope of a flowed arc at abscissa x after time dt: solves
// xi + dF(arc(xi)) dt = x, which is monotone while the arc stays
// single-valued over the step.
struct FlowedArcSample {
    double value;
    double slope;
};

FlowedArcSample flow_arc_sample(const FluxModel& flux, const ArcFunction& arc,
                                double dt, double x_target, double xi_guess) {
    double xi = xi_guess;
    for (int it = 0; it < 100; ++it) {
        double g = arc.value(xi);
        double dg = arc.slope(xi);
        double mu = xi + flux.dF(g) * dt;
        double dmu = 1.0 + flux.d2F(g) * dg * dt;
        if (!(dmu > 0.0))
            throw SolverError("appendix_root_shock: arc overturns within the step");
        double step = (mu - x_target) / dmu;
        xi -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(xi))) break;
    }
    double g = arc.value(xi);
    double dg = arc.slope(xi);
    double dmu = 1.0 + flux.d2F(g) * dg * dt;
    return {g, dg / dmu};
}

}  // namespace

AppendixStep appendix_root_shock(const FluxModel& flux,
                                 const ArcFunction& left_arc,
                                 const ArcFunction& right_arc,
                                 const ShockState& state, double dt, int order) {
    if (order != 3)
        throw SpecError("appendix_root_shock: only cubic Hermite data (order 3) is available");
    if (!(dt > 0.0)) throw SpecError("appendix_root_shock: dt > 0 required");
    if (state.uL - state.uR <= kDegenerateJumpEps)
        throw DegenerateJump("appendix_root_shock: degenerate shock state");

    const double a1 = state.x + flux.dF(state.uR) * dt;
    const double b1 = state.x + flux.dF(state.uL) * dt;

    // Flowed shock line H(x) = F'^{-1}((x - x_prev)/dt) on [a1, b1].
    auto H = [&](double x) {
        return flux.inverse_speed((x - state.x) / dt, std::min(state.uR, state.uL),
                                  std::max(state.uR, state.uL));
    };
    auto dH = [&](double x) { return 1.0 / (dt * flux.d2F(H(x))); };

    FlowedArcSample f1_a = flow_arc_sample(flux, left_arc, dt, a1, state.x);
    FlowedArcSample f1_b = flow_arc_sample(flux, left_arc, dt, b1, state.x);
    FlowedArcSample f2_a = flow_arc_sample(flux, right_arc, dt, a1, state.x);
    FlowedArcSample f2_b = flow_arc_sample(flux, right_arc, dt, b1, state.x);

    Polynomial pf1 = hermite_cubic(a1, f1_a.value, f1_a.slope, b1, f1_b.value, f1_b.slope);
    Polynomial pf2 = hermite_cubic(a1, f2_a.value, f2_a.slope, b1, f2_b.value, f2_b.slope);
    Polynomial ph = hermite_cubic(a1, H(a1), dH(a1), b1, H(b1), dH(b1));

    Polynomial Af1 = pf1.antiderivative();
    Polynomial Af2 = pf2.antiderivative();
    Polynomial Ah = ph.antiderivative();

    // Equal-area root equation; the interior H terms cancel and only
    // boundary constants of the shock-line interpolant survive.
    double constant = (Af2(a1) - Ah(a1)) + (Ah(b1) - Af1(b1));
    Polynomial shock_poly = (Af1 - Af2) + Polynomial({constant});

    std::vector<double> roots = poly_roots_in_interval(shock_poly, a1, b1);
    if (roots.empty())
        throw NoRootInBracket("appendix_root_shock: no root in (" +
                              std::to_string(a1) + ", " + std::to_string(b1) + ")");
    if (roots.size() > 1)
        throw MultipleRoots("appendix_root_shock: " + std::to_string(roots.size()) +
                            " roots in the bracket");

    AppendixStep step;
    step.X_new = roots.front();
    step.diagnostics.shock_poly = shock_poly;
    step.diagnostics.residual = std::abs(shock_poly(step.X_new));
    step.diagnostics.a1 = a1;
    step.diagnostics.b1 = b1;
    return step;
}

namespace {

struct BranchSample {
    double u;
    double du_dx;
};

// State and x-slope on one branch of the weak solution, with junction
// parameters resolved toward the branch's own side and the constant
// tails included.
BranchSample branch_state(const ParametricCurve& curve, double s, double t,
                          bool right_branch) {
    if (s < curve.s_begin() || (s == curve.s_begin() && !right_branch))
        return {curve.tail_left_state(), 0.0};
    if (s > curve.s_end() || (s == curve.s_end() && right_branch))
        return {curve.tail_right_state(), 0.0};
    std::size_t ti = curve.track_index(s);
    const auto& tracks = curve.tracks();
    if (right_branch && ti + 1 < tracks.size() && s == tracks[ti]->s_end()) ++ti;
    double xs = curve.slope_x_on_track(ti, s, t);
    return {tracks[ti]->u(s), tracks[ti]->du(s) / xs};
}

// Parameter with x(s, t) = x_target on the monotone branch anchored at
// s_anchor (left branch: s <= anchor, right branch: s >= anchor).
double invert_branch(const ParametricCurve& curve, double t, double x_target,
                     double s_anchor, bool right_branch) {
    double x_anchor = curve.evaluate(s_anchor, t).x;
    double lo, hi;
    if (right_branch) {
        if (x_target <= x_anchor) return s_anchor;
        lo = s_anchor;
        double step = std::max(1.0, 0.125 * (curve.s_end() - curve.s_begin()));
        hi = s_anchor + step;
        for (int guard = 0; curve.evaluate(hi, t).x < x_target && guard < 80; ++guard) {
            step *= 2.0;
            hi = s_anchor + step;
        }
    } else {
        if (x_target >= x_anchor) return s_anchor;
        hi = s_anchor;
        double step = std::max(1.0, 0.125 * (curve.s_end() - curve.s_begin()));
        lo = s_anchor - step;
        for (int guard = 0; curve.evaluate(lo, t).x > x_target && guard < 80; ++guard) {
            step *= 2.0;
            lo = s_anchor - step;
        }
    }
    for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
        double mid = 0.5 * (lo + hi);
        if (curve.evaluate(mid, t).x < x_target) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

ArcFunction branch_as_function(CurvePtr curve, double t, double s_anchor,
                               bool right_branch) {
    ArcFunction arc;
    arc.value = [curve, t, s_anchor, right_branch](double x) {
        double s = invert_branch(*curve, t, x, s_anchor, right_branch);
        return branch_state(*curve, s, t, right_branch).u;
    };
    arc.slope = [curve, t, s_anchor, right_branch](double x) {
        double s = invert_branch(*curve, t, x, s_anchor, right_branch);
        return branch_state(*curve, s, t, right_branch).du_dx;
    };
    return arc;
}

}  // namespace

std::vector<ShockRecord> track_shock_appendix(CurvePtr curve,
                                              const std::vector<double>& output_times) {
    if (output_times.empty())
        throw SpecError("track_shock_appendix: output times must be non-empty");
    std::vector<ShockRecord> records;
    bool have_state = false;
    ShockState state;
    double s0 = 0.0, s1 = 0.0;

    for (double t : output_times) {
        if (!have_state) {
            std::vector<EqualAreaPair> pairs = locate_pairs(*curve, t);
            if (pairs.empty()) continue;
            if (pairs.size() > 1)
                throw SolverError("appendix mode supports a single isolated shock");
            const EqualAreaPair& p = pairs.front();
            state = {p.X, p.uL, p.uR, t};
            s0 = p.s0;
            s1 = p.s1;
            have_state = true;
            ShockRecord rec = record_from_pair(curve->flux(), t, p);
            rec.id = 0;
            records.push_back(rec);
            continue;
        }
        double dt = t - state.t;
        ArcFunction left = branch_as_function(curve, state.t, s0, false);
        ArcFunction right = branch_as_function(curve, state.t, s1, true);
        AppendixStep step = appendix_root_shock(curve->flux(), left, right, state, dt);

        // Refresh states and branch parameters at the new position.
        double s0_new = invert_branch(*curve, t, step.X_new, s0, false);
        double s1_new = invert_branch(*curve, t, step.X_new, s1, true);
        state.x = step.X_new;
        state.uL = branch_state(*curve, s0_new, t, false).u;
        state.uR = branch_state(*curve, s1_new, t, true).u;
        state.t = t;
        s0 = s0_new;
        s1 = s1_new;

        ShockRecord rec;
        rec.t = t;
        rec.X = step.X_new;
        rec.uL = state.uL;
        rec.uR = state.uR;
        rec.speed = rh_speed(curve->flux(), state.uL, state.uR);
        rec.id = 0;
        check_lax(curve->flux(), rec);
        records.push_back(rec);
    }
    return records;
}

}  // namespace eqarea
