#include "eqarea/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eqarea {

ParametricCurve::ParametricCurve(FluxModel flux, NodeSet nodes, double t_created)
    : flux_(std::move(flux)), nodes_(std::move(nodes)), t_created_(t_created) {
    if (nodes_.nodes.size() < 2)
        throw SpecError("ParametricCurve: need at least two nodes");
    if (nodes_.interval_area.size() != nodes_.nodes.size() - 1)
        throw SpecError("ParametricCurve: area ledger size mismatch");
    for (std::size_t i = 0; i + 1 < nodes_.nodes.size(); ++i)
        if (!(nodes_.nodes[i].s < nodes_.nodes[i + 1].s))
            throw SpecError("ParametricCurve: node parameters must be strictly increasing");
}

double ParametricCurve::elapsed(double t) const {
    double tau = t - t_created_;
    if (tau < -1e-14 * std::max(1.0, std::abs(t_created_)))
        throw OutOfRange("curve queried before its creation time");
    return std::max(tau, 0.0);
}

CurvePoint ParametricCurve::flow_position(const Node& node, double t) const {
    double tau = elapsed(t);
    return {node.x0 + flux_.dF(node.u) * tau, node.u};
}

std::size_t ParametricCurve::track_index(double s) const {
    const auto& tracks = nodes_.tracks;
    std::size_t lo = 0, hi = tracks.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (s <= tracks[mid]->s_end()) hi = mid; else lo = mid + 1;
    }
    return lo;
}

std::vector<double> ParametricCurve::junction_params() const {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < nodes_.tracks.size(); ++i)
        out.push_back(nodes_.tracks[i]->s_end());
    return out;
}

CurvePoint ParametricCurve::evaluate(double s, double t) const {
    if (!std::isfinite(s)) throw OutOfRange("evaluate: non-finite parameter");
    double tau = elapsed(t);
    if (s < s_begin()) {
        double u = nodes_.tail_left;
        double x0 = nodes_.nodes.front().x0 + (s - s_begin());
        return {x0 + flux_.dF(u) * tau, u};
    }
    if (s > s_end()) {
        double u = nodes_.tail_right;
        double x0 = nodes_.nodes.back().x0 + (s - s_end());
        return {x0 + flux_.dF(u) * tau, u};
    }
    return evaluate_on_track(track_index(s), s, t);
}

CurvePoint ParametricCurve::evaluate_on_track(std::size_t track, double s, double t) const {
    double tau = elapsed(t);
    const Track& tr = *nodes_.tracks[track];
    double u = tr.u(s);
    return {tr.x0(s) + flux_.dF(u) * tau, u};
}

double ParametricCurve::slope_x_on_track(std::size_t track, double s, double t) const {
    double tau = elapsed(t);
    const Track& tr = *nodes_.tracks[track];
    return tr.dx0(s) + flux_.d2F(tr.u(s)) * tr.du(s) * tau;
}

CurveVelocity ParametricCurve::velocity(double s, double t, JunctionSide side) const {
    double tau = elapsed(t);
    if (s < s_begin() || s > s_end()) return {1.0, 0.0};  // constant tails
    std::size_t ti = track_index(s);
    bool at_junction = false;
    if (ti > 0 && s == nodes_.tracks[ti]->s_begin()) at_junction = true;
    if (ti + 1 < nodes_.tracks.size() && s == nodes_.tracks[ti]->s_end())
        at_junction = true;
    if (at_junction) {
        if (side == JunctionSide::Auto)
            throw JumpParameterError("velocity at junction parameter s = " +
                                     std::to_string(s) +
                                     "; request a one-sided value");
        if (side == JunctionSide::Left && s == nodes_.tracks[ti]->s_begin()) --ti;
        if (side == JunctionSide::Right && s == nodes_.tracks[ti]->s_end()) ++ti;
    }
    const Track& tr = *nodes_.tracks[ti];
    double u = tr.u(s);
    double du = tr.du(s);
    return {tr.dx0(s) + flux_.d2F(u) * du * tau, du};
}

double ParametricCurve::slope_x(double s, double t) const {
    if (s < s_begin() || s > s_end()) return 1.0;
    return slope_x_on_track(track_index(s), s, t);
}

double ParametricCurve::slope_u(double s) const {
    if (s < s_begin() || s > s_end()) return 0.0;
    return nodes_.tracks[track_index(s)]->du(s);
}

double ParametricCurve::segment_area(std::size_t interval, double t) const {
    if (interval + 1 >= nodes_.nodes.size())
        throw OutOfRange("segment_area: interval index out of range");
    double tau = elapsed(t);
    const Node& a = nodes_.nodes[interval];
    const Node& b = nodes_.nodes[interval + 1];
    return nodes_.interval_area[interval] +
           tau * (flux_.legendre(b.u) - flux_.legendre(a.u));
}

double ParametricCurve::total_area(double t) const {
    double tau = elapsed(t);
    double base = 0.0;
    for (double a : nodes_.interval_area) base += a;
    // The legendre terms telescope to the endpoint states.
    return base + tau * (flux_.legendre(nodes_.nodes.back().u) -
                         flux_.legendre(nodes_.nodes.front().u));
}

namespace {

// Golden-section maximization of a unimodal bump located by a grid scan.
double refine_max(const std::function<double(double)>& f, double lo, double hi) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-12 * std::max(1.0, std::abs(a) + std::abs(b))) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + phi * (b - a); f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - phi * (b - a); f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

}  // namespace

double ParametricCurve::breaking_time() const {
    double max_rate = 0.0;  // largest -d2F(u) du along the curve
    for (const TrackPtr& tp : nodes_.tracks) {
        const Track& tr = *tp;
        if (tr.is_vertical()) {
            double mid = 0.5 * (tr.s_begin() + tr.s_end());
            if (tr.du(mid) < 0.0) return t_created_;  // down-jump: immediate
            continue;
        }
        auto rate = [&](double s) { return -flux_.d2F(tr.u(s)) * tr.du(s); };
        const int n_scan = 10000;
        double best = -std::numeric_limits<double>::infinity();
        double best_s = tr.s_begin();
        for (int i = 0; i <= n_scan; ++i) {
            double s = tr.s_begin() + (tr.s_end() - tr.s_begin()) *
                                          static_cast<double>(i) / n_scan;
            double r = rate(s);
            if (r > best) { best = r; best_s = s; }
        }
        if (best <= 0.0) continue;
        double h = (tr.s_end() - tr.s_begin()) / n_scan;
        double lo = std::max(tr.s_begin(), best_s - h);
        double hi = std::min(tr.s_end(), best_s + h);
        max_rate = std::max(max_rate, refine_max(rate, lo, hi));
    }
    if (max_rate <= 0.0) return std::numeric_limits<double>::infinity();
    return t_created_ + 1.0 / max_rate;
}

double ParametricCurve::jacobian_det(double, double) const {
    // J = [[1, F'' t], [0, 1]]: the determinant is structural.
    return 1.0;
}

CurvePtr make_curve(const FluxModel& flux, const PiecewiseProfile& profile,
                    int n_per_piece, int k_per_jump) {
    return std::make_shared<ParametricCurve>(
        flux, sample_nodes(profile, n_per_piece, k_per_jump), 0.0);
}

}  // namespace eqarea
