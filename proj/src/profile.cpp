#include "eqarea/profile.hpp"

#include <algorithm>
#include <cmath>

#include "eqarea/flux.hpp"
#include "eqarea/interpolate.hpp"

namespace eqarea {

double PiecewiseProfile::eval(double x) const {
    if (pieces.empty()) return x < x_min ? tail_left : tail_right;
    if (x < x_min) return tail_left;
    if (x > x_max) return tail_right;
    for (const Piece& p : pieces)
        if (x <= p.x_right) return p.g(x);
    return pieces.back().g(x);
}

namespace {

void check_piece(const Piece& p, std::size_t index) {
    if (!(p.x_left < p.x_right))
        throw SpecError("piece " + std::to_string(index) + ": x_left < x_right required");
    if (!p.g || !p.dg)
        throw SpecError("piece " + std::to_string(index) + ": g and g' are required");
    const double width = p.x_right - p.x_left;
    const int n_check = 13;
    for (int i = 0; i < n_check; ++i) {
        double x = p.x_left + width * static_cast<double>(i) / (n_check - 1);
        double gx = p.g(x);
        double dgx = p.dg(x);
        if (!std::isfinite(gx) || !std::isfinite(dgx))
            throw NonFiniteError("piece " + std::to_string(index) +
                                 ": non-finite g or g' at x = " + std::to_string(x));
        // Central-difference consistency, clamped inside the piece.
        double h = 1e-6 * std::max(1.0, std::abs(x));
        if (x - h >= p.x_left && x + h <= p.x_right) {
            double fd = (p.g(x + h) - p.g(x - h)) / (2.0 * h);
            if (std::abs(fd - dgx) > 1e-6 * std::max(1.0, std::abs(dgx)))
                throw SpecError("piece " + std::to_string(index) +
                                ": g' inconsistent with g at x = " + std::to_string(x));
            if (p.G) {
                double fdG = (p.G(x + h) - p.G(x - h)) / (2.0 * h);
                if (std::abs(fdG - gx) > 1e-6 * std::max(1.0, std::abs(gx)))
                    throw SpecError("piece " + std::to_string(index) +
                                    ": G' inconsistent with g at x = " + std::to_string(x));
            }
        }
    }
}

void maybe_add_jump(std::vector<Jump>& jumps, double x, double u_left, double u_right) {
    if (std::abs(u_left - u_right) <= kDegenerateJumpEps) return;
    Jump j;
    j.x = x;
    j.u_left = u_left;
    j.u_right = u_right;
    j.direction = u_left > u_right ? JumpDirection::Down : JumpDirection::Up;
    jumps.push_back(j);
}

}  // namespace

PiecewiseProfile build_profile(std::vector<Piece> pieces,
                               double tail_left, double tail_right) {
    PiecewiseProfile prof;
    prof.tail_left = tail_left;
    prof.tail_right = tail_right;
    if (!std::isfinite(tail_left) || !std::isfinite(tail_right))
        throw NonFiniteError("non-finite tail value");

    if (pieces.empty()) {
        prof.x_min = prof.x_max = 0.0;
        maybe_add_jump(prof.jumps, 0.0, tail_left, tail_right);
        return prof;
    }

    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return a.x_left < b.x_left; });
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        check_piece(pieces[i], i);
        if (i + 1 < pieces.size()) {
            double gap = pieces[i + 1].x_left - pieces[i].x_right;
            double scale = std::max(1.0, std::abs(pieces[i].x_right));
            if (std::abs(gap) > 1e-12 * scale)
                throw SpecError(gap > 0 ? "gap between pieces at x = " +
                                              std::to_string(pieces[i].x_right)
                                        : "overlapping pieces at x = " +
                                              std::to_string(pieces[i + 1].x_left));
        }
    }

    prof.x_min = pieces.front().x_left;
    prof.x_max = pieces.back().x_right;

    maybe_add_jump(prof.jumps, prof.x_min, tail_left, pieces.front().g(prof.x_min));
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
        maybe_add_jump(prof.jumps, pieces[i].x_right,
                       pieces[i].g(pieces[i].x_right),
                       pieces[i + 1].g(pieces[i + 1].x_left));
    maybe_add_jump(prof.jumps, prof.x_max, pieces.back().g(prof.x_max), tail_right);

    prof.pieces = std::move(pieces);
    return prof;
}

Piece make_constant_piece(double x_left, double x_right, double c) {
    Piece p;
    p.x_left = x_left;
    p.x_right = x_right;
    p.g = [c](double) { return c; };
    p.dg = [](double) { return 0.0; };
    p.G = [c](double x) { return c * x; };
    p.kind = "constant";
    return p;
}

Piece make_linear_piece(double x_left, double x_right, double c0, double c1) {
    Piece p;
    p.x_left = x_left;
    p.x_right = x_right;
    p.g = [c0, c1](double x) { return c0 + c1 * x; };
    p.dg = [c1](double) { return c1; };
    p.G = [c0, c1](double x) { return c0 * x + 0.5 * c1 * x * x; };
    p.kind = "linear";
    return p;
}

Piece make_polynomial_piece(double x_left, double x_right,
                            const std::vector<double>& coeffs) {
    Polynomial poly(coeffs);
    Polynomial dpoly = poly.derivative();
    Polynomial ipoly = poly.antiderivative();
    Piece p;
    p.x_left = x_left;
    p.x_right = x_right;
    p.g = [poly](double x) { return poly(x); };
    p.dg = [dpoly](double x) { return dpoly(x); };
    p.G = [ipoly](double x) { return ipoly(x); };
    p.kind = "polynomial";
    return p;
}

Piece make_arctan_piece(double x_left, double x_right,
                        double a, double b, double c, double d) {
    if (c == 0.0) throw SpecError("arctan piece needs c != 0 (use a constant piece)");
    Piece p;
    p.x_left = x_left;
    p.x_right = x_right;
    p.g = [a, b, c, d](double x) { return a + b * std::atan(c * x + d); };
    p.dg = [b, c, d](double x) {
        double w = c * x + d;
        return b * c / (1.0 + w * w);
    };
    p.G = [a, b, c, d](double x) {
        double w = c * x + d;
        return a * x + (b / c) * (w * std::atan(w) - 0.5 * std::log1p(w * w));
    };
    p.kind = "arctan";
    return p;
}

double NodeSet::total_initial_area() const {
    double sum = 0.0;
    for (double a : interval_area) sum += a;
    return sum;
}

namespace {

// Appends the nodes and per-interval areas of a smooth piece track.
// The first node is reused when it coincides with the current tail of
// the node list.
void append_piece_track(NodeSet& out, double& s_cursor, const Piece& piece,
                        int n_per_piece) {
    const double width = piece.x_right - piece.x_left;
    const double s0 = s_cursor;
    auto track = std::make_shared<PieceTrack>(s0, s0 + width, piece.x_left,
                                              piece.g, piece.dg, piece.G);
    out.tracks.push_back(track);
    for (int i = 0; i < n_per_piece; ++i) {
        double frac = static_cast<double>(i) / (n_per_piece - 1);
        double x = piece.x_left + width * frac;
        if (i == n_per_piece - 1) x = piece.x_right;
        double s = s0 + (x - piece.x_left);
        if (i == 0 && !out.nodes.empty()) {
            // Shared corner node with the previous track.
            out.nodes.back().du = piece.dg(x);
        } else {
            out.nodes.push_back({s, x, piece.g(x), piece.dg(x), NodeKind::Interior});
        }
        if (i > 0) {
            double x_prev = out.nodes[out.nodes.size() - 2].x0;
            double area;
            if (piece.G) {
                area = piece.G(x) - piece.G(x_prev);
            } else {
                area = adaptive_quadrature(piece.g, x_prev, x, 1e-13);
            }
            out.interval_area.push_back(area);
        }
    }
    s_cursor = s0 + width;
}

void append_jump_track(NodeSet& out, double& s_cursor, double x,
                       double u_from, double u_to, int k_per_jump) {
    const double span = std::abs(u_to - u_from);
    const double s0 = s_cursor;
    auto track = std::make_shared<JumpTrack>(s0, s0 + span, x, u_from, u_to);
    out.tracks.push_back(track);
    const bool down = u_to < u_from;
    const NodeKind start_kind = down ? NodeKind::JumpTop : NodeKind::JumpBottom;
    const NodeKind end_kind = down ? NodeKind::JumpBottom : NodeKind::JumpTop;
    const double slope = (u_to - u_from) / span;
    for (int i = 0; i < k_per_jump; ++i) {
        double frac = static_cast<double>(i) / (k_per_jump - 1);
        double u = u_from + (u_to - u_from) * frac;
        if (i == k_per_jump - 1) u = u_to;
        double s = s0 + span * frac;
        NodeKind kind = (i == 0) ? start_kind
                      : (i == k_per_jump - 1) ? end_kind : NodeKind::Interior;
        if (i == 0 && !out.nodes.empty()) {
            out.nodes.back().kind = start_kind;
            out.nodes.back().du = slope;
        } else {
            out.nodes.push_back({s, x, u, slope, kind});
        }
        if (i > 0) out.interval_area.push_back(0.0);
    }
    s_cursor = s0 + span;
}

}  // namespace

NodeSet sample_nodes(const PiecewiseProfile& profile, int n_per_piece,
                     int k_per_jump) {
    if (n_per_piece < 2) throw SpecError("sample_nodes: n_per_piece >= 2 required");
    if (k_per_jump < 2) throw SpecError("sample_nodes: k_per_jump >= 2 required");

    NodeSet out;
    out.tail_left = profile.tail_left;
    out.tail_right = profile.tail_right;
    double s_cursor = 0.0;

    if (profile.empty_support()) {
        if (profile.jumps.empty()) {
            // Constant profile: one synthetic unit-width track so the
            // curve has a non-degenerate parameter range.
            Piece c = make_constant_piece(profile.x_min - 0.5, profile.x_min + 0.5,
                                          profile.tail_left);
            append_piece_track(out, s_cursor, c, n_per_piece);
        } else {
            const Jump& j = profile.jumps.front();
            append_jump_track(out, s_cursor, j.x, j.u_left, j.u_right, k_per_jump);
        }
        return out;
    }

    auto jump_at = [&](double x) -> const Jump* {
        for (const Jump& j : profile.jumps)
            if (j.x == x) return &j;
        return nullptr;
    };

    if (const Jump* j = jump_at(profile.x_min))
        append_jump_track(out, s_cursor, j->x, j->u_left, j->u_right, k_per_jump);
    for (std::size_t i = 0; i < profile.pieces.size(); ++i) {
        const Piece& piece = profile.pieces[i];
        append_piece_track(out, s_cursor, piece, n_per_piece);
        double boundary = piece.x_right;
        if (const Jump* j = jump_at(boundary))
            append_jump_track(out, s_cursor, j->x, j->u_left, j->u_right, k_per_jump);
    }
    return out;
}

}  // namespace eqarea
