#ifndef EQAREA_TRACK_HPP
#define EQAREA_TRACK_HPP

#include <functional>
#include <memory>
#include <optional>

namespace eqarea {

enum class NodeKind { Interior, JumpTop, JumpBottom };

/// One sample of the initial curve: parameter, initial abscissa, state
/// and state derivative along the parameter.
struct Node {
    double s = 0.0;
    double x0 = 0.0;
    double u = 0.0;
    double du = 0.0;
    NodeKind kind = NodeKind::Interior;
};

/// A maximal analytically-evaluable span of the initial curve in the
/// frame it was created in. x0 is the frozen abscissa; the flow adds
/// F'(u) times the elapsed time on top of it.
class Track {
public:
    Track(double s_begin, double s_end) : s_begin_(s_begin), s_end_(s_end) {}
    virtual ~Track() = default;

    double s_begin() const { return s_begin_; }
    double s_end() const { return s_end_; }

    virtual double x0(double s) const = 0;
    virtual double dx0(double s) const = 0;  // d x0 / ds
    virtual double u(double s) const = 0;
    virtual double du(double s) const = 0;   // d u / ds
    virtual bool is_vertical() const = 0;

    /// Exact time-independent part of the parametric area,
    /// integral of u dx0 over [s_a, s_b], when a closed form exists.
    virtual std::optional<double> area0(double, double) const { return std::nullopt; }

private:
    double s_begin_;
    double s_end_;
};

using TrackPtr = std::shared_ptr<const Track>;

/// Smooth piece of a profile, parametrized by arc length in x0
/// (x0(s) = x_left + (s - s_begin)).
class PieceTrack final : public Track {
public:
    PieceTrack(double s_begin, double s_end, double x_left,
               std::function<double(double)> g, std::function<double(double)> dg,
               std::function<double(double)> G = {})
        : Track(s_begin, s_end), x_left_(x_left), g_(std::move(g)),
          dg_(std::move(dg)), G_(std::move(G)) {}

    double x0(double s) const override { return x_left_ + (s - s_begin()); }
    double dx0(double) const override { return 1.0; }
    double u(double s) const override { return g_(x0(s)); }
    double du(double s) const override { return dg_(x0(s)); }
    bool is_vertical() const override { return false; }

    std::optional<double> area0(double s_a, double s_b) const override {
        if (!G_) return std::nullopt;
        return G_(x0(s_b)) - G_(x0(s_a));
    }

private:
    double x_left_;
    std::function<double(double)> g_;
    std::function<double(double)> dg_;
    std::function<double(double)> G_;
};

/// Vertical segment at a jump: constant abscissa, state linear in s.
class JumpTrack final : public Track {
public:
    JumpTrack(double s_begin, double s_end, double x, double u_from, double u_to)
        : Track(s_begin, s_end), x_(x), u_from_(u_from),
          slope_((u_to - u_from) / (s_end - s_begin)) {}

    double x0(double) const override { return x_; }
    double dx0(double) const override { return 0.0; }
    double u(double s) const override { return u_from_ + slope_ * (s - s_begin()); }
    double du(double) const override { return slope_; }
    bool is_vertical() const override { return true; }

    std::optional<double> area0(double, double) const override { return 0.0; }

    double abscissa() const { return x_; }
    bool is_down_jump() const { return slope_ < 0.0; }

private:
    double x_;
    double u_from_;
    double slope_;
};

}  // namespace eqarea

#endif
