#include "eqarea/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eqarea {

namespace {

// Error-free transformations for compensated Horner.
struct TwoTerm {
    double value;
    double error;
};

inline TwoTerm two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline TwoTerm two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return {p, err};
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_ = {0.0};
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (degree() > kMaxDegree)
        throw SpecError("polynomial degree " + std::to_string(degree()) +
                        " exceeds cap " + std::to_string(kMaxDegree));
}

double Polynomial::operator()(double x) const {
    const int n = static_cast<int>(coeffs_.size()) - 1;
    double s = coeffs_[n];
    double comp = 0.0;
    for (int i = n - 1; i >= 0; --i) {
        TwoTerm prod = two_prod(s, x);
        TwoTerm sum = two_sum(prod.value, coeffs_[i]);
        s = sum.value;
        comp = comp * x + (prod.error + sum.error);
    }
    return s + comp;
}

Polynomial Polynomial::derivative() const {
    if (degree() == 0) return Polynomial();
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d[i - 1] = coeffs_[i] * static_cast<double>(i);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
    std::vector<double> a(coeffs_.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        a[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
    return Polynomial(std::move(a));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    std::vector<double> c(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) c[i] += other.coeffs_[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    return *this + other.scaled(-1.0);
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    std::vector<double> c(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
            c[i + j] += coeffs_[i] * other.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(double k) const {
    std::vector<double> c(coeffs_);
    for (double& v : c) v *= k;
    return Polynomial(std::move(c));
}

Polynomial hermite_cubic(double x0, double y0, double m0,
                         double x1, double y1, double m1) {
    const double h = x1 - x0;
    if (h == 0.0) throw SpecError("hermite_cubic: coincident abscissae");
    // Local form a + b d + c d^2 + e d^3 with d = x - x0, expanded to
    // the monomial basis about zero.
    const double delta = (y1 - y0) / h;
    const double a = y0;
    const double b = m0;
    const double c = (3.0 * delta - 2.0 * m0 - m1) / h;
    const double e = (m0 + m1 - 2.0 * delta) / (h * h);
    std::vector<double> mono(4, 0.0);
    mono[0] = a - b * x0 + c * x0 * x0 - e * x0 * x0 * x0;
    mono[1] = b - 2.0 * c * x0 + 3.0 * e * x0 * x0;
    mono[2] = c - 3.0 * e * x0;
    mono[3] = e;
    return Polynomial(std::move(mono));
}

namespace {

// Hermite basis cubics on [0,1] in the monomial basis.
Polynomial cubic01(double p0, double p1, double t0, double t1) {
    // p(s) = p0 h00 + t0 h10 + p1 h01 + t1 h11
    // h00 = 1 - 3s^2 + 2s^3, h10 = s - 2s^2 + s^3,
    // h01 = 3s^2 - 2s^3,     h11 = -s^2 + s^3.
    std::vector<double> c(4, 0.0);
    c[0] = p0;
    c[1] = t0;
    c[2] = -3.0 * p0 + 3.0 * p1 - 2.0 * t0 - t1;
    c[3] = 2.0 * p0 - 2.0 * p1 + t0 + t1;
    return Polynomial(std::move(c));
}

double integral_over_01(const Polynomial& p) {
    Polynomial a = p.antiderivative();
    return a(1.0) - a(0.0);
}

}  // namespace

ParametricSegment parametric_hermite(Point2 p0, Point2 p1,
                                     Point2 v0, Point2 v1,
                                     double target_area,
                                     TangentScale scale) {
    ParametricSegment seg;
    seg.target_area = target_area;
    const double chord = std::hypot(p1.x - p0.x, p1.u - p0.u);
    if (chord == 0.0) {
        seg.X = Polynomial({p0.x});
        seg.U = Polynomial({p0.u});
        seg.area = 0.0;
        seg.area_defect = std::abs(target_area);
        return seg;
    }
    const double n0 = std::hypot(v0.x, v0.u);
    const double n1 = std::hypot(v1.x, v1.u);
    if (n0 == 0.0 || n1 == 0.0)
        throw SpecError("parametric_hermite: zero tangent");
    const double k0 = scale == TangentScale::Chord ? chord / n0 : 1.0;
    const double k1 = scale == TangentScale::Chord ? chord / n1 : 1.0;
    seg.X = cubic01(p0.x, p1.x, v0.x * k0, v1.x * k1);
    seg.U = cubic01(p0.u, p1.u, v0.u * k0, v1.u * k1);
    seg.area = integral_over_01(seg.U * seg.X.derivative());
    seg.area_defect = std::abs(seg.area - target_area);
    for (double r : poly_roots_in_interval(seg.X.derivative(), 0.0, 1.0)) {
        (void)r;
        seg.multivalued = true;
        break;
    }
    return seg;
}

namespace {

// Newton polish with bisection fallback inside a bracket where p is
// monotone (or tangent at one end).
double polish_root(const Polynomial& p, const Polynomial& dp,
                   double lo, double hi, double x) {
    for (int it = 0; it < 60; ++it) {
        double f = p(x);
        double d = dp(x);
        double step = (d != 0.0) ? f / d : 0.0;
        double next = x - step;
        if (!(next > lo && next < hi) || step == 0.0) {
            double flo = p(lo);
            double fmid = p(x);
            if ((flo <= 0.0) != (fmid <= 0.0)) hi = x; else lo = x;
            next = 0.5 * (lo + hi);
        }
        if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) return next;
        x = next;
    }
    return x;
}

void roots_in(const Polynomial& p, double a, double b, std::vector<double>& out) {
    if (p.degree() == 0) return;
    if (p.degree() == 1) {
        double r = -p.coeffs()[0] / p.coeffs()[1];
        if (r > a && r < b) out.push_back(r);
        return;
    }
    Polynomial dp = p.derivative();
    std::vector<double> crit;
    roots_in(dp, a, b, crit);
    std::vector<double> grid;
    grid.push_back(a);
    for (double c : crit) grid.push_back(c);
    grid.push_back(b);
    std::sort(grid.begin(), grid.end());
    const double span = b - a;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double lo = grid[i];
        double hi = grid[i + 1];
        if (hi - lo <= 0.0) continue;
        double flo = p(lo);
        double fhi = p(hi);
        if (flo == 0.0 && i == 0 && lo > a) out.push_back(lo);
        if ((flo < 0.0 && fhi > 0.0) || (flo > 0.0 && fhi < 0.0)) {
            // Bisect to a coarse bracket, then polish.
            double x0 = lo, x1 = hi;
            for (int it = 0; it < 80 && (x1 - x0) > 1e-14 * std::max(1.0, span); ++it) {
                double mid = 0.5 * (x0 + x1);
                double fm = p(mid);
                if (fm == 0.0) { x0 = x1 = mid; break; }
                if ((fm < 0.0) == (flo < 0.0)) { x0 = mid; flo = fm; }
                else x1 = mid;
            }
            out.push_back(polish_root(p, dp, lo, hi, 0.5 * (x0 + x1)));
        }
    }
    // Tangential roots sitting exactly at interior critical points.
    for (double c : crit) {
        if (c > a && c < b && std::abs(p(c)) <= 1e-13 * std::max(1.0, std::abs(p(a)) + std::abs(p(b))))
            out.push_back(c);
    }
}

}  // namespace

std::vector<double> poly_roots_in_interval(const Polynomial& p, double a, double b) {
    if (!(a < b)) throw SpecError("poly_roots_in_interval: need a < b");
    std::vector<double> out;
    roots_in(p, a, b, out);
    std::sort(out.begin(), out.end());
    // Merge duplicates from tangency detection.
    std::vector<double> dedup;
    const double tol = 1e-12 * std::max(1.0, std::abs(a) + std::abs(b));
    for (double r : out) {
        if (dedup.empty() || r - dedup.back() > tol) dedup.push_back(r);
    }
    return dedup;
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct GKResult {
    double kronrod;
    double err;
};

GKResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double resg = kWg[3] * fc;
    double resk = kWgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        double x = h * kXgk[j];
        double f1 = f(c - x);
        double f2 = f(c + x);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    return {resk * h, std::abs((resk - resg) * h)};
}

struct QuadSeg {
    double a, b;
    double value, err;
};

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f,
                           double a, double b, double tol) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) { std::swap(a, b); sign = -1.0; }
    if (!(tol > 0.0)) throw SpecError("adaptive_quadrature: tolerance must be positive");

    std::vector<QuadSeg> stack;
    GKResult first = gk15(f, a, b);
    if (!std::isfinite(first.kronrod))
        throw QuadratureError("adaptive_quadrature: non-finite integrand");
    stack.push_back({a, b, first.kronrod, first.err});

    double total = first.kronrod;
    double total_err = first.err;
    const std::size_t kMaxSegments = 100000;
    const double span = b - a;

    while (total_err > tol) {
        // Split the segment with the largest error estimate.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < stack.size(); ++i)
            if (stack[i].err > stack[worst].err) worst = i;
        QuadSeg seg = stack[worst];
        double mid = 0.5 * (seg.a + seg.b);
        if (mid <= seg.a || mid >= seg.b || stack.size() >= kMaxSegments)
            throw QuadratureError("adaptive_quadrature: subdivision limit reached");
        GKResult left = gk15(f, seg.a, mid);
        GKResult right = gk15(f, mid, seg.b);
        if (!std::isfinite(left.kronrod) || !std::isfinite(right.kronrod))
            throw QuadratureError("adaptive_quadrature: non-finite integrand");
        total += left.kronrod + right.kronrod - seg.value;
        total_err += left.err + right.err - seg.err;
        stack[worst] = {seg.a, mid, left.kronrod, left.err};
        stack.push_back({mid, seg.b, right.kronrod, right.err});
        // Stop refining below the resolution of double.
        double width = mid - seg.a;
        if (width < 4.0 * std::numeric_limits<double>::epsilon() * span &&
            total_err > tol) {
            bool all_tiny = true;
            for (const QuadSeg& s : stack)
                if (s.err > tol / static_cast<double>(stack.size()) &&
                    (s.b - s.a) >= 4.0 * std::numeric_limits<double>::epsilon() * span) {
                    all_tiny = false;
                    break;
                }
            if (all_tiny) break;
        }
    }
    return sign * total;
}

}  // namespace eqarea
