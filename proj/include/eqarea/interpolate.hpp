#ifndef EQAREA_INTERPOLATE_HPP
#define EQAREA_INTERPOLATE_HPP

#include <functional>
#include <vector>

#include "eqarea/errors.hpp"

namespace eqarea {

/// Dense polynomial in the monomial basis. Degree is capped at
/// kMaxDegree; construction beyond the cap throws SpecError.
class Polynomial {
public:
    static constexpr int kMaxDegree = 10;

    Polynomial() : coeffs_{0.0} {}
    explicit Polynomial(std::vector<double> coeffs);

    /// Compensated Horner evaluation (error-free transformations).
    double operator()(double x) const;

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

    Polynomial derivative() const;
    /// Antiderivative with zero constant term.
    Polynomial antiderivative() const;

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial scaled(double c) const;

private:
    std::vector<double> coeffs_;  // low to high, trailing zeros trimmed
};

struct Point2 {
    double x = 0.0;
    double u = 0.0;
};

/// Cubic pair (X(s), U(s)) on s in [0,1] with tangent magnitudes fixed by
/// the chord-length rule. The target parametric area is recorded but not
/// enforced; the defect is surfaced instead.
struct ParametricSegment {
    Polynomial X;
    Polynomial U;
    double target_area = 0.0;
    double area = 0.0;         // exact integral of U X' over [0,1]
    double area_defect = 0.0;  // |area - target_area|
    bool multivalued = false;  // X'(s) vanishes inside (0,1)

    Point2 at(double s) const { return {X(s), U(s)}; }
};

/// Unique cubic matching values y0,y1 and slopes m0,m1 at x0 != x1.
/// Throws SpecError("coincident abscissae") when x0 == x1.
Polynomial hermite_cubic(double x0, double y0, double m0,
                         double x1, double y1, double m1);

enum class TangentScale {
    Chord,  // rescale tangent magnitudes to the chord length
    Exact,  // use v0, v1 verbatim as derivatives on the unit interval
};

/// Cubic Hermite segment between points p0, p1 with tangent directions
/// v0, v1. The default chord-length rule fixes the magnitudes the
/// stable way; Exact keeps the supplied parametrization speed, which
/// reproduces polynomial curves (and their areas) exactly.
ParametricSegment parametric_hermite(Point2 p0, Point2 p1,
                                     Point2 v0, Point2 v1,
                                     double target_area,
                                     TangentScale scale = TangentScale::Chord);

/// All real roots of p in the open interval (a, b), each to 1e-13
/// absolute. Roots are isolated by recursive critical-point splitting
/// and polished by Newton. Tangential (even-multiplicity) roots at
/// stationary points are included.
std::vector<double> poly_roots_in_interval(const Polynomial& p, double a, double b);

/// Adaptive Gauss-Kronrod (G7,K15) quadrature of f on [a, b] to the
/// requested absolute tolerance. Exact to round-off for polynomials up
/// to the base rule's degree. Throws QuadratureError when the
/// subdivision limit is reached before the error estimate drops below
/// tolerance.
double adaptive_quadrature(const std::function<double(double)>& f,
                           double a, double b, double tol);

}  // namespace eqarea

#endif
