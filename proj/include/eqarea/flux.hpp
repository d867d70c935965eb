#ifndef EQAREA_FLUX_HPP
#define EQAREA_FLUX_HPP

#include <functional>
#include <string>
#include <vector>

#include "eqarea/errors.hpp"

namespace eqarea {

/// States closer than this are treated as one (no jump).
constexpr double kDegenerateJumpEps = 1e-12;

using ScalarFn = std::function<double(double)>;

/// Flux function F with every F-derived quantity the solver consumes.
/// Immutable after construction; safe for concurrent reads.
struct FluxModel {
    std::string name;
    ScalarFn F;         // flux value
    ScalarFn dF;        // characteristic speed F'
    ScalarFn d2F;       // F''
    ScalarFn invDF;     // inverse of F' (empty: numeric fallback is used)
    ScalarFn legendre;  // u F'(u) - F(u)

    bool has_closed_inverse() const { return static_cast<bool>(invDF); }

    /// F'^{-1}(v); uses the closed form when supplied, otherwise a
    /// bracketed numeric inversion on [u_lo, u_hi].
    double inverse_speed(double v, double u_lo, double u_hi) const;
};

/// Rankine-Hugoniot speed (F(uL) - F(uR)) / (uL - uR).
/// Throws DegenerateJump when |uL - uR| <= kDegenerateJumpEps.
double rh_speed(const FluxModel& model, double uL, double uR);

struct ConvexityReport {
    double alpha_estimate = 0.0;
    bool ok = false;
};

/// Samples F'' on [u_min, u_max]; ok iff the sampled minimum is positive.
ConvexityReport verify_uniform_convexity(const FluxModel& model,
                                         double u_min, double u_max,
                                         int n_samples);

/// Solve dF(u) = v on [u_lo, u_hi] to |dF(u) - v| <= 1e-13 max(1, |v|).
/// Throws BracketError when v lies outside [dF(u_lo), dF(u_hi)].
double inv_dflux_numeric(const FluxModel& model, double v,
                         double u_lo, double u_hi);

/// Built-in flux library. Names: "burgers" (u^2/2, no coefficients),
/// "quadratic_linear" (a u^2/2 + b u, coefficients {a, b}),
/// "exponential" (e^u, no coefficients).
FluxModel make_flux(const std::string& name,
                    const std::vector<double>& coeffs = {});

}  // namespace eqarea

#endif
