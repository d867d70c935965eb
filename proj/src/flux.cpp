#include "eqarea/flux.hpp"

#include <cmath>

namespace eqarea {

double FluxModel::inverse_speed(double v, double u_lo, double u_hi) const {
    if (invDF) return invDF(v);
    return inv_dflux_numeric(*this, v, u_lo, u_hi);
}

double rh_speed(const FluxModel& model, double uL, double uR) {
    if (std::abs(uL - uR) <= kDegenerateJumpEps)
        throw DegenerateJump("rh_speed: |uL - uR| <= " +
                             std::to_string(kDegenerateJumpEps));
    return (model.F(uL) - model.F(uR)) / (uL - uR);
}

ConvexityReport verify_uniform_convexity(const FluxModel& model,
                                         double u_min, double u_max,
                                         int n_samples) {
    if (!(u_min < u_max)) throw SpecError("verify_uniform_convexity: u_min < u_max required");
    if (n_samples < 2) throw SpecError("verify_uniform_convexity: n_samples >= 2 required");
    double min_d2 = model.d2F(u_min);
    for (int i = 1; i < n_samples; ++i) {
        double u = u_min + (u_max - u_min) * static_cast<double>(i) /
                               static_cast<double>(n_samples - 1);
        min_d2 = std::min(min_d2, model.d2F(u));
    }
    return {min_d2, min_d2 > 0.0};
}

double inv_dflux_numeric(const FluxModel& model, double v,
                         double u_lo, double u_hi) {
    double f_lo = model.dF(u_lo) - v;
    double f_hi = model.dF(u_hi) - v;
    const double tol = 1e-13 * std::max(1.0, std::abs(v));
    if (std::abs(f_lo) <= tol) return u_lo;
    if (std::abs(f_hi) <= tol) return u_hi;
    if (f_lo > 0.0 || f_hi < 0.0)
        throw BracketError("inv_dflux_numeric: v outside [dF(u_lo), dF(u_hi)]");
    // dF is increasing by convexity: safeguarded Newton.
    double u = 0.5 * (u_lo + u_hi);
    for (int it = 0; it < 200; ++it) {
        double f = model.dF(u) - v;
        if (std::abs(f) <= tol) return u;
        if (f > 0.0) u_hi = u; else u_lo = u;
        double d = model.d2F(u);
        double next = (d > 0.0) ? u - f / d : 0.5 * (u_lo + u_hi);
        if (!(next > u_lo && next < u_hi)) next = 0.5 * (u_lo + u_hi);
        u = next;
    }
    return u;
}

FluxModel make_flux(const std::string& name, const std::vector<double>& coeffs) {
    FluxModel m;
    m.name = name;
    if (name == "burgers") {
        m.F = [](double u) { return 0.5 * u * u; };
        m.dF = [](double u) { return u; };
        m.d2F = [](double) { return 1.0; };
        m.invDF = [](double v) { return v; };
        m.legendre = [](double u) { return 0.5 * u * u; };
        return m;
    }
    if (name == "quadratic_linear") {
        if (coeffs.size() != 2)
            throw SpecError("quadratic_linear flux needs coefficients {a, b}");
        const double a = coeffs[0];
        const double b = coeffs[1];
        if (!(a > 0.0))
            throw SpecError("quadratic_linear flux needs a > 0 for uniform convexity");
        m.F = [a, b](double u) { return 0.5 * a * u * u + b * u; };
        m.dF = [a, b](double u) { return a * u + b; };
        m.d2F = [a](double) { return a; };
        m.invDF = [a, b](double v) { return (v - b) / a; };
        m.legendre = [a](double u) { return 0.5 * a * u * u; };
        return m;
    }
    if (name == "exponential") {
        m.F = [](double u) { return std::exp(u); };
        m.dF = [](double u) { return std::exp(u); };
        m.d2F = [](double u) { return std::exp(u); };
        m.invDF = [](double v) { return std::log(v); };
        m.legendre = [](double u) { return std::exp(u) * (u - 1.0); };
        return m;
    }
    throw SpecError("unknown flux name: " + name);
}

}  // namespace eqarea
