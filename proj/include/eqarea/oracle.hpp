#ifndef EQAREA_ORACLE_HPP
#define EQAREA_ORACLE_HPP

#include <functional>
#include <vector>

#include "eqarea/flux.hpp"

namespace eqarea {
namespace oracle {

/// Closed-form solution of the Burgers triangle problem: ramp x/(1+t)
/// behind the shock at sqrt(1+t), zero ahead.
struct TriangleSolution {
    double t = 0.0;
    double shock_x = 0.0;
    std::function<double(double)> left;   // u(x) for x < shock_x
    std::function<double(double)> right;  // u(x) for x > shock_x

    double eval(double x) const;
};

TriangleSolution triangle_exact(double t);

/// Entropy solution of the Riemann problem at x/t: shock for uL > uR,
/// rarefaction fan F'^{-1}(x/t) for uL < uR, constant otherwise.
double riemann_exact(const FluxModel& flux, double uL, double uR, double t,
                     double x);

/// One moving discontinuity of the front-tracking solution.
struct Front {
    double x = 0.0;      // position at query time
    double uL = 0.0;
    double uR = 0.0;
    double speed = 0.0;
};

struct FrontCollision {
    double t = 0.0;
    double x = 0.0;
};

struct FrontTrackingSolution {
    double t = 0.0;
    std::vector<Front> fronts;             // surviving fronts at time t
    std::vector<FrontCollision> events;    // collisions up to time t

    double eval(double x) const;           // piecewise-constant solution
    double total_mass(double window_lo, double window_hi) const;
};

/// Exact Rankine-Hugoniot front tracking for piecewise-constant data
/// given as levels (size n+1) separated by jump positions (size n).
/// All jumps must be down-jumps (pure-shock data); collision times are
/// solved in closed form. Throws UnsupportedData on up-jumps.
FrontTrackingSolution front_tracking_exact(const std::vector<double>& levels,
                                           const std::vector<double>& positions,
                                           const FluxModel& flux, double t);

struct GodunovSolution {
    std::vector<double> x;  // cell centers
    std::vector<double> u;  // cell averages at t_end
    double dx = 0.0;
    double t = 0.0;

    /// Shock position estimate: crossing of (uL + uR)/2 located by
    /// linear interpolation between cells.
    double shock_position(double uL, double uR) const;
    double l1_error(const std::function<double(double)>& exact) const;
};

/// First-order Godunov reference on [x_lo, x_hi] with nx cells, exact
/// Riemann fluxes and constant inflow states. Throws CFLViolation for
/// cfl outside (0, 0.9] and SpecError for nx < 16.
GodunovSolution godunov_reference(const FluxModel& flux,
                                  const std::function<double(double)>& initial,
                                  double x_lo, double x_hi, int nx, double cfl,
                                  double t_end);

}  // namespace oracle
}  // namespace eqarea

#endif
