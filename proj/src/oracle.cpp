#include "eqarea/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eqarea {
namespace oracle {

double TriangleSolution::eval(double x) const {
    return x <= shock_x ? left(x) : right(x);
}

TriangleSolution triangle_exact(double t) {
    if (t < 0.0) throw SpecError("triangle_exact: t >= 0 required");
    TriangleSolution sol;
    sol.t = t;
    sol.shock_x = std::sqrt(1.0 + t);
    sol.left = [t](double x) { return x < 0.0 ? 0.0 : x / (1.0 + t); };
    sol.right = [](double) { return 0.0; };
    return sol;
}

double riemann_exact(const FluxModel& flux, double uL, double uR, double t,
                     double x) {
    if (!(t > 0.0)) throw SpecError("riemann_exact: t > 0 required");
    if (std::abs(uL - uR) <= kDegenerateJumpEps) return uL;
    double xi = x / t;
    if (uL > uR) {
        double s = rh_speed(flux, uL, uR);
        return xi < s ? uL : uR;
    }
    double cL = flux.dF(uL);
    double cR = flux.dF(uR);
    if (xi <= cL) return uL;
    if (xi >= cR) return uR;
    return flux.inverse_speed(xi, uL, uR);
}

double FrontTrackingSolution::eval(double x) const {
    // fronts sorted by position; the state left of the first front is
    // its uL, thereafter each front switches to its uR.
    if (fronts.empty()) throw UnsupportedData("front tracking: no fronts");
    double u = fronts.front().uL;
    for (const Front& f : fronts) {
        if (x < f.x) return u;
        u = f.uR;
    }
    return u;
}

double FrontTrackingSolution::total_mass(double lo, double hi) const {
    double mass = 0.0;
    double x_prev = lo;
    double u = fronts.empty() ? 0.0 : fronts.front().uL;
    for (const Front& f : fronts) {
        double x = std::clamp(f.x, lo, hi);
        mass += u * (x - x_prev);
        x_prev = x;
        u = f.uR;
    }
    mass += u * (hi - x_prev);
    return mass;
}

FrontTrackingSolution front_tracking_exact(const std::vector<double>& levels,
                                           const std::vector<double>& positions,
                                           const FluxModel& flux, double t) {
    if (levels.size() != positions.size() + 1 || positions.empty())
        throw SpecError("front_tracking_exact: need n+1 levels and n positions");
    for (std::size_t i = 0; i + 1 < positions.size(); ++i)
        if (!(positions[i] < positions[i + 1]))
            throw SpecError("front_tracking_exact: positions must increase");
    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
        if (!(levels[i] > levels[i + 1] + kDegenerateJumpEps))
            throw UnsupportedData("front_tracking_exact: up-jump in the data");

    struct State {
        double x0;  // position at time t_ref
        double uL, uR, speed;
    };
    double t_ref = 0.0;
    std::vector<State> fronts;
    for (std::size_t i = 0; i < positions.size(); ++i)
        fronts.push_back({positions[i], levels[i], levels[i + 1],
                          rh_speed(flux, levels[i], levels[i + 1])});

    FrontTrackingSolution sol;
    sol.t = t;

    while (true) {
        // Earliest pairwise collision among adjacent fronts.
        double t_col = std::numeric_limits<double>::infinity();
        std::size_t idx = fronts.size();
        for (std::size_t i = 0; i + 1 < fronts.size(); ++i) {
            double dv = fronts[i].speed - fronts[i + 1].speed;
            if (dv <= 0.0) continue;
            double tc = t_ref + (fronts[i + 1].x0 - fronts[i].x0) / dv;
            if (tc < t_col) { t_col = tc; idx = i; }
        }
        if (!(t_col <= t) || idx == fronts.size()) break;

        double x_col = fronts[idx].x0 + fronts[idx].speed * (t_col - t_ref);
        sol.events.push_back({t_col, x_col});
        for (State& f : fronts) f.x0 += f.speed * (t_col - t_ref);
        t_ref = t_col;
        State merged{x_col, fronts[idx].uL, fronts[idx + 1].uR,
                     rh_speed(flux, fronts[idx].uL, fronts[idx + 1].uR)};
        fronts[idx] = merged;
        fronts.erase(fronts.begin() + static_cast<std::ptrdiff_t>(idx) + 1);
    }

    for (const State& f : fronts)
        sol.fronts.push_back({f.x0 + f.speed * (t - t_ref), f.uL, f.uR, f.speed});
    return sol;
}

double GodunovSolution::shock_position(double uL, double uR) const {
    const double mid = 0.5 * (uL + uR);
    const bool descending = uL > uR;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        bool crosses = descending ? (u[i] >= mid && u[i + 1] < mid)
                                  : (u[i] <= mid && u[i + 1] > mid);
        if (!crosses) continue;
        double frac = (mid - u[i]) / (u[i + 1] - u[i]);
        return x[i] + frac * dx;
    }
    throw NoOracle("godunov shock_position: no mid-value crossing found");
}

double GodunovSolution::l1_error(const std::function<double(double)>& exact) const {
    double err = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) err += std::abs(u[i] - exact(x[i]));
    return err * dx;
}

namespace {

// Godunov numerical flux for uniformly convex F: minimum of F over
// [uL, uR] for uL <= uR, maximum of the endpoint fluxes otherwise.
double godunov_flux(const FluxModel& flux, double sonic, bool has_sonic,
                    double uL, double uR) {
    if (uL > uR) return std::max(flux.F(uL), flux.F(uR));
    if (has_sonic && sonic > uL && sonic < uR) return flux.F(sonic);
    return std::min(flux.F(uL), flux.F(uR));
}

}  // namespace

GodunovSolution godunov_reference(const FluxModel& flux,
                                  const std::function<double(double)>& initial,
                                  double x_lo, double x_hi, int nx, double cfl,
                                  double t_end) {
    if (nx < 16) throw SpecError("godunov_reference: nx >= 16 required");
    if (!(cfl > 0.0 && cfl <= 0.9))
        throw CFLViolation("godunov_reference: cfl must lie in (0, 0.9]");
    if (!(x_lo < x_hi)) throw SpecError("godunov_reference: x_lo < x_hi required");

    GodunovSolution sol;
    sol.dx = (x_hi - x_lo) / nx;
    sol.t = t_end;
    sol.x.resize(nx);
    sol.u.resize(nx);
    for (int i = 0; i < nx; ++i) {
        sol.x[i] = x_lo + (i + 0.5) * sol.dx;
        sol.u[i] = initial(sol.x[i]);
    }

    // Sonic state where F' changes sign, if inside the data range.
    double u_min = *std::min_element(sol.u.begin(), sol.u.end());
    double u_max = *std::max_element(sol.u.begin(), sol.u.end());
    bool has_sonic = flux.dF(u_min) < 0.0 && flux.dF(u_max) > 0.0;
    double sonic = has_sonic ? flux.inverse_speed(0.0, u_min, u_max) : 0.0;

    std::vector<double> f(static_cast<std::size_t>(nx) + 1);
    double t = 0.0;
    const double u_left_in = sol.u.front();
    const double u_right_in = sol.u.back();
    while (t < t_end) {
        double max_speed = 0.0;
        for (double ui : sol.u) max_speed = std::max(max_speed, std::abs(flux.dF(ui)));
        double dt = max_speed > 0.0 ? cfl * sol.dx / max_speed : t_end - t;
        dt = std::min(dt, t_end - t);

        f[0] = godunov_flux(flux, sonic, has_sonic, u_left_in, sol.u[0]);
        for (int i = 1; i < nx; ++i)
            f[i] = godunov_flux(flux, sonic, has_sonic, sol.u[i - 1], sol.u[i]);
        f[nx] = godunov_flux(flux, sonic, has_sonic, sol.u[nx - 1], u_right_in);

        double lam = dt / sol.dx;
        for (int i = 0; i < nx; ++i) sol.u[i] -= lam * (f[i + 1] - f[i]);
        t += dt;
    }
    return sol;
}

}  // namespace oracle
}  // namespace eqarea
