#ifndef EQAREA_SCENARIO_HPP
#define EQAREA_SCENARIO_HPP

#include <string>
#include <vector>

#include "eqarea/curve.hpp"
#include "eqarea/shock.hpp"

namespace eqarea {

enum class SolverMode { Flow, Appendix };

struct ScenarioOptions {
    SolverMode mode = SolverMode::Flow;
    ReinitPolicy reinit = ReinitPolicy::Never;
    int n_per_piece = 64;
    int k_per_jump = 16;
    double conservation_tol = 1e-12;
};

/// The unit of CLI execution: flux + profile + output times + options.
struct Scenario {
    std::string name;
    FluxModel flux;
    PiecewiseProfile profile;
    std::vector<double> output_times;
    ScenarioOptions options;
    std::string out_dir = "out";  // default artifact directory

    CurvePtr make_initial_curve() const;
};

/// Parses the JSON scenario schema (see README). Throws ConfigError
/// with file/field context on malformed input.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text, const std::string& origin);

struct OutputReport {
    double t = 0.0;
    double area_ledger = 0.0;
    double area_quadrature = 0.0;
    double area_view = 0.0;
    double drift = 0.0;              // worst deviation between the three
    double max_pair_residual = 0.0;  // |int u x_s ds| over located pairs
    double max_area_defect = 0.0;    // parametric Hermite defect across intervals
    int n_shocks = 0;
};

struct RunReport {
    std::vector<OutputReport> outputs;
    std::vector<CollisionEvent> collisions;
    double conservation_scale = 1.0;
    double max_drift = 0.0;
    bool conservation_ok = true;
    double wall_ms = 0.0;
};

/// Executes the scenario and writes curve_samples.csv, shocks.csv and
/// summary.json into out_dir (created if missing).
RunReport run_scenario(const Scenario& scenario, const std::string& out_dir);

struct ConvergenceRow {
    double parameter = 0.0;  // dt of the ladder point
    double error = 0.0;      // |X_num - X_exact| at t_end
};

/// Shock-position error at the final output time against the named
/// oracle ("auto", "triangle", "front_tracking", "godunov"), stepping
/// outputs at each ladder dt. Throws NoOracle when no exact solution
/// applies and the Godunov fallback was not requested.
std::vector<ConvergenceRow> convergence_study(const Scenario& scenario,
                                              const std::vector<double>& ladder,
                                              const std::string& oracle_name);

struct CompareReport {
    double t = 0.0;
    double l1_error = 0.0;
    double max_shock_dx = 0.0;
    double max_shock_dspeed = 0.0;
    double collision_dt = 0.0;  // |t* - oracle|, when applicable
    double area_delta = 0.0;
    std::string oracle;
};

CompareReport compare_with_oracle(const Scenario& scenario,
                                  const std::string& oracle_name);

/// Shortest round-trip decimal representation (CSV determinism).
std::string format_double(double v);

}  // namespace eqarea

#endif
