#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eqarea/oracle.hpp"
#include "eqarea/scenario.hpp"

using namespace eqarea;
namespace fs = std::filesystem;

namespace {

std::string scenario_dir() {
    if (const char* env = std::getenv("EQAREA_SCENARIO_DIR")) return env;
    return "scenarios";
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("eqarea_test_" + tag);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("scenario parsing errors carry context") {
    CHECK_THROWS_AS(parse_scenario("{ not json", "bad.json"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("{}", "empty.json"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"flux": {"name": "burgers"},
        "profile": {"pieces": []}, "output_times": []})", "times.json"),
                    ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"flux": {"name": "burgers"},
        "profile": {"pieces": []}, "output_times": [2.0, 1.0]})", "order.json"),
                    ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"flux": {"name": "nope"},
        "profile": {"pieces": []}, "output_times": [1.0]})", "flux.json"),
                    ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"flux": {"name": "burgers"},
        "profile": {"pieces": [{"type": "wavelet", "domain": [0, 1]}]},
        "output_times": [1.0]})", "piece.json"),
                    ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"flux": {"name": "burgers"},
        "profile": {"pieces": []}, "output_times": [1.0],
        "options": {"mode": "magic"}})", "mode.json"),
                    ConfigError);

    try {
        parse_scenario("{ not json", "bad.json");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bad.json") != std::string::npos);
    }
}

TEST_CASE("output_times accepts an inclusive range object") {
    Scenario sc = parse_scenario(R"({"flux": {"name": "burgers"},
        "profile": {"tail_left": 1.0, "pieces": []},
        "output_times": {"from": 0.0, "to": 10.0, "count": 5}})", "range.json");
    REQUIRE(sc.output_times.size() == 5);
    CHECK(sc.output_times.front() == doctest::Approx(0.0));
    CHECK(sc.output_times.back() == doctest::Approx(10.0));
}

TEST_CASE("run writes the triangle artifacts") {
    Scenario sc = load_scenario(scenario_dir() + "/triangle.json");
    fs::path dir = fresh_dir("triangle");
    RunReport rep = run_scenario(sc, dir.string());
    CHECK(rep.conservation_ok);
    CHECK(fs::exists(dir / "curve_samples.csv"));
    CHECK(fs::exists(dir / "shocks.csv"));
    CHECK(fs::exists(dir / "summary.json"));

    std::string shocks = slurp(dir / "shocks.csv");
    CHECK(shocks.find("t,id,X,uL,uR,speed,provenance") == 0);
    CHECK(shocks.find("\n0,0,1,1,0,0.5,isolated") != std::string::npos);
    // Second row: shock at t = 3 within round-off of X = 2.
    auto row = shocks.find("\n3,0,");
    REQUIRE(row != std::string::npos);
    double x3 = std::strtod(shocks.c_str() + row + 5, nullptr);
    CHECK(std::abs(x3 - 2.0) < 1e-12);
}

TEST_CASE("identical configs produce byte-identical CSVs") {
    Scenario sc = load_scenario(scenario_dir() + "/two_step.json");
    fs::path d1 = fresh_dir("det1");
    fs::path d2 = fresh_dir("det2");
    run_scenario(sc, d1.string());
    run_scenario(sc, d2.string());
    CHECK(slurp(d1 / "curve_samples.csv") == slurp(d2 / "curve_samples.csv"));
    CHECK(slurp(d1 / "shocks.csv") == slurp(d2 / "shocks.csv"));
}

TEST_CASE("shipped scenarios run conservatively") {
    for (const std::string& name : {"triangle", "arctan", "two_step"}) {
        Scenario sc = load_scenario(scenario_dir() + "/" + name + ".json");
        fs::path dir = fresh_dir("cons_" + name);
        RunReport rep = run_scenario(sc, dir.string());
        CHECK(rep.conservation_ok);
        CHECK(rep.max_drift <= sc.options.conservation_tol * rep.conservation_scale);
    }
}

TEST_CASE("arctan run: shock series starts after the breaking time") {
    Scenario sc = load_scenario(scenario_dir() + "/arctan.json");
    fs::path dir = fresh_dir("arctan_breaking");
    run_scenario(sc, dir.string());
    std::string shocks = slurp(dir / "shocks.csv");
    // Outputs at t = 0 and t = 0.5 precede t_s = 1: no records there.
    CHECK(shocks.find("\n0,") == std::string::npos);
    CHECK(shocks.find("\n0.5,") == std::string::npos);
    for (const char* t : {"\n1.5,", "\n3,", "\n5,"})
        CHECK(shocks.find(t) != std::string::npos);
}

TEST_CASE("an unattainable conservation tolerance is flagged") {
    Scenario sc = load_scenario(scenario_dir() + "/triangle.json");
    sc.options.conservation_tol = 1e-30;
    fs::path dir = fresh_dir("breach");
    RunReport rep = run_scenario(sc, dir.string());
    CHECK_FALSE(rep.conservation_ok);  // the CLI maps this to exit code 4
}

TEST_CASE("scenario out_dir field is parsed") {
    Scenario sc = parse_scenario(R"({"flux": {"name": "burgers"},
        "profile": {"tail_left": 1.0, "pieces": []},
        "output_times": [1.0], "out_dir": "some/dir"})", "outdir.json");
    CHECK(sc.out_dir == "some/dir");
}

TEST_CASE("compare: triangle against the closed form") {
    Scenario sc = load_scenario(scenario_dir() + "/triangle.json");
    CompareReport rep = compare_with_oracle(sc, "triangle");
    CHECK(rep.l1_error < 1e-12);
    CHECK(rep.max_shock_dx < 1e-13);
    CHECK(rep.max_shock_dspeed < 1e-12);
}

TEST_CASE("compare: Riemann against the exact solution") {
    Scenario sc = parse_scenario(R"({"name": "riemann",
        "flux": {"name": "burgers"},
        "profile": {"tail_left": 1.0, "tail_right": 0.0, "pieces": []},
        "output_times": [0.5, 2.0]})", "riemann.json");
    CompareReport rep = compare_with_oracle(sc, "riemann");
    CHECK(rep.max_shock_dx < 1e-12);
    CHECK(rep.l1_error < 1e-10);
}

TEST_CASE("compare: two-step collision time against front tracking") {
    Scenario sc = load_scenario(scenario_dir() + "/two_step.json");
    CompareReport rep = compare_with_oracle(sc, "auto");
    CHECK(rep.oracle == "front_tracking");
    CHECK(rep.collision_dt < 1e-10);
    CHECK(rep.max_shock_dx < 1e-10);
    CHECK(rep.l1_error < 1e-9);
}

TEST_CASE("convergence: triangle errors are round-off across the ladder") {
    Scenario sc = load_scenario(scenario_dir() + "/triangle.json");
    sc.output_times = {10.0};
    auto rows = convergence_study(sc, {1.0, 0.5, 0.1}, "auto");
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) CHECK(r.error < 1e-12);
}

TEST_CASE("convergence: two-step errors are event-exact") {
    Scenario sc = load_scenario(scenario_dir() + "/two_step.json");
    auto rows = convergence_study(sc, {0.5, 0.25, 0.125}, "front_tracking");
    for (const auto& r : rows) CHECK(r.error < 1e-10);
}

TEST_CASE("convergence: arctan against the Godunov fallback") {
    // No closed form exists for the arctan scenario, so the reference
    // is a 2^16-cell Godunov run; agreement is within one of its cells.
    Scenario sc = load_scenario(scenario_dir() + "/arctan.json");
    sc.output_times = {1.5};
    auto rows = convergence_study(sc, {0.5}, "godunov");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].error < 5.3e-4);  // reference dx is 5.22e-4 here
}

TEST_CASE("summary.json carries areas, shocks and collisions") {
    Scenario sc = load_scenario(scenario_dir() + "/two_step.json");
    fs::path dir = fresh_dir("summary");
    run_scenario(sc, dir.string());
    std::string text = slurp(dir / "summary.json");
    for (const char* key :
         {"\"scenario\"", "\"outputs\"", "\"total_area\"", "\"area_view\"",
          "\"drift\"", "\"max_pair_residual\"", "\"max_area_defect\"",
          "\"shocks\"", "\"collisions\"", "\"t_star\"", "\"x_star\"",
          "\"conservation\"", "\"wall_ms\"", "\"merged(0,1)\""})
        CHECK(text.find(key) != std::string::npos);
}

TEST_CASE("no oracle means NoOracle") {
    Scenario sc = parse_scenario(R"({"name": "odd",
        "flux": {"name": "exponential"},
        "profile": {"tail_left": 0.0, "tail_right": 0.0,
                    "pieces": [{"type": "polynomial", "domain": [0, 1],
                                "coeffs": [0.0, 1.0, -1.0]}]},
        "output_times": [1.0]})", "odd.json");
    CHECK_THROWS_AS(convergence_study(sc, {0.5}, "auto"), NoOracle);
}

TEST_CASE("appendix mode matches flow mode through the scenario surface") {
    Scenario sc = load_scenario(scenario_dir() + "/triangle.json");
    sc.output_times = {1.0, 2.0, 3.0};
    fs::path dflow = fresh_dir("modes_flow");
    run_scenario(sc, dflow.string());
    sc.options.mode = SolverMode::Appendix;
    fs::path dapx = fresh_dir("modes_apx");
    RunReport rep = run_scenario(sc, dapx.string());
    CHECK(rep.conservation_ok);
    std::string flow_csv = slurp(dflow / "shocks.csv");
    std::string apx_csv = slurp(dapx / "shocks.csv");
    CHECK(flow_csv.substr(0, flow_csv.find('\n')) ==
          apx_csv.substr(0, apx_csv.find('\n')));
}

TEST_CASE("shortest round-trip formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
    double v = 1.9999999999999858;
    double back = std::strtod(format_double(v).c_str(), nullptr);
    CHECK(back == v);
}
