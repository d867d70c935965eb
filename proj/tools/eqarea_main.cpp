#include <atomic>
#include <filesystem>
#include <iostream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "eqarea/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitThreshold = 4;

struct GlobalFlags {
    std::string out_dir;  // empty: use the scenario's out_dir
    std::string mode;     // empty: keep scenario setting
    std::string reinit;   // empty: keep scenario setting
    int jobs = 1;
};

eqarea::Scenario load_with_overrides(const std::string& path, const GlobalFlags& flags) {
    eqarea::Scenario sc = eqarea::load_scenario(path);
    if (flags.mode == "flow") sc.options.mode = eqarea::SolverMode::Flow;
    else if (flags.mode == "appendix") sc.options.mode = eqarea::SolverMode::Appendix;
    else if (!flags.mode.empty())
        throw eqarea::ConfigError("--mode must be flow or appendix");
    if (flags.reinit == "never") sc.options.reinit = eqarea::ReinitPolicy::Never;
    else if (flags.reinit == "after-collision")
        sc.options.reinit = eqarea::ReinitPolicy::AfterCollision;
    else if (flags.reinit == "every-output")
        sc.options.reinit = eqarea::ReinitPolicy::EveryOutput;
    else if (!flags.reinit.empty())
        throw eqarea::ConfigError("--reinit must be never|after-collision|every-output");
    return sc;
}

int run_command(const std::vector<std::string>& configs, const GlobalFlags& flags) {
    std::atomic<int> exit_code{kExitOk};
    auto run_one = [&](const std::string& path) {
        try {
            eqarea::Scenario sc = load_with_overrides(path, flags);
            std::string base = flags.out_dir.empty() ? sc.out_dir : flags.out_dir;
            std::string dir = configs.size() == 1
                                  ? base
                                  : (std::filesystem::path(base) / sc.name).string();
            eqarea::RunReport rep = eqarea::run_scenario(sc, dir);
            std::cout << sc.name << ": " << rep.outputs.size() << " outputs, "
                      << rep.collisions.size() << " collisions, max drift "
                      << eqarea::format_double(rep.max_drift) << " (scale "
                      << eqarea::format_double(rep.conservation_scale) << "), "
                      << rep.wall_ms << " ms -> " << dir << "\n";
            if (!rep.conservation_ok) {
                std::cerr << sc.name << ": conservation drift above tolerance\n";
                int expected = kExitOk;
                exit_code.compare_exchange_strong(expected, kExitThreshold);
            }
        } catch (const eqarea::ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            exit_code.store(kExitConfig);
        } catch (const std::exception& e) {
            std::cerr << "solver error: " << e.what() << "\n";
            int expected = kExitOk;
            exit_code.compare_exchange_strong(expected, kExitSolver);
        }
    };

    if (flags.jobs <= 1 || configs.size() <= 1) {
        for (const std::string& path : configs) run_one(path);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        int n_threads = std::min<int>(flags.jobs, static_cast<int>(configs.size()));
        for (int i = 0; i < n_threads; ++i)
            pool.emplace_back([&]() {
                for (std::size_t k = next.fetch_add(1); k < configs.size();
                     k = next.fetch_add(1))
                    run_one(configs[k]);
            });
        for (std::thread& th : pool) th.join();
    }
    return exit_code.load();
}

int convergence_command(const std::string& config, const std::vector<double>& ladder,
                        const std::string& oracle, const GlobalFlags& flags) {
    try {
        eqarea::Scenario sc = load_with_overrides(config, flags);
        auto rows = eqarea::convergence_study(sc, ladder, oracle);
        std::cout << "dt,error\n";
        for (const auto& r : rows)
            std::cout << eqarea::format_double(r.parameter) << ","
                      << eqarea::format_double(r.error) << "\n";
        return kExitOk;
    } catch (const eqarea::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    }
}

int compare_command(const std::string& config, const std::string& oracle,
                    const GlobalFlags& flags) {
    try {
        eqarea::Scenario sc = load_with_overrides(config, flags);
        eqarea::CompareReport rep = eqarea::compare_with_oracle(sc, oracle);
        std::cout << "oracle: " << rep.oracle << "\n"
                  << "t: " << eqarea::format_double(rep.t) << "\n"
                  << "l1_error: " << eqarea::format_double(rep.l1_error) << "\n"
                  << "max_shock_dx: " << eqarea::format_double(rep.max_shock_dx) << "\n"
                  << "max_shock_dspeed: " << eqarea::format_double(rep.max_shock_dspeed)
                  << "\n"
                  << "collision_dt: " << eqarea::format_double(rep.collision_dt) << "\n"
                  << "area_delta: " << eqarea::format_double(rep.area_delta) << "\n";
        return kExitOk;
    } catch (const eqarea::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equal-area solver for 1D scalar conservation laws"};
    app.require_subcommand(1);

    GlobalFlags flags;
    app.add_option("--out", flags.out_dir, "Output directory");
    app.add_option("--mode", flags.mode, "Override solver mode (flow|appendix)");
    app.add_option("--reinit", flags.reinit,
                   "Override reinit policy (never|after-collision|every-output)");
    app.add_option("--jobs", flags.jobs, "Concurrent scenarios for batch runs");

    auto* run = app.add_subcommand("run", "Run scenarios and write CSV/JSON artifacts");
    std::vector<std::string> run_configs;
    run->add_option("configs", run_configs, "Scenario config files")->required();

    auto* conv = app.add_subcommand("convergence", "Shock-position error over a dt ladder");
    std::string conv_config;
    std::vector<double> ladder;
    std::string conv_oracle = "auto";
    conv->add_option("config", conv_config, "Scenario config file")->required();
    conv->add_option("--ladder", ladder, "Output-step ladder (dt values)")
        ->required()
        ->delimiter(',');
    conv->add_option("--oracle", conv_oracle,
                     "Oracle (auto|triangle|front_tracking|godunov)");

    auto* cmp = app.add_subcommand("compare", "Compare a run against an oracle");
    std::string cmp_config;
    std::string cmp_oracle = "auto";
    cmp->add_option("config", cmp_config, "Scenario config file")->required();
    cmp->add_option("--oracle", cmp_oracle,
                    "Oracle (auto|triangle|front_tracking|riemann|godunov)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    if (run->parsed()) return run_command(run_configs, flags);
    if (conv->parsed()) return convergence_command(conv_config, ladder, conv_oracle, flags);
    if (cmp->parsed()) return compare_command(cmp_config, cmp_oracle, flags);
    return kExitConfig;
}
