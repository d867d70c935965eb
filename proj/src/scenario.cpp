#include "eqarea/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eqarea/interpolate.hpp"
#include "eqarea/oracle.hpp"
#include "json.hpp"

namespace eqarea {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

CurvePtr Scenario::make_initial_curve() const {
    return make_curve(flux, profile, options.n_per_piece, options.k_per_jump);
}

namespace {

[[noreturn]] void config_fail(const std::string& origin, const std::string& msg) {
    throw ConfigError(origin + ": " + msg);
}

double require_number(const json& j, const std::string& field,
                      const std::string& origin) {
    if (!j.contains(field) || !j[field].is_number())
        config_fail(origin, "missing or non-numeric field '" + field + "'");
    return j[field].get<double>();
}

std::vector<double> number_list(const json& j, const std::string& origin,
                                const std::string& field) {
    if (!j.is_array()) config_fail(origin, "'" + field + "' must be an array");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) config_fail(origin, "'" + field + "' holds a non-number");
        out.push_back(v.get<double>());
    }
    return out;
}

Piece parse_piece(const json& j, const std::string& origin, std::size_t index) {
    std::string where = "profile.pieces[" + std::to_string(index) + "]";
    if (!j.contains("type") || !j["type"].is_string())
        config_fail(origin, where + ": missing 'type'");
    if (!j.contains("domain"))
        config_fail(origin, where + ": missing 'domain'");
    std::vector<double> dom = number_list(j["domain"], origin, where + ".domain");
    if (dom.size() != 2) config_fail(origin, where + ".domain needs [x_left, x_right]");
    std::vector<double> coeffs;
    if (j.contains("coeffs")) coeffs = number_list(j["coeffs"], origin, where + ".coeffs");

    const std::string type = j["type"].get<std::string>();
    if (type == "constant") {
        if (coeffs.size() != 1) config_fail(origin, where + ": constant needs coeffs [c]");
        return make_constant_piece(dom[0], dom[1], coeffs[0]);
    }
    if (type == "linear") {
        if (coeffs.size() != 2) config_fail(origin, where + ": linear needs coeffs [c0, c1]");
        return make_linear_piece(dom[0], dom[1], coeffs[0], coeffs[1]);
    }
    if (type == "polynomial") {
        if (coeffs.empty()) config_fail(origin, where + ": polynomial needs coeffs");
        return make_polynomial_piece(dom[0], dom[1], coeffs);
    }
    if (type == "arctan") {
        if (coeffs.size() != 4)
            config_fail(origin, where + ": arctan needs coeffs [a, b, c, d]");
        return make_arctan_piece(dom[0], dom[1], coeffs[0], coeffs[1], coeffs[2], coeffs[3]);
    }
    config_fail(origin, where + ": unknown piece type '" + type + "'");
}

std::vector<double> parse_output_times(const json& j, const std::string& origin) {
    if (j.is_array()) {
        auto times = number_list(j, origin, "output_times");
        if (times.empty()) config_fail(origin, "output_times must be non-empty");
        return times;
    }
    if (j.is_object()) {
        double from = require_number(j, "from", origin);
        double to = require_number(j, "to", origin);
        double count = require_number(j, "count", origin);
        int n = static_cast<int>(count);
        if (n < 1 || !(to > from))
            config_fail(origin, "output_times range needs count >= 1 and to > from");
        std::vector<double> times;
        for (int i = 0; i < n; ++i)
            times.push_back(n == 1 ? to : from + (to - from) * i / (n - 1));
        return times;
    }
    config_fail(origin, "output_times must be an array or {from, to, count}");
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }

    Scenario sc;
    sc.name = root.value("name", std::string("scenario"));
    sc.out_dir = root.value("out_dir", std::string("out"));

    if (!root.contains("flux") || !root["flux"].is_object())
        config_fail(origin, "missing 'flux' object");
    {
        const json& jf = root["flux"];
        if (!jf.contains("name") || !jf["name"].is_string())
            config_fail(origin, "flux.name missing");
        std::vector<double> coeffs;
        if (jf.contains("coeffs")) coeffs = number_list(jf["coeffs"], origin, "flux.coeffs");
        try {
            sc.flux = make_flux(jf["name"].get<std::string>(), coeffs);
        } catch (const SpecError& e) {
            config_fail(origin, std::string("flux: ") + e.what());
        }
    }

    if (!root.contains("profile") || !root["profile"].is_object())
        config_fail(origin, "missing 'profile' object");
    {
        const json& jp = root["profile"];
        double tail_left = jp.value("tail_left", 0.0);
        double tail_right = jp.value("tail_right", 0.0);
        std::vector<Piece> pieces;
        if (jp.contains("pieces")) {
            if (!jp["pieces"].is_array())
                config_fail(origin, "profile.pieces must be an array");
            for (std::size_t i = 0; i < jp["pieces"].size(); ++i)
                pieces.push_back(parse_piece(jp["pieces"][i], origin, i));
        }
        try {
            sc.profile = build_profile(std::move(pieces), tail_left, tail_right);
        } catch (const SolverError& e) {
            config_fail(origin, std::string("profile: ") + e.what());
        }
    }

    if (!root.contains("output_times"))
        config_fail(origin, "missing 'output_times'");
    sc.output_times = parse_output_times(root["output_times"], origin);
    for (std::size_t i = 0; i + 1 < sc.output_times.size(); ++i)
        if (!(sc.output_times[i] < sc.output_times[i + 1]))
            config_fail(origin, "output_times must be strictly increasing");
    if (sc.output_times.front() < 0.0)
        config_fail(origin, "output_times must be >= 0");

    if (root.contains("options")) {
        const json& jo = root["options"];
        std::string mode = jo.value("mode", std::string("flow"));
        if (mode == "flow") sc.options.mode = SolverMode::Flow;
        else if (mode == "appendix") sc.options.mode = SolverMode::Appendix;
        else config_fail(origin, "options.mode must be 'flow' or 'appendix'");
        std::string reinit = jo.value("reinit", std::string("never"));
        if (reinit == "never") sc.options.reinit = ReinitPolicy::Never;
        else if (reinit == "after-collision") sc.options.reinit = ReinitPolicy::AfterCollision;
        else if (reinit == "every-output") sc.options.reinit = ReinitPolicy::EveryOutput;
        else config_fail(origin, "options.reinit must be never|after-collision|every-output");
        sc.options.n_per_piece = jo.value("n_per_piece", 64);
        sc.options.k_per_jump = jo.value("k_per_jump", 16);
        if (sc.options.n_per_piece < 2 || sc.options.k_per_jump < 2)
            config_fail(origin, "options.n_per_piece and k_per_jump must be >= 2");
        if (jo.contains("tolerances")) {
            sc.options.conservation_tol =
                jo["tolerances"].value("conservation", sc.options.conservation_tol);
            if (!(sc.options.conservation_tol > 0.0))
                config_fail(origin, "tolerances must be positive");
        }
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open scenario file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path);
}

namespace {

// Parametric-Hermite area defects across the node intervals of the
// flowed curve (reported, not enforced).
double max_hermite_defect(const ParametricCurve& curve, double t) {
    const auto& nodes = curve.nodes();
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        double s_a = nodes[i].s;
        double s_b = nodes[i + 1].s;
        std::size_t ta = curve.track_index(0.5 * (s_a + s_b));
        CurvePoint pa = curve.evaluate_on_track(ta, s_a, t);
        CurvePoint pb = curve.evaluate_on_track(ta, s_b, t);
        double xs_a = curve.slope_x_on_track(ta, s_a, t);
        double xs_b = curve.slope_x_on_track(ta, s_b, t);
        const Track& tr = *curve.tracks()[ta];
        Point2 v0{xs_a, tr.du(s_a)};
        Point2 v1{xs_b, tr.du(s_b)};
        if (std::hypot(v0.x, v0.u) == 0.0 || std::hypot(v1.x, v1.u) == 0.0) continue;
        ParametricSegment seg = parametric_hermite({pa.x, pa.u}, {pb.x, pb.u}, v0, v1,
                                                   curve.segment_area(i, t));
        worst = std::max(worst, seg.area_defect);
    }
    return worst;
}

void write_curve_samples(std::ofstream& os, const ParametricCurve& curve, double t,
                         int per_interval) {
    const auto& nodes = curve.nodes();
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        for (int k = 0; k < per_interval; ++k) {
            double s = nodes[i].s +
                       (nodes[i + 1].s - nodes[i].s) * static_cast<double>(k) / per_interval;
            CurvePoint p = curve.evaluate(s, t);
            os << format_double(t) << "," << format_double(s) << ","
               << format_double(p.x) << "," << format_double(p.u) << ","
               << curve.track_index(s) << "\n";
        }
    }
    double s_last = nodes.back().s;
    CurvePoint p = curve.evaluate(s_last, t);
    os << format_double(t) << "," << format_double(s_last) << ","
       << format_double(p.x) << "," << format_double(p.u) << ","
       << curve.track_index(s_last) << "\n";
}

json report_to_json(const Scenario& sc, const RunReport& rep,
                    const std::vector<TrackOutput>& outputs,
                    const std::vector<ShockRecord>& appendix_records) {
    json out;
    out["scenario"] = sc.name;
    out["mode"] = sc.options.mode == SolverMode::Flow ? "flow" : "appendix";
    out["n_per_piece"] = sc.options.n_per_piece;
    out["k_per_jump"] = sc.options.k_per_jump;
    json jout = json::array();
    for (std::size_t i = 0; i < rep.outputs.size(); ++i) {
        const OutputReport& o = rep.outputs[i];
        json jo;
        jo["t"] = o.t;
        jo["total_area"] = o.area_ledger;
        jo["area_quadrature"] = o.area_quadrature;
        jo["area_view"] = o.area_view;
        jo["drift"] = o.drift;
        jo["max_pair_residual"] = o.max_pair_residual;
        jo["max_area_defect"] = o.max_area_defect;
        json js = json::array();
        if (!outputs.empty()) {
            for (const ShockRecord& r : outputs[i].records) {
                js.push_back({{"id", r.id}, {"X", r.X}, {"uL", r.uL}, {"uR", r.uR},
                              {"speed", r.speed}, {"provenance", r.provenance()}});
            }
        } else {
            for (const ShockRecord& r : appendix_records) {
                if (r.t != o.t) continue;
                js.push_back({{"id", r.id}, {"X", r.X}, {"uL", r.uL}, {"uR", r.uR},
                              {"speed", r.speed}, {"provenance", r.provenance()}});
            }
        }
        jo["shocks"] = js;
        jout.push_back(jo);
    }
    out["outputs"] = jout;
    json jcol = json::array();
    for (const CollisionEvent& c : rep.collisions)
        jcol.push_back({{"t_star", c.t_star}, {"x_star", c.x_star},
                        {"parents", c.parents}, {"merged_id", c.merged_id}});
    out["collisions"] = jcol;
    out["conservation"] = {{"scale", rep.conservation_scale},
                           {"max_drift", rep.max_drift},
                           {"tolerance", sc.options.conservation_tol},
                           {"ok", rep.conservation_ok}};
    out["wall_ms"] = rep.wall_ms;
    return out;
}

}  // namespace

RunReport run_scenario(const Scenario& scenario, const std::string& out_dir) {
    namespace fs = std::filesystem;
    auto t_start = std::chrono::steady_clock::now();
    fs::create_directories(out_dir);

    CurvePtr curve = scenario.make_initial_curve();

    std::vector<TrackOutput> outputs;
    std::vector<CollisionEvent> collisions;
    std::vector<ShockRecord> appendix_records;
    if (scenario.options.mode == SolverMode::Flow) {
        TrackOptions topt;
        topt.reinit = scenario.options.reinit;
        TrackResult tracked = track_shocks(curve, scenario.output_times, topt);
        outputs = tracked.outputs;
        collisions = tracked.collisions;
    } else {
        appendix_records = track_shock_appendix(curve, scenario.output_times);
    }

    RunReport rep;
    rep.collisions = collisions;

    std::ofstream curve_csv(fs::path(out_dir) / "curve_samples.csv");
    std::ofstream shocks_csv(fs::path(out_dir) / "shocks.csv");
    curve_csv << "t,s,x,u,branch\n";
    shocks_csv << "t,id,X,uL,uR,speed,provenance\n";

    for (std::size_t i = 0; i < scenario.output_times.size(); ++i) {
        double t = scenario.output_times[i];
        CurvePtr frame = outputs.empty() ? curve : outputs[i].frame;

        OutputReport orep;
        orep.t = t;
        orep.area_ledger = frame->total_area(t);
        orep.area_quadrature = multivalued_area(*frame, t, frame->s_begin(), frame->s_end());
        double drift_projection = 0.0;
        if (!outputs.empty()) {
            WeakSolutionView view(frame, t, outputs[i].pairs);
            orep.area_view = view.total_area();
            // Compare the projected area against the curve over the same
            // parameter window (pairs may reach into the tails).
            double quad_window =
                multivalued_area(*frame, t, view.window_lo(), view.window_hi());
            drift_projection = std::abs(orep.area_view - quad_window);
            for (const EqualAreaPair& p : outputs[i].pairs)
                orep.max_pair_residual = std::max(
                    orep.max_pair_residual,
                    std::abs(multivalued_area(*frame, t, p.s0, p.s1)));
            orep.n_shocks = static_cast<int>(outputs[i].records.size());
            for (const ShockRecord& r : outputs[i].records)
                shocks_csv << format_double(r.t) << "," << r.id << ","
                           << format_double(r.X) << "," << format_double(r.uL) << ","
                           << format_double(r.uR) << "," << format_double(r.speed)
                           << "," << r.provenance() << "\n";
        } else {
            orep.area_view = orep.area_quadrature;
            for (const ShockRecord& r : appendix_records) {
                if (r.t != t) continue;
                ++orep.n_shocks;
                shocks_csv << format_double(r.t) << "," << r.id << ","
                           << format_double(r.X) << "," << format_double(r.uL) << ","
                           << format_double(r.uR) << "," << format_double(r.speed)
                           << "," << r.provenance() << "\n";
            }
        }
        orep.max_area_defect = max_hermite_defect(*frame, t);
        orep.drift = std::max(std::abs(orep.area_quadrature - orep.area_ledger),
                              drift_projection);
        rep.outputs.push_back(orep);

        write_curve_samples(curve_csv, *frame, t, 8);
    }

    double scale = 1.0;
    for (const OutputReport& o : rep.outputs)
        scale = std::max(scale, std::abs(o.area_ledger));
    rep.conservation_scale = scale;
    for (const OutputReport& o : rep.outputs) rep.max_drift = std::max(rep.max_drift, o.drift);
    rep.conservation_ok = rep.max_drift <= scenario.options.conservation_tol * scale;

    auto t_end = std::chrono::steady_clock::now();
    rep.wall_ms = std::chrono::duration<double, std::milli>(t_end - t_start).count();

    std::ofstream summary(fs::path(out_dir) / "summary.json");
    summary << report_to_json(scenario, rep, outputs, appendix_records).dump(2) << "\n";
    return rep;
}

namespace {

bool all_constant_down_steps(const PiecewiseProfile& prof,
                             std::vector<double>* levels,
                             std::vector<double>* positions) {
    for (const Piece& p : prof.pieces)
        if (p.kind != "constant") return false;
    std::vector<double> lv{prof.tail_left};
    std::vector<double> pos;
    for (const Jump& j : prof.jumps) {
        if (j.direction != JumpDirection::Down) return false;
        pos.push_back(j.x);
        lv.push_back(j.u_right);
    }
    if (pos.empty()) return false;
    if (levels) *levels = lv;
    if (positions) *positions = pos;
    return true;
}

std::string resolve_oracle(const Scenario& sc, const std::string& requested) {
    if (requested != "auto") return requested;
    if (sc.flux.name == "burgers" && sc.profile.pieces.size() == 1 &&
        sc.profile.pieces.front().kind == "linear" &&
        sc.profile.pieces.front().x_left == 0.0 &&
        sc.profile.pieces.front().x_right == 1.0 &&
        sc.profile.pieces.front().g(0.7) == 0.7 && sc.profile.tail_left == 0.0 &&
        sc.profile.tail_right == 0.0)
        return "triangle";
    if (all_constant_down_steps(sc.profile, nullptr, nullptr)) return "front_tracking";
    throw NoOracle("no exact oracle for scenario '" + sc.name +
                   "'; request --oracle godunov explicitly");
}

// Shock positions of the oracle at time t, sorted.
std::vector<double> oracle_shock_positions(const Scenario& sc,
                                           const std::string& oracle, double t) {
    if (oracle == "triangle") return {oracle::triangle_exact(t).shock_x};
    if (oracle == "front_tracking") {
        std::vector<double> levels, positions;
        if (!all_constant_down_steps(sc.profile, &levels, &positions))
            throw NoOracle("front_tracking oracle needs pure down-step data");
        auto sol = oracle::front_tracking_exact(levels, positions, sc.flux, t);
        std::vector<double> xs;
        for (const auto& f : sol.fronts) xs.push_back(f.x);
        return xs;
    }
    throw NoOracle("oracle '" + oracle + "' has no closed-form shock positions");
}

}  // namespace

std::vector<ConvergenceRow> convergence_study(const Scenario& scenario,
                                              const std::vector<double>& ladder,
                                              const std::string& oracle_name) {
    if (ladder.empty()) throw SpecError("convergence_study: empty ladder");
    const double t_end = scenario.output_times.back();
    std::string oracle = resolve_oracle(scenario, oracle_name);

    std::vector<double> exact_positions;
    if (oracle == "godunov") {
        Scenario fine = scenario;
        CurvePtr c = fine.make_initial_curve();
        double span = scenario.profile.x_max - scenario.profile.x_min + 1.0;
        double reach = 0.0;
        for (const Node& n : c->nodes())
            reach = std::max(reach, std::abs(scenario.flux.dF(n.u)) * t_end);
        double x_lo = scenario.profile.x_min - 0.25 * span;
        double x_hi = scenario.profile.x_max + reach + 0.25 * span;
        auto initial = [&](double x) { return scenario.profile.eval(x); };
        auto g = oracle::godunov_reference(scenario.flux, initial, x_lo, x_hi, 1 << 16,
                                           0.9, t_end);
        TrackOptions topt;
        topt.reinit = scenario.options.reinit;
        auto tracked = track_shocks(c, {t_end}, topt);
        if (tracked.outputs.back().records.size() != 1)
            throw NoOracle("godunov convergence fallback expects a single shock");
        const ShockRecord& r = tracked.outputs.back().records.front();
        exact_positions = {g.shock_position(r.uL, r.uR)};
    } else {
        exact_positions = oracle_shock_positions(scenario, oracle, t_end);
    }
    std::sort(exact_positions.begin(), exact_positions.end());

    std::vector<ConvergenceRow> rows;
    for (double dt : ladder) {
        if (!(dt > 0.0)) throw SpecError("convergence_study: ladder dt must be positive");
        std::vector<double> times;
        for (double t = dt; t < t_end - 0.5 * dt; t += dt) times.push_back(t);
        times.push_back(t_end);

        std::vector<double> positions;
        CurvePtr c = scenario.make_initial_curve();
        if (scenario.options.mode == SolverMode::Appendix) {
            auto records = track_shock_appendix(c, times);
            for (auto it = records.rbegin(); it != records.rend(); ++it) {
                if (it->t != t_end) break;
                positions.push_back(it->X);
            }
        } else {
            TrackOptions topt;
            topt.reinit = scenario.options.reinit;
            auto tracked = track_shocks(c, times, topt);
            for (const ShockRecord& r : tracked.outputs.back().records)
                positions.push_back(r.X);
        }
        std::sort(positions.begin(), positions.end());
        if (positions.size() != exact_positions.size())
            throw SolverError("convergence_study: shock count mismatch against oracle");
        double err = 0.0;
        for (std::size_t i = 0; i < positions.size(); ++i)
            err = std::max(err, std::abs(positions[i] - exact_positions[i]));
        rows.push_back({dt, err});
    }
    return rows;
}

CompareReport compare_with_oracle(const Scenario& scenario,
                                  const std::string& oracle_name) {
    const double t_end = scenario.output_times.back();
    std::string oracle = resolve_oracle(scenario, oracle_name);

    CompareReport rep;
    rep.oracle = oracle;
    rep.t = t_end;

    CurvePtr c = scenario.make_initial_curve();
    TrackOptions topt;
    topt.reinit = scenario.options.reinit;
    TrackResult tracked = track_shocks(c, scenario.output_times, topt);
    const TrackOutput& last = tracked.outputs.back();
    WeakSolutionView view(last.frame, t_end, last.pairs);

    // Comparison grid spanning the projected solution.
    double x_lo = view.x_min() - 1.0;
    double x_hi = view.x_max() + 1.0;
    const int grid_n = 4096;

    std::function<double(double)> exact;
    std::vector<double> oracle_x;
    std::vector<double> oracle_speed;
    if (oracle == "triangle") {
        auto sol = oracle::triangle_exact(t_end);
        exact = [sol](double x) { return sol.eval(x); };
        oracle_x = {sol.shock_x};
        oracle_speed = {0.5 / std::sqrt(1.0 + t_end)};
    } else if (oracle == "front_tracking") {
        std::vector<double> levels, positions;
        if (!all_constant_down_steps(scenario.profile, &levels, &positions))
            throw NoOracle("front_tracking oracle needs pure down-step data");
        auto sol = oracle::front_tracking_exact(levels, positions, scenario.flux, t_end);
        exact = [sol](double x) { return sol.eval(x); };
        for (const auto& f : sol.fronts) {
            oracle_x.push_back(f.x);
            oracle_speed.push_back(f.speed);
        }
        if (!sol.events.empty() && !tracked.collisions.empty())
            rep.collision_dt =
                std::abs(tracked.collisions.front().t_star - sol.events.front().t);
    } else if (oracle == "riemann") {
        if (!scenario.profile.empty_support() || scenario.profile.jumps.empty())
            throw NoOracle("riemann oracle needs a pure two-state profile");
        double uL = scenario.profile.tail_left;
        double uR = scenario.profile.tail_right;
        const FluxModel& flux = scenario.flux;
        exact = [&flux, uL, uR, t_end](double x) {
            return oracle::riemann_exact(flux, uL, uR, t_end, x);
        };
        if (uL > uR) {
            oracle_x = {rh_speed(flux, uL, uR) * t_end};
            oracle_speed = {rh_speed(flux, uL, uR)};
        }
    } else if (oracle == "godunov") {
        auto initial = [&](double x) { return scenario.profile.eval(x); };
        auto g = oracle::godunov_reference(scenario.flux, initial, x_lo, x_hi, 1 << 15,
                                           0.9, t_end);
        exact = [g](double x) {
            auto it = std::lower_bound(g.x.begin(), g.x.end(), x);
            std::size_t i = static_cast<std::size_t>(
                std::clamp<std::ptrdiff_t>(it - g.x.begin(), 0,
                                           static_cast<std::ptrdiff_t>(g.x.size()) - 1));
            return g.u[i];
        };
        for (const ShockRecord& r : last.records)
            oracle_x.push_back(g.shock_position(r.uL, r.uR));
    } else {
        throw NoOracle("unknown oracle '" + oracle + "'");
    }

    double l1 = 0.0;
    double dx = (x_hi - x_lo) / grid_n;
    for (int i = 0; i < grid_n; ++i) {
        double x = x_lo + (i + 0.5) * dx;
        l1 += std::abs(view.eval(x) - exact(x)) * dx;
    }
    rep.l1_error = l1;

    std::vector<double> ours;
    std::vector<double> our_speed;
    for (const ShockRecord& r : last.records) {
        ours.push_back(r.X);
        our_speed.push_back(r.speed);
    }
    std::sort(ours.begin(), ours.end());
    std::sort(oracle_x.begin(), oracle_x.end());
    for (std::size_t i = 0; i < std::min(ours.size(), oracle_x.size()); ++i)
        rep.max_shock_dx = std::max(rep.max_shock_dx, std::abs(ours[i] - oracle_x[i]));
    std::sort(our_speed.begin(), our_speed.end());
    std::sort(oracle_speed.begin(), oracle_speed.end());
    for (std::size_t i = 0; i < std::min(our_speed.size(), oracle_speed.size()); ++i)
        rep.max_shock_dspeed =
            std::max(rep.max_shock_dspeed, std::abs(our_speed[i] - oracle_speed[i]));

    // Mass over the grid window against the oracle.
    double mass_view = 0.0, mass_exact = 0.0;
    for (int i = 0; i < grid_n; ++i) {
        double x = x_lo + (i + 0.5) * dx;
        mass_view += view.eval(x) * dx;
        mass_exact += exact(x) * dx;
    }
    rep.area_delta = std::abs(mass_view - mass_exact);
    return rep;
}

}  // namespace eqarea
