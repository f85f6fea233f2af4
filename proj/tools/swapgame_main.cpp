#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "swapgame/equilibrium.hpp"
#include "swapgame/mcsim.hpp"
#include "swapgame/statics.hpp"
#include "swapgame/verify.hpp"
#include "swapgame/welfare.hpp"

namespace {

using nlohmann::json;
using namespace swapgame;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitIoError = 3;

struct SimFragment {
    std::uint64_t n = 100000;
    std::uint64_t seed = 0;
    std::optional<StrategyProfile> profile; // absent: audit all cells
    Regime regime = Regime::Swap;
};

struct SweepFragment {
    std::string axis;
    std::vector<double> grid;
    std::vector<std::string> outputs = {"p_bar_eq15", "p_bar_deviation", "p_pp_br",
                                        "pure_ne_count"};
};

struct RunConfig {
    GameParams params;
    BehaviorPolicy behavior;
    WelfareSpec welfare;
    SimFragment sim;
    SweepFragment sweep;
};

PrepStrategy prep_from_string(const std::string& s) {
    if (s == "P") return PrepStrategy::Prepare;
    if (s == "NP") return PrepStrategy::NotPrepare;
    throw DomainError("profile", "preparation strategy must be \"P\" or \"NP\"");
}

StrategyProfile profile_from_string(const std::string& s, const BehaviorPolicy& behavior) {
    StrategyProfile pr;
    pr.behavior = behavior;
    if (s == "PP") {
        pr.s_a = pr.s_b = PrepStrategy::Prepare;
    } else if (s == "PNP") {
        pr.s_a = PrepStrategy::Prepare;
        pr.s_b = PrepStrategy::NotPrepare;
    } else if (s == "NPP") {
        pr.s_a = PrepStrategy::NotPrepare;
        pr.s_b = PrepStrategy::Prepare;
    } else if (s == "NPNP") {
        pr.s_a = pr.s_b = PrepStrategy::NotPrepare;
    } else {
        throw DomainError("profile", "profile must be one of PP, PNP, NPP, NPNP");
    }
    return pr;
}

Regime regime_from_string(const std::string& s) {
    if (s == "swap") return Regime::Swap;
    if (s == "traditional") return Regime::Traditional;
    throw DomainError("regime", "regime must be \"swap\" or \"traditional\"");
}

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    cfg.params = validate(cfg.params);
    if (path.empty()) return cfg;

    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw DomainError("config", std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw DomainError("config", "config root must be a JSON object");
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& key = it.key();
        if (key != "params" && key != "behavior" && key != "welfare" && key != "sim" &&
            key != "sweep") {
            throw DomainError(key, "unknown key \"" + key + "\" in config");
        }
    }
    if (doc.contains("params")) cfg.params = params_from_json(doc["params"]);
    if (doc.contains("behavior")) cfg.behavior = behavior_from_json(doc["behavior"]);
    if (doc.contains("welfare")) cfg.welfare = welfare_spec_from_json(doc["welfare"]);
    if (doc.contains("sim")) {
        const json& sim = doc["sim"];
        for (auto it = sim.begin(); it != sim.end(); ++it) {
            const std::string& key = it.key();
            if (key == "n") {
                cfg.sim.n = it.value().get<std::uint64_t>();
            } else if (key == "seed") {
                cfg.sim.seed = it.value().get<std::uint64_t>();
            } else if (key == "profile") {
                cfg.sim.profile =
                    profile_from_string(it.value().get<std::string>(), cfg.behavior);
            } else if (key == "regime") {
                cfg.sim.regime = regime_from_string(it.value().get<std::string>());
            } else {
                throw DomainError(key, "unknown key \"" + key + "\" in sim");
            }
        }
    }
    if (doc.contains("sweep")) {
        const json& sw = doc["sweep"];
        for (auto it = sw.begin(); it != sw.end(); ++it) {
            const std::string& key = it.key();
            if (key == "axis") {
                cfg.sweep.axis = it.value().get<std::string>();
            } else if (key == "grid") {
                cfg.sweep.grid = it.value().get<std::vector<double>>();
            } else if (key == "outputs") {
                cfg.sweep.outputs = it.value().get<std::vector<std::string>>();
            } else {
                throw DomainError(key, "unknown key \"" + key + "\" in sweep");
            }
        }
    }
    return cfg;
}

std::vector<double> parse_grid_flag(const std::string& text) {
    // "a:b:steps" -> `steps` evenly spaced points from a to b inclusive.
    double from = 0.0;
    double to = 0.0;
    int steps = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &from, &to, &steps) != 3 || steps < 1) {
        throw DomainError("grid", "grid must have the form from:to:steps with steps >= 1");
    }
    std::vector<double> grid;
    if (steps == 1) {
        grid.push_back(from);
        return grid;
    }
    for (int k = 0; k < steps; ++k) {
        grid.push_back(from + (to - from) * static_cast<double>(k) / (steps - 1));
    }
    return grid;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open output file: " + out_path);
    }
    out << text;
    if (!out) {
        throw IoError("failed writing output file: " + out_path);
    }
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int cmd_solve(const RunConfig& cfg, const std::string& format, const std::string& out) {
    const EquilibriumReport report = solve(cfg.params, cfg.behavior);
    if (format == "json") {
        write_output(report_to_json(report).dump(2) + "\n", out);
    } else {
        write_output(report_to_table(report), out);
    }
    return kExitOk;
}

int cmd_threshold(const RunConfig& cfg, const std::string& format, const std::string& out) {
    const ThresholdReport t = compute_thresholds(cfg.params, cfg.behavior);
    if (format == "json") {
        json j{{"schema_version", 1},
               {"p_bar_eq15", t.p_bar_eq15 ? json(*t.p_bar_eq15) : json(nullptr)},
               {"p_bar_eq15_note", t.eq15_note},
               {"p_bar_deviation",
                t.p_bar_deviation ? json(*t.p_bar_deviation) : json(nullptr)},
               {"p_bar_deviation_note", t.deviation_note},
               {"p_pp_br", t.numeric.p_pp_br ? json(*t.numeric.p_pp_br) : json(nullptr)},
               {"p_unique", t.numeric.p_unique ? json(*t.numeric.p_unique) : json(nullptr)},
               {"annotation", t.numeric.annotation}};
        write_output(j.dump(2) + "\n", out);
    } else {
        std::ostringstream text;
        text << "p_bar_eq15      = " << (t.p_bar_eq15 ? fmt(*t.p_bar_eq15) : "n/a");
        if (!t.eq15_note.empty()) text << "  [" << t.eq15_note << "]";
        text << "\n";
        text << "p_bar_deviation = "
             << (t.p_bar_deviation ? fmt(*t.p_bar_deviation) : "n/a");
        if (!t.deviation_note.empty()) text << "  [" << t.deviation_note << "]";
        text << "\n";
        text << "p_pp_br         = " << (t.numeric.p_pp_br ? fmt(*t.numeric.p_pp_br) : "n/a")
             << "\n";
        text << "p_unique        = "
             << (t.numeric.p_unique ? fmt(*t.numeric.p_unique) : "n/a");
        if (!t.numeric.annotation.empty()) text << "  [" << t.numeric.annotation << "]";
        text << "\n";
        write_output(text.str(), out);
    }
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const std::string& format, const std::string& out,
              unsigned threads) {
    (void)threads; // rows are cheap; evaluation is sequential and order-fixed
    SweepSpec spec;
    spec.base = cfg.params;
    spec.behavior = cfg.behavior;
    spec.axis = cfg.sweep.axis;
    spec.grid = cfg.sweep.grid;
    spec.outputs = cfg.sweep.outputs;
    if (spec.axis.empty()) {
        throw SpecError("sweep requires an axis (config sweep.axis or --axis)");
    }
    if (spec.grid.empty()) {
        throw SpecError("sweep requires a grid (config sweep.grid or --grid)");
    }
    const SweepResult result = run_sweep(spec);
    if (format == "json") {
        json rows = json::array();
        for (const auto& row : result.rows) {
            json values = json::object();
            for (std::size_t q = 0; q < result.columns.size(); ++q) {
                values[result.columns[q]] = row.values[q];
            }
            rows.push_back(json{{"axis_value", row.axis_value},
                                {"values", values},
                                {"annotations", row.annotations}});
        }
        write_output(
            json{{"schema_version", 1}, {"axis", result.axis}, {"rows", rows}}.dump(2) +
                "\n",
            out);
    } else {
        write_output(sweep_to_csv(result), out);
    }
    return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, const std::string& format, const std::string& out,
                 unsigned threads) {
    if (cfg.sim.profile) {
        SimConfig sim;
        sim.params = cfg.params;
        sim.profile = *cfg.sim.profile;
        sim.regime = cfg.sim.regime;
        sim.n = cfg.sim.n;
        sim.seed = cfg.sim.seed;
        sim.threads = threads;
        const SimStats stats = simulate(sim);
        if (format == "json") {
            json j{{"schema_version", 1},
                   {"mean_a", stats.mean_a},
                   {"mean_b", stats.mean_b},
                   {"se_a", stats.se_a},
                   {"se_b", stats.se_b},
                   {"n", stats.n},
                   {"seed", stats.seed}};
            write_output(j.dump(2) + "\n", out);
        } else {
            write_output(simstats_to_text(stats), out);
        }
        return kExitOk;
    }
    const auto rows = simulate_cell_audit(cfg.params, cfg.behavior, cfg.sim.n, cfg.sim.seed);
    if (format == "json") {
        json jrows = json::array();
        for (const auto& row : rows) {
            jrows.push_back(json{{"profile", row.profile},
                                 {"regime", to_string(row.regime)},
                                 {"player", std::string(1, row.player)},
                                 {"closed_form", row.closed_form},
                                 {"mc_mean", row.mc_mean},
                                 {"se", row.se},
                                 {"z", row.z},
                                 {"flagged", row.flagged}});
        }
        write_output(json{{"schema_version", 1}, {"audit", jrows}}.dump(2) + "\n", out);
    } else {
        write_output(audit_to_csv(rows), out);
    }
    return kExitOk;
}

int cmd_welfare(const RunConfig& cfg, const std::string& format, const std::string& out) {
    const PayoffMatrix swap_m = build_matrix(cfg.params, cfg.behavior, Regime::Swap);
    const PayoffMatrix trad_m = build_matrix(cfg.params, cfg.behavior, Regime::Traditional);
    const Prop4Result prop4 = check_prop4(swap_m, trad_m, cfg.welfare);

    auto profile_of = [&](int idx) {
        StrategyProfile pr;
        pr.s_a = idx >= 2 ? PrepStrategy::NotPrepare : PrepStrategy::Prepare;
        pr.s_b = idx % 2 == 1 ? PrepStrategy::NotPrepare : PrepStrategy::Prepare;
        pr.behavior = cfg.behavior;
        return pr;
    };

    if (format == "json") {
        json cells = json::object();
        for (int idx = 0; idx < 4; ++idx) {
            const StrategyProfile pr = profile_of(idx);
            cells[cell_key(idx)] = json{{"swap", welfare(swap_m, pr, cfg.welfare)},
                                        {"traditional", welfare(trad_m, pr, cfg.welfare)}};
        }
        json j{{"schema_version", 1},
               {"welfare", cells},
               {"spec", welfare_spec_to_json(cfg.welfare)},
               {"prop4",
                json{{"condition_holds", prop4.condition_holds},
                     {"lhs", prop4.lhs},
                     {"rhs", prop4.rhs}}}};
        write_output(j.dump(2) + "\n", out);
    } else {
        std::ostringstream text;
        text << "profile  W_swap          W_traditional\n";
        for (int idx = 0; idx < 4; ++idx) {
            const StrategyProfile pr = profile_of(idx);
            char line[128];
            std::snprintf(line, sizeof(line), "%-7s  %-14.10g  %-14.10g\n", cell_key(idx),
                          welfare(swap_m, pr, cfg.welfare),
                          welfare(trad_m, pr, cfg.welfare));
            text << line;
        }
        text << "prop4: condition=" << (prop4.condition_holds ? "true" : "false")
             << " (lhs=" << fmt(prop4.lhs) << ", rhs=" << fmt(prop4.rhs) << ")\n";
        write_output(text.str(), out);
    }
    return kExitOk;
}

int cmd_verify(const std::string& checks_flag, const std::string& out) {
    std::vector<std::string> filter;
    if (!checks_flag.empty()) {
        std::stringstream ss(checks_flag);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) filter.push_back(item);
        }
    }
    const auto results = run_battery(filter);
    std::ostringstream text;
    bool all_passed = true;
    for (const auto& r : results) {
        all_passed = all_passed && r.passed;
        text << (r.passed ? "PASS" : "FAIL") << " " << r.name << ": " << r.detail << "\n";
    }
    text << (all_passed ? "verify: all checks passed\n" : "verify: FAILURES detected\n");
    write_output(text.str(), out);
    return all_passed ? kExitOk : kExitVerifyFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"script-swapping deterrence game solver and simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string format = "table";
    std::string out_path;
    std::string axis_flag;
    std::string grid_flag;
    std::string checks_flag;
    std::optional<std::uint64_t> n_flag;
    std::optional<std::uint64_t> seed_flag;
    unsigned threads = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--format", format, "output format: table, json, csv")
            ->check(CLI::IsMember({"table", "json", "csv"}));
        sub->add_option("--out", out_path, "write output to this path");
        sub->add_option("--threads", threads, "worker thread count");
    };

    CLI::App* solve_cmd = app.add_subcommand("solve", "matrix, equilibria, thresholds");
    add_common(solve_cmd);
    CLI::App* threshold_cmd = app.add_subcommand("threshold", "detection thresholds");
    add_common(threshold_cmd);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter sweep to CSV");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--axis", axis_flag, "parameter to sweep");
    sweep_cmd->add_option("--grid", grid_flag, "grid as from:to:steps");
    CLI::App* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo cell audit");
    add_common(simulate_cmd);
    simulate_cmd->add_option("--n", n_flag, "sample count");
    simulate_cmd->add_option("--seed", seed_flag, "RNG seed");
    CLI::App* welfare_cmd = app.add_subcommand("welfare", "regime welfare comparison");
    add_common(welfare_cmd);
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the invariant battery");
    add_common(verify_cmd);
    verify_cmd->add_option("--checks", checks_flag, "comma-separated check names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify_cmd->parsed()) {
            if (!config_path.empty()) load_config(config_path); // reject bad configs
            return cmd_verify(checks_flag, out_path);
        }
        RunConfig cfg = load_config(config_path);
        if (n_flag) cfg.sim.n = *n_flag;
        if (seed_flag) cfg.sim.seed = *seed_flag;
        if (!axis_flag.empty()) cfg.sweep.axis = axis_flag;
        if (!grid_flag.empty()) cfg.sweep.grid = parse_grid_flag(grid_flag);

        if (solve_cmd->parsed()) return cmd_solve(cfg, format, out_path);
        if (threshold_cmd->parsed()) return cmd_threshold(cfg, format, out_path);
        if (sweep_cmd->parsed()) {
            if (format == "table") format = "csv"; // CSV is the native sweep format
            return cmd_sweep(cfg, format, out_path, threads);
        }
        if (simulate_cmd->parsed()) {
            if (format == "table") format = "csv";
            return cmd_simulate(cfg, format, out_path, threads);
        }
        if (welfare_cmd->parsed()) return cmd_welfare(cfg, format, out_path);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.field() << ": " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitOk;
}
