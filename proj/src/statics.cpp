#include "swapgame/statics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

namespace swapgame {

double dpbar_dc(const GameParams& x) {
    if (x.theta_a != x.theta_b) {
        throw AsymmetryError("dpbar_dc requires theta_a == theta_b");
    }
    const double theta = x.theta_a;
    const double bracket = 1.0 - x.beta * x.alpha - (1.0 - x.beta) * x.gamma;
    if (std::abs(bracket) <= 1e-12) {
        throw SingularError("dpbar_dc: 1 - beta*alpha - (1-beta)*gamma vanishes");
    }
    return 1.0 / (theta * theta * x.g * bracket);
}

double dpbar_dbeta(const GameParams& x) {
    if (x.theta_a != x.theta_b) {
        throw AsymmetryError("dpbar_dbeta requires theta_a == theta_b");
    }
    const double theta = x.theta_a;
    const double tg = theta * x.g;
    const double bracket = 1.0 - x.beta * x.alpha - (1.0 - x.beta) * x.gamma;
    if (std::abs(bracket) <= 1e-12) {
        throw SingularError("dpbar_dbeta: 1 - beta*alpha - (1-beta)*gamma vanishes");
    }
    const double den = tg * bracket;
    return -tg * (x.gamma - x.alpha) * (x.c / theta - tg * (1.0 - x.alpha)) / (den * den);
}

namespace {

using FieldPtr = double GameParams::*;

const std::map<std::string, FieldPtr>& field_map() {
    static const std::map<std::string, FieldPtr> m = {
        {"theta_a", &GameParams::theta_a}, {"theta_b", &GameParams::theta_b},
        {"g", &GameParams::g},             {"alpha", &GameParams::alpha},
        {"beta", &GameParams::beta},       {"gamma", &GameParams::gamma},
        {"p", &GameParams::p},             {"p0", &GameParams::p0},
        {"tau", &GameParams::tau},         {"c", &GameParams::c},
        {"lambda", &GameParams::lambda}};
    return m;
}

FieldPtr field_ptr(const std::string& axis) {
    auto it = field_map().find(axis);
    if (it == field_map().end()) {
        throw SpecError("unknown axis \"" + axis + "\"");
    }
    return it->second;
}

} // namespace

double get_field(const GameParams& params, const std::string& axis) {
    return params.*field_ptr(axis);
}

GameParams with_field(GameParams params, const std::string& axis, double value) {
    params.*field_ptr(axis) = value;
    return params;
}

std::vector<std::string> axis_names() {
    std::vector<std::string> out;
    for (const auto& [name, ptr] : field_map()) out.push_back(name);
    return out;
}

double default_fd_step(double x) {
    return 1e-5 * std::max(std::abs(x), 1.0);
}

double finite_diff(const std::function<double(const GameParams&)>& quantity,
                   const std::string& axis, const GameParams& params, double h) {
    const double x = get_field(params, axis);
    const GameParams hi = validate(with_field(params, axis, x + h));
    const GameParams lo = validate(with_field(params, axis, x - h));
    return (quantity(hi) - quantity(lo)) / (2.0 * h);
}

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_bool(bool v) {
    return v ? "true" : "false";
}

using Evaluator =
    std::function<std::string(const GameParams&, const BehaviorPolicy&)>;

const std::map<std::string, Evaluator>& quantity_map() {
    auto swap_matrix = [](const GameParams& x, const BehaviorPolicy& b) {
        return build_matrix(x, b, Regime::Swap);
    };
    auto cell = [swap_matrix](PrepStrategy s_a, PrepStrategy s_b, bool player_a) {
        return Evaluator([=](const GameParams& x, const BehaviorPolicy& b) {
            const auto& c = swap_matrix(x, b).at(s_a, s_b);
            return format_double(player_a ? c.a : c.b);
        });
    };
    constexpr PrepStrategy kP = PrepStrategy::Prepare;
    constexpr PrepStrategy kNP = PrepStrategy::NotPrepare;
    static const std::map<std::string, Evaluator> m = {
        {"p_bar_eq15",
         [](const GameParams& x, const BehaviorPolicy&) {
             return format_double(threshold_p_eq15(x));
         }},
        {"p_bar_deviation",
         [](const GameParams& x, const BehaviorPolicy&) {
             return format_double(threshold_p_deviation(x));
         }},
        {"p_pp_br",
         [](const GameParams& x, const BehaviorPolicy& b) {
             const auto t = threshold_p_numeric(x, b);
             return t.p_pp_br ? format_double(*t.p_pp_br) : std::string();
         }},
        {"p_unique",
         [](const GameParams& x, const BehaviorPolicy& b) {
             const auto t = threshold_p_numeric(x, b);
             return t.p_unique ? format_double(*t.p_unique) : std::string();
         }},
        {"dpbar_dc",
         [](const GameParams& x, const BehaviorPolicy&) {
             return format_double(dpbar_dc(x));
         }},
        {"dpbar_dbeta",
         [](const GameParams& x, const BehaviorPolicy&) {
             return format_double(dpbar_dbeta(x));
         }},
        {"cell_pp_a", cell(kP, kP, true)},
        {"cell_pp_b", cell(kP, kP, false)},
        {"cell_pnp_a", cell(kP, kNP, true)},
        {"cell_pnp_b", cell(kP, kNP, false)},
        {"cell_npp_a", cell(kNP, kP, true)},
        {"cell_npp_b", cell(kNP, kP, false)},
        {"cell_npnp_a", cell(kNP, kNP, true)},
        {"cell_npnp_b", cell(kNP, kNP, false)},
        {"prop1",
         [](const GameParams& x, const BehaviorPolicy&) {
             return format_bool(check_prop1(x).condition_holds);
         }},
        {"prop2",
         [](const GameParams& x, const BehaviorPolicy&) {
             return format_bool(check_prop2(x).condition_holds);
         }},
        {"prop3_a",
         [](const GameParams& x, const BehaviorPolicy&) {
             return format_bool(check_prop3(x).a.condition_holds);
         }},
        {"prop3_b",
         [](const GameParams& x, const BehaviorPolicy&) {
             return format_bool(check_prop3(x).b.condition_holds);
         }},
        {"eq_class",
         [](const GameParams& x, const BehaviorPolicy&) {
             return std::string(to_string(classify_hetero(x)));
         }},
        {"pure_ne_count",
         [swap_matrix](const GameParams& x, const BehaviorPolicy& b) {
             return std::to_string(pure_nash(swap_matrix(x, b)).size());
         }},
        {"np_ne_count",
         [swap_matrix](const GameParams& x, const BehaviorPolicy& b) {
             const auto ne = pure_nash(swap_matrix(x, b));
             const auto has_np = [](const PureProfile& pr) {
                 return pr.first == PrepStrategy::NotPrepare ||
                        pr.second == PrepStrategy::NotPrepare;
             };
             return std::to_string(std::count_if(ne.begin(), ne.end(), has_np));
         }},
        {"mixed_q_a",
         [swap_matrix](const GameParams& x, const BehaviorPolicy& b) {
             const auto mix = mixed_nash_2x2(swap_matrix(x, b));
             return mix ? format_double(mix->q_a) : std::string();
         }},
        {"mixed_q_b",
         [swap_matrix](const GameParams& x, const BehaviorPolicy& b) {
             const auto mix = mixed_nash_2x2(swap_matrix(x, b));
             return mix ? format_double(mix->q_b) : std::string();
         }},
    };
    return m;
}

} // namespace

std::vector<std::string> quantity_names() {
    std::vector<std::string> out;
    for (const auto& [name, fn] : quantity_map()) out.push_back(name);
    return out;
}

SweepResult run_sweep(const SweepSpec& spec) {
    field_ptr(spec.axis); // reject unknown axis names up front
    for (std::size_t k = 1; k < spec.grid.size(); ++k) {
        if (!(spec.grid[k] > spec.grid[k - 1])) {
            throw SpecError("sweep grid must be strictly increasing");
        }
    }
    std::vector<Evaluator> evals;
    for (const auto& name : spec.outputs) {
        auto it = quantity_map().find(name);
        if (it == quantity_map().end()) {
            throw SpecError("unknown output quantity \"" + name + "\"");
        }
        evals.push_back(it->second);
    }

    SweepResult result;
    result.axis = spec.axis;
    result.columns = spec.outputs;
    result.rows.resize(spec.grid.size());
    for (std::size_t k = 0; k < spec.grid.size(); ++k) {
        SweepRow& row = result.rows[k];
        row.axis_value = spec.grid[k];
        GameParams point;
        bool point_ok = true;
        try {
            point = validate(with_field(spec.base, spec.axis, spec.grid[k]));
        } catch (const std::runtime_error& e) {
            point_ok = false;
            row.annotations.push_back(e.what());
        }
        for (std::size_t q = 0; q < evals.size(); ++q) {
            if (!point_ok) {
                row.values.emplace_back();
                continue;
            }
            try {
                row.values.push_back(evals[q](point, spec.behavior));
            } catch (const std::runtime_error& e) {
                row.values.emplace_back();
                row.annotations.push_back(spec.outputs[q] + ": " + e.what());
            }
        }
    }
    return result;
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

} // namespace

std::string sweep_to_csv(const SweepResult& result) {
    std::string out = csv_escape(result.axis);
    for (const auto& col : result.columns) {
        out += ',';
        out += csv_escape(col);
    }
    out += ",annotations\n";
    for (const auto& row : result.rows) {
        out += format_double(row.axis_value);
        for (const auto& value : row.values) {
            out += ',';
            out += csv_escape(value);
        }
        out += ',';
        std::string joined;
        for (const auto& note : row.annotations) {
            if (!joined.empty()) joined += "; ";
            joined += note;
        }
        out += csv_escape(joined);
        out += '\n';
    }
    return out;
}

} // namespace swapgame
