#include "swapgame/equilibrium.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace swapgame {

namespace {

constexpr double kIndifferenceTol = 1e-9;
constexpr double kBisectTol = 1e-9;
constexpr int kGridPoints = 1024;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

constexpr PrepStrategy kP = PrepStrategy::Prepare;
constexpr PrepStrategy kNP = PrepStrategy::NotPrepare;

PrepStrategy flip(PrepStrategy s) {
    return s == kP ? kNP : kP;
}

} // namespace

std::vector<PureProfile> pure_nash(const PayoffMatrix& m) {
    std::vector<PureProfile> out;
    for (PrepStrategy s_a : {kP, kNP}) {
        for (PrepStrategy s_b : {kP, kNP}) {
            const bool a_ok = m.at(s_a, s_b).a >= m.at(flip(s_a), s_b).a;
            const bool b_ok = m.at(s_a, s_b).b >= m.at(s_a, flip(s_b)).b;
            if (a_ok && b_ok) out.emplace_back(s_a, s_b);
        }
    }
    return out;
}

std::optional<MixedEquilibrium> mixed_nash_2x2(const PayoffMatrix& m) {
    const double a11 = m.at(kP, kP).a, a12 = m.at(kP, kNP).a;
    const double a21 = m.at(kNP, kP).a, a22 = m.at(kNP, kNP).a;
    const double b11 = m.at(kP, kP).b, b12 = m.at(kP, kNP).b;
    const double b21 = m.at(kNP, kP).b, b22 = m.at(kNP, kNP).b;

    // q_b makes A indifferent between P and NP; q_a makes B indifferent.
    const double den_a = a11 - a12 - a21 + a22;
    const double den_b = b11 - b21 - b12 + b22;
    if (den_a == 0.0 || den_b == 0.0) return std::nullopt;
    const double q_b = (a22 - a12) / den_a;
    const double q_a = (b22 - b21) / den_b;
    if (!(q_a > 0.0 && q_a < 1.0 && q_b > 0.0 && q_b < 1.0)) return std::nullopt;

    const double gap_a = q_b * a11 + (1.0 - q_b) * a12 - (q_b * a21 + (1.0 - q_b) * a22);
    const double gap_b = q_a * b11 + (1.0 - q_a) * b21 - (q_a * b12 + (1.0 - q_a) * b22);
    if (std::abs(gap_a) > kIndifferenceTol || std::abs(gap_b) > kIndifferenceTol) {
        return std::nullopt;
    }
    return MixedEquilibrium{q_a, q_b};
}

namespace {

void require_symmetric(const GameParams& x, const char* op) {
    if (x.theta_a != x.theta_b) {
        throw AsymmetryError(std::string(op) + " requires theta_a == theta_b");
    }
}

} // namespace

double threshold_p_eq15(const GameParams& x) {
    require_symmetric(x, "threshold_p_eq15");
    const double theta = x.theta_a;
    const double bracket = 1.0 - x.beta * x.alpha - (1.0 - x.beta) * x.gamma;
    if (std::abs(bracket) <= 1e-12) {
        throw SingularError("threshold_p_eq15: 1 - beta*alpha - (1-beta)*gamma vanishes");
    }
    return (x.c / theta - theta * x.g * (1.0 - x.alpha)) / (theta * x.g * bracket);
}

double threshold_p_deviation(const GameParams& x) {
    require_symmetric(x, "threshold_p_deviation");
    const double theta = x.theta_a;
    const double bracket = 1.0 - x.beta - (1.0 - x.beta) * x.gamma;
    if (bracket <= 1e-12) {
        throw SingularError(
            "threshold_p_deviation: 1 - beta - (1-beta)*gamma <= 0, swap imposes no loss");
    }
    return x.c / (theta * theta * x.g * bracket);
}

namespace {

// Smallest deviation gap over both players for (P,P) at detection level p.
double pp_br_gap(GameParams x, double p, const BehaviorPolicy& behavior) {
    x.p = p;
    const PayoffMatrix m = build_matrix(x, behavior, Regime::Swap);
    const double gap_a = m.at(kP, kP).a - m.at(kNP, kP).a;
    const double gap_b = m.at(kP, kP).b - m.at(kP, kNP).b;
    return std::min(gap_a, gap_b);
}

bool pp_unique(GameParams x, double p, const BehaviorPolicy& behavior) {
    x.p = p;
    const auto ne = pure_nash(build_matrix(x, behavior, Regime::Swap));
    return ne.size() == 1 && ne.front() == PureProfile{kP, kP};
}

// Bisect a boolean predicate known false at lo and true at hi; returns the
// onset location to within kBisectTol.
template <typename Pred>
double bisect_onset(double lo, double hi, Pred pred) {
    while (hi - lo > kBisectTol) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

NumericThresholds threshold_p_numeric(const GameParams& params,
                                      const BehaviorPolicy& behavior) {
    NumericThresholds out;
    std::vector<double> grid(kGridPoints);
    std::vector<double> gaps(kGridPoints);
    for (int k = 0; k < kGridPoints; ++k) {
        grid[static_cast<std::size_t>(k)] = static_cast<double>(k) / (kGridPoints - 1);
        gaps[static_cast<std::size_t>(k)] =
            pp_br_gap(params, grid[static_cast<std::size_t>(k)], behavior);
    }

    // Verify a single sign crossing before trusting bisection.
    int crossings = 0;
    int last_sign = 0;
    for (double gap : gaps) {
        const int s = gap > 0.0 ? 1 : (gap < 0.0 ? -1 : 0);
        if (s != 0) {
            if (last_sign != 0 && s != last_sign) ++crossings;
            last_sign = s;
        }
    }
    if (crossings > 1) {
        throw NonMonotoneError(
            "threshold_p_numeric: deviation gap changes sign more than once in p");
    }

    const bool first_nonneg = gaps.front() >= 0.0;
    const bool last_nonneg = gaps.back() >= 0.0;
    if (first_nonneg && last_nonneg && crossings == 0) {
        out.p_pp_br = 0.0; // Prepare is a best response everywhere
    } else if (!first_nonneg && !last_nonneg && crossings == 0) {
        out.annotation = "Prepare is never a best response to Prepare on [0,1]";
    } else if (first_nonneg && !last_nonneg) {
        out.p_pp_br = 0.0; // gap decreasing in p; the best-response set starts at 0
    } else {
        std::size_t idx = 0;
        while (idx < gaps.size() && gaps[idx] < 0.0) ++idx;
        if (idx == 0) {
            out.p_pp_br = 0.0;
        } else {
            out.p_pp_br = bisect_onset(grid[idx - 1], grid[idx], [&](double p) {
                return pp_br_gap(params, p, behavior) >= 0.0;
            });
        }
    }

    std::size_t first_true = gaps.size();
    int unique_switches = 0;
    bool prev = false;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const bool u = pp_unique(params, grid[k], behavior);
        if (u && first_true == gaps.size()) first_true = k;
        if (k > 0 && u != prev) ++unique_switches;
        prev = u;
    }
    if (first_true == gaps.size()) {
        if (!out.annotation.empty()) out.annotation += "; ";
        out.annotation += "(P,P) is never the unique pure equilibrium on [0,1]";
    } else if (first_true == 0) {
        out.p_unique = 0.0;
    } else {
        out.p_unique = bisect_onset(grid[first_true - 1], grid[first_true],
                                    [&](double p) { return pp_unique(params, p, behavior); });
        if (unique_switches > 1) {
            if (!out.annotation.empty()) out.annotation += "; ";
            out.annotation += "uniqueness is non-monotone in p; reporting first onset";
        }
    }
    return out;
}

Prop1Result check_prop1(const GameParams& x) {
    Prop1Result out;
    out.lhs = x.p * (1.0 - x.beta - (1.0 - x.beta) * x.gamma);
    out.rhs = x.p0 * (1.0 - x.tau);
    out.condition_holds = out.lhs > out.rhs;
    out.model_holds = eu_copier_swap(x) < eu_copier_traditional(x);
    out.model_agrees = out.condition_holds == out.model_holds;
    return out;
}

Prop2Result check_prop2(const GameParams& x) {
    require_symmetric(x, "check_prop2");
    const double theta = x.theta_a;
    Prop2Result out;
    out.lhs = theta * x.g * (1.0 - x.alpha);
    out.rhs = x.c / theta +
              x.p * theta * x.g * (1.0 - x.beta * x.alpha - (1.0 - x.beta) * x.gamma);
    out.condition_holds = out.lhs < out.rhs;
    out.knife_edge = std::abs(out.lhs - out.rhs) < 1e-9 * x.g;
    const auto ne = pure_nash(build_matrix(x, BehaviorPolicy{}, Regime::Swap));
    out.in_pure_ne = std::find(ne.begin(), ne.end(), PureProfile{kNP, kNP}) != ne.end();
    out.model_agrees = out.knife_edge || out.condition_holds == out.in_pure_ne;
    return out;
}

Prop3Result check_prop3(const GameParams& x) {
    Prop3Result out;
    out.scores = coordinated_scores(x);
    const double theta_max = std::max(x.theta_a, x.theta_b);
    auto side = [&](double theta_i) {
        Prop3Side s;
        s.lhs = x.p * out.scores.swapped + (1.0 - x.p) * (theta_max * x.g);
        s.rhs = theta_i * x.g - effort_cost(theta_i, x.c);
        s.condition_holds = s.lhs > s.rhs;
        return s;
    };
    out.a = side(x.theta_a);
    out.b = side(x.theta_b);
    return out;
}

const char* to_string(HeteroClass c) {
    switch (c) {
        case HeteroClass::MutualPrepUnique: return "MutualPrepUnique";
        case HeteroClass::SeparatingOnly: return "SeparatingOnly";
        case HeteroClass::Coexisting: return "Coexisting";
        case HeteroClass::NoPrepUnique: return "NoPrepUnique";
        case HeteroClass::Other: return "Other";
    }
    return "Other";
}

HeteroClass classify_hetero(const GameParams& x) {
    const auto ne = pure_nash(build_matrix(x, BehaviorPolicy{}, Regime::Swap));
    const bool has_pp = std::find(ne.begin(), ne.end(), PureProfile{kP, kP}) != ne.end();
    const bool has_npnp = std::find(ne.begin(), ne.end(), PureProfile{kNP, kNP}) != ne.end();
    const bool has_sep =
        std::find(ne.begin(), ne.end(), PureProfile{kP, kNP}) != ne.end() ||
        std::find(ne.begin(), ne.end(), PureProfile{kNP, kP}) != ne.end();
    if (ne.size() == 1 && has_pp) return HeteroClass::MutualPrepUnique;
    if (ne.size() == 1 && has_npnp) return HeteroClass::NoPrepUnique;
    if (has_sep && !has_pp && !has_npnp) return HeteroClass::SeparatingOnly;
    if (has_sep && (has_pp || has_npnp)) return HeteroClass::Coexisting;
    return HeteroClass::Other;
}

RatioThresholds find_ratio_thresholds(const GameParams& params, double theta_b_fixed) {
    RatioThresholds out;
    if (!(theta_b_fixed > 0.0 && theta_b_fixed <= 1.0)) {
        throw DomainError("theta_b_fixed", "theta_b_fixed must satisfy 0 < theta_b <= 1");
    }
    const double ratio_max = 1.0 / theta_b_fixed;
    if (!(ratio_max > 1.0)) return out; // degenerate range, no transition possible

    auto classify_at = [&](double ratio) {
        GameParams x = params;
        x.theta_b = theta_b_fixed;
        x.theta_a = std::min(1.0, ratio * theta_b_fixed);
        return classify_hetero(x);
    };

    constexpr int kRatioGrid = 512;
    std::vector<double> grid(kRatioGrid);
    std::vector<HeteroClass> cls(kRatioGrid);
    for (int k = 0; k < kRatioGrid; ++k) {
        grid[static_cast<std::size_t>(k)] =
            1.0 + (ratio_max - 1.0) * static_cast<double>(k) / (kRatioGrid - 1);
        cls[static_cast<std::size_t>(k)] = classify_at(grid[static_cast<std::size_t>(k)]);
    }

    auto refine = [&](std::size_t k, auto pred) {
        // pred flips between grid[k-1] and grid[k]; locate to 1e-6.
        double lo = grid[k - 1];
        double hi = grid[k];
        while (hi - lo > 1e-6) {
            const double mid = 0.5 * (lo + hi);
            if (pred(mid)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    for (std::size_t k = 1; k < cls.size(); ++k) {
        if (cls[k - 1] == HeteroClass::MutualPrepUnique &&
            cls[k] != HeteroClass::MutualPrepUnique) {
            out.rho_lo = refine(
                k, [&](double r) { return classify_at(r) != HeteroClass::MutualPrepUnique; });
            break;
        }
    }
    for (std::size_t k = 1; k < cls.size(); ++k) {
        if (cls[k - 1] != HeteroClass::SeparatingOnly &&
            cls[k] == HeteroClass::SeparatingOnly) {
            out.rho_hi = refine(
                k, [&](double r) { return classify_at(r) == HeteroClass::SeparatingOnly; });
            break;
        }
    }
    return out;
}

ThresholdReport compute_thresholds(const GameParams& params, const BehaviorPolicy& behavior) {
    ThresholdReport out;
    try {
        out.p_bar_eq15 = threshold_p_eq15(params);
        if (*out.p_bar_eq15 < 0.0 || *out.p_bar_eq15 > 1.0) {
            out.eq15_note = "p_bar_eq15 lies outside (0,1)";
        }
    } catch (const std::runtime_error& e) {
        out.eq15_note = e.what();
    }
    try {
        out.p_bar_deviation = threshold_p_deviation(params);
    } catch (const std::runtime_error& e) {
        out.deviation_note = e.what();
    }
    out.numeric = threshold_p_numeric(params, behavior);
    return out;
}

EquilibriumReport solve(const GameParams& params, const BehaviorPolicy& behavior) {
    EquilibriumReport r;
    r.matrix = build_matrix(params, behavior, Regime::Swap);
    r.pure_ne = pure_nash(r.matrix);
    r.mixed_ne = mixed_nash_2x2(r.matrix);
    r.thresholds = compute_thresholds(params, behavior);
    r.prop1 = check_prop1(params);
    if (params.theta_a == params.theta_b) {
        r.prop2 = check_prop2(params);
    }
    r.prop3 = check_prop3(params);
    if (r.thresholds.p_bar_eq15) {
        r.theorem1_condition = params.p > *r.thresholds.p_bar_eq15;
    }

    if (r.thresholds.p_bar_eq15 && r.thresholds.p_bar_deviation &&
        std::abs(*r.thresholds.p_bar_eq15 - *r.thresholds.p_bar_deviation) > 1e-9) {
        r.consistency_notes.push_back(
            "PAPER-INCONSISTENCY: stated threshold p_bar_eq15=" +
            fmt(*r.thresholds.p_bar_eq15) + " disagrees with the deviation threshold p_bar_deviation=" +
            fmt(*r.thresholds.p_bar_deviation) +
            "; equilibrium answers are driven by the payoff matrix only");
    }
    if (!r.prop1.model_agrees) {
        r.consistency_notes.push_back(
            "PAPER-INCONSISTENCY: deterrence condition verdict disagrees with the direct "
            "copier expected-utility comparison (the condition drops theta_b)");
    }
    return r;
}

namespace {

std::string profile_key(const PureProfile& pr) {
    return std::string(to_string(pr.first)) + std::string(to_string(pr.second));
}

nlohmann::json optional_to_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

} // namespace

nlohmann::json report_to_json(const EquilibriumReport& r) {
    nlohmann::json pure = nlohmann::json::array();
    for (const auto& pr : r.pure_ne) pure.push_back(profile_key(pr));

    nlohmann::json mixed = nullptr;
    if (r.mixed_ne) {
        mixed = nlohmann::json{{"q_a", r.mixed_ne->q_a}, {"q_b", r.mixed_ne->q_b}};
    }

    nlohmann::json thresholds{
        {"p_bar_eq15", optional_to_json(r.thresholds.p_bar_eq15)},
        {"p_bar_eq15_note", r.thresholds.eq15_note},
        {"p_bar_deviation", optional_to_json(r.thresholds.p_bar_deviation)},
        {"p_bar_deviation_note", r.thresholds.deviation_note},
        {"p_bar_numeric",
         nlohmann::json{{"p_pp_br", optional_to_json(r.thresholds.numeric.p_pp_br)},
                        {"p_unique", optional_to_json(r.thresholds.numeric.p_unique)},
                        {"annotation", r.thresholds.numeric.annotation}}}};

    nlohmann::json props{
        {"prop1",
         nlohmann::json{{"condition_holds", r.prop1.condition_holds},
                        {"lhs", r.prop1.lhs},
                        {"rhs", r.prop1.rhs},
                        {"model_holds", r.prop1.model_holds},
                        {"model_agrees", r.prop1.model_agrees}}},
        {"prop3",
         nlohmann::json{
             {"a", nlohmann::json{{"condition_holds", r.prop3.a.condition_holds},
                                  {"lhs", r.prop3.a.lhs},
                                  {"rhs", r.prop3.a.rhs}}},
             {"b", nlohmann::json{{"condition_holds", r.prop3.b.condition_holds},
                                  {"lhs", r.prop3.b.lhs},
                                  {"rhs", r.prop3.b.rhs}}}}}};
    if (r.prop2) {
        props["prop2"] = nlohmann::json{{"condition_holds", r.prop2->condition_holds},
                                        {"lhs", r.prop2->lhs},
                                        {"rhs", r.prop2->rhs},
                                        {"in_pure_ne", r.prop2->in_pure_ne},
                                        {"model_agrees", r.prop2->model_agrees},
                                        {"knife_edge", r.prop2->knife_edge}};
    } else {
        props["prop2"] = nullptr;
    }

    return nlohmann::json{
        {"schema_version", 1},
        {"matrix", matrix_to_json(r.matrix)},
        {"pure_ne", pure},
        {"mixed_ne", mixed},
        {"thresholds", thresholds},
        {"propositions", props},
        {"theorem1_condition",
         r.theorem1_condition ? nlohmann::json(*r.theorem1_condition) : nullptr},
        {"consistency_notes", r.consistency_notes}};
}

std::string report_to_table(const EquilibriumReport& r) {
    std::ostringstream out;
    out << matrix_to_table(r.matrix);
    out << "pure NE:";
    if (r.pure_ne.empty()) out << " (none)";
    for (const auto& pr : r.pure_ne) out << " (" << profile_key(pr) << ")";
    out << "\n";
    if (r.mixed_ne) {
        out << "mixed NE: q_a=" << fmt(r.mixed_ne->q_a) << " q_b=" << fmt(r.mixed_ne->q_b)
            << "\n";
    } else {
        out << "mixed NE: (none)\n";
    }
    out << "thresholds:\n";
    out << "  p_bar_eq15      = "
        << (r.thresholds.p_bar_eq15 ? fmt(*r.thresholds.p_bar_eq15) : "n/a");
    if (!r.thresholds.eq15_note.empty()) out << "  [" << r.thresholds.eq15_note << "]";
    out << "\n";
    out << "  p_bar_deviation = "
        << (r.thresholds.p_bar_deviation ? fmt(*r.thresholds.p_bar_deviation) : "n/a");
    if (!r.thresholds.deviation_note.empty()) {
        out << "  [" << r.thresholds.deviation_note << "]";
    }
    out << "\n";
    out << "  p_pp_br         = "
        << (r.thresholds.numeric.p_pp_br ? fmt(*r.thresholds.numeric.p_pp_br) : "n/a") << "\n";
    out << "  p_unique        = "
        << (r.thresholds.numeric.p_unique ? fmt(*r.thresholds.numeric.p_unique) : "n/a");
    if (!r.thresholds.numeric.annotation.empty()) {
        out << "  [" << r.thresholds.numeric.annotation << "]";
    }
    out << "\n";
    out << "prop1: condition=" << (r.prop1.condition_holds ? "true" : "false")
        << " (lhs=" << fmt(r.prop1.lhs) << ", rhs=" << fmt(r.prop1.rhs)
        << "), model=" << (r.prop1.model_holds ? "true" : "false")
        << ", agrees=" << (r.prop1.model_agrees ? "true" : "false") << "\n";
    if (r.prop2) {
        out << "prop2: condition=" << (r.prop2->condition_holds ? "true" : "false")
            << " (lhs=" << fmt(r.prop2->lhs) << ", rhs=" << fmt(r.prop2->rhs)
            << "), (NP,NP) in pure NE=" << (r.prop2->in_pure_ne ? "true" : "false")
            << ", agrees=" << (r.prop2->model_agrees ? "true" : "false") << "\n";
    } else {
        out << "prop2: n/a (requires symmetric abilities)\n";
    }
    out << "prop3: A=" << (r.prop3.a.condition_holds ? "true" : "false")
        << " (lhs=" << fmt(r.prop3.a.lhs) << ", rhs=" << fmt(r.prop3.a.rhs)
        << "), B=" << (r.prop3.b.condition_holds ? "true" : "false")
        << " (lhs=" << fmt(r.prop3.b.lhs) << ", rhs=" << fmt(r.prop3.b.rhs) << ")\n";
    if (r.theorem1_condition) {
        out << "theorem1 condition (p > p_bar_eq15): "
            << (*r.theorem1_condition ? "true" : "false") << "\n";
    }
    for (const auto& note : r.consistency_notes) out << note << "\n";
    return out.str();
}

} // namespace swapgame
