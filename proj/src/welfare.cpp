#include "swapgame/welfare.hpp"

#include <nlohmann/json.hpp>

namespace swapgame {

double integrity(const StrategyProfile& profile, const WelfareSpec& spec) {
    switch (spec.metric) {
        case IntegrityMetric::PrepRate: {
            int prepared = (profile.s_a == PrepStrategy::Prepare ? 1 : 0) +
                           (profile.s_b == PrepStrategy::Prepare ? 1 : 0);
            return prepared / 2.0;
        }
        case IntegrityMetric::HonestRate: {
            const bool copies_a = attempts_copy(profile.s_a, profile.s_b, profile.behavior);
            const bool copies_b = attempts_copy(profile.s_b, profile.s_a, profile.behavior);
            // A copy attempt taints both the copier and the copied-from player.
            int honest = (copies_a || copies_b) ? 0 : 2;
            return honest / 2.0;
        }
        case IntegrityMetric::Constant:
            return spec.constant_value;
    }
    return 0.0;
}

double welfare(const PayoffMatrix& m, const StrategyProfile& profile,
               const WelfareSpec& spec) {
    const CellPayoffs& cell = m.at(profile.s_a, profile.s_b);
    return cell.a + cell.b + spec.lambda * integrity(profile, spec);
}

Prop4Result check_prop4(const PayoffMatrix& swap_m, const PayoffMatrix& trad_m,
                        const WelfareSpec& spec) {
    auto gap = [&](const PayoffMatrix& m) {
        StrategyProfile pp{PrepStrategy::Prepare, PrepStrategy::Prepare, m.behavior};
        StrategyProfile npnp{PrepStrategy::NotPrepare, PrepStrategy::NotPrepare, m.behavior};
        return welfare(m, pp, spec) - welfare(m, npnp, spec);
    };
    auto detection = [](const PayoffMatrix& m) {
        return m.regime == Regime::Swap ? m.params.p : m.params.p0;
    };
    Prop4Result out;
    out.lhs = detection(swap_m) * gap(swap_m);
    out.rhs = detection(trad_m) * gap(trad_m);
    out.condition_holds = out.lhs > out.rhs;
    return out;
}

WelfareSpec welfare_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw DomainError("welfare", "welfare must be a JSON object");
    }
    WelfareSpec spec;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "lambda") {
            spec.lambda = it.value().get<double>();
        } else if (key == "integrity_metric") {
            const std::string name = it.value().get<std::string>();
            if (name == "prep_rate") {
                spec.metric = IntegrityMetric::PrepRate;
            } else if (name == "honest_rate") {
                spec.metric = IntegrityMetric::HonestRate;
            } else if (name == "constant") {
                spec.metric = IntegrityMetric::Constant;
            } else {
                throw DomainError("integrity_metric",
                                  "integrity_metric must be one of prep_rate, honest_rate, "
                                  "constant");
            }
        } else if (key == "constant_value") {
            spec.constant_value = it.value().get<double>();
        } else {
            throw DomainError(key, "unknown key \"" + key + "\" in welfare");
        }
    }
    if (spec.lambda < 0.0) {
        throw DomainError("lambda", "lambda must satisfy lambda >= 0");
    }
    return spec;
}

nlohmann::json welfare_spec_to_json(const WelfareSpec& spec) {
    const char* name = spec.metric == IntegrityMetric::PrepRate    ? "prep_rate"
                       : spec.metric == IntegrityMetric::HonestRate ? "honest_rate"
                                                                     : "constant";
    nlohmann::json j{{"lambda", spec.lambda}, {"integrity_metric", name}};
    if (spec.metric == IntegrityMetric::Constant) j["constant_value"] = spec.constant_value;
    return j;
}

} // namespace swapgame
