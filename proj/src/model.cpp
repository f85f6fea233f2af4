#include "swapgame/model.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <set>
#include <sstream>

namespace swapgame {

namespace {

void require(bool ok, const char* field, const char* bound) {
    if (!ok) {
        std::ostringstream msg;
        msg << field << " must satisfy " << bound;
        throw DomainError(field, msg.str());
    }
}

void check_finite(double v, const char* field) {
    require(std::isfinite(v), field, "a finite value");
}

} // namespace

GameParams validate(const GameParams& params) {
    const GameParams& x = params;
    check_finite(x.theta_a, "theta_a");
    check_finite(x.theta_b, "theta_b");
    check_finite(x.g, "g");
    check_finite(x.alpha, "alpha");
    check_finite(x.beta, "beta");
    check_finite(x.gamma, "gamma");
    check_finite(x.p, "p");
    check_finite(x.p0, "p0");
    check_finite(x.tau, "tau");
    check_finite(x.c, "c");
    check_finite(x.lambda, "lambda");

    require(x.theta_a > 0.0 && x.theta_a <= 1.0, "theta_a", "0 < theta_a <= 1");
    require(x.theta_b > 0.0 && x.theta_b <= 1.0, "theta_b", "0 < theta_b <= 1");
    require(x.g > 0.0, "g", "g > 0");
    require(x.alpha > 0.0 && x.alpha < 1.0, "alpha", "0 < alpha < 1");
    require(x.beta > 0.0 && x.beta < 1.0, "beta", "0 < beta < 1");
    require(x.gamma > 0.0 && x.gamma < 1.0, "gamma", "0 < gamma < 1");
    require(x.p > 0.0 && x.p < 1.0, "p", "0 < p < 1");
    require(x.p0 > 0.0 && x.p0 < 1.0, "p0", "0 < p0 < 1");
    require(x.tau >= 0.0 && x.tau < 1.0, "tau", "0 <= tau < 1");
    require(x.c > 0.0, "c", "c > 0");
    require(x.lambda >= 0.0, "lambda", "lambda >= 0");
    return params;
}

double effort_cost(double theta, double c) {
    if (!(theta > 0.0)) {
        throw DomainError("theta", "theta must satisfy theta > 0");
    }
    return c / theta;
}

bool attempts_copy(PrepStrategy own, PrepStrategy other, const BehaviorPolicy& behavior) {
    if (own == PrepStrategy::Prepare) {
        return behavior.prepared_copies;
    }
    return other == PrepStrategy::Prepare ? behavior.copy_if_other_prepared
                                          : behavior.copy_in_npnp;
}

namespace {

void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& known,
                         const char* where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key())) {
            throw DomainError(it.key(),
                              std::string("unknown key \"") + it.key() + "\" in " + where);
        }
    }
}

double get_number(const nlohmann::json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number()) {
        throw DomainError(key, std::string(key) + " must be a number");
    }
    return v.get<double>();
}

bool get_bool(const nlohmann::json& j, const char* key, bool fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_boolean()) {
        throw DomainError(key, std::string(key) + " must be a boolean");
    }
    return v.get<bool>();
}

} // namespace

GameParams params_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw DomainError("params", "params must be a JSON object");
    }
    reject_unknown_keys(j,
                        {"theta_a", "theta_b", "g", "alpha", "beta", "gamma", "p", "p0",
                         "tau", "c", "lambda"},
                        "params");
    GameParams d; // documented defaults for absent fields
    GameParams x;
    x.theta_a = get_number(j, "theta_a", d.theta_a);
    x.theta_b = get_number(j, "theta_b", d.theta_b);
    x.g = get_number(j, "g", d.g);
    x.alpha = get_number(j, "alpha", d.alpha);
    x.beta = get_number(j, "beta", d.beta);
    x.gamma = get_number(j, "gamma", d.gamma);
    x.p = get_number(j, "p", d.p);
    x.p0 = get_number(j, "p0", d.p0);
    x.tau = get_number(j, "tau", d.tau);
    x.c = get_number(j, "c", d.c);
    x.lambda = get_number(j, "lambda", d.lambda);
    return validate(x);
}

nlohmann::json params_to_json(const GameParams& x) {
    return nlohmann::json{{"theta_a", x.theta_a}, {"theta_b", x.theta_b}, {"g", x.g},
                          {"alpha", x.alpha},     {"beta", x.beta},       {"gamma", x.gamma},
                          {"p", x.p},             {"p0", x.p0},           {"tau", x.tau},
                          {"c", x.c},             {"lambda", x.lambda}};
}

BehaviorPolicy behavior_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw DomainError("behavior", "behavior must be a JSON object");
    }
    reject_unknown_keys(j, {"copy_if_other_prepared", "prepared_copies", "copy_in_npnp"},
                        "behavior");
    BehaviorPolicy b;
    b.copy_if_other_prepared = get_bool(j, "copy_if_other_prepared", b.copy_if_other_prepared);
    b.prepared_copies = get_bool(j, "prepared_copies", b.prepared_copies);
    b.copy_in_npnp = get_bool(j, "copy_in_npnp", b.copy_in_npnp);
    return b;
}

nlohmann::json behavior_to_json(const BehaviorPolicy& b) {
    return nlohmann::json{{"copy_if_other_prepared", b.copy_if_other_prepared},
                          {"prepared_copies", b.prepared_copies},
                          {"copy_in_npnp", b.copy_in_npnp}};
}

const char* to_string(PrepStrategy s) {
    return s == PrepStrategy::Prepare ? "P" : "NP";
}

} // namespace swapgame
