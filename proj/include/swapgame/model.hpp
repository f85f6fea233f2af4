#pragma once

#include <nlohmann/json_fwd.hpp>

#include <string>

#include "swapgame/errors.hpp"

namespace swapgame {

// All model scalars. Immutable by convention: functions take copies or
// const references and never mutate.
struct GameParams {
    double theta_a = 1.0; // ability of student A, in (0, 1]
    double theta_b = 1.0; // ability of student B, in (0, 1]
    double g = 100.0;     // maximum grade, > 0
    double alpha = 0.5;   // unprepared completion fraction, in (0, 1)
    double beta = 0.5;    // pre-swap completion fraction, in (0, 1)
    double gamma = 0.5;   // foreign-script difficulty factor, in (0, 1)
    double p = 0.5;       // detection probability, swap regime, in (0, 1)
    double p0 = 0.5;      // detection probability, traditional regime, in (0, 1)
    double tau = 0.0;     // traditional penalty retention factor, in [0, 1)
    double c = 10.0;      // base effort cost, > 0
    double lambda = 0.0;  // welfare weight on the institutional objective, >= 0
};

enum class PrepStrategy { Prepare, NotPrepare }; // Prepare orders first

// Copy-behavior rule. Defaults reproduce the baseline rule: unprepared
// students copy when the other student prepared; prepared students never
// copy; nobody copies when neither prepared.
struct BehaviorPolicy {
    bool copy_if_other_prepared = true;
    bool prepared_copies = false;
    bool copy_in_npnp = false;
};

struct StrategyProfile {
    PrepStrategy s_a = PrepStrategy::Prepare;
    PrepStrategy s_b = PrepStrategy::Prepare;
    BehaviorPolicy behavior;
};

// Throws DomainError naming the offending field; otherwise returns the
// input unchanged. Open intervals are enforced strictly.
GameParams validate(const GameParams& params);

// Preparation effort cost c / theta. Throws DomainError if theta <= 0.
double effort_cost(double theta, double c);

// Whether a player with preparation `own`, facing a player with
// preparation `other`, attempts to copy under `behavior`.
bool attempts_copy(PrepStrategy own, PrepStrategy other, const BehaviorPolicy& behavior);

// JSON ingest/emit. Keys match field names exactly; unknown keys throw
// DomainError. Parsed params are validated.
GameParams params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const GameParams& params);
BehaviorPolicy behavior_from_json(const nlohmann::json& j);
nlohmann::json behavior_to_json(const BehaviorPolicy& behavior);

const char* to_string(PrepStrategy s);

} // namespace swapgame
