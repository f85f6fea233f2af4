#pragma once

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swapgame/matrix.hpp"
#include "swapgame/payoffs.hpp"

namespace swapgame {

using PureProfile = std::pair<PrepStrategy, PrepStrategy>;

// Pure Nash equilibria under the weak-inequality definition: a profile is
// an equilibrium when neither player gains strictly by deviating.
// Deterministic order: (P,P), (P,NP), (NP,P), (NP,NP).
std::vector<PureProfile> pure_nash(const PayoffMatrix& m);

// Prepare-probabilities of an interior mixed equilibrium, when one exists.
struct MixedEquilibrium {
    double q_a = 0.0; // probability A plays Prepare
    double q_b = 0.0;
};
std::optional<MixedEquilibrium> mixed_nash_2x2(const PayoffMatrix& m);

// Stated symmetric-case closed-form detection threshold:
// [c/theta - theta*g*(1-alpha)] / [theta*g*(1 - beta*alpha - (1-beta)*gamma)].
// Returned verbatim even outside (0,1). Throws AsymmetryError on
// theta_a != theta_b and SingularError on a vanishing denominator.
double threshold_p_eq15(const GameParams& params);

// Threshold derived from the unilateral-deviation inequality:
// c / (theta^2 * g * [1 - beta - (1-beta)*gamma]). Throws
// SingularError when the bracket is <= 1e-12 (a swap imposes no loss).
double threshold_p_deviation(const GameParams& params);

// Bisection against the payoff matrix with everything but p held fixed.
struct NumericThresholds {
    // Infimum p at which Prepare is a best response to Prepare (both players).
    std::optional<double> p_pp_br;
    // Infimum p at which (P,P) is the only pure equilibrium.
    std::optional<double> p_unique;
    std::string annotation;
};
NumericThresholds threshold_p_numeric(const GameParams& params,
                                      const BehaviorPolicy& behavior);

// Deterrence condition p*[1 - beta - (1-beta)*gamma] > p0*[1 - tau],
// cross-checked against the direct comparison of copier expected utilities.
struct Prop1Result {
    bool condition_holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
    bool model_holds = false; // eu_copier_swap < eu_copier_traditional
    bool model_agrees = false;
};
Prop1Result check_prop1(const GameParams& params);

// (NP,NP)-equilibrium condition
// theta*g*(1-alpha) < c/theta + p*theta*g*[1 - beta*alpha - (1-beta)*gamma],
// cross-checked against (NP,NP) membership in pure_nash. Knife edges
// (|lhs-rhs| < 1e-9*g) are flagged and excluded from agreement checks.
struct Prop2Result {
    bool condition_holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
    bool in_pure_ne = false;
    bool model_agrees = false;
    bool knife_edge = false;
};
Prop2Result check_prop2(const GameParams& params);

// Coordinated-partial-preparation dominance, evaluated per player:
// p*0.5*g*(theta_i+theta_j) + (1-p)*theta_max*g > theta_i*g - c_i.
struct Prop3Side {
    bool condition_holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
};
struct Prop3Result {
    Prop3Side a;
    Prop3Side b;
    CoordinatedScores scores;
};
Prop3Result check_prop3(const GameParams& params);

enum class HeteroClass { MutualPrepUnique, SeparatingOnly, Coexisting, NoPrepUnique, Other };
const char* to_string(HeteroClass c);

// Classification of the pure equilibrium set under default behavior.
// Callers normalize theta_a >= theta_b.
HeteroClass classify_hetero(const GameParams& params);

// Numerically located ability-ratio thresholds: smallest ratio
// theta_a/theta_b at which classification leaves MutualPrepUnique (rho_lo)
// and smallest at which SeparatingOnly begins (rho_hi). Components are
// absent when no transition occurs with theta_a <= 1.
struct RatioThresholds {
    std::optional<double> rho_lo;
    std::optional<double> rho_hi;
};
RatioThresholds find_ratio_thresholds(const GameParams& params, double theta_b_fixed);

struct ThresholdReport {
    std::optional<double> p_bar_eq15; // absent when singular
    std::optional<double> p_bar_deviation;
    NumericThresholds numeric;
    std::string eq15_note;      // singularity / out-of-range annotation
    std::string deviation_note; // singularity annotation
};
ThresholdReport compute_thresholds(const GameParams& params, const BehaviorPolicy& behavior);

struct EquilibriumReport {
    PayoffMatrix matrix;
    std::vector<PureProfile> pure_ne;
    std::optional<MixedEquilibrium> mixed_ne;
    ThresholdReport thresholds;
    Prop1Result prop1;
    std::optional<Prop2Result> prop2; // absent for asymmetric abilities
    Prop3Result prop3;
    std::optional<bool> theorem1_condition; // p > p_bar_eq15, when computable
    std::vector<std::string> consistency_notes; // prefixed "PAPER-INCONSISTENCY:"
};

// Full solve. Equilibrium answers come from the matrix alone; the stated
// closed-form threshold is reported but never drives them.
EquilibriumReport solve(const GameParams& params, const BehaviorPolicy& behavior);

nlohmann::json report_to_json(const EquilibriumReport& r);
std::string report_to_table(const EquilibriumReport& r);

} // namespace swapgame
