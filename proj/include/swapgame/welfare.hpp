#pragma once

#include <nlohmann/json_fwd.hpp>

#include "swapgame/matrix.hpp"

namespace swapgame {

enum class IntegrityMetric {
    PrepRate,   // fraction of players preparing in the evaluated profile
    HonestRate, // fraction neither copying nor copied-from
    Constant,
};

struct WelfareSpec {
    double lambda = 0.0;
    IntegrityMetric metric = IntegrityMetric::PrepRate;
    double constant_value = 0.0; // used when metric == Constant
};

// Institutional objective I for a profile, in [0,1] for the rate metrics.
double integrity(const StrategyProfile& profile, const WelfareSpec& spec);

// W = payoff_a + payoff_b + lambda * I, read from the matrix cell.
double welfare(const PayoffMatrix& m, const StrategyProfile& profile,
               const WelfareSpec& spec);

// Regime comparison
//   p_swap * [W(P,P) - W(NP,NP)] > p_trad * [W(P,P) - W(NP,NP)]
// with each side's W terms taken from its own matrix and each regime's own
// detection probability.
struct Prop4Result {
    bool condition_holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
};
Prop4Result check_prop4(const PayoffMatrix& swap_m, const PayoffMatrix& trad_m,
                        const WelfareSpec& spec);

WelfareSpec welfare_spec_from_json(const nlohmann::json& j);
nlohmann::json welfare_spec_to_json(const WelfareSpec& spec);

} // namespace swapgame
