#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swapgame/matrix.hpp"

namespace swapgame {

struct SimConfig {
    GameParams params;
    StrategyProfile profile;
    Regime regime = Regime::Swap;
    std::uint64_t n = 100000;
    std::uint64_t seed = 0;
    unsigned threads = 1; // execution hint only; results are thread-count independent
};

struct SimStats {
    double mean_a = 0.0;
    double mean_b = 0.0;
    double se_a = 0.0; // sample stdev / sqrt(n); NaN when n < 2
    double se_b = 0.0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
};

// Seeded Monte Carlo over the exam timeline: fixed abilities, given
// preparation profile, copy attempts per the behavior policy, one
// detection draw per exam when a copy attempt occurred, payoffs realized
// branch by branch. Deterministic function of the config; per-trial
// randomness is derived from (seed, trial index) so trial outcomes do not
// depend on execution order.
SimStats simulate(const SimConfig& cfg);

struct AuditRow {
    std::string profile; // "PP", "PNP", "NPP", "NPNP"
    Regime regime = Regime::Swap;
    char player = 'a';
    double closed_form = 0.0;
    double mc_mean = 0.0;
    double se = 0.0;
    double z = 0.0;
    bool flagged = false; // |z| > 4
};

// Runs simulate for all four profiles under both regimes and compares the
// means against the matching build_matrix cells.
std::vector<AuditRow> simulate_cell_audit(const GameParams& params,
                                          const BehaviorPolicy& behavior, std::uint64_t n,
                                          std::uint64_t seed);

// Columns: profile, regime, player, closed_form, mc_mean, se, z.
// Means and SEs carry 12 significant digits.
std::string audit_to_csv(const std::vector<AuditRow>& rows);

std::string simstats_to_text(const SimStats& stats);

} // namespace swapgame
