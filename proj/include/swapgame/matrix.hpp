#pragma once

#include <nlohmann/json_fwd.hpp>

#include <array>
#include <string>

#include "swapgame/model.hpp"

namespace swapgame {

enum class Regime { Swap, Traditional };

struct CellPayoffs {
    double a = 0.0;
    double b = 0.0;
    bool operator==(const CellPayoffs&) const = default;
};

// 2x2 preparation-stage normal form with copying/detection dynamics folded
// into expected payoffs. Immutable after build.
struct PayoffMatrix {
    // Cell order: (P,P), (P,NP), (NP,P), (NP,NP).
    std::array<CellPayoffs, 4> cells{};
    GameParams params;
    BehaviorPolicy behavior;
    Regime regime = Regime::Swap;

    static int index(PrepStrategy s_a, PrepStrategy s_b) {
        return (s_a == PrepStrategy::NotPrepare ? 2 : 0) +
               (s_b == PrepStrategy::NotPrepare ? 1 : 0);
    }
    const CellPayoffs& at(PrepStrategy s_a, PrepStrategy s_b) const {
        return cells[static_cast<std::size_t>(index(s_a, s_b))];
    }
};

// Expected payoffs for every profile. Detection probability is p under
// Swap and p0 under Traditional. Preconditions: validated params.
PayoffMatrix build_matrix(const GameParams& params, const BehaviorPolicy& behavior,
                          Regime regime = Regime::Swap);

// Closed forms for the symmetric case theta_a == theta_b under the swap
// regime and default behavior. Throws AsymmetryError otherwise.
struct SymmetricPayoffs {
    double pi_pp = 0.0;    // theta*g - c/theta
    double pi_a_pnp = 0.0; // prepared victim
    double pi_b_pnp = 0.0; // unprepared copier
    double pi_npnp = 0.0;  // alpha*theta*g
};
SymmetricPayoffs symmetric_payoffs(const GameParams& params);

// Cells keyed "PP", "PNP", "NPP", "NPNP".
nlohmann::json matrix_to_json(const PayoffMatrix& m);
std::string matrix_to_table(const PayoffMatrix& m);

const char* to_string(Regime r);
const char* cell_key(int index);

} // namespace swapgame
