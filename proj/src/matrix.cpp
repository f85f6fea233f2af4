#include "swapgame/matrix.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <sstream>

#include "swapgame/payoffs.hpp"

namespace swapgame {

namespace {

// Score of an undetected copier. Copying a prepared script yields the
// better of the two; an unprepared script has nothing worth taking.
double undetected_copy(double r_own, double r_source, PrepStrategy source_prep) {
    return source_prep == PrepStrategy::Prepare ? copy_result(r_own, r_source) : r_own;
}

CellPayoffs fold_cell(const GameParams& x, PrepStrategy s_a, PrepStrategy s_b,
                      const BehaviorPolicy& behavior, Regime regime) {
    const double r_a = raw_score(x.theta_a, s_a, x.g, x.alpha);
    const double r_b = raw_score(x.theta_b, s_b, x.g, x.alpha);
    const double cost_a = s_a == PrepStrategy::Prepare ? effort_cost(x.theta_a, x.c) : 0.0;
    const double cost_b = s_b == PrepStrategy::Prepare ? effort_cost(x.theta_b, x.c) : 0.0;
    const bool copies_a = attempts_copy(s_a, s_b, behavior);
    const bool copies_b = attempts_copy(s_b, s_a, behavior);

    if (!copies_a && !copies_b) {
        return {r_a - cost_a, r_b - cost_b};
    }

    const double pd = regime == Regime::Swap ? x.p : x.p0;
    const double u_a = copies_a ? undetected_copy(r_a, r_b, s_b) : r_a;
    const double u_b = copies_b ? undetected_copy(r_b, r_a, s_a) : r_b;
    double d_a;
    double d_b;
    if (regime == Regime::Swap) {
        // Scripts are exchanged in both directions, copier and victim alike.
        d_a = swap_payoff(r_b, x.theta_a, x);
        d_b = swap_payoff(r_a, x.theta_b, x);
    } else {
        // Individual punishment: the caught copier keeps tau of the score
        // they copied to; the other player is unaffected.
        d_a = copies_a ? x.tau * u_a : r_a;
        d_b = copies_b ? x.tau * u_b : r_b;
    }
    // Skip the fold when detection does not change a player's payoff, so a
    // detection-independent payoff stays bit-identical to the realized one.
    const double v_a = u_a == d_a ? u_a : (1.0 - pd) * u_a + pd * d_a;
    const double v_b = u_b == d_b ? u_b : (1.0 - pd) * u_b + pd * d_b;
    return {v_a - cost_a, v_b - cost_b};
}

} // namespace

PayoffMatrix build_matrix(const GameParams& params, const BehaviorPolicy& behavior,
                          Regime regime) {
    PayoffMatrix m;
    m.params = params;
    m.behavior = behavior;
    m.regime = regime;
    const PrepStrategy strategies[2] = {PrepStrategy::Prepare, PrepStrategy::NotPrepare};
    for (PrepStrategy s_a : strategies) {
        for (PrepStrategy s_b : strategies) {
            m.cells[static_cast<std::size_t>(PayoffMatrix::index(s_a, s_b))] =
                fold_cell(params, s_a, s_b, behavior, regime);
        }
    }
    return m;
}

SymmetricPayoffs symmetric_payoffs(const GameParams& x) {
    if (x.theta_a != x.theta_b) {
        throw AsymmetryError("symmetric_payoffs requires theta_a == theta_b");
    }
    const double theta = x.theta_a;
    const double tg = theta * x.g;
    SymmetricPayoffs out;
    out.pi_pp = tg - x.c / theta;
    out.pi_a_pnp = (1.0 - x.p) * tg +
                   x.p * (x.beta * (tg * x.alpha) + (1.0 - x.beta) * (tg * x.gamma)) -
                   x.c / theta;
    out.pi_b_pnp = (1.0 - x.p) * tg + x.p * (x.beta * tg + (1.0 - x.beta) * (tg * x.gamma));
    out.pi_npnp = tg * x.alpha;
    return out;
}

const char* to_string(Regime r) {
    return r == Regime::Swap ? "swap" : "traditional";
}

const char* cell_key(int index) {
    static const char* keys[4] = {"PP", "PNP", "NPP", "NPNP"};
    return keys[index];
}

nlohmann::json matrix_to_json(const PayoffMatrix& m) {
    nlohmann::json cells;
    for (int i = 0; i < 4; ++i) {
        const auto& cell = m.cells[static_cast<std::size_t>(i)];
        cells[cell_key(i)] = nlohmann::json{{"a", cell.a}, {"b", cell.b}};
    }
    return nlohmann::json{{"regime", to_string(m.regime)},
                          {"params", params_to_json(m.params)},
                          {"behavior", behavior_to_json(m.behavior)},
                          {"cells", cells}};
}

std::string matrix_to_table(const PayoffMatrix& m) {
    auto cell_text = [](const CellPayoffs& cell) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "(%12.6g, %12.6g)", cell.a, cell.b);
        return std::string(buf);
    };
    std::ostringstream out;
    out << "regime: " << to_string(m.regime) << "\n";
    out << "          B: P                          B: NP\n";
    out << "A: P    " << cell_text(m.at(PrepStrategy::Prepare, PrepStrategy::Prepare)) << "  "
        << cell_text(m.at(PrepStrategy::Prepare, PrepStrategy::NotPrepare)) << "\n";
    out << "A: NP   " << cell_text(m.at(PrepStrategy::NotPrepare, PrepStrategy::Prepare))
        << "  " << cell_text(m.at(PrepStrategy::NotPrepare, PrepStrategy::NotPrepare))
        << "\n";
    return out.str();
}

} // namespace swapgame
