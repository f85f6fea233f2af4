#include "swapgame/payoffs.hpp"

#include <algorithm>

namespace swapgame {

double raw_score(double theta, PrepStrategy s, double g, double alpha) {
    return s == PrepStrategy::Prepare ? theta * g : theta * g * alpha;
}

double copy_result(double r_own, double r_other) {
    return std::max(r_own, r_other);
}

double swap_payoff(double r_j, double theta_i, const GameParams& params) {
    return params.beta * r_j + (1.0 - params.beta) * (theta_i * params.g * params.gamma);
}

double eu_copier_traditional(const GameParams& x) {
    const double copied = x.theta_a * x.g;
    return (1.0 - x.p0) * copied + x.p0 * (x.tau * copied);
}

double eu_copier_swap(const GameParams& x) {
    const double copied = x.theta_a * x.g;
    const double swapped = x.beta * copied + (1.0 - x.beta) * (x.theta_b * x.g * x.gamma);
    return (1.0 - x.p) * copied + x.p * swapped;
}

double eu_victim_swap(const GameParams& x) {
    const double own = x.theta_a * x.g;
    const double swapped =
        x.beta * (x.theta_b * x.g * x.alpha) + (1.0 - x.beta) * (x.theta_a * x.g * x.gamma);
    return (1.0 - x.p) * own + x.p * swapped - effort_cost(x.theta_a, x.c);
}

NpnpPayoffs eu_npnp(const GameParams& x, bool swapped) {
    NpnpPayoffs out;
    if (!swapped) {
        out.a = x.theta_a * x.g * x.alpha;
        out.b = x.theta_b * x.g * x.alpha;
    } else {
        out.a = x.beta * (x.theta_b * x.g * x.alpha) +
                (1.0 - x.beta) * (x.theta_a * x.g * x.gamma);
        out.b = x.beta * (x.theta_a * x.g * x.alpha) +
                (1.0 - x.beta) * (x.theta_b * x.g * x.gamma);
    }
    return out;
}

CoordinatedScores coordinated_scores(const GameParams& x) {
    CoordinatedScores out;
    out.individual_a = x.theta_a * x.g * (0.5 + 0.5 * x.alpha);
    out.individual_b = x.theta_b * x.g * (0.5 + 0.5 * x.alpha);
    out.copied = std::max(x.theta_a, x.theta_b) * x.g;
    out.swapped = 0.5 * x.g * (x.theta_a + x.theta_b);
    return out;
}

} // namespace swapgame
