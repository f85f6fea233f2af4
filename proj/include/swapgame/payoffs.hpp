#pragma once

#include "swapgame/model.hpp"

namespace swapgame {

// The three ways a player's exam can end.
enum class Outcome { NoCopy, CopyUndetected, CopyDetectedSwapped };

// Raw score from own work: theta*g when prepared, theta*g*alpha otherwise.
double raw_score(double theta, PrepStrategy s, double g, double alpha);

// Score after successfully copying: the better of the two scripts.
double copy_result(double r_own, double r_other);

// Score from finishing the other player's script after a swap:
// beta*r_j + (1-beta)*theta_i*g*gamma.
double swap_payoff(double r_j, double theta_i, const GameParams& params);

// Expected utility of the unprepared copier (A prepared, B copies) under
// the traditional regime: (1-p0)*theta_a*g + p0*tau*theta_a*g.
double eu_copier_traditional(const GameParams& params);

// Same scenario under the swap regime:
// (1-p)*theta_a*g + p*[beta*theta_a*g + (1-beta)*theta_b*g*gamma].
double eu_copier_swap(const GameParams& params);

// Expected utility of the prepared victim A in the same scenario:
// (1-p)*theta_a*g + p*[beta*theta_b*g*alpha + (1-beta)*theta_a*g*gamma] - c/theta_a.
double eu_victim_swap(const GameParams& params);

struct NpnpPayoffs {
    double a = 0.0;
    double b = 0.0;
};

// Both unprepared. Without a swap each keeps theta_i*g*alpha; with a swap
// each gets beta*theta_j*g*alpha + (1-beta)*theta_i*g*gamma.
NpnpPayoffs eu_npnp(const GameParams& params, bool swapped);

struct CoordinatedScores {
    double individual_a = 0.0; // own-half preparation, no copying
    double individual_b = 0.0;
    double copied = 0.0;  // both reach max(theta_a, theta_b)*g via copying
    double swapped = 0.0; // complementary halves survive a swap: 0.5*g*(theta_a+theta_b)
};

// Two-equal-parts curriculum split where each student prepares one half.
CoordinatedScores coordinated_scores(const GameParams& params);

} // namespace swapgame
