#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "swapgame/equilibrium.hpp"
#include "swapgame/model.hpp"

namespace swapgame {

// d p_bar / dc of the stated symmetric threshold:
// 1 / (theta^2 * g * [1 - beta*alpha - (1-beta)*gamma]).
double dpbar_dc(const GameParams& params);

// d p_bar / dbeta of the stated symmetric threshold:
// -theta*g*(gamma-alpha)*[c/theta - theta*g*(1-alpha)]
//   / [theta*g*(1 - beta*alpha - (1-beta)*gamma)]^2.
double dpbar_dbeta(const GameParams& params);

// Central finite difference (f(x+h) - f(x-h)) / 2h along one parameter.
// Perturbed parameter sets are validated; DomainError propagates.
double finite_diff(const std::function<double(const GameParams&)>& quantity,
                   const std::string& axis, const GameParams& params, double h);

// Default finite-difference step for a parameter value x.
double default_fd_step(double x);

// Read/write a GameParams field by name. Throws SpecError on unknown names.
double get_field(const GameParams& params, const std::string& axis);
GameParams with_field(GameParams params, const std::string& axis, double value);
std::vector<std::string> axis_names();

struct SweepSpec {
    GameParams base;
    BehaviorPolicy behavior;
    std::string axis;
    std::vector<double> grid; // strictly increasing
    std::vector<std::string> outputs;
};

struct SweepRow {
    double axis_value = 0.0;
    std::vector<std::string> values; // formatted; empty string when unavailable
    std::vector<std::string> annotations;
};

struct SweepResult {
    std::string axis;
    std::vector<std::string> columns; // output names, in spec order
    std::vector<SweepRow> rows;       // one per grid point, in grid order
};

// Evaluates every requested quantity at every grid point. Failures at a
// point become row annotations, never aborts. Throws SpecError for
// unknown axis or quantity names, or a non-increasing grid.
SweepResult run_sweep(const SweepSpec& spec);

std::vector<std::string> quantity_names();

// CSV: axis column first, then one column per output, then an annotations
// column. Header mandatory, LF line endings, round-trip double formatting.
std::string sweep_to_csv(const SweepResult& result);

} // namespace swapgame
