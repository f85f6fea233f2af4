#pragma once

#include <string>
#include <vector>

namespace swapgame {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Names accepted by run_battery's filter (and the CLI --checks flag).
std::vector<std::string> battery_check_names();

// Full invariant battery: Monte Carlo cell agreement, threshold
// cross-checks, (NP,NP)-equilibrium condition equivalence, analytic vs
// finite-difference derivatives, coordinated-score symmetry, stated-vs-
// derived threshold inconsistency surfacing, output determinism, and mixed
// equilibrium soundness. An empty filter runs everything.
std::vector<CheckResult> run_battery(const std::vector<std::string>& filter = {});

} // namespace swapgame
