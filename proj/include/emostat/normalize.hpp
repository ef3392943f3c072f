#pragma once

#include <string>
#include <vector>

#include "emostat/types.hpp"

namespace emostat {

struct NormalizedScenario {
    std::vector<PerformanceCloud> clouds; // ordered as scenario.algorithms
    std::vector<std::string> warnings;    // degenerate-scale notices
};

// Rescales every indicator to [0,1] over the pooled values of all
// algorithms in the scenario, then flips minimization-oriented indicators
// to 1 - v so all components are subject to maximization. A constant
// indicator maps to 0.5 everywhere and attaches a warning instead of
// failing.
NormalizedScenario normalize_scenario(const IndicatorDataset& dataset, const Scenario& scenario);

} // namespace emostat
