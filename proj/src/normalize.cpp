#include "emostat/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "emostat/error.hpp"

namespace emostat {

NormalizedScenario normalize_scenario(const IndicatorDataset& dataset, const Scenario& scenario) {
    const std::size_t p = scenario.indicators.size();
    if (p == 0) throw ParameterError("scenario has no indicators");
    if (scenario.algorithms.size() < 2) throw ParameterError("scenario needs at least 2 algorithms");
    {
        std::set<std::string> names;
        for (const auto& spec : scenario.indicators)
            if (!names.insert(spec.name).second)
                throw ParameterError("duplicate indicator '" + spec.name + "' in scenario");
        std::set<std::string> algs(scenario.algorithms.begin(), scenario.algorithms.end());
        if (algs.size() != scenario.algorithms.size())
            throw ParameterError("duplicate algorithm in scenario");
    }

    std::map<std::string, std::size_t> indicator_index;
    for (std::size_t j = 0; j < p; ++j) indicator_index.emplace(scenario.indicators[j].name, j);
    std::map<std::string, std::size_t> algorithm_index;
    for (std::size_t a = 0; a < scenario.algorithms.size(); ++a)
        algorithm_index.emplace(scenario.algorithms[a], a);

    // values[(algorithm index, run)][indicator index]
    std::map<std::pair<std::size_t, int>, std::vector<double>> values;
    std::map<std::pair<std::size_t, int>, std::vector<bool>> present;
    for (const auto& rec : dataset.records) {
        if (rec.problem != scenario.problem || rec.k != scenario.k) continue;
        auto ai = algorithm_index.find(rec.algorithm);
        auto ii = indicator_index.find(rec.indicator);
        if (ai == algorithm_index.end() || ii == indicator_index.end()) continue;
        auto key = std::make_pair(ai->second, rec.run);
        auto& row = values[key];
        auto& mask = present[key];
        if (row.empty()) {
            row.assign(p, 0.0);
            mask.assign(p, false);
        }
        row[ii->second] = rec.value;
        mask[ii->second] = true;
    }

    std::vector<std::string> missing;
    for (const auto& [key, mask] : present)
        for (std::size_t j = 0; j < p; ++j)
            if (!mask[j])
                missing.push_back("(" + scenario.algorithms[key.first] + ", run " +
                                  std::to_string(key.second) + ", " + scenario.indicators[j].name + ")");
    for (const auto& alg : scenario.algorithms) {
        std::size_t a = algorithm_index[alg];
        bool any = false;
        for (const auto& [key, mask] : present)
            if (key.first == a) { any = true; break; }
        if (!any) missing.push_back("(" + alg + ", all runs, all indicators)");
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "scenario " << scenario.problem << "/" << scenario.k << "D is incomplete; missing:";
        for (const auto& m : missing) msg << ' ' << m;
        throw CompletenessError(msg.str());
    }

    // Pooled per-indicator bounds over all algorithms and runs.
    std::vector<double> lo(p, std::numeric_limits<double>::infinity());
    std::vector<double> hi(p, -std::numeric_limits<double>::infinity());
    for (const auto& [key, row] : values)
        for (std::size_t j = 0; j < p; ++j) {
            lo[j] = std::min(lo[j], row[j]);
            hi[j] = std::max(hi[j], row[j]);
        }

    NormalizedScenario result;
    std::vector<bool> degenerate(p, false);
    for (std::size_t j = 0; j < p; ++j) {
        const double range = hi[j] - lo[j];
        if (!std::isfinite(range))
            throw ValueError("indicator '" + scenario.indicators[j].name + "' in scenario " +
                             scenario.problem + "/" + std::to_string(scenario.k) +
                             "D: value range overflows");
        if (range == 0.0) {
            degenerate[j] = true;
            result.warnings.push_back("degenerate scale for indicator '" + scenario.indicators[j].name +
                                      "' in scenario " + scenario.problem + "/" +
                                      std::to_string(scenario.k) + "D: all values equal; mapped to 0.5");
        }
    }

    for (const auto& alg : scenario.algorithms) {
        PerformanceCloud cloud;
        cloud.algorithm = alg;
        const std::size_t a = algorithm_index[alg];
        for (const auto& [key, row] : values) { // map order: runs ascending within an algorithm
            if (key.first != a) continue;
            Point pt(p);
            for (std::size_t j = 0; j < p; ++j) {
                double v;
                if (degenerate[j]) {
                    v = 0.5;
                } else {
                    v = (row[j] - lo[j]) / (hi[j] - lo[j]);
                    if (scenario.indicators[j].orientation == Orientation::minimize) v = 1.0 - v;
                }
                pt[j] = v;
            }
            cloud.points.push_back(std::move(pt));
        }
        result.clouds.push_back(std::move(cloud));
    }
    return result;
}

} // namespace emostat
