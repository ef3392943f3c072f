#pragma once

#include <map>
#include <string>
#include <vector>

#include "emostat/types.hpp"

namespace emostat {

// All renderers emit standalone SVG documents with embedded styling and
// no external references; output is a pure function of the inputs.

// Unit-square scatter of the normalized performance points, one marker
// style per algorithm, with the discriminant direction drawn as a dashed
// line through the data mean. Expects two indicators.
std::string render_scatter(const std::string& title,
                           const std::string& x_label, const std::string& y_label,
                           const std::vector<PerformanceCloud>& clouds,
                           const std::vector<double>& weights);

// Per-algorithm frequency polygons of the LD values on a common axis
// spanning [min, max] of all values.
std::string render_ld_histogram(const std::string& title,
                                const std::vector<std::string>& algorithms,
                                const std::map<std::string, std::vector<double>>& ld_values);

// Grid of mean ranks, one row per algorithm and one column per k,
// annotated to two decimals.
std::string render_heatmap(const std::string& title,
                           const std::vector<int>& k_values,
                           const std::vector<std::string>& algorithms,
                           const std::vector<std::vector<double>>& mean_rank_by_k);

struct GroupingRow {
    std::string problem;
    int k = 0;
    std::vector<std::vector<std::string>> groups;
};

// Markdown table of the scenarios that have at least one non-singleton
// group, each partition formatted as {{A}, {B, C}, {D}}.
std::string render_grouping_table(const std::vector<GroupingRow>& rows);

} // namespace emostat
