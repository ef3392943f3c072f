#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "emostat/types.hpp"

namespace emostat {

struct AnalyzeConfig {
    std::string input_csv;
    double alpha = 0.05;
    int permutations = 999;
    std::uint64_t seed = 1;
    std::vector<IndicatorSpec> indicators; // defaults to HV (max) and delta2 (min)
    int hv_exact_max_k = 8;                // echoed for provenance
    std::uint64_t mc_samples = 100000;
};

std::vector<IndicatorSpec> default_indicator_specs();

// Parses one name[:orientation] list entry, inferring the kind from the
// name (HV, delta*, gd*, igd*).
IndicatorSpec parse_indicator_spec(const std::string& text);

nlohmann::json config_to_json(const AnalyzeConfig& config);
AnalyzeConfig config_from_json(const nlohmann::json& j);

// Full analysis: for every (problem, k) scenario in the input, normalize,
// run the pairwise E-test matrix, partition, LDA, LD ranking, univariate
// DSC per indicator, and both ensembles; then mean ranks per k. A failing
// scenario is recorded under "errors" without aborting the others. The
// returned document embeds the effective configuration; re-running with it
// reproduces the report bit for bit.
nlohmann::json run_pipeline(const AnalyzeConfig& config);

// Writes report.json, groupings.md, and figures/ under out_dir.
void write_report(const nlohmann::json& report, const std::filesystem::path& out_dir);

// Regenerates groupings.md and figures/ from an existing report document.
void render_outputs(const nlohmann::json& report, const std::filesystem::path& out_dir);

} // namespace emostat
