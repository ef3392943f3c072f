#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "emostat/types.hpp"

namespace emostat {

// Header must be exactly `algorithm,problem,k,run,indicator,value`.
// Rejects duplicate keys, non-finite values, and malformed rows, naming
// the offending 1-based line.
IndicatorDataset parse_indicator_csv(const std::filesystem::path& path);

// Values are written with shortest-round-trip formatting, so a parse of
// the output reproduces the records bit for bit.
void write_indicator_csv(const IndicatorDataset& dataset, const std::filesystem::path& path);

// Header `algorithm,problem,k,run,f1,...,fK` where K is the largest k in
// the file; rows with smaller k leave the trailing objective cells empty.
// Rows are grouped into ApproximationSets by (algorithm, problem, k, run)
// preserving row order.
std::vector<ApproximationSet> parse_approximation_csv(const std::filesystem::path& path);

// Header `f1,...,fk`; one reference-front point per row.
std::vector<Point> parse_front_csv(const std::filesystem::path& path, int k);

} // namespace emostat
