#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "emostat/stat_tests.hpp"
#include "emostat/types.hpp"

namespace emostat {

// Symmetric matrix of pairwise-test p-values with unit diagonal.
struct PValueMatrix {
    std::vector<std::string> algorithms;
    std::vector<std::vector<double>> entries;
};

// Binary similarity matrix: entry 1 iff p >= alpha / C(m,2).
struct ThresholdMatrix {
    std::vector<std::string> algorithms;
    std::vector<std::vector<int>> entries;
    double alpha = 0.0;
    double threshold = 0.0;
};

// Partition of the algorithms into statistically indistinguishable groups.
// When the thresholded relation is not transitive, groups are its
// connected components, `transitive` is false, and the witnessing triples
// (a similar b, b similar c, a not similar c) are listed.
struct GroupPartition {
    std::vector<std::vector<std::string>> groups;
    bool transitive = true;
    std::vector<std::array<std::string, 3>> violations;
};

// Fractional average ranks for one scenario; ranks sum to m(m+1)/2.
struct RankTable {
    std::string problem;
    int k = 0;
    std::map<std::string, double> ranks;
};

// Runs the m(m-1)/2 pairwise tests. Entry (l1, l2) with l1 < l2 uses the
// sub-seed derived from (seed, l1, l2); the matrix is mirrored and the
// diagonal is 1.
PValueMatrix pvalue_matrix(const std::vector<PerformanceCloud>& clouds,
                           const TwoSampleTest& test, int permutations, std::uint64_t seed);

ThresholdMatrix threshold_matrix(const PValueMatrix& pvalues, double alpha);

// Bonferroni threshold alpha / C(m,2), transitivity check over all
// triples, grouping by connected components. Intransitivity is flagged,
// not an error.
GroupPartition threshold_and_partition(const PValueMatrix& pvalues, double alpha);

// Univariate DSC: Anderson-Darling pairwise matrix, partition, groups
// ordered by descending group mean of the (maximization-oriented) values,
// fractional average ranks within each group. samples[i] belongs to
// algorithms[i].
RankTable dsc_rank(const std::string& problem, int k,
                   const std::vector<std::string>& algorithms,
                   const std::vector<std::vector<double>>& samples,
                   double alpha, int permutations, std::uint64_t seed);

// Per-algorithm arithmetic mean of ranks across indicators, reported
// as-is.
RankTable ensemble_average(const std::vector<RankTable>& tables);

// Majority vote: count the indicators on which each algorithm attains the
// best rank (ties all win), order by descending win count, break ties by
// the average ensemble, and emit fractional ranks.
RankTable ensemble_hierarchical(const std::vector<RankTable>& tables);

// Mean rank per algorithm across problems (tables must share the
// algorithm set).
std::map<std::string, double> mean_ranks(const std::vector<RankTable>& tables);

} // namespace emostat
