#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "emostat/types.hpp"

namespace emostat {

// Dense p x p matrix, row major. p is the number of indicators (tiny).
using Matrix = std::vector<std::vector<double>>;

struct LdaResult {
    std::vector<double> weights; // componentwise >= 0, unit norm
    bool used_fallback = false;  // equal weights substituted
    double separation = 0.0;     // S at the returned weights
    std::map<std::string, std::vector<double>> ld_values; // one value per run
    std::vector<double> group_means;                      // by group index
    std::vector<std::size_t> ranking;                     // group indices, best first
};

// Scatter of the group means: Sigma = (1/|G|) sum_i (mu_i - mu)(mu_i - mu)^T,
// where mu_i is the mean of all points pooled within group i and mu is the
// unweighted mean of the group means. Requires at least two groups.
Matrix between_scatter(const std::vector<std::vector<Point>>& groups);

// Sample covariance (N-1 denominator) of all performance points.
Matrix total_covariance(const std::vector<Point>& points);

// S(w) = w^T Sigma w / w^T (C + eps I) w with eps = 1e-9 trace(C)/p.
// The ridge keeps the denominator positive when the points are collinear;
// S stays invariant under scaling of w.
double separation_measure(const Matrix& sigma, const Matrix& cov, const std::vector<double>& w);

// Maximizes S over the nonnegative orthant intersected with the unit
// sphere. p = 2 uses a 0.01-degree angle scan with golden-section
// refinement; p >= 3 uses projected gradient ascent from the equal-weights
// start plus 20 deterministic random restarts.
std::pair<std::vector<double>, double> maximize_separation(const Matrix& sigma, const Matrix& cov);

// Weights, separation, and fallback flag for the given grouping of
// normalized performance points. Falls back to equal weights when the
// grouping is degenerate (fewer than two groups), Sigma is zero, or the
// constrained optimum does not improve on equal weights by more than 1e-9.
LdaResult lda_weights(const std::vector<std::vector<Point>>& groups);

// Scalarized performance values: dot product of every run's point with w.
std::map<std::string, std::vector<double>> ld_values(const std::vector<PerformanceCloud>& clouds,
                                                     const std::vector<double>& weights);

struct GroupRanking {
    std::vector<double> group_means;  // mean LD value pooled over the group's runs
    std::vector<std::size_t> ranking; // group indices, descending mean, stable on ties
};

GroupRanking rank_groups(const std::vector<std::vector<std::string>>& groups,
                         const std::map<std::string, std::vector<double>>& ld);

} // namespace emostat
