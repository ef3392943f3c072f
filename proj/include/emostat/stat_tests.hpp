#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "emostat/types.hpp"

namespace emostat {

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;    // in (0, 1]
    int permutations = 0;    // 0 would mean asymptotic; both tests here permute
    std::uint64_t seed = 0;
};

// Szekely-Rizzo energy statistic between two multivariate samples:
//   E = nm/(n+m) * [ 2/(nm) sum||x_i - y_j|| - 1/n^2 sum||x_i - x_j||
//                    - 1/m^2 sum||y_i - y_j|| ]
// Nonnegative, zero iff the empirical distributions coincide. The two
// arguments are ordered canonically before summation so that
// energy_statistic(X, Y) == energy_statistic(Y, X) holds exactly.
double energy_statistic(const std::vector<Point>& x, const std::vector<Point>& y);

// Permutation E-test. p = (1 + #{b : E_b >= E_obs}) / (B + 1), each E_b
// computed on a uniformly random relabeling of the pooled sample into
// sizes n and m. Replicate b draws its RNG from sub_seed(seed, b), so the
// result is bit-identical regardless of thread count.
TestResult energy_test(const std::vector<Point>& x, const std::vector<Point>& y,
                       int permutations, std::uint64_t seed);

// Two-sample Anderson-Darling statistic, rank-based with midrank tie
// handling, standardized as (A2 - 1) / sigma_N. Invariant under any
// strictly increasing transform applied to both samples.
double ad2_statistic(const std::vector<double>& x, const std::vector<double>& y);

// Permutation p-value with the same (1 + count)/(B + 1) scheme as
// energy_test.
TestResult ad2_test(const std::vector<double>& x, const std::vector<double>& y,
                    int permutations, std::uint64_t seed);

// Interface used by the pairwise p-value matrix: (X, Y, B, seed) -> result.
using TwoSampleTest =
    std::function<TestResult(const std::vector<Point>&, const std::vector<Point>&, int, std::uint64_t)>;

TwoSampleTest energy_test_fn();

// Anderson-Darling wrapper over 1-dimensional clouds (p must be 1).
TwoSampleTest ad2_test_fn();

} // namespace emostat
