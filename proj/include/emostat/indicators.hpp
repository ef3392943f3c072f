#pragma once

#include <cstdint>
#include <vector>

#include "emostat/types.hpp"

namespace emostat {

// Lebesgue measure of the union of boxes [q, ref] over the points q that
// strictly dominate ref (minimization convention). Points that do not
// dominate ref contribute nothing; duplicates and dominated points do not
// change the result. Recursive objective-sweep slicing; exponential in k,
// hence the cap (beyond it use hypervolume_mc).
double hypervolume_exact(const std::vector<Point>& points, const Point& ref, int exact_max_k = 8);

// Monte Carlo estimate: fraction of uniform samples in [lower, ref]
// dominated by some point, times the box volume, where lower is the
// componentwise minimum of the points. Bit-identical for a fixed seed.
double hypervolume_mc(const std::vector<Point>& points, const Point& ref,
                      std::uint64_t samples, std::uint64_t seed);

// ((1/|A|) sum_a min_r ||a - r||^p)^(1/p), Euclidean norm, p >= 1.
double gd_p(const std::vector<Point>& set, const std::vector<Point>& front, double p);

// gd_p with the roles of set and front exchanged: averages over the front,
// minimizes over the set.
double igd_p(const std::vector<Point>& set, const std::vector<Point>& front, double p);

// max(gd_p, igd_p): the averaged Hausdorff distance. Delta_2 is p = 2.
double delta_p(const std::vector<Point>& set, const std::vector<Point>& front, double p);

struct ComputeOptions {
    int hv_exact_max_k = 8;
    std::uint64_t mc_samples = 100000;
    std::uint64_t seed = 1;
};

// One record per (set, spec). HV dispatches to the exact algorithm or
// Monte Carlo depending on k and the configured cap; the MC seed is
// sub-derived per set so record order never matters.
IndicatorDataset compute_indicators(const std::vector<ApproximationSet>& sets,
                                    const std::vector<ReferenceData>& refs,
                                    const std::vector<IndicatorSpec>& specs,
                                    const ComputeOptions& opts);

} // namespace emostat
