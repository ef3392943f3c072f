#pragma once

// Independent reference implementations used by the unit and acceptance
// suites. These stay deliberately naive and structurally different from
// the library code they check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "emostat/lda.hpp"
#include "emostat/types.hpp"

namespace oracle {

// Inclusion-exclusion over all nonempty point subsets: the volume of a
// box intersection is prod max(0, ref_j - max_q q_j).
inline double hypervolume(const std::vector<emostat::Point>& points, const emostat::Point& ref) {
    std::vector<emostat::Point> dom;
    for (const auto& pt : points) {
        bool strict = true;
        for (std::size_t j = 0; j < ref.size(); ++j)
            if (!(pt[j] < ref[j])) strict = false;
        if (strict) dom.push_back(pt);
    }
    const std::size_t n = dom.size();
    double total = 0.0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        emostat::Point corner(ref.size(), -std::numeric_limits<double>::infinity());
        int bits = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) {
                ++bits;
                for (std::size_t j = 0; j < ref.size(); ++j)
                    corner[j] = std::max(corner[j], dom[i][j]);
            }
        double volume = 1.0;
        for (std::size_t j = 0; j < ref.size(); ++j) volume *= std::max(0.0, ref[j] - corner[j]);
        total += (bits % 2 == 1) ? volume : -volume;
    }
    return total;
}

// Double-loop power mean of nearest distances; distance matrix first,
// then row minima.
inline double gd(const std::vector<emostat::Point>& set, const std::vector<emostat::Point>& front,
                 double p) {
    std::vector<std::vector<double>> dist(set.size(), std::vector<double>(front.size()));
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = 0; j < front.size(); ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < set[i].size(); ++c) {
                const double d = set[i][c] - front[j][c];
                s += d * d;
            }
            dist[i][j] = std::sqrt(s);
        }
    double acc = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i) {
        double best = dist[i][0];
        for (std::size_t j = 1; j < front.size(); ++j) best = std::min(best, dist[i][j]);
        acc += std::pow(best, p);
    }
    return std::pow(acc / static_cast<double>(set.size()), 1.0 / p);
}

// Separation measure on the 0.01-degree angle grid over the nonnegative
// quadrant, with the same ridge definition the module documents.
inline double lda_grid_max_2d(const emostat::Matrix& sigma, const emostat::Matrix& cov) {
    const double eps = 1e-9 * (cov[0][0] + cov[1][1]) / 2.0;
    double best = -1.0;
    for (int i = 0; i <= 9000; ++i) {
        const double theta = 0.01 * i * std::acos(-1.0) / 180.0;
        const double w0 = std::cos(theta), w1 = std::sin(theta);
        const double num =
            sigma[0][0] * w0 * w0 + 2.0 * sigma[0][1] * w0 * w1 + sigma[1][1] * w1 * w1;
        const double den = cov[0][0] * w0 * w0 + 2.0 * cov[0][1] * w0 * w1 + cov[1][1] * w1 * w1 +
                           eps * (w0 * w0 + w1 * w1);
        const double s = (den <= 0.0) ? 0.0 : num / den;
        best = std::max(best, s);
    }
    return best;
}

} // namespace oracle
