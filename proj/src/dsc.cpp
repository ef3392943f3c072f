#include "emostat/dsc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "emostat/error.hpp"
#include "emostat/rng.hpp"

namespace emostat {
namespace {

void validate_clouds(const std::vector<PerformanceCloud>& clouds) {
    if (clouds.size() < 2) throw ParameterError("pairwise comparison needs at least 2 algorithms");
    if (clouds[0].points.empty()) throw ParameterError("algorithm '" + clouds[0].algorithm + "' has no runs");
    const std::size_t dim = clouds[0].points[0].size();
    for (const auto& cloud : clouds) {
        if (cloud.points.empty()) throw ParameterError("algorithm '" + cloud.algorithm + "' has no runs");
        for (const auto& pt : cloud.points)
            if (pt.size() != dim)
                throw DimensionError("clouds disagree on the number of indicators (" +
                                     std::to_string(pt.size()) + " vs " + std::to_string(dim) + ")");
    }
}

std::vector<std::vector<std::size_t>> connected_components(const std::vector<std::vector<int>>& similar) {
    const std::size_t m = similar.size();
    std::vector<std::vector<std::size_t>> components;
    std::vector<bool> visited(m, false);
    for (std::size_t start = 0; start < m; ++start) {
        if (visited[start]) continue;
        std::vector<std::size_t> stack{start};
        std::vector<std::size_t> members;
        visited[start] = true;
        while (!stack.empty()) {
            const std::size_t a = stack.back();
            stack.pop_back();
            members.push_back(a);
            for (std::size_t b = 0; b < m; ++b)
                if (similar[a][b] && !visited[b]) {
                    visited[b] = true;
                    stack.push_back(b);
                }
        }
        std::sort(members.begin(), members.end());
        components.push_back(std::move(members));
    }
    return components;
}

// Fractional average ranks: a group spanning positions r+1 .. r+g shares
// rank r + (g+1)/2, so ranks always sum to m(m+1)/2.
std::map<std::string, double> fractional_ranks(const std::vector<std::string>& algorithms,
                                               const std::vector<std::vector<std::size_t>>& ordered_groups) {
    std::map<std::string, double> ranks;
    std::size_t used = 0;
    for (const auto& group : ordered_groups) {
        const double rank =
            static_cast<double>(used) + (static_cast<double>(group.size()) + 1.0) / 2.0;
        for (std::size_t idx : group) ranks[algorithms[idx]] = rank;
        used += group.size();
    }
    return ranks;
}

} // namespace

PValueMatrix pvalue_matrix(const std::vector<PerformanceCloud>& clouds, const TwoSampleTest& test,
                           int permutations, std::uint64_t seed) {
    validate_clouds(clouds);
    const std::size_t m = clouds.size();
    PValueMatrix matrix;
    for (const auto& cloud : clouds) matrix.algorithms.push_back(cloud.algorithm);
    matrix.entries.assign(m, std::vector<double>(m, 1.0));
    for (std::size_t l1 = 0; l1 < m; ++l1) {
        for (std::size_t l2 = l1 + 1; l2 < m; ++l2) {
            const std::uint64_t pair_seed = sub_seed(seed, l1, l2);
            try {
                const TestResult r = test(clouds[l1].points, clouds[l2].points, permutations, pair_seed);
                matrix.entries[l1][l2] = r.p_value;
                matrix.entries[l2][l1] = r.p_value;
            } catch (const DegenerateDataError& e) {
                throw DegenerateDataError("pair (" + clouds[l1].algorithm + ", " + clouds[l2].algorithm +
                                          "): " + e.what());
            } catch (const Error& e) {
                throw Error("pair (" + clouds[l1].algorithm + ", " + clouds[l2].algorithm + "): " + e.what());
            }
        }
    }
    return matrix;
}

ThresholdMatrix threshold_matrix(const PValueMatrix& pvalues, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0,1)");
    const std::size_t m = pvalues.algorithms.size();
    if (m < 2 || pvalues.entries.size() != m)
        throw ParameterError("p-value matrix must be m x m with m >= 2");
    for (const auto& row : pvalues.entries)
        if (row.size() != m) throw ParameterError("p-value matrix is not square");

    for (std::size_t i = 0; i < m; ++i) {
        if (pvalues.entries[i][i] != 1.0)
            throw ParameterError("p-value matrix must have a unit diagonal");
        for (std::size_t j = 0; j < m; ++j) {
            const double p = pvalues.entries[i][j];
            if (!(p > 0.0 && p <= 1.0)) throw ParameterError("p-values must lie in (0,1]");
            if (p != pvalues.entries[j][i]) throw ParameterError("p-value matrix must be symmetric");
        }
    }

    ThresholdMatrix t;
    t.algorithms = pvalues.algorithms;
    t.alpha = alpha;
    t.threshold = alpha / (static_cast<double>(m) * static_cast<double>(m - 1) / 2.0);
    t.entries.assign(m, std::vector<int>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            t.entries[i][j] = (i == j || pvalues.entries[i][j] >= t.threshold) ? 1 : 0;
    return t;
}

GroupPartition threshold_and_partition(const PValueMatrix& pvalues, double alpha) {
    const ThresholdMatrix t = threshold_matrix(pvalues, alpha);
    const std::size_t m = t.algorithms.size();

    GroupPartition partition;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t c = a + 1; c < m; ++c)
            for (std::size_t b = 0; b < m; ++b) {
                if (b == a || b == c) continue;
                if (t.entries[a][b] && t.entries[b][c] && !t.entries[a][c])
                    partition.violations.push_back(
                        {t.algorithms[a], t.algorithms[b], t.algorithms[c]});
            }
    partition.transitive = partition.violations.empty();
    for (const auto& component : connected_components(t.entries)) {
        std::vector<std::string> group;
        for (std::size_t idx : component) group.push_back(t.algorithms[idx]);
        partition.groups.push_back(std::move(group));
    }
    return partition;
}

RankTable dsc_rank(const std::string& problem, int k, const std::vector<std::string>& algorithms,
                   const std::vector<std::vector<double>>& samples, double alpha, int permutations,
                   std::uint64_t seed) {
    if (algorithms.size() != samples.size())
        throw ParameterError("dsc_rank: one sample set per algorithm required");
    std::vector<PerformanceCloud> clouds;
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
        PerformanceCloud cloud;
        cloud.algorithm = algorithms[i];
        for (double v : samples[i]) cloud.points.push_back(Point{v});
        clouds.push_back(std::move(cloud));
    }

    PValueMatrix matrix;
    try {
        matrix = pvalue_matrix(clouds, ad2_test_fn(), permutations, seed);
    } catch (const DegenerateDataError& e) {
        throw DegenerateDataError("scenario " + problem + "/" + std::to_string(k) + "D: " + e.what());
    }
    const GroupPartition partition = threshold_and_partition(matrix, alpha);

    // Order groups by descending mean of the pooled values.
    std::vector<std::vector<std::size_t>> groups_idx;
    std::vector<double> means;
    std::map<std::string, std::size_t> algorithm_index;
    for (std::size_t i = 0; i < algorithms.size(); ++i) algorithm_index[algorithms[i]] = i;
    for (const auto& group : partition.groups) {
        std::vector<std::size_t> idx;
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& name : group) {
            const std::size_t i = algorithm_index[name];
            idx.push_back(i);
            for (double v : samples[i]) {
                sum += v;
                ++count;
            }
        }
        groups_idx.push_back(std::move(idx));
        means.push_back(sum / static_cast<double>(count));
    }
    std::vector<std::size_t> order(groups_idx.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return means[a] > means[b]; });
    std::vector<std::vector<std::size_t>> ordered;
    for (std::size_t o : order) ordered.push_back(groups_idx[o]);

    RankTable table;
    table.problem = problem;
    table.k = k;
    table.ranks = fractional_ranks(algorithms, ordered);
    return table;
}

namespace {

void check_tables(const std::vector<RankTable>& tables) {
    if (tables.empty()) throw ParameterError("no rank tables given");
    for (const auto& t : tables) {
        if (t.ranks.size() != tables[0].ranks.size())
            throw ConsistencyError("rank tables disagree on the algorithm set");
        for (const auto& [name, rank] : tables[0].ranks) {
            (void)rank;
            if (!t.ranks.count(name))
                throw ConsistencyError("rank tables disagree on the algorithm set: missing '" + name + "'");
        }
    }
}

void check_same_scenario(const std::vector<RankTable>& tables) {
    for (const auto& t : tables)
        if (t.problem != tables[0].problem || t.k != tables[0].k)
            throw ConsistencyError("rank tables span different scenarios");
}

} // namespace

RankTable ensemble_average(const std::vector<RankTable>& tables) {
    check_tables(tables);
    check_same_scenario(tables);
    RankTable out;
    out.problem = tables[0].problem;
    out.k = tables[0].k;
    for (const auto& [name, rank] : tables[0].ranks) {
        (void)rank;
        double sum = 0.0;
        for (const auto& t : tables) sum += t.ranks.at(name);
        out.ranks[name] = sum / static_cast<double>(tables.size());
    }
    return out;
}

RankTable ensemble_hierarchical(const std::vector<RankTable>& tables) {
    check_tables(tables);
    check_same_scenario(tables);
    const RankTable average = ensemble_average(tables);

    std::vector<std::string> algorithms;
    for (const auto& [name, rank] : tables[0].ranks) {
        (void)rank;
        algorithms.push_back(name);
    }

    std::map<std::string, int> wins;
    for (const auto& name : algorithms) wins[name] = 0;
    for (const auto& t : tables) {
        double best = t.ranks.begin()->second;
        for (const auto& [name, rank] : t.ranks) best = std::min(best, rank);
        for (const auto& [name, rank] : t.ranks)
            if (rank == best) ++wins[name];
    }

    // Sort by descending wins, ties by the average-ensemble value; exact
    // ties on both share a fractional rank.
    std::stable_sort(algorithms.begin(), algorithms.end(), [&](const std::string& a, const std::string& b) {
        if (wins[a] != wins[b]) return wins[a] > wins[b];
        return average.ranks.at(a) < average.ranks.at(b);
    });
    std::vector<std::vector<std::size_t>> ordered;
    for (std::size_t i = 0; i < algorithms.size();) {
        std::size_t j = i;
        while (j < algorithms.size() && wins[algorithms[j]] == wins[algorithms[i]] &&
               average.ranks.at(algorithms[j]) == average.ranks.at(algorithms[i]))
            ++j;
        std::vector<std::size_t> tied;
        for (std::size_t s = i; s < j; ++s) tied.push_back(s);
        ordered.push_back(std::move(tied));
        i = j;
    }

    RankTable out;
    out.problem = tables[0].problem;
    out.k = tables[0].k;
    out.ranks = fractional_ranks(algorithms, ordered);
    return out;
}

std::map<std::string, double> mean_ranks(const std::vector<RankTable>& tables) {
    check_tables(tables);
    std::map<std::string, double> out;
    for (const auto& [name, rank] : tables[0].ranks) {
        (void)rank;
        double sum = 0.0;
        for (const auto& t : tables) sum += t.ranks.at(name);
        out[name] = sum / static_cast<double>(tables.size());
    }
    return out;
}

} // namespace emostat
