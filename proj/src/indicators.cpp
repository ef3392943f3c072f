#include "emostat/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "emostat/error.hpp"
#include "emostat/rng.hpp"

namespace emostat {
namespace {

void check_dimensions(const std::vector<Point>& points, std::size_t k, const char* what) {
    for (const auto& pt : points)
        if (pt.size() != k)
            throw DimensionError(std::string(what) + ": point has " + std::to_string(pt.size()) +
                                 " components, expected " + std::to_string(k));
}

// a dominates b on the first k coordinates (weakly, minimization)
bool dominates(const Point& a, const Point& b, int k) {
    for (int j = 0; j < k; ++j)
        if (a[j] > b[j]) return false;
    return true;
}

void prune_dominated(std::vector<Point>& pts, int k) {
    std::vector<Point> kept;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < pts.size() && !drop; ++j) {
            if (i == j) continue;
            if (dominates(pts[j], pts[i], k) && (j < i || !dominates(pts[i], pts[j], k)))
                drop = true; // exact duplicates keep the first occurrence
        }
        if (!drop) kept.push_back(pts[i]);
    }
    pts.swap(kept);
}

// Sweep the k-th objective: slabs between consecutive sweep values scaled
// by the (k-1)-dimensional volume of the points active below the slab.
double hv_recurse(std::vector<Point> pts, const Point& ref, int k) {
    prune_dominated(pts, k);
    if (k == 1) {
        double mn = pts[0][0];
        for (const auto& pt : pts) mn = std::min(mn, pt[0]);
        return ref[0] - mn;
    }
    std::sort(pts.begin(), pts.end(),
              [k](const Point& a, const Point& b) { return a[k - 1] < b[k - 1]; });
    double volume = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double z = pts[i][k - 1];
        const double z_next = (i + 1 < pts.size()) ? pts[i + 1][k - 1] : ref[k - 1];
        const double thickness = z_next - z;
        if (thickness <= 0.0) continue;
        std::vector<Point> active(pts.begin(), pts.begin() + i + 1);
        volume += thickness * hv_recurse(std::move(active), ref, k - 1);
    }
    return volume;
}

double euclidean(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace

double hypervolume_exact(const std::vector<Point>& points, const Point& ref, int exact_max_k) {
    const int k = static_cast<int>(ref.size());
    if (k < 1) throw DimensionError("hypervolume: reference point is empty");
    if (points.empty()) throw ParameterError("hypervolume: empty approximation set");
    check_dimensions(points, ref.size(), "hypervolume");
    if (k > exact_max_k)
        throw CapabilityError("hypervolume: k=" + std::to_string(k) + " exceeds the exact-computation cap " +
                              std::to_string(exact_max_k) + "; use hypervolume_mc");

    std::vector<Point> dominating;
    for (const auto& pt : points) {
        bool strict = true;
        for (int j = 0; j < k; ++j)
            if (!(pt[j] < ref[j])) { strict = false; break; }
        if (strict) dominating.push_back(pt);
    }
    if (dominating.empty()) return 0.0;
    return hv_recurse(std::move(dominating), ref, k);
}

double hypervolume_mc(const std::vector<Point>& points, const Point& ref,
                      std::uint64_t samples, std::uint64_t seed) {
    const std::size_t k = ref.size();
    if (k < 1) throw DimensionError("hypervolume: reference point is empty");
    if (points.empty()) throw ParameterError("hypervolume: empty approximation set");
    check_dimensions(points, k, "hypervolume");
    if (samples == 0) throw ParameterError("hypervolume_mc: samples must be positive");

    Point lower = points[0];
    for (const auto& pt : points)
        for (std::size_t j = 0; j < k; ++j) lower[j] = std::min(lower[j], pt[j]);

    double box_volume = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
        const double edge = ref[j] - lower[j];
        if (edge <= 0.0) return 0.0;
        box_volume *= edge;
    }

    std::mt19937_64 gen(splitmix64(seed));
    Point sample(k);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (std::size_t j = 0; j < k; ++j)
            sample[j] = lower[j] + uniform01(gen) * (ref[j] - lower[j]);
        for (const auto& pt : points) {
            bool dominated = true;
            for (std::size_t j = 0; j < k; ++j)
                if (pt[j] > sample[j]) { dominated = false; break; }
            if (dominated) { ++hits; break; }
        }
    }
    return (static_cast<double>(hits) / static_cast<double>(samples)) * box_volume;
}

namespace {

double power_mean_min_distance(const std::vector<Point>& from, const std::vector<Point>& to, double p) {
    double acc = 0.0;
    for (const auto& a : from) {
        double best = euclidean(a, to[0]);
        for (std::size_t j = 1; j < to.size(); ++j) best = std::min(best, euclidean(a, to[j]));
        acc += std::pow(best, p);
    }
    return std::pow(acc / static_cast<double>(from.size()), 1.0 / p);
}

void check_gd_args(const std::vector<Point>& set, const std::vector<Point>& front, double p) {
    if (set.empty()) throw ParameterError("gd/igd: empty approximation set");
    if (front.empty()) throw ParameterError("gd/igd: empty reference front");
    if (p < 1.0) throw ParameterError("gd/igd: exponent p must be >= 1");
    const std::size_t dim = front[0].size();
    check_dimensions(front, dim, "gd/igd front");
    check_dimensions(set, dim, "gd/igd set");
}

} // namespace

double gd_p(const std::vector<Point>& set, const std::vector<Point>& front, double p) {
    check_gd_args(set, front, p);
    return power_mean_min_distance(set, front, p);
}

double igd_p(const std::vector<Point>& set, const std::vector<Point>& front, double p) {
    check_gd_args(front, set, p);
    return power_mean_min_distance(front, set, p);
}

double delta_p(const std::vector<Point>& set, const std::vector<Point>& front, double p) {
    return std::max(gd_p(set, front, p), igd_p(set, front, p));
}

IndicatorDataset compute_indicators(const std::vector<ApproximationSet>& sets,
                                    const std::vector<ReferenceData>& refs,
                                    const std::vector<IndicatorSpec>& specs,
                                    const ComputeOptions& opts) {
    std::map<std::pair<std::string, int>, const ReferenceData*> by_scenario;
    for (const auto& ref : refs) by_scenario[{ref.problem, ref.k}] = &ref;

    IndicatorDataset dataset;
    for (const auto& set : sets) {
        auto it = by_scenario.find({set.problem, set.k});
        if (it == by_scenario.end())
            throw LookupError("no reference data for scenario " + set.problem + "/" +
                              std::to_string(set.k) + "D");
        const ReferenceData& ref = *it->second;
        for (const auto& spec : specs) {
            IndicatorRecord rec;
            rec.algorithm = set.algorithm;
            rec.problem = set.problem;
            rec.k = set.k;
            rec.run = set.run;
            rec.indicator = spec.name;
            if (spec.kind == "hv") {
                if (set.k <= opts.hv_exact_max_k) {
                    rec.value = hypervolume_exact(set.points, ref.hv_reference, opts.hv_exact_max_k);
                } else {
                    const std::uint64_t set_seed = sub_seed(
                        opts.seed, fnv1a64(set.algorithm + '\x1f' + set.problem),
                        (static_cast<std::uint64_t>(set.k) << 32) ^ static_cast<std::uint64_t>(set.run));
                    rec.value = hypervolume_mc(set.points, ref.hv_reference, opts.mc_samples, set_seed);
                }
            } else if (spec.kind == "delta") {
                rec.value = delta_p(set.points, ref.reference_front, spec.p_exponent);
            } else if (spec.kind == "gd") {
                rec.value = gd_p(set.points, ref.reference_front, spec.p_exponent);
            } else if (spec.kind == "igd") {
                rec.value = igd_p(set.points, ref.reference_front, spec.p_exponent);
            } else {
                throw ParameterError("indicator '" + spec.name + "' has no computable kind (got '" +
                                     spec.kind + "')");
            }
            dataset.records.push_back(std::move(rec));
        }
    }
    return dataset;
}

} // namespace emostat
