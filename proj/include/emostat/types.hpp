#pragma once

#include <string>
#include <vector>

namespace emostat {

using Point = std::vector<double>;

// One optimizer run: the nondominated objective vectors of its final
// population, minimization convention.
struct ApproximationSet {
    std::string algorithm;
    std::string problem;
    int k = 0;   // number of objectives
    int run = 0;
    std::vector<Point> points;
};

// Reference front and hypervolume reference point for one (problem, k).
struct ReferenceData {
    std::string problem;
    int k = 0;
    std::vector<Point> reference_front;
    Point hv_reference;
};

struct IndicatorRecord {
    std::string algorithm;
    std::string problem;
    int k = 0;
    int run = 0;
    std::string indicator;
    double value = 0.0;
};

// Long-form table of indicator values keyed by
// (algorithm, problem, k, run, indicator). Keys are unique, values finite.
struct IndicatorDataset {
    std::vector<IndicatorRecord> records;
};

enum class Orientation { maximize, minimize };

struct IndicatorSpec {
    std::string name;
    Orientation orientation = Orientation::maximize;
    std::string kind;         // "hv", "delta", "gd", "igd"; empty when values are ingested, not computed
    double p_exponent = 2.0;  // for delta/gd/igd
};

// One comparison scenario: a (problem, k) pair, the ordered indicators
// spanning the performance space, and the ordered algorithms under test.
struct Scenario {
    std::string problem;
    int k = 0;
    std::vector<IndicatorSpec> indicators;
    std::vector<std::string> algorithms;
};

// Per-algorithm normalized performance points, one p-vector per run,
// every component in [0,1] and oriented for maximization.
struct PerformanceCloud {
    std::string algorithm;
    std::vector<Point> points;
};

} // namespace emostat
