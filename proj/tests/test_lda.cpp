#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "emostat/error.hpp"
#include "emostat/lda.hpp"
#include "emostat/rng.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace emostat;
using testsupport::gaussian_cloud;

TEST_CASE("between scatter hand cases") {
    SUBCASE("equal group means give the zero matrix") {
        const std::vector<std::vector<Point>> groups{{{1.0, 2.0}, {3.0, 4.0}}, {{0.0, 1.0}, {4.0, 5.0}}};
        const auto sigma = between_scatter(groups); // both means (2,3)
        for (const auto& row : sigma)
            for (double v : row) CHECK(v == 0.0);
    }
    SUBCASE("two groups along the first axis") {
        const std::vector<std::vector<Point>> groups{{{0.0, 0.0}}, {{2.0, 0.0}}};
        const auto sigma = between_scatter(groups);
        CHECK(sigma[0][0] == 1.0);
        CHECK(sigma[0][1] == 0.0);
        CHECK(sigma[1][0] == 0.0);
        CHECK(sigma[1][1] == 0.0);
    }
    SUBCASE("group means pool all points in the group") {
        // group 1 holds two algorithms' runs pooled: mean (1, 0)
        const std::vector<std::vector<Point>> groups{{{0.0, 0.0}, {2.0, 0.0}}, {{3.0, 0.0}}};
        const auto sigma = between_scatter(groups);
        CHECK(sigma[0][0] == 1.0); // means 1 and 3, overall 2
    }
    SUBCASE("degenerate grouping") {
        CHECK_THROWS_AS(between_scatter({{{1.0, 2.0}}}), DegenerateDataError);
        CHECK_THROWS_AS(between_scatter({}), DegenerateDataError);
        CHECK_THROWS_AS(between_scatter({{{1.0}}, {}}), ParameterError);
    }
    SUBCASE("symmetric and positive semidefinite") {
        std::mt19937_64 gen(3);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<std::vector<Point>> groups;
            for (int g = 0; g < 3; ++g)
                groups.push_back(gaussian_cloud(gen, 5, {uniform01(gen), uniform01(gen)}, 0.3));
            const auto sigma = between_scatter(groups);
            CHECK(sigma[0][1] == sigma[1][0]);
            CHECK(sigma[0][0] >= -1e-12);
            CHECK(sigma[1][1] >= -1e-12);
            // 2x2 PSD: trace and determinant nonnegative
            CHECK(sigma[0][0] * sigma[1][1] - sigma[0][1] * sigma[1][0] >= -1e-12);
        }
    }
}

TEST_CASE("total covariance hand cases") {
    SUBCASE("identical points") {
        const auto cov = total_covariance({{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}});
        for (const auto& row : cov)
            for (double v : row) CHECK(v == 0.0);
    }
    SUBCASE("two points, N-1 denominator") {
        const auto cov = total_covariance({{0.0, 0.0}, {2.0, 0.0}});
        CHECK(cov[0][0] == 2.0);
        CHECK(cov[0][1] == 0.0);
        CHECK(cov[1][1] == 0.0);
    }
    SUBCASE("needs two points") {
        CHECK_THROWS_AS(total_covariance({{1.0, 1.0}}), ParameterError);
    }
}

TEST_CASE("separation measure is scale invariant") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<Point>> groups;
        for (int g = 0; g < 2; ++g)
            groups.push_back(gaussian_cloud(gen, 8, {uniform01(gen), uniform01(gen)}, 0.2));
        std::vector<Point> pooled;
        for (const auto& g : groups) pooled.insert(pooled.end(), g.begin(), g.end());
        const auto sigma = between_scatter(groups);
        const auto cov = total_covariance(pooled);
        const std::vector<double> w{uniform01(gen) + 0.1, uniform01(gen) + 0.1};
        std::vector<double> scaled{3.7 * w[0], 3.7 * w[1]};
        CHECK(separation_measure(sigma, cov, scaled) ==
              doctest::Approx(separation_measure(sigma, cov, w)).epsilon(1e-10));
    }
}

TEST_CASE("maximizer hand cases") {
    SUBCASE("identity covariance, gap along the first axis") {
        const Matrix sigma{{0.25, 0.0}, {0.0, 0.0}};
        const Matrix cov{{1.0, 0.0}, {0.0, 1.0}};
        const auto [w, s] = maximize_separation(sigma, cov);
        CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(w[1] == doctest::Approx(0.0).epsilon(1e-4).scale(1.0));
        CHECK(s == doctest::Approx(0.25).epsilon(1e-6));
    }
    SUBCASE("unconstrained optimum outside the orthant lands on the boundary") {
        // group means (0,0) and (1,-1): the best unconstrained direction
        // (1,-1)/sqrt(2) is infeasible
        const Matrix sigma{{0.25, -0.25}, {-0.25, 0.25}};
        const Matrix cov{{1.0, 0.0}, {0.0, 1.0}};
        const auto [w, s] = maximize_separation(sigma, cov);
        CHECK(w[0] >= 0.0);
        CHECK(w[1] >= 0.0);
        CHECK(s == doctest::Approx(oracle::lda_grid_max_2d(sigma, cov)).epsilon(1e-6));
        // the feasible maximum sits on an axis
        CHECK(std::min(w[0], w[1]) == doctest::Approx(0.0).epsilon(1e-4).scale(1.0));
    }
}

TEST_CASE("maximizer matches the angle-grid oracle on random instances") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 25; ++trial) {
        const int group_count = 2 + trial % 2;
        std::vector<std::vector<Point>> groups;
        for (int g = 0; g < group_count; ++g)
            groups.push_back(
                gaussian_cloud(gen, 10, {uniform01(gen), uniform01(gen)}, 0.05 + 0.2 * uniform01(gen)));
        std::vector<Point> pooled;
        for (const auto& g : groups) pooled.insert(pooled.end(), g.begin(), g.end());
        const auto sigma = between_scatter(groups);
        const auto cov = total_covariance(pooled);
        const auto [w, s] = maximize_separation(sigma, cov);
        CHECK(std::abs(s - oracle::lda_grid_max_2d(sigma, cov)) <= 1e-6);
        CHECK(w[0] >= 0.0);
        CHECK(w[1] >= 0.0);
        CHECK(std::abs(std::sqrt(w[0] * w[0] + w[1] * w[1]) - 1.0) <= 1e-12);
    }
}

TEST_CASE("maximizer finds the best axis for diagonal matrices") {
    // With Sigma = diag(s) and C = I, S(w) = sum s_i w_i^2 / ||w||^2: the
    // maximum over the orthant is the largest s_i, attained on that axis.
    const Matrix sigma{{1.0, 0.0, 0.0}, {0.0, 4.0, 0.0}, {0.0, 0.0, 2.0}};
    const Matrix cov{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    const auto [w, s] = maximize_separation(sigma, cov);
    CHECK(s == doctest::Approx(4.0).epsilon(1e-7));
    CHECK(w[1] == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("maximizer beats random probes for p >= 3") {
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t p = 3 + trial % 2;
        std::vector<std::vector<Point>> groups;
        for (int g = 0; g < 3; ++g) {
            std::vector<double> center(p);
            for (auto& c : center) c = uniform01(gen);
            groups.push_back(gaussian_cloud(gen, 12, center, 0.15));
        }
        std::vector<Point> pooled;
        for (const auto& g : groups) pooled.insert(pooled.end(), g.begin(), g.end());
        const auto sigma = between_scatter(groups);
        const auto cov = total_covariance(pooled);
        const auto [w, s] = maximize_separation(sigma, cov);
        double probe_best = 0.0;
        for (int probe = 0; probe < 10000; ++probe) {
            std::vector<double> v(p);
            double len = 0.0;
            for (auto& c : v) {
                c = std::fabs(testsupport::gaussian(gen));
                len += c * c;
            }
            len = std::sqrt(len);
            for (auto& c : v) c /= len;
            probe_best = std::max(probe_best, separation_measure(sigma, cov, v));
        }
        CHECK(s >= probe_best - 1e-6);
        for (double c : w) CHECK(c >= 0.0);
        double len = 0.0;
        for (double c : w) len += c * c;
        CHECK(std::abs(std::sqrt(len) - 1.0) <= 1e-12);
    }
}

TEST_CASE("lda weights fallback rules") {
    std::mt19937_64 gen(29);
    SUBCASE("single group falls back to equal weights") {
        const auto result = lda_weights({gaussian_cloud(gen, 10, {0.5, 0.5}, 0.1)});
        CHECK(result.used_fallback);
        CHECK(result.weights[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
        CHECK(result.weights[0] == result.weights[1]);
    }
    SUBCASE("zero between-scatter falls back") {
        // two groups with identical means
        std::vector<Point> g1{{0.4, 0.6}, {0.6, 0.4}};
        std::vector<Point> g2{{0.3, 0.7}, {0.7, 0.3}};
        const auto result = lda_weights({g1, g2}); // both means (0.5, 0.5)
        CHECK(result.used_fallback);
        CHECK(result.weights[0] == result.weights[1]);
    }
    SUBCASE("separated groups do not fall back") {
        for (int trial = 0; trial < 10; ++trial) {
            const auto g1 = gaussian_cloud(gen, 10, {0.2, 0.3}, 0.05);
            const auto g2 = gaussian_cloud(gen, 10, {0.8, 0.6}, 0.05);
            const auto result = lda_weights({g1, g2});
            CHECK_FALSE(result.used_fallback);
            for (double c : result.weights) CHECK(c >= 0.0);
        }
    }
    SUBCASE("argument errors") {
        CHECK_THROWS_AS(lda_weights({}), ParameterError);
        CHECK_THROWS_AS(lda_weights({{}, {}}), ParameterError);
    }
}

TEST_CASE("ld values") {
    PerformanceCloud a;
    a.algorithm = "A";
    a.points = {{0.4, 0.6}, {1.0, 0.0}};
    SUBCASE("axis projection") {
        const auto values = ld_values({a}, {1.0, 0.0});
        CHECK(values.at("A") == std::vector<double>{0.4, 1.0});
    }
    SUBCASE("equal weights hand value") {
        const double rt = 1.0 / std::sqrt(2.0);
        const auto values = ld_values({a}, {rt, rt});
        CHECK(values.at("A")[0] == doctest::Approx(0.7071067811865476).epsilon(1e-12));
    }
    SUBCASE("linearity in the points") {
        auto scaled = a;
        for (auto& pt : scaled.points)
            for (auto& c : pt) c *= 2.5;
        const auto base = ld_values({a}, {0.3, 0.7});
        const auto big = ld_values({scaled}, {0.3, 0.7});
        for (std::size_t i = 0; i < 2; ++i)
            CHECK(big.at("A")[i] == doctest::Approx(2.5 * base.at("A")[i]).epsilon(1e-14));
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(ld_values({a}, {1.0, 0.0, 0.0}), DimensionError);
    }
}

TEST_CASE("group ranking by mean ld value") {
    SUBCASE("singletons sort descending") {
        std::map<std::string, std::vector<double>> ld{
            {"A", {0.9, 0.9}}, {"B", {0.5}}, {"C", {0.1, 0.1, 0.1}}};
        const auto r = rank_groups({{"A"}, {"B"}, {"C"}}, ld);
        CHECK(r.ranking == std::vector<std::size_t>{0, 1, 2});
        const auto r2 = rank_groups({{"C"}, {"B"}, {"A"}}, ld);
        CHECK(r2.ranking == std::vector<std::size_t>{2, 1, 0});
    }
    SUBCASE("pooling over runs, not mean of algorithm means") {
        // group {A, B}: A has one run at 1.0, B three runs at 0.0
        // pooled mean 0.25; mean-of-means would be 0.5
        std::map<std::string, std::vector<double>> ld{
            {"A", {1.0}}, {"B", {0.0, 0.0, 0.0}}, {"C", {0.3}}};
        const auto r = rank_groups({{"A", "B"}, {"C"}}, ld);
        CHECK(r.group_means[0] == 0.25);
        CHECK(r.group_means[1] == 0.3);
        CHECK(r.ranking == std::vector<std::size_t>{1, 0});
    }
    SUBCASE("exact ties keep partition order") {
        std::map<std::string, std::vector<double>> ld{{"A", {0.5}}, {"B", {0.5}}};
        const auto r = rank_groups({{"A"}, {"B"}}, ld);
        CHECK(r.ranking == std::vector<std::size_t>{0, 1});
    }
    SUBCASE("affine transforms preserve the order") {
        std::mt19937_64 gen(31);
        std::map<std::string, std::vector<double>> ld;
        for (const char* name : {"A", "B", "C", "D"}) {
            std::vector<double> v;
            for (int i = 0; i < 6; ++i) v.push_back(uniform01(gen));
            ld[name] = v;
        }
        const auto base = rank_groups({{"A"}, {"B", "C"}, {"D"}}, ld);
        auto shifted = ld;
        for (auto& [name, v] : shifted)
            for (auto& c : v) c = 2.5 * c + 7.0;
        const auto moved = rank_groups({{"A"}, {"B", "C"}, {"D"}}, shifted);
        CHECK(base.ranking == moved.ranking);
    }
    SUBCASE("missing algorithm") {
        std::map<std::string, std::vector<double>> ld{{"A", {0.5}}};
        CHECK_THROWS_AS(rank_groups({{"A"}, {"B"}}, ld), LookupError);
    }
}
