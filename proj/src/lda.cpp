#include "emostat/lda.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "emostat/error.hpp"
#include "emostat/rng.hpp"

namespace emostat {
namespace {

constexpr double kImprovementTolerance = 1e-9; // below this, equal weights are kept
constexpr std::uint64_t kRestartSeed = 0x9d8f3a2c51e7b604ULL;

std::size_t common_dimension(const std::vector<std::vector<Point>>& groups) {
    std::size_t p = 0;
    for (const auto& group : groups) {
        if (group.empty()) throw ParameterError("lda: empty group");
        for (const auto& pt : group) {
            if (p == 0) p = pt.size();
            if (pt.size() != p || p == 0)
                throw ParameterError("lda: points must share a positive dimension");
        }
    }
    return p;
}

Matrix zero_matrix(std::size_t p) { return Matrix(p, std::vector<double>(p, 0.0)); }

Point mean_point(const std::vector<Point>& pts, std::size_t p) {
    Point mu(p, 0.0);
    for (const auto& pt : pts)
        for (std::size_t j = 0; j < p; ++j) mu[j] += pt[j];
    for (std::size_t j = 0; j < p; ++j) mu[j] /= static_cast<double>(pts.size());
    return mu;
}

void add_outer(Matrix& m, const Point& v) {
    const std::size_t p = v.size();
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) m[i][j] += v[i] * v[j];
}

double quadratic_form(const Matrix& m, const std::vector<double>& w) {
    const std::size_t p = w.size();
    double s = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < p; ++j) row += m[i][j] * w[j];
        s += w[i] * row;
    }
    return s;
}

double trace(const Matrix& m) {
    double t = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

double ridge_epsilon(const Matrix& cov) {
    return 1e-9 * trace(cov) / static_cast<double>(cov.size());
}

std::vector<double> equal_weights(std::size_t p) {
    return std::vector<double>(p, 1.0 / std::sqrt(static_cast<double>(p)));
}

double norm(const std::vector<double>& w) {
    double s = 0.0;
    for (double v : w) s += v * v;
    return std::sqrt(s);
}

// Projection onto the feasible set: clip negatives, renormalize. Returns
// false when everything clipped to zero.
bool project(std::vector<double>& w) {
    for (double& v : w) v = std::max(0.0, v);
    const double len = norm(w);
    if (len == 0.0) return false;
    for (double& v : w) v /= len;
    return true;
}

void validate_square(const Matrix& m, std::size_t p, const char* what) {
    if (m.size() != p) throw DimensionError(std::string(what) + ": matrix size mismatch");
    for (const auto& row : m)
        if (row.size() != p) throw DimensionError(std::string(what) + ": matrix is not square");
}

struct Objective {
    const Matrix& sigma;
    const Matrix& cov;
    double epsilon;

    double operator()(const std::vector<double>& w) const {
        const double num = quadratic_form(sigma, w);
        double den = quadratic_form(cov, w);
        double ww = 0.0;
        for (double v : w) ww += v * v;
        den += epsilon * ww;
        if (den <= 0.0) return 0.0;
        return num / den;
    }
};

std::pair<std::vector<double>, double> maximize_2d(const Objective& s) {
    const double deg = std::acos(-1.0) / 180.0;
    auto eval_angle = [&](double theta_deg) {
        std::vector<double> w{std::cos(theta_deg * deg), std::sin(theta_deg * deg)};
        w[0] = std::max(0.0, w[0]);
        w[1] = std::max(0.0, w[1]);
        return s(w);
    };

    // 0.01-degree scan of the quarter circle, then golden-section
    // refinement around the best grid point.
    double best_theta = 0.0;
    double best_value = eval_angle(0.0);
    for (int i = 1; i <= 9000; ++i) {
        const double theta = 0.01 * static_cast<double>(i);
        const double value = eval_angle(theta);
        if (value > best_value) {
            best_value = value;
            best_theta = theta;
        }
    }
    double lo = std::max(0.0, best_theta - 0.01);
    double hi = std::min(90.0, best_theta + 0.01);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = eval_angle(x1);
    double f2 = eval_angle(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = eval_angle(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = eval_angle(x1);
        }
    }
    const double theta = (f1 > f2) ? x1 : x2;
    if (std::max(f1, f2) > best_value) {
        best_value = std::max(f1, f2);
        best_theta = theta;
    }
    std::vector<double> w{std::cos(best_theta * deg), std::sin(best_theta * deg)};
    project(w);
    return {w, best_value};
}

std::pair<std::vector<double>, double> ascend_from(const Objective& s, std::vector<double> w) {
    const std::size_t p = w.size();
    double value = s(w);
    double step = 0.1;
    for (int it = 0; it < 500; ++it) {
        // gradient of num/den: 2 (Sigma w * den - num * (C + eps I) w) / den^2
        const double num = quadratic_form(s.sigma, w);
        double den = quadratic_form(s.cov, w);
        double ww = 0.0;
        for (double v : w) ww += v * v;
        den += s.epsilon * ww;
        if (den <= 0.0) break;
        std::vector<double> grad(p, 0.0);
        for (std::size_t i = 0; i < p; ++i) {
            double sw = 0.0, cw = 0.0;
            for (std::size_t j = 0; j < p; ++j) {
                sw += s.sigma[i][j] * w[j];
                cw += s.cov[i][j] * w[j];
            }
            cw += s.epsilon * w[i];
            grad[i] = 2.0 * (sw * den - num * cw) / (den * den);
        }
        double glen = norm(grad);
        if (glen < 1e-15) break;
        bool improved = false;
        while (step > 1e-12) {
            std::vector<double> cand(p);
            for (std::size_t i = 0; i < p; ++i) cand[i] = w[i] + step * grad[i] / glen;
            if (project(cand)) {
                const double cv = s(cand);
                if (cv > value) {
                    w = std::move(cand);
                    value = cv;
                    step *= 2.0;
                    improved = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    return {w, value};
}

std::pair<std::vector<double>, double> maximize_general(const Objective& s, std::size_t p) {
    auto best = ascend_from(s, equal_weights(p));
    for (std::uint64_t restart = 0; restart < 20; ++restart) {
        std::mt19937_64 gen(sub_seed(kRestartSeed, restart));
        std::vector<double> w0(p);
        for (std::size_t i = 0; i < p; ++i) {
            // |N(0,1)| via Box-Muller keeps the draw scheme pinned
            const double u1 = 1.0 - uniform01(gen);
            const double u2 = uniform01(gen);
            w0[i] = std::fabs(std::sqrt(-2.0 * std::log(u1)) *
                              std::cos(2.0 * std::acos(-1.0) * u2));
        }
        if (!project(w0)) continue;
        auto candidate = ascend_from(s, std::move(w0));
        if (candidate.second > best.second) best = std::move(candidate);
    }
    return best;
}

} // namespace

Matrix between_scatter(const std::vector<std::vector<Point>>& groups) {
    if (groups.size() < 2)
        throw DegenerateDataError("between_scatter: fewer than 2 groups");
    const std::size_t p = common_dimension(groups);

    std::vector<Point> group_means;
    for (const auto& group : groups) group_means.push_back(mean_point(group, p));
    const Point overall = mean_point(group_means, p); // unweighted mean of group means

    Matrix sigma = zero_matrix(p);
    for (const auto& mu : group_means) {
        Point centered(p);
        for (std::size_t j = 0; j < p; ++j) centered[j] = mu[j] - overall[j];
        add_outer(sigma, centered);
    }
    for (auto& row : sigma)
        for (double& v : row) v /= static_cast<double>(groups.size());
    return sigma;
}

Matrix total_covariance(const std::vector<Point>& points) {
    if (points.size() < 2) throw ParameterError("total_covariance: need at least 2 points");
    const std::size_t p = points[0].size();
    for (const auto& pt : points)
        if (pt.size() != p) throw DimensionError("total_covariance: inconsistent dimensions");
    const Point mu = mean_point(points, p);
    Matrix cov = zero_matrix(p);
    for (const auto& pt : points) {
        Point centered(p);
        for (std::size_t j = 0; j < p; ++j) centered[j] = pt[j] - mu[j];
        add_outer(cov, centered);
    }
    for (auto& row : cov)
        for (double& v : row) v /= static_cast<double>(points.size() - 1);
    return cov;
}

double separation_measure(const Matrix& sigma, const Matrix& cov, const std::vector<double>& w) {
    const std::size_t p = w.size();
    if (p == 0) throw ParameterError("separation_measure: empty weight vector");
    validate_square(sigma, p, "separation_measure");
    validate_square(cov, p, "separation_measure");
    return Objective{sigma, cov, ridge_epsilon(cov)}(w);
}

std::pair<std::vector<double>, double> maximize_separation(const Matrix& sigma, const Matrix& cov) {
    const std::size_t p = sigma.size();
    if (p == 0) throw ParameterError("maximize_separation: empty matrices");
    validate_square(sigma, p, "maximize_separation");
    validate_square(cov, p, "maximize_separation");
    const Objective s{sigma, cov, ridge_epsilon(cov)};
    if (p == 1) return {std::vector<double>{1.0}, s(std::vector<double>{1.0})};
    if (p == 2) return maximize_2d(s);
    return maximize_general(s, p);
}

LdaResult lda_weights(const std::vector<std::vector<Point>>& groups) {
    if (groups.empty()) throw ParameterError("lda_weights: no groups");
    const std::size_t p = common_dimension(groups);

    LdaResult result;
    auto fall_back = [&](double separation) {
        result.weights = equal_weights(p);
        result.used_fallback = true;
        result.separation = separation;
    };

    if (groups.size() < 2) {
        fall_back(0.0);
        return result;
    }

    std::vector<Point> pooled;
    for (const auto& group : groups) pooled.insert(pooled.end(), group.begin(), group.end());
    if (pooled.size() < 2) {
        fall_back(0.0);
        return result;
    }

    const Matrix sigma = between_scatter(groups);
    const Matrix cov = total_covariance(pooled);

    bool sigma_zero = true;
    for (const auto& row : sigma)
        for (double v : row)
            if (v != 0.0) sigma_zero = false;
    const double equal_value = separation_measure(sigma, cov, equal_weights(p));
    if (sigma_zero) {
        fall_back(equal_value);
        return result;
    }

    auto [w, value] = maximize_separation(sigma, cov);
    if (value <= equal_value + kImprovementTolerance) {
        fall_back(equal_value);
        return result;
    }
    result.weights = std::move(w);
    result.used_fallback = false;
    result.separation = value;
    return result;
}

std::map<std::string, std::vector<double>> ld_values(const std::vector<PerformanceCloud>& clouds,
                                                     const std::vector<double>& weights) {
    std::map<std::string, std::vector<double>> out;
    for (const auto& cloud : clouds) {
        std::vector<double> values;
        values.reserve(cloud.points.size());
        for (const auto& pt : cloud.points) {
            if (pt.size() != weights.size())
                throw DimensionError("ld_values: weight dimension " + std::to_string(weights.size()) +
                                     " does not match point dimension " + std::to_string(pt.size()));
            double dot = 0.0;
            for (std::size_t j = 0; j < weights.size(); ++j) dot += weights[j] * pt[j];
            values.push_back(dot);
        }
        out[cloud.algorithm] = std::move(values);
    }
    return out;
}

GroupRanking rank_groups(const std::vector<std::vector<std::string>>& groups,
                         const std::map<std::string, std::vector<double>>& ld) {
    GroupRanking out;
    for (const auto& group : groups) {
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& name : group) {
            auto it = ld.find(name);
            if (it == ld.end()) throw LookupError("rank_groups: no LD values for algorithm '" + name + "'");
            for (double v : it->second) {
                sum += v;
                ++count;
            }
        }
        if (count == 0) throw ParameterError("rank_groups: group without runs");
        out.group_means.push_back(sum / static_cast<double>(count)); // pooled over runs, not mean-of-means
    }
    out.ranking.resize(groups.size());
    std::iota(out.ranking.begin(), out.ranking.end(), std::size_t{0});
    std::stable_sort(out.ranking.begin(), out.ranking.end(), [&](std::size_t a, std::size_t b) {
        return out.group_means[a] > out.group_means[b];
    });
    return out;
}

} // namespace emostat
