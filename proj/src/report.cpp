#include "emostat/report.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "emostat/csv.hpp"
#include "emostat/dsc.hpp"
#include "emostat/error.hpp"
#include "emostat/lda.hpp"
#include "emostat/normalize.hpp"
#include "emostat/rng.hpp"
#include "emostat/svg.hpp"

namespace emostat {
namespace {

using nlohmann::json;

std::string orientation_name(Orientation o) {
    return o == Orientation::maximize ? "maximize" : "minimize";
}

Orientation orientation_from(const std::string& name) {
    if (name == "maximize" || name == "max") return Orientation::maximize;
    if (name == "minimize" || name == "min") return Orientation::minimize;
    throw ParameterError("unknown orientation '" + name + "' (use maximize or minimize)");
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) out += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

struct ScenarioKey {
    int k;
    std::string problem;
    bool operator<(const ScenarioKey& other) const {
        if (k != other.k) return k < other.k;
        return problem < other.problem;
    }
};

} // namespace

std::vector<IndicatorSpec> default_indicator_specs() {
    IndicatorSpec hv{"HV", Orientation::maximize, "hv", 2.0};
    IndicatorSpec d2{"delta2", Orientation::minimize, "delta", 2.0};
    return {hv, d2};
}

IndicatorSpec parse_indicator_spec(const std::string& text) {
    IndicatorSpec spec;
    std::string name = text;
    std::string orientation;
    if (auto pos = text.find(':'); pos != std::string::npos) {
        name = text.substr(0, pos);
        orientation = text.substr(pos + 1);
    }
    if (name.empty()) throw ParameterError("empty indicator name");
    spec.name = name;

    const std::string l = lower(name);
    auto numeric_suffix = [&](const std::string& prefix, double fallback) {
        const std::string tail = l.substr(prefix.size());
        if (tail.empty()) return fallback;
        try {
            return std::stod(tail);
        } catch (...) {
            return fallback;
        }
    };
    if (l == "hv" || l == "hypervolume") {
        spec.kind = "hv";
        spec.orientation = Orientation::maximize;
    } else if (l.rfind("delta", 0) == 0) {
        spec.kind = "delta";
        spec.p_exponent = numeric_suffix("delta", 2.0);
        spec.orientation = Orientation::minimize;
    } else if (l.rfind("igd", 0) == 0) {
        spec.kind = "igd";
        spec.p_exponent = numeric_suffix("igd", 2.0);
        spec.orientation = Orientation::minimize;
    } else if (l.rfind("gd", 0) == 0) {
        spec.kind = "gd";
        spec.p_exponent = numeric_suffix("gd", 2.0);
        spec.orientation = Orientation::minimize;
    }
    if (!orientation.empty()) spec.orientation = orientation_from(orientation);
    return spec;
}

json config_to_json(const AnalyzeConfig& config) {
    json indicators = json::array();
    for (const auto& spec : config.indicators) {
        indicators.push_back({{"name", spec.name},
                              {"orientation", orientation_name(spec.orientation)},
                              {"kind", spec.kind},
                              {"p_exponent", spec.p_exponent}});
    }
    return json{{"input", config.input_csv},
                {"alpha", config.alpha},
                {"permutations", config.permutations},
                {"seed", config.seed},
                {"hv_exact_max_k", config.hv_exact_max_k},
                {"mc_samples", config.mc_samples},
                {"indicators", indicators}};
}

AnalyzeConfig config_from_json(const json& j) {
    AnalyzeConfig config;
    config.input_csv = j.value("input", std::string{});
    config.alpha = j.value("alpha", 0.05);
    config.permutations = j.value("permutations", 999);
    config.seed = j.value("seed", std::uint64_t{1});
    config.hv_exact_max_k = j.value("hv_exact_max_k", 8);
    config.mc_samples = j.value("mc_samples", std::uint64_t{100000});
    if (j.contains("indicators")) {
        for (const auto& item : j.at("indicators")) {
            IndicatorSpec spec;
            if (item.is_string()) {
                spec = parse_indicator_spec(item.get<std::string>());
            } else {
                spec = parse_indicator_spec(item.at("name").get<std::string>());
                if (item.contains("orientation"))
                    spec.orientation = orientation_from(item.at("orientation").get<std::string>());
                if (item.contains("kind")) spec.kind = item.at("kind").get<std::string>();
                if (item.contains("p_exponent")) spec.p_exponent = item.at("p_exponent").get<double>();
            }
            config.indicators.push_back(std::move(spec));
        }
    }
    if (config.indicators.empty()) config.indicators = default_indicator_specs();
    return config;
}

namespace {

json analyze_scenario(const IndicatorDataset& dataset, const Scenario& scenario,
                      const AnalyzeConfig& config, std::map<std::string, RankTable>& dsc_tables) {
    const NormalizedScenario normalized = normalize_scenario(dataset, scenario);
    const std::uint64_t scenario_seed =
        sub_seed(config.seed, fnv1a64(scenario.problem), static_cast<std::uint64_t>(scenario.k));

    const PValueMatrix pvalues = pvalue_matrix(normalized.clouds, energy_test_fn(),
                                               config.permutations, sub_seed(scenario_seed, 1));
    const ThresholdMatrix thresholds = threshold_matrix(pvalues, config.alpha);
    const GroupPartition partition = threshold_and_partition(pvalues, config.alpha);

    std::map<std::string, const PerformanceCloud*> cloud_by_name;
    for (const auto& cloud : normalized.clouds) cloud_by_name[cloud.algorithm] = &cloud;
    std::vector<std::vector<Point>> group_points;
    for (const auto& group : partition.groups) {
        std::vector<Point> pts;
        for (const auto& name : group) {
            const auto& cloud = *cloud_by_name.at(name);
            pts.insert(pts.end(), cloud.points.begin(), cloud.points.end());
        }
        group_points.push_back(std::move(pts));
    }

    LdaResult lda = lda_weights(group_points);
    lda.ld_values = ld_values(normalized.clouds, lda.weights);
    const GroupRanking group_ranking = rank_groups(partition.groups, lda.ld_values);
    lda.group_means = group_ranking.group_means;
    lda.ranking = group_ranking.ranking;

    json dsc_json = json::object();
    std::vector<RankTable> indicator_tables;
    for (std::size_t j = 0; j < scenario.indicators.size(); ++j) {
        std::vector<std::vector<double>> samples;
        for (const auto& cloud : normalized.clouds) {
            std::vector<double> column;
            column.reserve(cloud.points.size());
            for (const auto& pt : cloud.points) column.push_back(pt[j]);
            samples.push_back(std::move(column));
        }
        const RankTable table =
            dsc_rank(scenario.problem, scenario.k, scenario.algorithms, samples, config.alpha,
                     config.permutations, sub_seed(scenario_seed, 100 + j));
        dsc_json[scenario.indicators[j].name] = table.ranks;
        indicator_tables.push_back(table);
    }
    const RankTable average = ensemble_average(indicator_tables);
    const RankTable hierarchical = ensemble_hierarchical(indicator_tables);

    dsc_tables.clear();
    for (std::size_t j = 0; j < scenario.indicators.size(); ++j)
        dsc_tables[scenario.indicators[j].name] = indicator_tables[j];
    dsc_tables["average"] = average;
    dsc_tables["hierarchical"] = hierarchical;

    json clouds_json = json::object();
    for (const auto& cloud : normalized.clouds) clouds_json[cloud.algorithm] = cloud.points;

    json violations = json::array();
    for (const auto& v : partition.violations) violations.push_back({v[0], v[1], v[2]});

    return json{{"problem", scenario.problem},
                {"k", scenario.k},
                {"algorithms", scenario.algorithms},
                {"clouds", clouds_json},
                {"pvalues", pvalues.entries},
                {"threshold", thresholds.threshold},
                {"partition",
                 {{"groups", partition.groups},
                  {"transitive", partition.transitive},
                  {"violations", violations}}},
                {"lda",
                 {{"weights", lda.weights},
                  {"used_fallback", lda.used_fallback},
                  {"separation", lda.separation},
                  {"ld_values", lda.ld_values},
                  {"group_means", lda.group_means},
                  {"ranking", lda.ranking}}},
                {"dsc_ranks", dsc_json},
                {"ensembles", {{"average", average.ranks}, {"hierarchical", hierarchical.ranks}}},
                {"warnings", normalized.warnings}};
}

} // namespace

json run_pipeline(const AnalyzeConfig& config) {
    AnalyzeConfig effective = config;
    if (effective.indicators.empty()) effective.indicators = default_indicator_specs();
    const IndicatorDataset dataset = parse_indicator_csv(effective.input_csv);

    // Scenario discovery: (problem, k) pairs with algorithms in order of
    // first appearance.
    std::map<ScenarioKey, std::vector<std::string>> scenario_algorithms;
    for (const auto& rec : dataset.records) {
        auto& algorithms = scenario_algorithms[{rec.k, rec.problem}];
        if (std::find(algorithms.begin(), algorithms.end(), rec.algorithm) == algorithms.end())
            algorithms.push_back(rec.algorithm);
    }

    json scenarios = json::array();
    json errors = json::array();
    // (k, scheme) -> rank tables across problems
    std::map<int, std::map<std::string, std::vector<RankTable>>> tables_by_k;

    for (const auto& [key, algorithms] : scenario_algorithms) {
        Scenario scenario;
        scenario.problem = key.problem;
        scenario.k = key.k;
        scenario.indicators = effective.indicators;
        scenario.algorithms = algorithms;
        try {
            std::map<std::string, RankTable> dsc_tables;
            scenarios.push_back(analyze_scenario(dataset, scenario, effective, dsc_tables));
            for (auto& [scheme, table] : dsc_tables) tables_by_k[key.k][scheme].push_back(table);
        } catch (const Error& e) {
            errors.push_back({{"problem", key.problem}, {"k", key.k}, {"message", e.what()}});
        }
    }

    json mean_rank_json = json::object();
    for (const auto& [k, schemes] : tables_by_k) {
        json per_scheme = json::object();
        for (const auto& [scheme, tables] : schemes) {
            try {
                per_scheme[scheme] = mean_ranks(tables);
            } catch (const Error& e) {
                errors.push_back({{"problem", "*"}, {"k", k}, {"message", e.what()}});
            }
        }
        mean_rank_json[std::to_string(k)] = per_scheme;
    }

    return json{{"config", config_to_json(effective)},
                {"scenarios", scenarios},
                {"errors", errors},
                {"mean_ranks", mean_rank_json}};
}

void render_outputs(const json& report, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir / "figures");

    std::vector<GroupingRow> rows;
    for (const auto& scenario : report.at("scenarios")) {
        GroupingRow row;
        row.problem = scenario.at("problem").get<std::string>();
        row.k = scenario.at("k").get<int>();
        row.groups = scenario.at("partition").at("groups").get<std::vector<std::vector<std::string>>>();
        rows.push_back(std::move(row));
    }
    write_text(out_dir / "groupings.md", render_grouping_table(rows));

    const auto& config = report.at("config");
    std::vector<std::pair<std::string, Orientation>> indicators;
    for (const auto& spec : config.at("indicators"))
        indicators.emplace_back(spec.at("name").get<std::string>(),
                                orientation_from(spec.at("orientation").get<std::string>()));

    for (const auto& scenario : report.at("scenarios")) {
        const std::string problem = scenario.at("problem").get<std::string>();
        const int k = scenario.at("k").get<int>();
        const std::string stem = sanitize(problem) + "_" + std::to_string(k) + "D";
        const std::string title = problem + " " + std::to_string(k) + "D";
        const auto algorithms = scenario.at("algorithms").get<std::vector<std::string>>();

        std::map<std::string, std::vector<double>> ld;
        for (const auto& [name, values] : scenario.at("lda").at("ld_values").items())
            ld[name] = values.get<std::vector<double>>();
        write_text(out_dir / "figures" / (stem + "_ld.svg"),
                   render_ld_histogram(title + " LD values", algorithms, ld));

        if (indicators.size() == 2) {
            std::vector<PerformanceCloud> clouds;
            for (const auto& name : algorithms) {
                PerformanceCloud cloud;
                cloud.algorithm = name;
                cloud.points = scenario.at("clouds").at(name).get<std::vector<Point>>();
                clouds.push_back(std::move(cloud));
            }
            auto axis_label = [&](std::size_t j) {
                return indicators[j].second == Orientation::minimize ? "1 - " + indicators[j].first
                                                                     : indicators[j].first;
            };
            write_text(out_dir / "figures" / (stem + "_scatter.svg"),
                       render_scatter(title, axis_label(0), axis_label(1), clouds,
                                      scenario.at("lda").at("weights").get<std::vector<double>>()));
        }
    }

    // Mean-rank heatmaps, one per ranking scheme.
    std::set<std::string> schemes;
    for (const auto& [k_str, per_scheme] : report.at("mean_ranks").items()) {
        (void)k_str;
        for (const auto& [scheme, ranks] : per_scheme.items()) {
            (void)ranks;
            schemes.insert(scheme);
        }
    }
    for (const auto& scheme : schemes) {
        std::vector<int> k_values;
        std::vector<std::string> algorithms;
        std::vector<std::vector<double>> matrix;
        bool consistent = true;
        for (const auto& [k_str, per_scheme] : report.at("mean_ranks").items()) {
            if (!per_scheme.contains(scheme)) continue;
            std::vector<std::string> names;
            std::vector<double> ranks;
            for (const auto& [name, value] : per_scheme.at(scheme).items()) {
                names.push_back(name);
                ranks.push_back(value.get<double>());
            }
            if (algorithms.empty()) algorithms = names;
            if (names != algorithms) {
                consistent = false;
                break;
            }
            k_values.push_back(std::stoi(k_str));
            matrix.push_back(std::move(ranks));
        }
        if (!consistent || k_values.empty()) continue;
        // json object keys sort lexicographically; restore numeric k order
        std::vector<std::size_t> order(k_values.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return k_values[a] < k_values[b]; });
        std::vector<int> sorted_k;
        std::vector<std::vector<double>> sorted_matrix;
        for (std::size_t idx : order) {
            sorted_k.push_back(k_values[idx]);
            sorted_matrix.push_back(matrix[idx]);
        }
        write_text(out_dir / "figures" / ("meanrank_" + sanitize(scheme) + ".svg"),
                   render_heatmap("Mean DSC rank: " + scheme, sorted_k, algorithms, sorted_matrix));
    }
}

void write_report(const json& report, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    write_text(out_dir / "report.json", report.dump(2) + "\n");
    render_outputs(report, out_dir);
}

} // namespace emostat
