#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "emostat/csv.hpp"
#include "emostat/error.hpp"
#include "emostat/indicators.hpp"
#include "emostat/parallel.hpp"
#include "emostat/report.hpp"

namespace {

using nlohmann::json;

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw emostat::Error("cannot open " + path.string());
    json j;
    in >> j;
    return j;
}

std::vector<emostat::IndicatorSpec> specs_from_flags(const std::vector<std::string>& raw) {
    std::vector<emostat::IndicatorSpec> specs;
    for (const auto& entry : raw) {
        std::size_t start = 0;
        while (start <= entry.size()) {
            const std::size_t end = entry.find(',', start);
            const std::string item =
                entry.substr(start, end == std::string::npos ? std::string::npos : end - start);
            if (!item.empty()) specs.push_back(emostat::parse_indicator_spec(item));
            if (end == std::string::npos) break;
            start = end + 1;
        }
    }
    return specs;
}

std::vector<emostat::ReferenceData> load_references(const std::filesystem::path& path) {
    const json j = load_json(path);
    if (!j.contains("references")) throw emostat::Error(path.string() + ": missing 'references' array");
    std::vector<emostat::ReferenceData> refs;
    const auto base = path.parent_path();
    for (const auto& entry : j.at("references")) {
        emostat::ReferenceData ref;
        ref.problem = entry.at("problem").get<std::string>();
        ref.k = entry.at("k").get<int>();
        ref.hv_reference = entry.at("hv_reference").get<emostat::Point>();
        if (static_cast<int>(ref.hv_reference.size()) != ref.k)
            throw emostat::Error(path.string() + ": hv_reference for " + ref.problem + " must have k=" +
                                 std::to_string(ref.k) + " components");
        const std::filesystem::path front = entry.at("front_csv").get<std::string>();
        ref.reference_front =
            emostat::parse_front_csv(front.is_absolute() ? front : base / front, ref.k);
        refs.push_back(std::move(ref));
    }
    return refs;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"emostat: statistical comparison of multi-objective optimizer benchmark data"};
    app.require_subcommand(1);

    // indicators: approximation sets + reference data -> indicator CSV
    auto* cmd_ind = app.add_subcommand("indicators", "Compute quality indicators from approximation sets");
    std::string ind_input, ind_refs, ind_out;
    std::vector<std::string> ind_specs;
    std::uint64_t ind_seed = 1, ind_mc_samples = 100000;
    int ind_max_k = 8;
    cmd_ind->add_option("--input", ind_input, "Approximation-set CSV")->required();
    cmd_ind->add_option("--references", ind_refs, "Reference data JSON")->required();
    cmd_ind->add_option("--out", ind_out, "Output indicator CSV")->required();
    cmd_ind->add_option("--indicators", ind_specs, "Indicator list, e.g. HV,delta2");
    cmd_ind->add_option("--seed", ind_seed, "Master seed for Monte Carlo hypervolume");
    cmd_ind->add_option("--mc-samples", ind_mc_samples, "Monte Carlo sample count");
    cmd_ind->add_option("--hv-exact-max-k", ind_max_k, "Largest k computed exactly");

    // analyze: indicator CSV -> report + figures
    auto* cmd_analyze = app.add_subcommand("analyze", "Run the full statistical comparison");
    std::string an_input, an_config, an_out = "out";
    std::vector<std::string> an_specs;
    double an_alpha = 0.05;
    int an_permutations = 999, an_max_k = 8;
    std::uint64_t an_seed = 1, an_mc_samples = 100000;
    unsigned an_threads = 1;
    cmd_analyze->add_option("--input", an_input, "Indicator CSV");
    cmd_analyze->add_option("--config", an_config, "Config JSON (flags override)");
    cmd_analyze->add_option("--out-dir", an_out, "Output directory");
    cmd_analyze->add_option("--alpha", an_alpha, "Significance level");
    cmd_analyze->add_option("--permutations", an_permutations, "Permutation count B");
    cmd_analyze->add_option("--seed", an_seed, "Master seed");
    cmd_analyze->add_option("--indicators", an_specs, "Indicator list, e.g. HV:maximize,delta2:minimize");
    cmd_analyze->add_option("--hv-exact-max-k", an_max_k, "Echoed provenance setting");
    cmd_analyze->add_option("--mc-samples", an_mc_samples, "Echoed provenance setting");
    cmd_analyze->add_option("--threads", an_threads, "Worker threads for permutation loops");

    // render: report JSON -> figures
    auto* cmd_render = app.add_subcommand("render", "Regenerate figures from a report");
    std::string re_report, re_out = "out";
    cmd_render->add_option("--report", re_report, "report.json path")->required();
    cmd_render->add_option("--out-dir", re_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_ind->parsed()) {
            auto sets = emostat::parse_approximation_csv(ind_input);
            auto refs = load_references(ind_refs);
            auto specs = ind_specs.empty() ? emostat::default_indicator_specs() : specs_from_flags(ind_specs);
            for (const auto& spec : specs)
                if (spec.kind.empty())
                    throw emostat::ParameterError("indicator '" + spec.name +
                                                  "' is not computable (known: HV, delta*, gd*, igd*)");
            emostat::ComputeOptions opts;
            opts.hv_exact_max_k = ind_max_k;
            opts.mc_samples = ind_mc_samples;
            opts.seed = ind_seed;
            const auto dataset = emostat::compute_indicators(sets, refs, specs, opts);
            emostat::write_indicator_csv(dataset, ind_out);
            std::cout << "wrote " << ind_out << " (" << dataset.records.size() << " records)\n";
        } else if (cmd_analyze->parsed()) {
            emostat::AnalyzeConfig config;
            if (!an_config.empty()) config = emostat::config_from_json(load_json(an_config));
            if (cmd_analyze->count("--input")) config.input_csv = an_input;
            if (cmd_analyze->count("--alpha")) config.alpha = an_alpha;
            if (cmd_analyze->count("--permutations")) config.permutations = an_permutations;
            if (cmd_analyze->count("--seed")) config.seed = an_seed;
            if (cmd_analyze->count("--indicators")) config.indicators = specs_from_flags(an_specs);
            if (cmd_analyze->count("--hv-exact-max-k")) config.hv_exact_max_k = an_max_k;
            if (cmd_analyze->count("--mc-samples")) config.mc_samples = an_mc_samples;
            if (config.input_csv.empty())
                throw emostat::ParameterError("no input CSV given (--input or config file)");
            emostat::set_max_threads(an_threads);
            const json report = emostat::run_pipeline(config);
            emostat::write_report(report, an_out);
            std::cout << "wrote " << an_out << "/report.json (" << report.at("scenarios").size()
                      << " scenarios, " << report.at("errors").size() << " errors)\n";
        } else if (cmd_render->parsed()) {
            const json report = load_json(re_report);
            emostat::render_outputs(report, re_out);
            std::cout << "rendered figures into " << re_out << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
