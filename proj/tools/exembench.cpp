#include "exempt/dataset.hpp"
#include "exempt/errors.hpp"
#include "exempt/estate.hpp"
#include "exempt/evaluator.hpp"
#include "exempt/generator.hpp"
#include "exempt/normalize.hpp"
#include "exempt/presets.hpp"
#include "exempt/runner.hpp"
#include "exempt/solver.hpp"
#include "exempt/statute.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace exempt;
using nlohmann::ordered_json;

int cmd_validate_corpus(const std::string& statutes, const std::string& assets,
                        const std::string& templates) {
    Corpus corpus = load_statute_corpus(statutes);
    size_t statute_count = 0;
    for (const auto& p : corpus.profiles) statute_count += p.statutes.size();
    std::cout << "corpus: " << corpus.profiles.size() << " jurisdictions, " << statute_count
              << " statutes (hash " << corpus.content_hash.substr(0, 12) << ")\n";
    for (const auto& p : corpus.profiles) {
        std::cout << "  " << p.id.label() << ": " << p.statutes.size() << " statutes"
                  << (p.opt_out ? ", opt-out" : "") << "\n";
    }
    std::cout << "cross-references resolved; fallback chains single-hop; exclusions symmetric\n";
    if (!assets.empty()) {
        AssetLibrary lib = load_asset_library(assets);
        validate_asset_library(lib, corpus);
        std::cout << "asset library: " << lib.relevant().size() << " assets, "
                  << lib.distractors().size() << " distractors; annotations resolve\n";
    }
    if (!templates.empty()) {
        load_template_library(templates);
        std::cout << "template library: all groups nonempty, slots well formed\n";
    }
    return 0;
}

int cmd_generate(const std::string& config_path, const std::string& preset,
                 const std::string& data_dir, const std::string& out_dir, int size,
                 std::uint64_t seed, bool have_seed) {
    std::vector<GenerationConfig> configs;
    if (!preset.empty()) {
        configs = preset_configs(preset, data_dir, out_dir.empty() ? "out" : out_dir,
                                 size > 0 ? size : 105, have_seed ? seed : 20240101);
    } else if (!config_path.empty()) {
        GenerationConfig c = load_generation_config(config_path);
        if (!out_dir.empty()) c.output_directory = out_dir;
        if (size > 0) c.dataset_size = size;
        if (have_seed) c.seed = seed;
        configs.push_back(std::move(c));
    } else {
        throw UsageError("generate needs --config or --preset");
    }

    size_t datasets = 0, instances = 0;
    for (const auto& config : configs) {
        GeneratorContext ctx = GeneratorContext::load(config);
        for (const auto& ds : generate_dataset(config, ctx)) {
            std::cout << ds.root.string() << "  (" << ds.size << " instances)\n";
            ++datasets;
            instances += ds.size;
        }
    }
    std::cout << datasets << " datasets, " << instances << " instances\n";
    return 0;
}

int cmd_solve(const std::string& case_path, const std::string& statutes,
              const std::string& jurisdiction, bool stats) {
    Corpus corpus = load_statute_corpus(statutes);
    Case c = load_case_file(case_path);
    validate_case(c, corpus);

    SearchStats search_stats;
    JurisdictionId regime;
    ExemptionSchedule schedule;
    if (!jurisdiction.empty()) {
        const JurisdictionProfile* profile = corpus.find_label(jurisdiction);
        if (!profile) throw DataError("unknown jurisdiction: " + jurisdiction);
        regime = profile->id;
        schedule = solve_optimal(c, regime, corpus, &search_stats);
    } else {
        std::tie(regime, schedule) = solve_best_jurisdiction(c, corpus, &search_stats);
    }

    std::cout << "case: " << (c.case_id.empty() ? case_path : c.case_id) << "\n";
    std::cout << "estate value: " << format_money(total_estate_value(c)) << "\n";
    std::cout << "jurisdiction: " << regime.label() << "\n";
    for (const auto& claim : schedule.claims) {
        const AnnotatedAsset* asset = nullptr;
        for (const auto& a : c.assets) {
            if (a.asset_id == claim.asset_id) asset = &a;
        }
        std::cout << "  " << (asset ? asset->description : claim.asset_id) << ": "
                  << format_money(claim.amount) << " under " << claim.citation << "\n";
    }
    std::cout << "non-exempt value: " << format_money(schedule.nonexempt_value) << "\n";
    auto check = is_valid_schedule(c, schedule, corpus);
    std::cout << "schedule valid: " << (check.valid ? "yes" : "NO") << "\n";
    if (stats) {
        std::cout << "nodes expanded: " << search_stats.nodes_expanded
                  << ", pruned: " << search_stats.nodes_pruned << "\n";
    }
    return 0;
}

int cmd_run(const std::string& dataset_dir, RunConfig config, const std::string& out,
            const std::string& key_env) {
    if (!key_env.empty()) {
        if (const char* key = std::getenv(key_env.c_str())) config.api_key = key;
    }
    TaskDataset dataset = TaskDataset::load(dataset_dir);
    RunSummary summary = run_dataset(dataset, config, out);
    std::cout << "requested " << summary.requested << ", skipped " << summary.skipped
              << ", answered " << summary.answered << ", failed " << summary.failed << "\n";
    return summary.failed == 0 ? 0 : 3;
}

int cmd_evaluate(const std::string& dataset_dir, const std::string& responses_path,
                 const std::string& out, bool include_dev, bool with_samples) {
    TaskDataset dataset = TaskDataset::load(dataset_dir);
    auto responses = load_responses(responses_path);
    MetricReport report = evaluate_run(dataset, responses, include_dev);
    ordered_json j = report_to_json(report, with_samples);
    if (!out.empty()) {
        std::ofstream file(out, std::ios::binary);
        if (!file) throw OutputNotWritable("cannot write report: " + out);
        file << j.dump(2) << "\n";
    }
    std::cout << render_report_table({report_to_json(report, false)});
    return 0;
}

int cmd_report(const std::vector<std::string>& paths) {
    std::vector<ordered_json> reports;
    for (const auto& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw DataError("cannot read report: " + path);
        ordered_json j;
        in >> j;
        reports.push_back(std::move(j));
    }
    std::cout << render_report_table(reports);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bankruptcy exemption benchmark toolkit: statute corpora, case generation, "
                 "optimal-schedule solving, model runs, and evaluation"};
    app.require_subcommand(1);

    std::string statutes = "data/statutes";
    std::string assets;
    std::string templates;
    auto* validate = app.add_subcommand("validate-corpus", "Load and validate a statute corpus");
    validate->add_option("--statutes", statutes, "Statute corpus file or directory");
    validate->add_option("--assets", assets, "Asset library JSON to validate against the corpus");
    validate->add_option("--templates", templates, "Template library JSON to validate");

    std::string config_path, preset, data_dir = "data", out_dir;
    int size = 0;
    std::uint64_t seed = 0;
    auto* generate = app.add_subcommand("generate", "Generate task datasets with gold solutions");
    generate->add_option("--config", config_path, "Generation config file");
    generate->add_option("--preset", preset, "Named benchmark suite preset");
    generate->add_option("--data-dir", data_dir, "Data directory for presets");
    generate->add_option("--out", out_dir, "Output directory override");
    generate->add_option("--size", size, "dataset_size override");
    auto* seed_opt = generate->add_option("--seed", seed, "Seed override");

    std::string case_path, jurisdiction;
    bool stats = false;
    auto* solve = app.add_subcommand("solve", "Solve one case file for its optimal schedule");
    solve->add_option("--case", case_path, "Case JSON file")->required();
    solve->add_option("--statutes", statutes, "Statute corpus file or directory");
    solve->add_option("--jurisdiction", jurisdiction, "Solve one regime instead of the best");
    solve->add_flag("--stats", stats, "Print search-tree statistics");

    std::string dataset_dir, responses_out = "responses.jsonl", key_env = "EXEMBENCH_API_KEY";
    RunConfig run_config;
    auto* run = app.add_subcommand("run", "Submit prompts to a chat-completion endpoint");
    run->add_option("--dataset", dataset_dir, "Dataset directory")->required();
    run->add_option("--endpoint", run_config.endpoint, "Endpoint base URL")->required();
    run->add_option("--model", run_config.model, "Model name")->required();
    run->add_option("--out", responses_out, "Responses output file (JSONL)");
    run->add_option("--concurrency", run_config.concurrency, "Concurrent requests");
    run->add_option("--temperature", run_config.temperature, "Sampling temperature");
    run->add_option("--max-tokens", run_config.max_output_tokens, "Max output tokens");
    run->add_option("--retries", run_config.max_attempts, "Attempts per instance");
    run->add_flag("--include-dev", run_config.include_dev, "Also run dev-split instances");
    run->add_option("--api-key-env", key_env, "Environment variable holding the API key");

    std::string eval_dataset, eval_responses, eval_out;
    bool include_dev = false, with_samples = false;
    auto* evaluate = app.add_subcommand("evaluate", "Score a responses file against a dataset");
    evaluate->add_option("--dataset", eval_dataset, "Dataset directory")->required();
    evaluate->add_option("--responses", eval_responses, "Responses JSONL file")->required();
    evaluate->add_option("--out", eval_out, "Write the metric report JSON here");
    evaluate->add_flag("--include-dev", include_dev, "Score dev-split instances too");
    evaluate->add_flag("--samples", with_samples, "Embed per-sample scores in the report");

    std::vector<std::string> report_paths;
    auto* report = app.add_subcommand("report", "Render a table from metric report JSON files");
    report->add_option("reports", report_paths, "Report JSON files")->required();

    try {
        app.parse(argc, argv);
        if (validate->parsed()) return cmd_validate_corpus(statutes, assets, templates);
        if (generate->parsed()) {
            return cmd_generate(config_path, preset, data_dir, out_dir, size, seed,
                                seed_opt->count() > 0);
        }
        if (solve->parsed()) return cmd_solve(case_path, statutes, jurisdiction, stats);
        if (run->parsed()) return cmd_run(dataset_dir, run_config, responses_out, key_env);
        if (evaluate->parsed()) {
            return cmd_evaluate(eval_dataset, eval_responses, eval_out, include_dev, with_samples);
        }
        if (report->parsed()) return cmd_report(report_paths);
        return 1;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
