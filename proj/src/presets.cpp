#include "exempt/presets.hpp"

#include "exempt/errors.hpp"

namespace exempt {

namespace {

const std::vector<std::string> kAllStates = {"Arizona", "Illinois", "Oregon", "Pennsylvania",
                                             "Wisconsin"};

GenerationConfig base_config(const std::filesystem::path& data_dir,
                             const std::filesystem::path& out_dir, int dataset_size,
                             std::uint64_t seed) {
    GenerationConfig c;
    c.dataset_size = dataset_size;
    c.seed = seed;
    c.data_directory = data_dir;
    c.asset_directory = data_dir / "assets";
    c.statute_directory = data_dir / "statutes";
    c.template_directory = data_dir / "templates";
    c.output_directory = out_dir;
    return c;
}

void set_obfuscation(GenerationConfig& c, bool facts, bool opinions) {
    c.irrelevant_asset_facts = facts;
    c.irrelevant_domicile_facts = facts;
    c.asset_opinions = opinions;
    c.domicile_opinions = opinions;
}

std::vector<GenerationConfig> robustness(const std::string& suite, const std::string& row,
                                         bool facts, bool opinions,
                                         const std::filesystem::path& data_dir,
                                         const std::filesystem::path& out_dir, int dataset_size,
                                         std::uint64_t seed) {
    GenerationConfig base = base_config(data_dir, out_dir / suite, dataset_size, seed);
    base.start_task_id = 1;
    base.terminal_task_id = 5;
    base.asset_count_min = base.asset_count_max = 4;
    base.married_ratio = 0.5;
    base.domicile_count_min = base.domicile_count_max = 3;
    base.state_jurisdictions = {"Arizona", "Pennsylvania", "Wisconsin"};
    // Shared cohort keeps perturbed datasets paired with the baseline: same
    // cases, only the obfuscating sentences differ.
    base.cohort = "robustness";

    GenerationConfig baseline = base;
    baseline.name = "baseline";
    GenerationConfig perturbed = base;
    perturbed.name = row;
    set_obfuscation(perturbed, facts, opinions);
    return {baseline, perturbed};
}

} // namespace

std::vector<std::string> preset_names() {
    return {"basic-competency",      "intermediate-competency", "advanced-competency",
            "temporal-reasoning",    "reasoning-decomposition", "asset-scaling",
            "distractor-robustness", "sycophancy-robustness",   "obfuscation-robustness"};
}

std::vector<GenerationConfig> preset_configs(const std::string& preset,
                                             const std::filesystem::path& data_dir,
                                             const std::filesystem::path& out_dir, int dataset_size,
                                             std::uint64_t seed) {
    auto base = [&](const std::string& subdir) {
        return base_config(data_dir, out_dir / subdir, dataset_size, seed);
    };

    if (preset == "basic-competency") {
        GenerationConfig c = base(preset);
        c.start_task_id = 1;
        c.terminal_task_id = 5;
        c.asset_count_min = c.asset_count_max = 2;
        c.married_ratio = 0.0;
        c.domicile_count_min = 2;
        c.domicile_count_max = 3;
        c.state_jurisdictions = {"Wisconsin", "Illinois"};
        return {c};
    }
    if (preset == "intermediate-competency") {
        GenerationConfig c = base(preset);
        c.start_task_id = 1;
        c.terminal_task_id = 5;
        c.asset_count_min = 3;
        c.asset_count_max = 5;
        c.married_ratio = 0.5;
        c.domicile_count_min = c.domicile_count_max = 4;
        set_obfuscation(c, true, true);
        c.state_jurisdictions = {"Arizona", "Pennsylvania", "Oregon"};
        return {c};
    }
    if (preset == "advanced-competency") {
        GenerationConfig c = base(preset);
        c.start_task_id = 1;
        c.terminal_task_id = 5;
        c.asset_count_min = 6;
        c.asset_count_max = 8;
        c.married_ratio = 1.0;
        c.domicile_count_min = c.domicile_count_max = 5;
        set_obfuscation(c, true, true);
        c.state_jurisdictions = kAllStates;
        return {c};
    }
    if (preset == "temporal-reasoning") {
        std::vector<GenerationConfig> out;
        auto make = [&](int lo, int hi, const std::string& name) {
            GenerationConfig c = base(preset);
            c.start_task_id = c.terminal_task_id = 1;
            c.asset_count_min = c.asset_count_max = 1;
            c.married_ratio = 0.5;
            c.domicile_count_min = lo;
            c.domicile_count_max = hi;
            c.state_jurisdictions = kAllStates;
            c.name = name;
            return c;
        };
        for (int k = 1; k <= 5; ++k) {
            out.push_back(make(k, k, "domiciles_" + std::to_string(k)));
        }
        out.push_back(make(1, 5, "domiciles_1-5"));
        return out;
    }
    if (preset == "reasoning-decomposition") {
        GenerationConfig c = base(preset);
        c.start_task_id = 2;
        c.terminal_task_id = 5;
        c.solved_steps = true;
        c.asset_count_min = c.asset_count_max = 6;
        c.married_ratio = 1.0;
        c.domicile_count_min = c.domicile_count_max = 4;
        c.state_jurisdictions = {"Wisconsin", "Illinois", "Oregon"};
        return {c};
    }
    if (preset == "asset-scaling") {
        std::vector<GenerationConfig> out;
        for (int k = 2; k <= 8; ++k) {
            GenerationConfig c = base(preset);
            c.start_task_id = 2;
            c.terminal_task_id = 5;
            c.asset_count_min = c.asset_count_max = k;
            c.married_ratio = 0.0;
            c.domicile_count_min = c.domicile_count_max = 2;
            c.state_jurisdictions = {"Illinois", "Oregon", "Pennsylvania"};
            c.name = "assets_" + std::to_string(k);
            out.push_back(c);
        }
        return out;
    }
    if (preset == "distractor-robustness") {
        return robustness(preset, "distractor", true, false, data_dir, out_dir, dataset_size, seed);
    }
    if (preset == "sycophancy-robustness") {
        return robustness(preset, "sycophancy", false, true, data_dir, out_dir, dataset_size, seed);
    }
    if (preset == "obfuscation-robustness") {
        return robustness(preset, "obfuscation", true, true, data_dir, out_dir, dataset_size, seed);
    }
    throw UsageError("unknown preset: " + preset);
}

} // namespace exempt
