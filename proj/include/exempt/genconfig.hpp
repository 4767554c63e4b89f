#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace exempt {

// Mirrors the configuration file keys one to one. Ranged parameters sample
// uniformly; one target state is sampled per case from state_jurisdictions.
struct GenerationConfig {
    int start_task_id = 1;
    int terminal_task_id = 5;
    int dataset_size = 105;
    int asset_count_min = 2;
    int asset_count_max = 2;
    double married_ratio = 0.0;
    int domicile_count_min = 1;
    int domicile_count_max = 1;
    std::vector<std::string> state_jurisdictions;
    bool irrelevant_asset_facts = false;
    bool irrelevant_domicile_facts = false;
    bool asset_opinions = false;
    bool domicile_opinions = false;
    // Emits every contiguous solved-prefix variant of each task when set.
    bool solved_steps = false;
    std::filesystem::path data_directory;
    std::filesystem::path asset_directory;
    std::filesystem::path statute_directory;
    std::filesystem::path template_directory;
    std::filesystem::path output_directory;
    std::uint64_t seed = 0;
    // Dataset directory name prefix; empty for bare task names.
    std::string name;
    // Case-sampling label; configs sharing a cohort (and seed) draw the same
    // underlying cases, so perturbed suites stay paired with their baseline.
    std::string cohort;

    void validate() const; // throws DataError on bad bounds
};

// key = value lines, '#' comments; state_jurisdictions comma-separated.
GenerationConfig load_generation_config(const std::filesystem::path& path);

// Echoed into dataset manifests.
nlohmann::ordered_json config_to_json(const GenerationConfig& config);

} // namespace exempt
