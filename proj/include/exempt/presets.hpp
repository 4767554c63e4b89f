#pragma once

#include "exempt/genconfig.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace exempt {

// The nine shipped benchmark suites. Each preset expands to one or more
// generation configs; at dataset_size 105 the nine presets together emit 93
// datasets (9,765 instances).
std::vector<std::string> preset_names();

std::vector<GenerationConfig> preset_configs(const std::string& preset,
                                             const std::filesystem::path& data_dir,
                                             const std::filesystem::path& out_dir, int dataset_size,
                                             std::uint64_t seed);

} // namespace exempt
