#include "exempt/genconfig.hpp"

#include "exempt/errors.hpp"
#include "exempt/normalize.hpp"

#include <fstream>

namespace exempt {

using nlohmann::ordered_json;

void GenerationConfig::validate() const {
    if (start_task_id < 1 || terminal_task_id > 5 || start_task_id > terminal_task_id) {
        throw DataError("task range must satisfy 1 <= start_task_id <= terminal_task_id <= 5");
    }
    if (dataset_size < 1) throw DataError("dataset_size must be positive");
    if (asset_count_min < 0 || asset_count_max < asset_count_min) {
        throw DataError("asset count range is invalid");
    }
    if (married_ratio < 0.0 || married_ratio > 1.0) throw DataError("married_ratio must be in [0,1]");
    if (domicile_count_min < 1 || domicile_count_max < domicile_count_min) {
        throw DataError("domicile count range is invalid");
    }
    if (state_jurisdictions.empty()) throw DataError("state_jurisdictions must not be empty");
}

GenerationConfig load_generation_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read config: " + path.string());
    GenerationConfig config;
    config.data_directory = path.parent_path();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        size_t eq = text.find('=');
        if (eq == std::string::npos) {
            throw DataError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        auto as_bool = [&]() {
            std::string v = ascii_lower(value);
            if (v == "true" || v == "yes" || v == "1") return true;
            if (v == "false" || v == "no" || v == "0") return false;
            throw DataError(key + ": expected a boolean, got '" + value + "'");
        };
        auto as_int = [&]() { return std::stoi(value); };

        if (key == "start_task_id") config.start_task_id = as_int();
        else if (key == "terminal_task_id") config.terminal_task_id = as_int();
        else if (key == "dataset_size") config.dataset_size = as_int();
        else if (key == "asset_count_min") config.asset_count_min = as_int();
        else if (key == "asset_count_max") config.asset_count_max = as_int();
        else if (key == "married_ratio") config.married_ratio = std::stod(value);
        else if (key == "domicile_count_min") config.domicile_count_min = as_int();
        else if (key == "domicile_count_max") config.domicile_count_max = as_int();
        else if (key == "state_jurisdictions") {
            config.state_jurisdictions.clear();
            size_t pos = 0;
            while (pos <= value.size()) {
                size_t comma = value.find(',', pos);
                std::string token = trim(value.substr(
                    pos, comma == std::string::npos ? std::string::npos : comma - pos));
                if (!token.empty()) config.state_jurisdictions.push_back(token);
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
        } else if (key == "irrelevant_asset_facts") config.irrelevant_asset_facts = as_bool();
        else if (key == "irrelevant_domicile_facts") config.irrelevant_domicile_facts = as_bool();
        else if (key == "asset_opinions") config.asset_opinions = as_bool();
        else if (key == "domicile_opinions") config.domicile_opinions = as_bool();
        else if (key == "solved_steps") config.solved_steps = as_bool();
        else if (key == "data_directory") config.data_directory = value;
        else if (key == "asset_directory") config.asset_directory = value;
        else if (key == "statute_directory") config.statute_directory = value;
        else if (key == "template_directory") config.template_directory = value;
        else if (key == "output_directory") config.output_directory = value;
        else if (key == "seed") config.seed = std::stoull(value);
        else if (key == "name") config.name = value;
        else if (key == "cohort") config.cohort = value;
        else throw DataError(path.string() + ":" + std::to_string(lineno) + ": unknown key " + key);
    }
    // Directory defaults hang off data_directory.
    if (config.asset_directory.empty()) config.asset_directory = config.data_directory / "assets";
    if (config.statute_directory.empty()) config.statute_directory = config.data_directory / "statutes";
    if (config.template_directory.empty())
        config.template_directory = config.data_directory / "templates";
    if (config.output_directory.empty()) config.output_directory = "out";
    config.validate();
    return config;
}

ordered_json config_to_json(const GenerationConfig& config) {
    ordered_json j;
    j["start_task_id"] = config.start_task_id;
    j["terminal_task_id"] = config.terminal_task_id;
    j["dataset_size"] = config.dataset_size;
    j["asset_count_min"] = config.asset_count_min;
    j["asset_count_max"] = config.asset_count_max;
    j["married_ratio"] = config.married_ratio;
    j["domicile_count_min"] = config.domicile_count_min;
    j["domicile_count_max"] = config.domicile_count_max;
    j["state_jurisdictions"] = config.state_jurisdictions;
    j["irrelevant_asset_facts"] = config.irrelevant_asset_facts;
    j["irrelevant_domicile_facts"] = config.irrelevant_domicile_facts;
    j["asset_opinions"] = config.asset_opinions;
    j["domicile_opinions"] = config.domicile_opinions;
    j["solved_steps"] = config.solved_steps;
    j["seed"] = config.seed;
    if (!config.name.empty()) j["name"] = config.name;
    if (!config.cohort.empty()) j["cohort"] = config.cohort;
    return j;
}

} // namespace exempt
