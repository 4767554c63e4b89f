#pragma once

#include "exempt/dataset.hpp"
#include "exempt/estate.hpp"
#include "exempt/genconfig.hpp"
#include "exempt/rng.hpp"
#include "exempt/statute.hpp"
#include "exempt/task.hpp"
#include "exempt/textgen.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace exempt {

// Loaded inputs shared by every generation call.
struct GeneratorContext {
    Corpus corpus;
    AssetLibrary assets;
    TemplateLibrary templates;

    static GeneratorContext load(const GenerationConfig& config);
};

// Samples one case within the config bounds: marital status, petition date,
// a domicile timeline constructed so the selection rule lands on the sampled
// target state (with distinct lookback durations), assets drawn without
// replacement, and obfuscation records per the four booleans. Obfuscation
// draws come from a forked stream, so toggling the booleans never changes
// the legally relevant content.
Case generate_case(const GenerationConfig& config, const GeneratorContext& ctx, Rng& rng,
                   const std::string& case_id);

// One flowing paragraph: filing sentence, domicile history, assets, with
// obfuscation sentences interleaved. Domicile prose is dropped when the
// jurisdiction step is already solved; asset prose only appears for tasks
// that need it.
std::string render_fact_pattern(const Case& c, const TemplateLibrary& templates, Rng& rng,
                                bool include_domiciles, bool include_assets);

const std::string& instruction_text(Task task);

std::string render_statute_block(const Corpus& corpus, const std::vector<std::string>& states);

// Gold payloads, cents-denominated: AE label list; EC description->citations;
// EV description->(citation, max_value_cents); NA label->cents; OE the best
// regime with its schedule and nonexempt value.
nlohmann::ordered_json gold_for_task(Task task, const Case& c, const Corpus& corpus);

std::string render_solved_steps(const std::vector<Task>& variant, const Case& c,
                                const Corpus& corpus);

// Solved-prefix variants for a task: {}, {AE}, {AE,EC}, ... up to everything
// before it.
std::vector<std::vector<Task>> task_variants(Task task, bool solved_steps);

struct GeneratedDataset {
    std::string name;
    std::filesystem::path root;
    Task task = Task::AE;
    std::vector<Task> variant;
    std::size_t size = 0;
};

// Writes one dataset directory per (task, variant) pair in the configured
// range. Deterministic: identical (config, seed) produce byte-identical
// trees.
std::vector<GeneratedDataset> generate_dataset(const GenerationConfig& config,
                                               const GeneratorContext& ctx);

} // namespace exempt
