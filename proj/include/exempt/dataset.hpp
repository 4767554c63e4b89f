#pragma once

#include "exempt/estate.hpp"
#include "exempt/statute.hpp"
#include "exempt/task.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace exempt {

// Prompt components live once under components/ keyed by content hash;
// instances carry references. Layout per dataset directory:
//   manifest.json, instances.jsonl, corpus.json, components/, cases/
struct TaskInstance {
    std::string instance_id;
    Task task = Task::AE;
    std::vector<Task> variant; // solved prefix (ascending), empty = vanilla
    std::string split;         // "dev" | "test"
    std::string instruction_ref;
    std::string fact_pattern_ref;
    std::string statutes_ref;
    std::string solved_steps_ref; // empty when the variant is vanilla
    std::string case_ref;
    nlohmann::ordered_json gold;
};

struct DatasetManifest {
    std::string name;
    Task task = Task::AE;
    std::vector<Task> variant;
    std::uint64_t seed = 0;
    std::string corpus_hash;
    std::size_t size = 0;
    std::size_t dev_count = 0;
    nlohmann::ordered_json config; // generation config echo
};

// "vanilla" or "solved-ae", "solved-ae-ec", ...
std::string variant_label(const std::vector<Task>& variant);

class ComponentStore {
public:
    explicit ComponentStore(std::filesystem::path dir);

    // Insert-or-get; identical text always maps to the same ref.
    std::string put(const std::string& text);
    std::string get(const std::string& ref) const;

private:
    std::filesystem::path dir_;
};

class DatasetWriter {
public:
    DatasetWriter(std::filesystem::path root, DatasetManifest manifest);

    std::string put_component(const std::string& text) { return components_.put(text); }
    void put_case(const Case& c);
    void add_instance(TaskInstance inst);
    void finalize(const Corpus& corpus);

    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path root_;
    DatasetManifest manifest_;
    ComponentStore components_;
    std::vector<TaskInstance> instances_;
};

struct TaskDataset {
    std::filesystem::path root;
    DatasetManifest manifest;
    std::vector<TaskInstance> instances;
    Corpus corpus;

    std::string component(const std::string& ref) const;
    Case load_case(const std::string& case_ref) const;
    const TaskInstance* find_instance(const std::string& instance_id) const;

    static TaskDataset load(const std::filesystem::path& dir);
};

// instruction + facts + solved steps + statutes, in the prompt order used
// throughout the benchmark.
std::string assemble_prompt(const TaskDataset& dataset, const TaskInstance& instance);

// Responses file: one JSON record per line, {"instance_id", "raw_text"}.
std::map<std::string, std::string> load_responses(const std::filesystem::path& path);

} // namespace exempt
