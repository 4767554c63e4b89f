#include "exempt/dataset.hpp"

#include "exempt/errors.hpp"
#include "exempt/normalize.hpp"
#include "exempt/sha256.hpp"

#include <fstream>
#include <sstream>

namespace exempt {

using nlohmann::ordered_json;

namespace {

std::string read_text_file(const std::filesystem::path& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(std::string("cannot read ") + what + ": " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw OutputNotWritable("cannot write: " + path.string());
    out << text;
    if (!out) throw OutputNotWritable("short write: " + path.string());
}

std::vector<Task> variant_from_json(const ordered_json& arr) {
    std::vector<Task> out;
    for (const auto& t : arr) out.push_back(task_from_name(t.get<std::string>()));
    return out;
}

ordered_json variant_to_json(const std::vector<Task>& variant) {
    ordered_json arr = ordered_json::array();
    for (Task t : variant) arr.push_back(task_name(t));
    return arr;
}

} // namespace

std::string variant_label(const std::vector<Task>& variant) {
    if (variant.empty()) return "vanilla";
    std::string label = "solved";
    for (Task t : variant) {
        label += '-';
        label += ascii_lower(task_name(t));
    }
    return label;
}

ComponentStore::ComponentStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::string ComponentStore::put(const std::string& text) {
    std::string ref = sha256_hex(text);
    std::filesystem::path target = dir_ / (ref + ".txt");
    if (!std::filesystem::exists(target)) {
        // tmp+rename keeps concurrent insert-or-get of identical content safe.
        std::filesystem::path tmp = dir_ / (ref + ".tmp");
        write_text_file(tmp, text);
        std::filesystem::rename(tmp, target);
    }
    return ref;
}

std::string ComponentStore::get(const std::string& ref) const {
    return read_text_file(dir_ / (ref + ".txt"), "component");
}

DatasetWriter::DatasetWriter(std::filesystem::path root, DatasetManifest manifest)
    : root_(std::move(root)), manifest_(std::move(manifest)), components_(root_ / "components") {
    std::filesystem::create_directories(root_ / "cases");
}

void DatasetWriter::put_case(const Case& c) {
    write_text_file(root_ / "cases" / (c.case_id + ".json"), case_to_json(c) + "\n");
}

void DatasetWriter::add_instance(TaskInstance inst) { instances_.push_back(std::move(inst)); }

void DatasetWriter::finalize(const Corpus& corpus) {
    manifest_.size = instances_.size();
    manifest_.dev_count = 0;
    std::ostringstream lines;
    for (const auto& inst : instances_) {
        if (inst.split == "dev") ++manifest_.dev_count;
        ordered_json j;
        j["instance_id"] = inst.instance_id;
        j["task"] = task_name(inst.task);
        j["variant"] = variant_to_json(inst.variant);
        j["split"] = inst.split;
        ordered_json comps;
        comps["instruction"] = inst.instruction_ref;
        comps["fact_pattern"] = inst.fact_pattern_ref;
        comps["statutes"] = inst.statutes_ref;
        if (!inst.solved_steps_ref.empty()) comps["solved_steps"] = inst.solved_steps_ref;
        j["components"] = std::move(comps);
        j["case"] = inst.case_ref;
        j["gold"] = inst.gold;
        lines << j.dump() << '\n';
    }
    write_text_file(root_ / "instances.jsonl", lines.str());

    write_text_file(root_ / "corpus.json", corpus_to_json(corpus) + "\n");

    ordered_json m;
    m["name"] = manifest_.name;
    m["task"] = task_name(manifest_.task);
    m["variant"] = variant_to_json(manifest_.variant);
    m["seed"] = manifest_.seed;
    m["corpus_hash"] = manifest_.corpus_hash;
    m["size"] = manifest_.size;
    m["dev_count"] = manifest_.dev_count;
    m["config"] = manifest_.config;
    write_text_file(root_ / "manifest.json", m.dump(2) + "\n");
}

std::string TaskDataset::component(const std::string& ref) const {
    return read_text_file(root / "components" / (ref + ".txt"), "component");
}

Case TaskDataset::load_case(const std::string& case_ref) const {
    return load_case_file(root / "cases" / (case_ref + ".json"));
}

const TaskInstance* TaskDataset::find_instance(const std::string& instance_id) const {
    for (const auto& inst : instances) {
        if (inst.instance_id == instance_id) return &inst;
    }
    return nullptr;
}

TaskDataset TaskDataset::load(const std::filesystem::path& dir) {
    TaskDataset ds;
    ds.root = dir;

    ordered_json m = ordered_json::parse(read_text_file(dir / "manifest.json", "manifest"));
    ds.manifest.name = m.at("name").get<std::string>();
    ds.manifest.task = task_from_name(m.at("task").get<std::string>());
    ds.manifest.variant = variant_from_json(m.at("variant"));
    ds.manifest.seed = m.at("seed").get<std::uint64_t>();
    ds.manifest.corpus_hash = m.at("corpus_hash").get<std::string>();
    ds.manifest.size = m.at("size").get<std::size_t>();
    ds.manifest.dev_count = m.at("dev_count").get<std::size_t>();
    ds.manifest.config = m.value("config", ordered_json::object());

    ds.corpus = load_statute_corpus(dir / "corpus.json");
    if (ds.corpus.content_hash != ds.manifest.corpus_hash) {
        throw DataError("dataset corpus hash mismatch: " + dir.string());
    }

    std::istringstream lines(read_text_file(dir / "instances.jsonl", "instances"));
    std::string line;
    while (std::getline(lines, line)) {
        if (trim(line).empty()) continue;
        ordered_json j = ordered_json::parse(line);
        TaskInstance inst;
        inst.instance_id = j.at("instance_id").get<std::string>();
        inst.task = task_from_name(j.at("task").get<std::string>());
        inst.variant = variant_from_json(j.at("variant"));
        inst.split = j.at("split").get<std::string>();
        const auto& comps = j.at("components");
        inst.instruction_ref = comps.at("instruction").get<std::string>();
        inst.fact_pattern_ref = comps.at("fact_pattern").get<std::string>();
        inst.statutes_ref = comps.at("statutes").get<std::string>();
        if (comps.contains("solved_steps")) {
            inst.solved_steps_ref = comps.at("solved_steps").get<std::string>();
        }
        inst.case_ref = j.at("case").get<std::string>();
        inst.gold = j.at("gold");
        ds.instances.push_back(std::move(inst));
    }
    return ds;
}

std::string assemble_prompt(const TaskDataset& dataset, const TaskInstance& instance) {
    std::string prompt = dataset.component(instance.instruction_ref);
    prompt += "\n\nFacts:\n";
    prompt += dataset.component(instance.fact_pattern_ref);
    if (!instance.solved_steps_ref.empty()) {
        prompt += "\n\nSolved Reasoning Steps:\n";
        prompt += dataset.component(instance.solved_steps_ref);
    }
    prompt += "\n\nStatutes:\n";
    prompt += dataset.component(instance.statutes_ref);
    return prompt;
}

std::map<std::string, std::string> load_responses(const std::filesystem::path& path) {
    std::map<std::string, std::string> out;
    std::istringstream lines(read_text_file(path, "responses file"));
    std::string line;
    size_t lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        ordered_json j = ordered_json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("instance_id")) {
            throw DataError("bad responses record at line " + std::to_string(lineno));
        }
        std::string id = j.at("instance_id").get<std::string>();
        std::string text;
        if (j.contains("raw_text")) {
            text = j.at("raw_text").get<std::string>();
        } else if (j.contains("response")) {
            text = j.at("response").get<std::string>();
        }
        out[id] = std::move(text);
    }
    return out;
}

} // namespace exempt
