#pragma once

// Shared test helpers: data paths, synthetic corpus/case builders, the
// random instance generator used for solver/oracle agreement, a naive
// reference partial-ratio, gold-to-response-text rendering, and tree hashing
// for byte-identity checks.

#include "exempt/dataset.hpp"
#include "exempt/estate.hpp"
#include "exempt/evaluator.hpp"
#include "exempt/fuzzy.hpp"
#include "exempt/generator.hpp"
#include "exempt/money.hpp"
#include "exempt/rng.hpp"
#include "exempt/sha256.hpp"
#include "exempt/solver.hpp"
#include "exempt/statute.hpp"
#include "exempt/task.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

namespace testsupport {

inline std::filesystem::path data_dir() { return std::filesystem::path(EXEMPT_DATA_DIR); }

inline const exempt::Corpus& shipped_corpus() {
    static exempt::Corpus corpus = exempt::load_statute_corpus(data_dir() / "statutes");
    return corpus;
}

inline std::filesystem::path fresh_temp_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() /
               ("exembench-test-" + tag + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// --- synthetic corpus building ------------------------------------------

struct MiniStatute {
    std::string citation;
    exempt::Cents single = exempt::kUnlimited;
    std::optional<exempt::Cents> married;
    std::optional<exempt::Cents> per_item;
    std::optional<int> count;
    std::optional<int> married_count;
    std::optional<std::string> fallback;
    std::optional<exempt::Cents> fb_single;
    std::optional<exempt::Cents> fb_married;
    std::optional<std::string> excludes;
};

inline exempt::Corpus mini_corpus(const std::vector<MiniStatute>& statutes,
                                  const std::string& jurisdiction = "Federal",
                                  bool opt_out = false) {
    exempt::JurisdictionProfile profile;
    profile.id = jurisdiction == "Federal" ? exempt::JurisdictionId::federal()
                                           : exempt::JurisdictionId::state(jurisdiction);
    profile.opt_out = opt_out;
    for (const auto& m : statutes) {
        exempt::ExemptionStatute st;
        st.citation = m.citation;
        st.jurisdiction = profile.id;
        st.body_text = "test statute " + m.citation;
        st.constraints.single_limit = m.single;
        st.constraints.married_limit = m.married;
        st.constraints.per_item_limit = m.per_item;
        st.constraints.single_item_claim_count = m.count;
        st.constraints.married_item_claim_count = m.married_count;
        st.constraints.fallback_exemption = m.fallback;
        st.constraints.fallback_single_limit = m.fb_single;
        st.constraints.fallback_married_limit = m.fb_married;
        st.constraints.mutual_exclusion = m.excludes;
        profile.statutes.push_back(std::move(st));
    }
    return exempt::corpus_from_profiles({profile});
}

struct MiniAsset {
    std::string id;
    exempt::Cents value;
    std::vector<std::string> citations; // under the mini corpus's jurisdiction
    bool relevant = true;
};

inline exempt::Case mini_case(const std::vector<MiniAsset>& assets, bool married = false,
                              const std::string& jurisdiction = "Federal") {
    exempt::Case c;
    c.case_id = "mini";
    c.debtor_names = married ? std::vector<std::string>{"Ada Quest", "Bea Quest"}
                             : std::vector<std::string>{"Ada Quest"};
    c.married = married;
    c.petition_date = exempt::make_date(2024, 6, 1);
    exempt::DomicileRecord home;
    home.state_name = jurisdiction == "Federal" ? "Wisconsin" : jurisdiction;
    home.start_date = exempt::make_date(2015, 1, 1);
    home.city = "Testville";
    c.domiciles.push_back(home);
    for (const auto& m : assets) {
        exempt::AnnotatedAsset a;
        a.asset_id = m.id;
        a.description = m.id;
        a.value = m.value;
        a.is_relevant = m.relevant;
        if (!m.citations.empty()) a.applicable[jurisdiction] = m.citations;
        c.assets.push_back(std::move(a));
    }
    c.allowable_jurisdictions = {jurisdiction == "Federal"
                                     ? exempt::JurisdictionId::federal()
                                     : exempt::JurisdictionId::state(jurisdiction)};
    return c;
}

// --- random instances for solver/oracle agreement ------------------------

struct RandomInstance {
    exempt::Corpus corpus;
    exempt::Case c;
    exempt::JurisdictionId regime = exempt::JurisdictionId::federal();
};

// Covers every constraint kind: limits (some unlimited), married variants,
// per-item caps, item claim counts, single-hop fallbacks, exclusion pairs.
inline RandomInstance random_instance(exempt::Rng& rng, int max_assets = 5, int max_statutes = 6) {
    int statute_count = static_cast<int>(rng.range(1, max_statutes));
    std::vector<MiniStatute> statutes;
    for (int s = 0; s < statute_count; ++s) {
        MiniStatute m;
        m.citation = "Test Stat. § " + std::to_string(100 + s);
        if (!rng.chance(0.18)) {
            m.single = rng.range(80, 9000);
            if (rng.chance(0.5)) m.married = m.single * 2;
        }
        if (rng.chance(0.3)) m.per_item = rng.range(40, 4000);
        if (rng.chance(0.25)) {
            m.count = static_cast<int>(rng.range(1, 2));
            if (rng.chance(0.5)) m.married_count = *m.count * 2;
        }
        statutes.push_back(std::move(m));
    }
    // Fallback edges: sources and targets disjoint, targets have no fallback
    // of their own (single hop).
    std::vector<int> role(statute_count, 0); // 1=source, 2=target
    int fallback_tries = statute_count / 2;
    for (int t = 0; t < fallback_tries; ++t) {
        if (!rng.chance(0.5)) continue;
        int src = static_cast<int>(rng.below(statute_count));
        int dst = static_cast<int>(rng.below(statute_count));
        if (src == dst || role[src] != 0 || role[dst] != 0) continue;
        if (exempt::is_unlimited(statutes[src].single)) continue;
        role[src] = 1;
        role[dst] = 2;
        statutes[src].fallback = statutes[dst].citation;
        statutes[src].fb_single = rng.range(50, 6000);
        if (rng.chance(0.5)) statutes[src].fb_married = *statutes[src].fb_single * 2;
    }
    // One exclusion pair when room allows.
    if (statute_count >= 2 && rng.chance(0.45)) {
        int a = static_cast<int>(rng.below(statute_count));
        int b = static_cast<int>(rng.below(statute_count));
        if (a != b && !statutes[a].excludes && !statutes[b].excludes) {
            statutes[a].excludes = statutes[b].citation;
            statutes[b].excludes = statutes[a].citation;
        }
    }

    RandomInstance inst;
    inst.corpus = mini_corpus(statutes);
    std::vector<MiniAsset> assets;
    int asset_count = static_cast<int>(rng.range(1, max_assets));
    for (int a = 0; a < asset_count; ++a) {
        MiniAsset m;
        m.id = "asset-" + std::to_string(a);
        m.value = rng.range(50, 15000);
        for (int s = 0; s < statute_count; ++s) {
            if (rng.chance(0.5)) m.citations.push_back(statutes[s].citation);
        }
        assets.push_back(std::move(m));
    }
    inst.c = mini_case(assets, rng.chance(0.5));
    return inst;
}

// --- reference fuzzy matcher ---------------------------------------------

// Naive maximum over every substring of the longer string; the production
// matcher must agree exactly.
inline double reference_partial_ratio(std::string_view a, std::string_view b) {
    std::string_view needle = a.size() <= b.size() ? a : b;
    std::string_view hay = a.size() <= b.size() ? b : a;
    if (needle.empty()) return hay.empty() ? 100.0 : 0.0;
    double best = 0.0;
    for (size_t start = 0; start < hay.size(); ++start) {
        for (size_t len = 1; start + len <= hay.size(); ++len) {
            best = std::max(best, exempt::indel_similarity(needle, hay.substr(start, len)));
        }
    }
    return best;
}

// --- gold -> model-response text ------------------------------------------

inline nlohmann::ordered_json dollars_json(exempt::Cents cents) {
    if (cents % 100 == 0) return cents / 100;
    return static_cast<double>(cents) / 100.0;
}

inline std::string gold_to_response(exempt::Task task, const nlohmann::ordered_json& gold) {
    using nlohmann::ordered_json;
    std::string payload;
    switch (task) {
    case exempt::Task::AE: {
        std::string list;
        for (const auto& label : gold) {
            if (!list.empty()) list += ", ";
            list += label.get<std::string>();
        }
        payload = list;
        break;
    }
    case exempt::Task::EC: payload = gold.dump(); break;
    case exempt::Task::EV: {
        ordered_json out = ordered_json::object();
        for (const auto& [desc, entries] : gold.items()) {
            ordered_json arr = ordered_json::array();
            for (const auto& e : entries) {
                arr.push_back({{"citation", e.at("citation")},
                               {"max_value", dollars_json(e.at("max_value_cents").get<exempt::Cents>())}});
            }
            out[desc] = std::move(arr);
        }
        payload = out.dump();
        break;
    }
    case exempt::Task::NA: {
        ordered_json out = ordered_json::object();
        for (const auto& [label, cents] : gold.items()) {
            out[label] = dollars_json(cents.get<exempt::Cents>());
        }
        payload = out.dump();
        break;
    }
    case exempt::Task::OE: {
        ordered_json out = ordered_json::object();
        for (const auto& [desc, entries] : gold.at("claims").items()) {
            ordered_json arr = ordered_json::array();
            for (const auto& e : entries) {
                arr.push_back(
                    {{"citation", e.at("citation")},
                     {"claim_value", dollars_json(e.at("claim_value_cents").get<exempt::Cents>())}});
            }
            out[desc] = std::move(arr);
        }
        payload = out.dump();
        break;
    }
    }
    return "Worked through the statutes step by step.\nFINAL ANSWER: " + payload;
}

inline void write_gold_responses(const exempt::TaskDataset& ds, const std::filesystem::path& path,
                                 bool include_dev = false) {
    std::ofstream out(path, std::ios::binary);
    for (const auto& inst : ds.instances) {
        if (inst.split == "dev" && !include_dev) continue;
        nlohmann::ordered_json rec;
        rec["instance_id"] = inst.instance_id;
        rec["raw_text"] = gold_to_response(inst.task, inst.gold);
        out << rec.dump() << '\n';
    }
}

// --- tree hashing for byte-identity ---------------------------------------

inline std::string tree_hash(const std::filesystem::path& root) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::vector<std::string> keyed;
    for (const auto& f : files) {
        std::ifstream in(f, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        keyed.push_back(f.lexically_relative(root).generic_string() + "\x01" +
                        exempt::sha256_hex(ss.str()));
    }
    std::sort(keyed.begin(), keyed.end());
    std::string all;
    for (const auto& k : keyed) {
        all += k;
        all += '\n';
    }
    return exempt::sha256_hex(all);
}

} // namespace testsupport
