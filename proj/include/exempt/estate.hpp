#pragma once

#include "exempt/dates.hpp"
#include "exempt/money.hpp"
#include "exempt/statute.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace exempt {

struct DomicileRecord {
    std::string state_name;
    Date start_date{};
    bool is_relevant = true;
    // Rendering detail only; never part of the legal facts.
    std::string city;
    std::optional<int> stay_days;    // distractor stays
    std::string narrative;           // distractor purpose text

    friend bool operator==(const DomicileRecord&, const DomicileRecord&) = default;
};

struct AnnotatedAsset {
    std::string asset_id;
    std::string description;
    Cents value = 0;
    // Jurisdiction label -> expert-annotated applicable citations. The sole
    // source of applicability; nothing is inferred from statute text.
    std::map<std::string, std::vector<std::string>> applicable;
    bool is_relevant = true;
    std::string narrative; // distractor-only full sentence ({names} slot)

    friend bool operator==(const AnnotatedAsset&, const AnnotatedAsset&) = default;
};

// Subjective statements injected into fact patterns; legally inert.
struct OpinionNote {
    enum class Kind { Asset, Domicile };
    Kind kind = Kind::Asset;
    std::string subject; // asset_id or state name

    friend bool operator==(const OpinionNote&, const OpinionNote&) = default;
};

struct Case {
    std::string case_id;
    std::vector<std::string> debtor_names; // 1 or 2; married iff 2
    bool married = false;
    Date petition_date{};
    std::vector<DomicileRecord> domiciles; // chronological among relevant records
    std::vector<AnnotatedAsset> assets;
    std::vector<OpinionNote> opinions;
    std::vector<JurisdictionId> allowable_jurisdictions; // cached, sorted

    friend bool operator==(const Case&, const Case&) = default;
};

// Sum over relevant assets only.
Cents total_estate_value(const Case& c);

// The annotated citation set for one jurisdiction; empty when unannotated.
std::vector<std::string> applicable_exemptions(const AnnotatedAsset& asset,
                                               const JurisdictionId& jurisdiction);

// Structural invariants (name/married coupling, chronological domiciles,
// positive values, citations resolving in the corpus, cached jurisdictions
// consistent with the domicile rule). Throws DataError on violation.
void validate_case(const Case& c, const Corpus& corpus);

std::string case_to_json(const Case& c);
Case case_from_json(const std::string& text);
Case load_case_file(const std::filesystem::path& path);
void save_case_file(const Case& c, const std::filesystem::path& path);

// One sampleable asset record from the library file.
struct AssetRecord {
    std::string asset_id;
    std::string description;
    Cents value_min = 0; // == value_max for fixed-value records
    Cents value_max = 0;
    std::map<std::string, std::vector<std::string>> applicable;
    bool distractor = false;
    std::string narrative;
};

struct AssetLibrary {
    std::vector<AssetRecord> records;

    std::vector<const AssetRecord*> relevant() const;
    std::vector<const AssetRecord*> distractors() const;
};

AssetLibrary load_asset_library(const std::filesystem::path& path);
// Every annotated citation must resolve under its jurisdiction.
void validate_asset_library(const AssetLibrary& lib, const Corpus& corpus);

} // namespace exempt
