#pragma once

#include "exempt/money.hpp"

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace exempt {

enum class JurisdictionKind { Federal = 0, State = 1 };

// Federal, or one named state. Ordering puts Federal before every state and
// states in name order; solve_best_jurisdiction's tie-break relies on it.
struct JurisdictionId {
    JurisdictionKind kind = JurisdictionKind::Federal;
    std::string state_name; // empty iff Federal

    static JurisdictionId federal() { return {JurisdictionKind::Federal, ""}; }
    static JurisdictionId state(std::string name) { return {JurisdictionKind::State, std::move(name)}; }

    bool is_federal() const { return kind == JurisdictionKind::Federal; }
    const std::string& label() const {
        static const std::string fed = "Federal";
        return is_federal() ? fed : state_name;
    }

    friend auto operator<=>(const JurisdictionId&, const JurisdictionId&) = default;
};

// Table-driven constraint encoding of one statute. Monetary fields are
// cents; kUnlimited means no cap. Absent optional fields mean the statute
// draws no such distinction.
struct ConstraintSet {
    Cents single_limit = kUnlimited;
    std::optional<Cents> married_limit;
    std::optional<Cents> per_item_limit;
    std::optional<int> single_item_claim_count;
    std::optional<int> married_item_claim_count;
    std::optional<std::string> fallback_exemption;
    std::optional<Cents> fallback_single_limit;
    std::optional<Cents> fallback_married_limit;
    std::optional<std::string> mutual_exclusion;

    friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;
};

struct ExemptionStatute {
    std::string citation;
    JurisdictionId jurisdiction;
    std::string body_text;
    ConstraintSet constraints;

    friend bool operator==(const ExemptionStatute&, const ExemptionStatute&) = default;
};

struct JurisdictionProfile {
    JurisdictionId id;
    bool opt_out = false;
    // Prompt-only prose rendered ahead of the exemption list (selection
    // rules, opt-out declarations). Never claimable.
    std::string preamble;
    std::vector<ExemptionStatute> statutes;

    friend bool operator==(const JurisdictionProfile&, const JurisdictionProfile&) = default;
};

// Validated, cross-reference-resolved corpus. Immutable after load.
struct Corpus {
    std::vector<JurisdictionProfile> profiles; // Federal first, states by name
    std::string content_hash;                  // sha256 of the canonical serialization

    const JurisdictionProfile* find(const JurisdictionId& id) const;
    const JurisdictionProfile* find_label(const std::string& label) const;
    // Citations are unique corpus-wide; lookup is by normalized citation.
    const ExemptionStatute* find_statute(const std::string& citation) const;

    friend bool operator==(const Corpus& a, const Corpus& b) {
        return a.profiles == b.profiles;
    }

private:
    friend Corpus load_statute_corpus(const std::filesystem::path&);
    friend Corpus corpus_from_profiles(std::vector<JurisdictionProfile>);
    std::map<std::string, std::pair<size_t, size_t>> citation_index_; // normalized -> (profile, statute)
};

// Reads one jurisdiction document, a file holding an array of them, or a
// directory of *.json documents. Throws MalformedCorpus / DanglingReference /
// DuplicateCitation on any invariant violation.
Corpus load_statute_corpus(const std::filesystem::path& path);

// Same validation pass over in-memory profiles; used by tests and the
// generator's embedded-corpus reload.
Corpus corpus_from_profiles(std::vector<JurisdictionProfile> profiles);

// Canonical JSON (one array of jurisdiction documents, dollars as numbers).
std::string corpus_to_json(const Corpus& corpus);

Cents effective_aggregate_limit(const ExemptionStatute& statute, bool married);
// Doubled for joint filers, mirroring the aggregate doubling convention.
std::optional<Cents> effective_per_item_limit(const ExemptionStatute& statute, bool married);
std::optional<int> effective_item_claim_count(const ExemptionStatute& statute, bool married);
std::optional<Cents> effective_fallback_limit(const ExemptionStatute& statute, bool married);

} // namespace exempt
