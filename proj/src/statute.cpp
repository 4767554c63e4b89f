#include "exempt/statute.hpp"

#include "exempt/errors.hpp"
#include "exempt/normalize.hpp"
#include "exempt/sha256.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace exempt {

using nlohmann::ordered_json;

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedCorpus("cannot read corpus file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Cents money_field(const ordered_json& j, const std::string& key, const std::string& citation) {
    const auto& v = j.at(key);
    if (v.is_null() || (v.is_string() && ascii_lower(v.get<std::string>()) == "unlimited")) {
        return kUnlimited;
    }
    double dollars;
    if (v.is_number()) {
        dollars = v.get<double>();
    } else if (v.is_string()) {
        auto parsed = parse_money(v.get<std::string>());
        if (!parsed) throw MalformedCorpus(citation + ": bad monetary value for " + key);
        return *parsed;
    } else {
        throw MalformedCorpus(citation + ": bad monetary value for " + key);
    }
    if (dollars < 0) throw MalformedCorpus(citation + ": negative monetary value for " + key);
    return static_cast<Cents>(std::llround(dollars * 100.0));
}

JurisdictionProfile parse_profile(const ordered_json& doc) {
    JurisdictionProfile profile;
    if (!doc.is_object()) throw MalformedCorpus("jurisdiction document is not an object");
    std::string name = doc.at("jurisdiction").get<std::string>();
    profile.id = (normalize_jurisdiction_label(name) == "federal") ? JurisdictionId::federal()
                                                                   : JurisdictionId::state(name);
    profile.opt_out = doc.value("opt_out", false);
    profile.preamble = doc.value("preamble", std::string{});
    if (profile.id.is_federal() && profile.opt_out) {
        throw MalformedCorpus("the federal profile cannot be marked opt_out");
    }
    for (const auto& rec : doc.at("statutes")) {
        ExemptionStatute st;
        st.citation = rec.at("citation").get<std::string>();
        st.jurisdiction = profile.id;
        st.body_text = rec.at("body_text").get<std::string>();
        ConstraintSet& cs = st.constraints;
        if (rec.contains("single_limit")) cs.single_limit = money_field(rec, "single_limit", st.citation);
        if (rec.contains("married_limit")) cs.married_limit = money_field(rec, "married_limit", st.citation);
        if (rec.contains("per_item_limit")) cs.per_item_limit = money_field(rec, "per_item_limit", st.citation);
        if (rec.contains("single_item_claim_count"))
            cs.single_item_claim_count = rec.at("single_item_claim_count").get<int>();
        if (rec.contains("married_item_claim_count"))
            cs.married_item_claim_count = rec.at("married_item_claim_count").get<int>();
        if (rec.contains("fallback_exemption"))
            cs.fallback_exemption = rec.at("fallback_exemption").get<std::string>();
        if (rec.contains("fallback_single_limit"))
            cs.fallback_single_limit = money_field(rec, "fallback_single_limit", st.citation);
        if (rec.contains("fallback_married_limit"))
            cs.fallback_married_limit = money_field(rec, "fallback_married_limit", st.citation);
        if (rec.contains("mutual_exclusion"))
            cs.mutual_exclusion = rec.at("mutual_exclusion").get<std::string>();
        profile.statutes.push_back(std::move(st));
    }
    return profile;
}

void check_constraints(const ExemptionStatute& st) {
    const ConstraintSet& cs = st.constraints;
    const std::string& c = st.citation;
    if (cs.married_limit && !is_unlimited(cs.single_limit) && !is_unlimited(*cs.married_limit) &&
        *cs.married_limit < cs.single_limit) {
        throw MalformedCorpus(c + ": married_limit below single_limit");
    }
    if (cs.single_item_claim_count && *cs.single_item_claim_count < 0) {
        throw MalformedCorpus(c + ": negative single_item_claim_count");
    }
    if (cs.married_item_claim_count) {
        if (*cs.married_item_claim_count < 0) {
            throw MalformedCorpus(c + ": negative married_item_claim_count");
        }
        if (cs.single_item_claim_count && *cs.married_item_claim_count < *cs.single_item_claim_count) {
            throw MalformedCorpus(c + ": married_item_claim_count below single_item_claim_count");
        }
    }
    bool has_fb_limits = cs.fallback_single_limit || cs.fallback_married_limit;
    if (cs.fallback_exemption) {
        if (!cs.fallback_single_limit) {
            throw MalformedCorpus(c + ": fallback_exemption requires fallback_single_limit");
        }
    } else if (has_fb_limits) {
        throw MalformedCorpus(c + ": fallback limits without fallback_exemption");
    }
    if (cs.fallback_exemption && normalize_citation(*cs.fallback_exemption) == normalize_citation(c)) {
        throw MalformedCorpus(c + ": statute names itself as fallback");
    }
    if (cs.mutual_exclusion && normalize_citation(*cs.mutual_exclusion) == normalize_citation(c)) {
        throw MalformedCorpus(c + ": statute excludes itself");
    }
}

} // namespace

const JurisdictionProfile* Corpus::find(const JurisdictionId& id) const {
    for (const auto& p : profiles) {
        if (p.id == id) return &p;
    }
    return nullptr;
}

const JurisdictionProfile* Corpus::find_label(const std::string& label) const {
    std::string norm = normalize_jurisdiction_label(label);
    for (const auto& p : profiles) {
        if (normalize_jurisdiction_label(p.id.label()) == norm) return &p;
    }
    return nullptr;
}

const ExemptionStatute* Corpus::find_statute(const std::string& citation) const {
    auto it = citation_index_.find(normalize_citation(citation));
    if (it == citation_index_.end()) return nullptr;
    return &profiles[it->second.first].statutes[it->second.second];
}

Corpus corpus_from_profiles(std::vector<JurisdictionProfile> profiles) {
    Corpus corpus;
    corpus.profiles = std::move(profiles);
    std::sort(corpus.profiles.begin(), corpus.profiles.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });

    for (size_t pi = 0; pi < corpus.profiles.size(); ++pi) {
        const auto& profile = corpus.profiles[pi];
        if (pi + 1 < corpus.profiles.size() && profile.id == corpus.profiles[pi + 1].id) {
            throw MalformedCorpus("duplicate jurisdiction document: " + profile.id.label());
        }
        for (size_t si = 0; si < profile.statutes.size(); ++si) {
            const auto& st = profile.statutes[si];
            if (st.jurisdiction != profile.id) {
                throw MalformedCorpus(st.citation + ": statute jurisdiction mismatch");
            }
            check_constraints(st);
            auto key = normalize_citation(st.citation);
            if (!corpus.citation_index_.emplace(key, std::make_pair(pi, si)).second) {
                throw DuplicateCitation("duplicate citation: " + st.citation);
            }
        }
    }

    // Resolve references within each jurisdiction; symmetrize exclusions.
    for (auto& profile : corpus.profiles) {
        auto local = [&](const std::string& citation) -> ExemptionStatute* {
            auto key = normalize_citation(citation);
            for (auto& st : profile.statutes) {
                if (normalize_citation(st.citation) == key) return &st;
            }
            return nullptr;
        };
        for (auto& st : profile.statutes) {
            if (st.constraints.fallback_exemption) {
                ExemptionStatute* target = local(*st.constraints.fallback_exemption);
                if (!target) {
                    throw DanglingReference(st.citation + ": fallback_exemption '" +
                                            *st.constraints.fallback_exemption + "' not found in " +
                                            profile.id.label());
                }
                if (target->constraints.fallback_exemption) {
                    throw MalformedCorpus(st.citation + ": fallback chains longer than one hop (" +
                                          target->citation + " has its own fallback)");
                }
            }
            if (st.constraints.mutual_exclusion) {
                ExemptionStatute* partner = local(*st.constraints.mutual_exclusion);
                if (!partner) {
                    throw DanglingReference(st.citation + ": mutual_exclusion '" +
                                            *st.constraints.mutual_exclusion + "' not found in " +
                                            profile.id.label());
                }
                if (!partner->constraints.mutual_exclusion) {
                    partner->constraints.mutual_exclusion = st.citation;
                } else if (normalize_citation(*partner->constraints.mutual_exclusion) !=
                           normalize_citation(st.citation)) {
                    throw MalformedCorpus(st.citation + " / " + partner->citation +
                                          ": contradictory mutual_exclusion targets");
                }
            }
        }
    }

    corpus.content_hash = sha256_hex(corpus_to_json(corpus));
    return corpus;
}

Corpus load_statute_corpus(const std::filesystem::path& path) {
    std::vector<JurisdictionProfile> profiles;
    auto parse_doc = [&](const std::string& bytes, const std::string& where) {
        ordered_json doc;
        try {
            doc = ordered_json::parse(bytes);
        } catch (const std::exception& e) {
            throw MalformedCorpus(where + ": " + e.what());
        }
        if (doc.is_array()) {
            for (const auto& entry : doc) profiles.push_back(parse_profile(entry));
        } else if (doc.is_object()) {
            profiles.push_back(parse_profile(doc));
        } else if (!doc.is_null()) {
            throw MalformedCorpus(where + ": expected object or array");
        }
    };

    std::error_code ec;
    if (std::filesystem::is_directory(path, ec)) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(path)) {
            if (entry.path().extension() == ".json") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) parse_doc(read_file(f), f.string());
    } else if (std::filesystem::exists(path, ec)) {
        std::string bytes = read_file(path);
        if (trim(bytes).empty()) return corpus_from_profiles({});
        parse_doc(bytes, path.string());
    } else {
        throw MalformedCorpus("corpus path does not exist: " + path.string());
    }
    return corpus_from_profiles(std::move(profiles));
}

std::string corpus_to_json(const Corpus& corpus) {
    auto dollars = [](Cents c) -> ordered_json {
        if (is_unlimited(c)) return nullptr;
        if (c % 100 == 0) return c / 100;
        return static_cast<double>(c) / 100.0;
    };
    ordered_json out = ordered_json::array();
    for (const auto& p : corpus.profiles) {
        ordered_json doc;
        doc["jurisdiction"] = p.id.label();
        doc["opt_out"] = p.opt_out;
        if (!p.preamble.empty()) doc["preamble"] = p.preamble;
        ordered_json arr = ordered_json::array();
        for (const auto& st : p.statutes) {
            ordered_json rec;
            rec["citation"] = st.citation;
            rec["body_text"] = st.body_text;
            const ConstraintSet& cs = st.constraints;
            rec["single_limit"] = dollars(cs.single_limit);
            if (cs.married_limit) rec["married_limit"] = dollars(*cs.married_limit);
            if (cs.per_item_limit) rec["per_item_limit"] = dollars(*cs.per_item_limit);
            if (cs.single_item_claim_count) rec["single_item_claim_count"] = *cs.single_item_claim_count;
            if (cs.married_item_claim_count) rec["married_item_claim_count"] = *cs.married_item_claim_count;
            if (cs.fallback_exemption) rec["fallback_exemption"] = *cs.fallback_exemption;
            if (cs.fallback_single_limit) rec["fallback_single_limit"] = dollars(*cs.fallback_single_limit);
            if (cs.fallback_married_limit) rec["fallback_married_limit"] = dollars(*cs.fallback_married_limit);
            if (cs.mutual_exclusion) rec["mutual_exclusion"] = *cs.mutual_exclusion;
            arr.push_back(std::move(rec));
        }
        doc["statutes"] = std::move(arr);
        out.push_back(std::move(doc));
    }
    return out.dump(2);
}

Cents effective_aggregate_limit(const ExemptionStatute& statute, bool married) {
    const ConstraintSet& cs = statute.constraints;
    if (married && cs.married_limit) return *cs.married_limit;
    return cs.single_limit;
}

std::optional<Cents> effective_per_item_limit(const ExemptionStatute& statute, bool married) {
    const ConstraintSet& cs = statute.constraints;
    if (!cs.per_item_limit) return std::nullopt;
    if (is_unlimited(*cs.per_item_limit)) return kUnlimited;
    return married ? cap_add(*cs.per_item_limit, *cs.per_item_limit) : *cs.per_item_limit;
}

std::optional<int> effective_item_claim_count(const ExemptionStatute& statute, bool married) {
    const ConstraintSet& cs = statute.constraints;
    if (married && cs.married_item_claim_count) return cs.married_item_claim_count;
    return cs.single_item_claim_count;
}

std::optional<Cents> effective_fallback_limit(const ExemptionStatute& statute, bool married) {
    const ConstraintSet& cs = statute.constraints;
    if (!cs.fallback_exemption) return std::nullopt;
    if (married && cs.fallback_married_limit) return cs.fallback_married_limit;
    return cs.fallback_single_limit;
}

} // namespace exempt
