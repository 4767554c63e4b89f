#include "exempt/estate.hpp"

#include "exempt/errors.hpp"
#include "exempt/jurisdiction.hpp"
#include "exempt/normalize.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace exempt {

using nlohmann::ordered_json;

Cents total_estate_value(const Case& c) {
    Cents total = 0;
    for (const auto& a : c.assets) {
        if (a.is_relevant) total += a.value;
    }
    return total;
}

std::vector<std::string> applicable_exemptions(const AnnotatedAsset& asset,
                                               const JurisdictionId& jurisdiction) {
    auto it = asset.applicable.find(jurisdiction.label());
    if (it == asset.applicable.end()) return {};
    return it->second;
}

void validate_case(const Case& c, const Corpus& corpus) {
    if (c.debtor_names.empty() || c.debtor_names.size() > 2) {
        throw DataError("case must name one or two debtors");
    }
    if (c.married != (c.debtor_names.size() == 2)) {
        throw DataError("married flag must match the debtor count");
    }
    Date prev{};
    bool first = true;
    for (const auto& d : c.domiciles) {
        if (!d.is_relevant) continue;
        if (!first && d.start_date <= prev) {
            throw DataError("relevant domicile records must be strictly increasing by start date");
        }
        prev = d.start_date;
        first = false;
    }
    for (const auto& a : c.assets) {
        if (a.value <= 0) throw DataError("asset value must be positive: " + a.asset_id);
        for (const auto& [label, citations] : a.applicable) {
            const JurisdictionProfile* profile = corpus.find_label(label);
            if (!profile) throw DataError(a.asset_id + ": unknown jurisdiction " + label);
            for (const auto& cite : citations) {
                const ExemptionStatute* st = corpus.find_statute(cite);
                if (!st || st->jurisdiction != profile->id) {
                    throw DataError(a.asset_id + ": citation " + cite + " not in " + label);
                }
            }
        }
    }
    auto expected = determine_allowable_jurisdictions(c.domiciles, c.petition_date, corpus);
    if (expected != c.allowable_jurisdictions) {
        throw DataError("cached allowable_jurisdictions disagree with the domicile rule");
    }
}

namespace {

ordered_json asset_to_json(const AnnotatedAsset& a) {
    ordered_json j;
    j["asset_id"] = a.asset_id;
    j["description"] = a.description;
    j["value_cents"] = a.value;
    ordered_json app = ordered_json::object();
    for (const auto& [label, citations] : a.applicable) app[label] = citations;
    j["applicable"] = std::move(app);
    j["is_relevant"] = a.is_relevant;
    if (!a.narrative.empty()) j["narrative"] = a.narrative;
    return j;
}

AnnotatedAsset asset_from_json(const ordered_json& j) {
    AnnotatedAsset a;
    a.asset_id = j.at("asset_id").get<std::string>();
    a.description = j.at("description").get<std::string>();
    a.value = j.at("value_cents").get<Cents>();
    for (const auto& [label, citations] : j.at("applicable").items()) {
        a.applicable[label] = citations.get<std::vector<std::string>>();
    }
    a.is_relevant = j.value("is_relevant", true);
    a.narrative = j.value("narrative", std::string{});
    return a;
}

} // namespace

std::string case_to_json(const Case& c) {
    ordered_json j;
    j["case_id"] = c.case_id;
    j["debtor_names"] = c.debtor_names;
    j["married"] = c.married;
    j["petition_date"] = iso_date(c.petition_date);
    ordered_json doms = ordered_json::array();
    for (const auto& d : c.domiciles) {
        ordered_json dj;
        dj["state"] = d.state_name;
        dj["start_date"] = iso_date(d.start_date);
        dj["is_relevant"] = d.is_relevant;
        if (!d.city.empty()) dj["city"] = d.city;
        if (d.stay_days) dj["stay_days"] = *d.stay_days;
        if (!d.narrative.empty()) dj["narrative"] = d.narrative;
        doms.push_back(std::move(dj));
    }
    j["domiciles"] = std::move(doms);
    ordered_json assets = ordered_json::array();
    for (const auto& a : c.assets) assets.push_back(asset_to_json(a));
    j["assets"] = std::move(assets);
    if (!c.opinions.empty()) {
        ordered_json ops = ordered_json::array();
        for (const auto& o : c.opinions) {
            ops.push_back({{"kind", o.kind == OpinionNote::Kind::Asset ? "asset" : "domicile"},
                           {"subject", o.subject}});
        }
        j["opinions"] = std::move(ops);
    }
    std::vector<std::string> allowable;
    for (const auto& id : c.allowable_jurisdictions) allowable.push_back(id.label());
    j["allowable_jurisdictions"] = allowable;
    return j.dump(2);
}

Case case_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw DataError(std::string("bad case document: ") + e.what());
    }
    Case c;
    c.case_id = j.value("case_id", std::string{});
    c.debtor_names = j.at("debtor_names").get<std::vector<std::string>>();
    c.married = j.at("married").get<bool>();
    auto petition = parse_iso_date(j.at("petition_date").get<std::string>());
    if (!petition) throw DataError("bad petition_date");
    c.petition_date = *petition;
    for (const auto& dj : j.at("domiciles")) {
        DomicileRecord d;
        d.state_name = dj.at("state").get<std::string>();
        auto start = parse_iso_date(dj.at("start_date").get<std::string>());
        if (!start) throw DataError("bad domicile start_date");
        d.start_date = *start;
        d.is_relevant = dj.value("is_relevant", true);
        d.city = dj.value("city", std::string{});
        if (dj.contains("stay_days")) d.stay_days = dj.at("stay_days").get<int>();
        d.narrative = dj.value("narrative", std::string{});
        c.domiciles.push_back(std::move(d));
    }
    for (const auto& aj : j.at("assets")) c.assets.push_back(asset_from_json(aj));
    if (j.contains("opinions")) {
        for (const auto& oj : j.at("opinions")) {
            OpinionNote o;
            o.kind = oj.at("kind").get<std::string>() == "asset" ? OpinionNote::Kind::Asset
                                                                 : OpinionNote::Kind::Domicile;
            o.subject = oj.at("subject").get<std::string>();
            c.opinions.push_back(std::move(o));
        }
    }
    for (const auto& label : j.at("allowable_jurisdictions")) {
        std::string name = label.get<std::string>();
        c.allowable_jurisdictions.push_back(normalize_jurisdiction_label(name) == "federal"
                                                ? JurisdictionId::federal()
                                                : JurisdictionId::state(name));
    }
    std::sort(c.allowable_jurisdictions.begin(), c.allowable_jurisdictions.end());
    return c;
}

Case load_case_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read case file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return case_from_json(ss.str());
}

void save_case_file(const Case& c, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw OutputNotWritable("cannot write case file: " + path.string());
    out << case_to_json(c) << '\n';
}

std::vector<const AssetRecord*> AssetLibrary::relevant() const {
    std::vector<const AssetRecord*> out;
    for (const auto& r : records) {
        if (!r.distractor) out.push_back(&r);
    }
    return out;
}

std::vector<const AssetRecord*> AssetLibrary::distractors() const {
    std::vector<const AssetRecord*> out;
    for (const auto& r : records) {
        if (r.distractor) out.push_back(&r);
    }
    return out;
}

AssetLibrary load_asset_library(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read asset library: " + path.string());
    ordered_json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw DataError(std::string("bad asset library: ") + e.what());
    }
    AssetLibrary lib;
    for (const auto& rec : doc) {
        AssetRecord r;
        r.asset_id = rec.at("asset_id").get<std::string>();
        r.description = rec.at("description").get<std::string>();
        auto dollars_to_cents = [](const ordered_json& v) {
            return static_cast<Cents>(std::llround(v.get<double>() * 100.0));
        };
        if (rec.contains("value")) {
            r.value_min = r.value_max = dollars_to_cents(rec.at("value"));
        } else {
            r.value_min = dollars_to_cents(rec.at("value_min"));
            r.value_max = dollars_to_cents(rec.at("value_max"));
        }
        if (r.value_min <= 0 || r.value_max < r.value_min) {
            throw DataError(r.asset_id + ": bad value range");
        }
        if (rec.contains("applicable")) {
            for (const auto& [label, citations] : rec.at("applicable").items()) {
                r.applicable[label] = citations.get<std::vector<std::string>>();
            }
        }
        r.distractor = rec.value("distractor", false);
        r.narrative = rec.value("narrative", std::string{});
        lib.records.push_back(std::move(r));
    }
    return lib;
}

void validate_asset_library(const AssetLibrary& lib, const Corpus& corpus) {
    for (const auto& r : lib.records) {
        for (const auto& [label, citations] : r.applicable) {
            const JurisdictionProfile* profile = corpus.find_label(label);
            if (!profile) throw DataError(r.asset_id + ": unknown jurisdiction " + label);
            for (const auto& cite : citations) {
                const ExemptionStatute* st = corpus.find_statute(cite);
                if (!st || st->jurisdiction != profile->id) {
                    throw DataError(r.asset_id + ": citation " + cite + " not in " + label);
                }
            }
        }
    }
}

} // namespace exempt
