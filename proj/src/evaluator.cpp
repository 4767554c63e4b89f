#include "exempt/evaluator.hpp"

#include "exempt/errors.hpp"
#include "exempt/fuzzy.hpp"
#include "exempt/normalize.hpp"
#include "exempt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace exempt {

using nlohmann::ordered_json;

bool within_tolerance(Cents predicted, Cents gold) {
    // |predicted - gold| / (gold + epsilon) < 1/20, kept in exact integers.
    if (gold < 0 || predicted < 0) return false;
    Cents diff = predicted > gold ? predicted - gold : gold - predicted;
    return 20 * diff < gold + kToleranceEpsilonCents;
}

double stabilized_are(Cents predicted, Cents gold) {
    Cents diff = predicted > gold ? predicted - gold : gold - predicted;
    return static_cast<double>(diff) / static_cast<double>(gold + kToleranceEpsilonCents);
}

namespace {

struct Prf {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

Prf make_prf(double precision, double recall) {
    Prf out;
    out.precision = precision;
    out.recall = recall;
    out.f1 = (precision + recall) > 0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    return out;
}

Prf set_prf(const std::set<std::string>& predicted, const std::set<std::string>& gold) {
    if (predicted.empty() && gold.empty()) return make_prf(1.0, 1.0);
    size_t tp = 0;
    for (const auto& p : predicted) tp += gold.count(p);
    double precision = predicted.empty() ? 0.0 : static_cast<double>(tp) / predicted.size();
    double recall = gold.empty() ? 0.0 : static_cast<double>(tp) / gold.size();
    if (gold.empty() && !predicted.empty()) recall = 0.0;
    if (predicted.empty() && !gold.empty()) precision = 0.0;
    return make_prf(precision, recall);
}

Prf mean_prf(const std::vector<Prf>& parts) {
    if (parts.empty()) return make_prf(1.0, 1.0); // nothing to score, vacuously perfect
    Prf out;
    for (const auto& p : parts) {
        out.precision += p.precision;
        out.recall += p.recall;
        out.f1 += p.f1;
    }
    out.precision /= parts.size();
    out.recall /= parts.size();
    out.f1 /= parts.size();
    return out;
}

std::vector<std::string> gold_descriptions(const ordered_json& gold) {
    std::vector<std::string> out;
    for (const auto& [key, value] : gold.items()) out.push_back(key);
    return out;
}

void score_ae(const ParsedResponse& parsed, const ordered_json& gold, SampleScore& score) {
    std::set<std::string> gold_set;
    for (const auto& label : gold) gold_set.insert(normalize_jurisdiction_label(label.get<std::string>()));
    std::set<std::string> pred_set;
    for (const auto& label : parsed.jurisdictions) pred_set.insert(normalize_jurisdiction_label(label));
    Prf prf = set_prf(pred_set, gold_set);
    score.precision = prf.precision;
    score.recall = prf.recall;
    score.f1 = prf.f1;
}

void score_ec(const ParsedResponse& parsed, const ordered_json& gold, SampleScore& score) {
    const auto descriptions = gold_descriptions(gold);
    std::map<std::string, std::set<std::string>> predicted; // gold description -> citations
    size_t unmatched = 0;
    for (const auto& [desc, citations] : parsed.ec) {
        auto matched = match_asset(desc, descriptions);
        if (!matched) {
            ++unmatched;
            continue;
        }
        auto& bucket = predicted[*matched];
        for (const auto& c : citations) bucket.insert(normalize_citation(c));
    }
    std::vector<Prf> parts;
    for (const auto& desc : descriptions) {
        std::set<std::string> gold_set;
        for (const auto& c : gold.at(desc)) gold_set.insert(normalize_citation(c.get<std::string>()));
        auto it = predicted.find(desc);
        parts.push_back(set_prf(it == predicted.end() ? std::set<std::string>{} : it->second, gold_set));
    }
    for (size_t i = 0; i < unmatched; ++i) parts.push_back(make_prf(0.0, 0.0));
    Prf prf = mean_prf(parts);
    score.precision = prf.precision;
    score.recall = prf.recall;
    score.f1 = prf.f1;
}

void score_ev(const ParsedResponse& parsed, const ordered_json& gold, SampleScore& score) {
    const auto descriptions = gold_descriptions(gold);
    struct Entry {
        std::map<std::string, Cents> amounts; // normalized citation -> first predicted amount
    };
    std::map<std::string, Entry> predicted;
    size_t unmatched = 0;
    for (const auto& [desc, entries] : parsed.ev) {
        auto matched = match_asset(desc, descriptions);
        if (!matched) {
            ++unmatched;
            continue;
        }
        auto& bucket = predicted[*matched];
        for (const auto& e : entries) bucket.amounts.emplace(normalize_citation(e.citation), e.amount);
    }

    std::vector<Prf> parts;
    double are_sum = 0.0;
    size_t are_count = 0;
    for (const auto& desc : descriptions) {
        std::map<std::string, Cents> gold_amounts;
        for (const auto& e : gold.at(desc)) {
            gold_amounts[normalize_citation(e.at("citation").get<std::string>())] =
                e.at("max_value_cents").get<Cents>();
        }
        const Entry* entry = nullptr;
        if (auto it = predicted.find(desc); it != predicted.end()) entry = &it->second;

        size_t tp = 0;
        size_t pred_count = entry ? entry->amounts.size() : 0;
        for (const auto& [citation, gold_amount] : gold_amounts) {
            ++are_count;
            if (entry) {
                if (auto it = entry->amounts.find(citation); it != entry->amounts.end()) {
                    are_sum += stabilized_are(it->second, gold_amount);
                    if (within_tolerance(it->second, gold_amount)) ++tp;
                    continue;
                }
            }
            are_sum += 1.0; // missing prediction: full relative error
        }
        if (pred_count == 0 && gold_amounts.empty()) {
            parts.push_back(make_prf(1.0, 1.0));
        } else {
            double precision = pred_count ? static_cast<double>(tp) / pred_count : 0.0;
            double recall = gold_amounts.empty() ? 0.0 : static_cast<double>(tp) / gold_amounts.size();
            parts.push_back(make_prf(precision, recall));
        }
    }
    for (size_t i = 0; i < unmatched; ++i) parts.push_back(make_prf(0.0, 0.0));
    Prf prf = mean_prf(parts);
    score.precision = prf.precision;
    score.recall = prf.recall;
    score.f1 = prf.f1;
    score.are = are_count ? are_sum / are_count : 0.0;
}

void score_na(const ParsedResponse& parsed, const ordered_json& gold, SampleScore& score) {
    std::map<std::string, Cents> gold_amounts;
    for (const auto& [label, amount] : gold.items()) {
        gold_amounts[normalize_jurisdiction_label(label)] = amount.get<Cents>();
    }
    std::map<std::string, Cents> predicted;
    for (const auto& [label, amount] : parsed.na) {
        predicted.emplace(normalize_jurisdiction_label(label), amount);
    }
    size_t tp = 0;
    double are_sum = 0.0;
    size_t are_count = 0;
    for (const auto& [label, gold_amount] : gold_amounts) {
        ++are_count;
        auto it = predicted.find(label);
        if (it == predicted.end()) {
            are_sum += 1.0;
            continue;
        }
        are_sum += stabilized_are(it->second, gold_amount);
        if (within_tolerance(it->second, gold_amount)) ++tp;
    }
    double precision = predicted.empty() ? 0.0 : static_cast<double>(tp) / predicted.size();
    double recall = gold_amounts.empty() ? 0.0 : static_cast<double>(tp) / gold_amounts.size();
    Prf prf = make_prf(precision, recall);
    score.precision = prf.precision;
    score.recall = prf.recall;
    score.f1 = prf.f1;
    score.are = are_count ? are_sum / are_count : 0.0;
}

void score_oe(const ParsedResponse& parsed, const ordered_json& gold, const Case& c,
              const Corpus& corpus, SampleScore& score) {
    const Cents optimal = gold.at("nonexempt_cents").get<Cents>();
    const ordered_json& gold_claims = gold.at("claims");

    std::vector<std::string> descriptions;
    std::map<std::string, const AnnotatedAsset*> by_description;
    for (const auto& a : c.assets) {
        if (!a.is_relevant) continue;
        descriptions.push_back(a.description);
        by_description[a.description] = &a;
    }

    // Resolve predictions into a schedule; anything referencing an unknown
    // asset or citation renders the whole schedule invalid.
    bool resolvable = true;
    std::optional<JurisdictionId> regime;
    std::map<std::string, std::set<std::string>> predicted; // description -> citations
    ExemptionSchedule schedule;
    size_t unmatched = 0;
    Cents claimed_total = 0;
    for (const auto& [desc, claims] : parsed.oe) {
        auto matched = match_asset(desc, descriptions);
        if (!matched) {
            ++unmatched;
            resolvable = false;
            continue;
        }
        for (const auto& claim : claims) {
            const ExemptionStatute* statute = corpus.find_statute(claim.citation);
            if (!statute) {
                resolvable = false;
                continue;
            }
            if (!regime) regime = statute->jurisdiction;
            predicted[*matched].insert(normalize_citation(claim.citation));
            schedule.claims.push_back(
                {by_description.at(*matched)->asset_id, statute->citation, claim.amount});
            claimed_total += claim.amount;
        }
    }

    bool allowable = false;
    if (regime) {
        allowable = std::find(c.allowable_jurisdictions.begin(), c.allowable_jurisdictions.end(),
                              *regime) != c.allowable_jurisdictions.end();
    } else if (parsed.oe.empty() || predicted.empty()) {
        // An empty schedule is vacuously legal under any allowable regime.
        regime = c.allowable_jurisdictions.empty() ? JurisdictionId::federal()
                                                   : c.allowable_jurisdictions.front();
        allowable = !c.allowable_jurisdictions.empty();
    }

    bool valid = resolvable && regime && allowable;
    if (valid) {
        schedule.jurisdiction = *regime;
        valid = static_cast<bool>(is_valid_schedule(c, schedule, corpus));
    }
    score.schedule_valid = valid;

    Cents achieved = total_estate_value(c) - claimed_total;
    score.exact = valid && within_tolerance(achieved, optimal);
    score.are = valid ? stabilized_are(achieved, optimal) : 1.0;

    // Per-asset set scores, gated on validity: precision against the
    // annotated applicable set for the chosen regime (alternate optima are
    // not penalized), recall against the gold schedule's claims.
    std::vector<Prf> parts;
    for (const auto& desc : descriptions) {
        std::set<std::string> gold_set;
        if (gold_claims.contains(desc)) {
            for (const auto& e : gold_claims.at(desc)) {
                gold_set.insert(normalize_citation(e.at("citation").get<std::string>()));
            }
        }
        std::set<std::string> pred_set;
        if (auto it = predicted.find(desc); it != predicted.end()) pred_set = it->second;
        if (pred_set.empty() && gold_set.empty()) continue;
        if (!valid) {
            parts.push_back(make_prf(0.0, 0.0));
            continue;
        }
        std::set<std::string> applicable;
        for (const auto& cite : applicable_exemptions(*by_description.at(desc), *regime)) {
            applicable.insert(normalize_citation(cite));
        }
        size_t tp_precision = 0;
        for (const auto& cite : pred_set) tp_precision += applicable.count(cite);
        size_t tp_recall = 0;
        for (const auto& cite : gold_set) tp_recall += pred_set.count(cite);
        double precision =
            pred_set.empty() ? 0.0 : static_cast<double>(tp_precision) / pred_set.size();
        double recall = gold_set.empty() ? 1.0 : static_cast<double>(tp_recall) / gold_set.size();
        parts.push_back(make_prf(precision, recall));
    }
    for (size_t i = 0; i < unmatched; ++i) parts.push_back(make_prf(0.0, 0.0));
    Prf prf = mean_prf(parts);
    score.precision = prf.precision;
    score.recall = prf.recall;
    score.f1 = prf.f1;
}

} // namespace

SampleScore score_sample(Task task, const ParsedResponse& parsed, const ordered_json& gold,
                         const Case& c, const Corpus& corpus) {
    SampleScore score;
    score.format_valid = parsed.format_valid;
    if (task == Task::EV || task == Task::NA || task == Task::OE) score.are = 1.0;
    if (task == Task::OE) {
        score.schedule_valid = false;
        score.exact = false;
    }
    if (!parsed.format_valid) return score; // scored as incorrect

    switch (task) {
    case Task::AE: score_ae(parsed, gold, score); break;
    case Task::EC: score_ec(parsed, gold, score); break;
    case Task::EV: score_ev(parsed, gold, score); break;
    case Task::NA: score_na(parsed, gold, score); break;
    case Task::OE: score_oe(parsed, gold, c, corpus, score); break;
    }
    return score;
}

MetricReport evaluate_run(const TaskDataset& dataset,
                          const std::map<std::string, std::string>& responses, bool include_dev) {
    for (const auto& [id, text] : responses) {
        if (!dataset.find_instance(id)) throw UnknownInstanceId("response for unknown instance: " + id);
    }

    MetricReport report;
    report.dataset = dataset.manifest.name;
    report.task = task_name(dataset.manifest.task);
    report.variant = variant_label(dataset.manifest.variant);

    std::map<std::string, Case> case_cache;
    double mare_sum = 0.0;
    size_t mare_count = 0;
    size_t valid_count = 0, valid_total = 0, exact_count = 0;
    for (const auto& inst : dataset.instances) {
        if (inst.split == "dev" && !include_dev) continue;
        ParsedResponse parsed;
        if (auto it = responses.find(inst.instance_id); it != responses.end()) {
            parsed = parse_response(inst.task, it->second);
        } else {
            parsed.task = inst.task; // missing response scores as invalid format
        }
        auto cached = case_cache.find(inst.case_ref);
        if (cached == case_cache.end()) {
            cached = case_cache.emplace(inst.case_ref, dataset.load_case(inst.case_ref)).first;
        }
        SampleScore score = score_sample(inst.task, parsed, inst.gold, cached->second, dataset.corpus);
        score.instance_id = inst.instance_id;
        score.split = inst.split;

        ++report.scored;
        if (!score.format_valid) ++report.malformed;
        report.macro_precision += score.precision;
        report.macro_recall += score.recall;
        report.macro_f1 += score.f1;
        if (score.are) {
            mare_sum += *score.are;
            ++mare_count;
        }
        if (score.schedule_valid) {
            ++valid_total;
            if (*score.schedule_valid) ++valid_count;
        }
        if (score.exact && *score.exact) ++exact_count;
        report.samples.push_back(std::move(score));
    }
    if (report.scored > 0) {
        report.macro_precision /= report.scored;
        report.macro_recall /= report.scored;
        report.macro_f1 /= report.scored;
        report.malformed_rate = static_cast<double>(report.malformed) / report.scored;
    }
    if (mare_count > 0) report.mare = mare_sum / mare_count;
    if (valid_total > 0) {
        report.valid_rate = static_cast<double>(valid_count) / valid_total;
        report.exact_rate = static_cast<double>(exact_count) / valid_total;
    }
    return report;
}

ordered_json report_to_json(const MetricReport& report, bool with_samples) {
    ordered_json j;
    j["dataset"] = report.dataset;
    j["task"] = report.task;
    j["variant"] = report.variant;
    j["samples_scored"] = report.scored;
    j["malformed"] = report.malformed;
    j["malformed_rate"] = report.malformed_rate;
    j["macro_precision"] = report.macro_precision;
    j["macro_recall"] = report.macro_recall;
    j["macro_f1"] = report.macro_f1;
    if (report.mare) j["mare"] = *report.mare;
    if (report.valid_rate) j["schedule_valid_rate"] = *report.valid_rate;
    if (report.exact_rate) j["optimal_rate"] = *report.exact_rate;
    if (with_samples) {
        ordered_json arr = ordered_json::array();
        for (const auto& s : report.samples) {
            ordered_json sj;
            sj["instance_id"] = s.instance_id;
            sj["split"] = s.split;
            sj["format_valid"] = s.format_valid;
            sj["precision"] = s.precision;
            sj["recall"] = s.recall;
            sj["f1"] = s.f1;
            if (s.are) sj["are"] = *s.are;
            if (s.schedule_valid) sj["schedule_valid"] = *s.schedule_valid;
            if (s.exact) sj["optimal"] = *s.exact;
            arr.push_back(std::move(sj));
        }
        j["samples"] = std::move(arr);
    }
    return j;
}

std::string render_report_table(const std::vector<ordered_json>& reports) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-34s %-4s %-16s %6s %7s %7s %7s %7s %9s\n", "dataset", "task",
                  "variant", "n", "P", "R", "F1", "MARE", "malformed");
    out << line;
    out << std::string(102, '-') << '\n';
    for (const auto& r : reports) {
        std::string mare = r.contains("mare") ? [&] {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%7.4f", r.at("mare").get<double>());
            return std::string(buf);
        }() : std::string("      -");
        std::snprintf(line, sizeof line, "%-34s %-4s %-16s %6zu %7.4f %7.4f %7.4f %s %8.2f%%\n",
                      r.at("dataset").get<std::string>().c_str(),
                      r.at("task").get<std::string>().c_str(),
                      r.at("variant").get<std::string>().c_str(),
                      r.at("samples_scored").get<std::size_t>(),
                      r.at("macro_precision").get<double>(), r.at("macro_recall").get<double>(),
                      r.at("macro_f1").get<double>(), mare.c_str(),
                      100.0 * r.at("malformed_rate").get<double>());
        out << line;
    }
    return out.str();
}

} // namespace exempt
