#include "exempt/generator.hpp"

#include "exempt/errors.hpp"
#include "exempt/jurisdiction.hpp"
#include "exempt/normalize.hpp"
#include "exempt/solver.hpp"

#include <algorithm>
#include <cassert>

namespace exempt {

using nlohmann::ordered_json;

GeneratorContext GeneratorContext::load(const GenerationConfig& config) {
    GeneratorContext ctx;
    ctx.corpus = load_statute_corpus(config.statute_directory);
    ctx.assets = load_asset_library(config.asset_directory / "assets.json");
    validate_asset_library(ctx.assets, ctx.corpus);
    ctx.templates = load_template_library(config.template_directory / "templates.json");
    for (const auto& state : config.state_jurisdictions) {
        if (!ctx.corpus.find_label(state)) {
            throw DataError("configured state has no statute profile: " + state);
        }
    }
    return ctx;
}

namespace {

std::string pick_other(Rng& rng, const std::vector<std::string>& pool, const std::string& avoid) {
    std::vector<std::string> options;
    for (const auto& s : pool) {
        if (s != avoid) options.push_back(s);
    }
    if (options.empty()) throw DataError("need at least two distinct states for timelines");
    return options[rng.below(options.size())];
}

// Timeline shapes: either the target state already spans the whole 730-day
// window, or the final move lands inside the window and the target dominates
// the 180-day lookback with a strictly largest share.
std::vector<DomicileRecord> build_timeline(const GenerationConfig& config,
                                           const GeneratorContext& ctx, Rng& rng,
                                           const std::string& target, Date petition, int count) {
    const ResidencyWindow window = ResidencyWindow::for_petition(petition);
    std::vector<std::string> pool;
    for (const auto& s : config.state_jurisdictions) {
        if (s != target) pool.push_back(s);
    }
    if (pool.empty()) {
        for (const auto& profile : ctx.corpus.profiles) {
            if (!profile.id.is_federal() && profile.id.state_name != target) {
                pool.push_back(profile.id.state_name);
            }
        }
    }

    std::vector<std::string> states(count);
    std::vector<Date> starts(count);
    bool spanning = count == 1 || pool.empty() || rng.chance(0.5);
    std::vector<std::string> walk_pool = pool;
    walk_pool.push_back(target);

    if (spanning) {
        states[count - 1] = target;
        starts[count - 1] = add_days(window.window_start, -static_cast<int>(rng.range(5, 400)));
        for (int i = count - 2; i >= 0; --i) {
            states[i] = pick_other(rng, walk_pool, states[i + 1]);
            starts[i] = add_days(starts[i + 1], -static_cast<int>(rng.range(120, 900)));
        }
    } else {
        states[count - 1] = pool[rng.below(pool.size())];
        starts[count - 1] = add_days(window.window_start, static_cast<int>(rng.range(30, 700)));
        states[count - 2] = target;
        if (count == 2) {
            starts[0] = add_days(window.lookback_start, -static_cast<int>(rng.range(30, 2000)));
        } else {
            // Target takes more than half the lookback; its predecessor gets
            // the strictly smaller remainder, older states none.
            int target_share = static_cast<int>(rng.range(91, 179));
            starts[count - 2] = add_days(window.window_start, -target_share);
            states[count - 3] = pick_other(rng, walk_pool, target);
            starts[count - 3] = add_days(window.lookback_start, -static_cast<int>(rng.range(30, 600)));
            for (int i = count - 4; i >= 0; --i) {
                states[i] = pick_other(rng, walk_pool, states[i + 1]);
                starts[i] = add_days(starts[i + 1], -static_cast<int>(rng.range(120, 900)));
            }
        }
    }

    std::vector<DomicileRecord> records;
    for (int i = 0; i < count; ++i) {
        DomicileRecord rec;
        rec.state_name = states[i];
        rec.start_date = starts[i];
        rec.city = ctx.templates.city_for(states[i], rng);
        records.push_back(std::move(rec));
    }
    return records;
}

std::string zero_pad(int value, int width) {
    std::string digits = std::to_string(value);
    while (static_cast<int>(digits.size()) < width) digits.insert(digits.begin(), '0');
    return digits;
}

} // namespace

Case generate_case(const GenerationConfig& config, const GeneratorContext& ctx, Rng& rng,
                   const std::string& case_id) {
    Case c;
    c.case_id = case_id;
    c.married = rng.chance(config.married_ratio);

    const std::string family = ctx.templates.last_names[rng.below(ctx.templates.last_names.size())];
    const std::string first1 = ctx.templates.first_names[rng.below(ctx.templates.first_names.size())];
    c.debtor_names.push_back(first1 + " " + family);
    if (c.married) {
        std::string first2 = first1;
        while (first2 == first1) {
            first2 = ctx.templates.first_names[rng.below(ctx.templates.first_names.size())];
        }
        c.debtor_names.push_back(first2 + " " + family);
    }

    c.petition_date = add_days(make_date(2024, 1, 1), static_cast<int>(rng.range(0, 729)));

    const std::string target =
        config.state_jurisdictions[rng.below(config.state_jurisdictions.size())];
    int domicile_count = static_cast<int>(rng.range(config.domicile_count_min, config.domicile_count_max));
    c.domiciles = build_timeline(config, ctx, rng, target, c.petition_date, domicile_count);

    int asset_count = static_cast<int>(rng.range(config.asset_count_min, config.asset_count_max));
    auto relevant_pool = ctx.assets.relevant();
    if (asset_count > static_cast<int>(relevant_pool.size())) {
        throw ExhaustedAssetLibrary("asset library holds " + std::to_string(relevant_pool.size()) +
                                    " records, case needs " + std::to_string(asset_count));
    }
    std::vector<size_t> order(relevant_pool.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    for (int i = 0; i < asset_count; ++i) {
        const AssetRecord& rec = *relevant_pool[order[i]];
        AnnotatedAsset asset;
        asset.asset_id = rec.asset_id;
        asset.description = rec.description;
        Cents span_dollars = (rec.value_max - rec.value_min) / 100;
        asset.value = rec.value_min + 100 * (span_dollars > 0
                                                 ? static_cast<Cents>(rng.below(
                                                       static_cast<std::uint64_t>(span_dollars) + 1))
                                                 : 0);
        asset.applicable = rec.applicable;
        c.assets.push_back(std::move(asset));
    }

    // Obfuscation draws live on a forked stream so the booleans never move
    // the main stream (gold must not depend on them).
    Rng obf = rng.fork(0x0bf05ca7edull);

    if (config.irrelevant_domicile_facts && !c.domiciles.empty()) {
        size_t anchor = obf.below(c.domiciles.size());
        DomicileRecord rec;
        rec.is_relevant = false;
        rec.state_name = pick_other(obf, config.state_jurisdictions, c.domiciles[anchor].state_name);
        rec.start_date = add_days(c.domiciles[anchor].start_date, static_cast<int>(obf.range(1, 3)));
        rec.city = ctx.templates.city_for(rec.state_name, obf);
        rec.stay_days = static_cast<int>(obf.range(7, 45));
        rec.narrative =
            ctx.templates.residence_purposes[obf.below(ctx.templates.residence_purposes.size())];
        c.domiciles.push_back(std::move(rec));
    }

    if (config.irrelevant_asset_facts) {
        auto distractor_pool = ctx.assets.distractors();
        if (distractor_pool.empty()) throw ExhaustedAssetLibrary("no distractor asset records");
        int extra = 1 + static_cast<int>(obf.chance(0.5));
        extra = std::min<int>(extra, static_cast<int>(distractor_pool.size()));
        std::vector<size_t> dorder(distractor_pool.size());
        for (size_t i = 0; i < dorder.size(); ++i) dorder[i] = i;
        obf.shuffle(dorder);
        for (int i = 0; i < extra; ++i) {
            const AssetRecord& rec = *distractor_pool[dorder[i]];
            AnnotatedAsset asset;
            asset.asset_id = rec.asset_id;
            asset.description = rec.description;
            Cents span_dollars = (rec.value_max - rec.value_min) / 100;
            asset.value = rec.value_min +
                          100 * (span_dollars > 0 ? static_cast<Cents>(obf.below(
                                                        static_cast<std::uint64_t>(span_dollars) + 1))
                                                  : 0);
            asset.applicable = rec.applicable;
            asset.is_relevant = false;
            asset.narrative = rec.narrative;
            // Insert without permuting the relevant assets' relative order.
            size_t position = obf.below(c.assets.size() + 1);
            c.assets.insert(c.assets.begin() + static_cast<long>(position), std::move(asset));
        }
    }

    if (config.asset_opinions) {
        std::vector<std::string> ids;
        for (const auto& a : c.assets) {
            if (a.is_relevant) ids.push_back(a.asset_id);
        }
        if (!ids.empty()) {
            int opinions = 1 + static_cast<int>(obf.chance(0.5) && ids.size() > 1);
            obf.shuffle(ids);
            for (int i = 0; i < opinions; ++i) {
                c.opinions.push_back({OpinionNote::Kind::Asset, ids[static_cast<size_t>(i)]});
            }
        }
    }
    if (config.domicile_opinions && !c.domiciles.empty()) {
        size_t pick = obf.below(c.domiciles.size());
        c.opinions.push_back({OpinionNote::Kind::Domicile, c.domiciles[pick].state_name});
    }

    c.allowable_jurisdictions =
        determine_allowable_jurisdictions(c.domiciles, c.petition_date, ctx.corpus);
    bool target_selected = false;
    for (const auto& id : c.allowable_jurisdictions) {
        if (!id.is_federal() && id.state_name == target) target_selected = true;
    }
    if (!target_selected) {
        throw RuntimeFailure("timeline construction missed the target state " + target);
    }
    return c;
}

namespace {

struct NameForms {
    std::string full;        // "Tobias and Leon Fischer" / "Luis Gonzalez"
    std::string short_names; // "Tobias and Leon" / "Luis"
    std::string family;      // "the Fischers" / "Luis Gonzalez"
    std::string one_name;    // "Megha"
    std::string debtor_label;
};

NameForms name_forms(const Case& c, Rng& rng) {
    NameForms out;
    auto first_of = [](const std::string& name) { return name.substr(0, name.find(' ')); };
    auto last_of = [](const std::string& name) {
        size_t pos = name.rfind(' ');
        return pos == std::string::npos ? name : name.substr(pos + 1);
    };
    if (c.married) {
        std::string family = last_of(c.debtor_names[0]);
        out.full = first_of(c.debtor_names[0]) + " and " + first_of(c.debtor_names[1]) + " " + family;
        out.short_names = first_of(c.debtor_names[0]) + " and " + first_of(c.debtor_names[1]);
        char tail = family.empty() ? '\0' : family.back();
        out.family = "the " + family + ((tail == 's' || tail == 'x' || tail == 'z') ? "es" : "s");
        out.one_name = first_of(c.debtor_names[rng.below(2)]);
        out.debtor_label = "Debtors";
    } else {
        out.full = c.debtor_names[0];
        out.short_names = first_of(c.debtor_names[0]);
        out.family = c.debtor_names[0];
        out.one_name = first_of(c.debtor_names[0]);
        out.debtor_label = "Debtor";
    }
    return out;
}

} // namespace

std::string render_fact_pattern(const Case& c, const TemplateLibrary& templates, Rng& rng,
                                bool include_domiciles, bool include_assets) {
    NameForms names = name_forms(c, rng);
    std::map<std::string, std::string> base;
    base["names"] = names.full;
    base["short_names"] = names.short_names;
    base["family"] = names.family;
    base["one_name"] = names.one_name;
    base["debtor_label"] = names.debtor_label;

    std::vector<std::string> sentences;
    {
        auto slots = base;
        slots["date"] = format_date_style(c.petition_date, static_cast<int>(rng.below(kDateStyleCount)));
        sentences.push_back(pick_and_render(templates, "filing", slots, rng));
    }

    if (include_domiciles) {
        // Chronological, with a same-date distractor reading right after the
        // move it shadows.
        std::vector<const DomicileRecord*> ordered;
        for (const auto& d : c.domiciles) ordered.push_back(&d);
        std::stable_sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
            if (a->start_date != b->start_date) return a->start_date < b->start_date;
            return a->is_relevant > b->is_relevant;
        });
        bool first_relevant = true;
        for (const auto* rec : ordered) {
            auto slots = base;
            slots["city"] = rec->city;
            slots["state"] = rec->state_name;
            slots["date"] =
                format_date_style(rec->start_date, static_cast<int>(rng.below(kDateStyleCount)));
            if (!rec->is_relevant) {
                slots["days"] = std::to_string(rec->stay_days.value_or(30));
                slots["purpose"] = rec->narrative;
                sentences.push_back(pick_and_render(templates, "irrelevant_residence", slots, rng));
                continue;
            }
            sentences.push_back(pick_and_render(
                templates, first_relevant ? "first_domicile" : "relocation", slots, rng));
            first_relevant = false;
        }
        for (const auto& opinion : c.opinions) {
            if (opinion.kind != OpinionNote::Kind::Domicile) continue;
            auto slots = base;
            slots["state"] = opinion.subject;
            sentences.push_back(pick_and_render(templates, "domicile_opinions", slots, rng));
        }
    }

    if (include_assets) {
        for (const auto& asset : c.assets) {
            auto slots = base;
            slots["value"] =
                format_money_style(asset.value, static_cast<int>(rng.below(kMoneyStyleCount)));
            slots["description"] = asset.description;
            slots["a_description"] = with_article(asset.description, false);
            slots["A_description"] = with_article(asset.description, true);
            slots["the_description"] = "the " + asset.description;
            slots["The_description"] = "The " + asset.description;
            if (!asset.is_relevant && !asset.narrative.empty()) {
                sentences.push_back(render_template(asset.narrative, slots));
            } else {
                sentences.push_back(pick_and_render(templates, "ownership", slots, rng));
            }
            for (const auto& opinion : c.opinions) {
                if (opinion.kind != OpinionNote::Kind::Asset || opinion.subject != asset.asset_id) {
                    continue;
                }
                sentences.push_back(pick_and_render(templates, "asset_opinions", slots, rng));
            }
        }
    }

    std::string out;
    for (size_t i = 0; i < sentences.size(); ++i) {
        if (i) out += ' ';
        out += sentences[i];
    }
    return out;
}

const std::string& instruction_text(Task task) {
    static const std::string middle =
        "Your answer to this task must be based solely on applying the provided Federal and State "
        "statutes to the given facts. If the task involves a married couple, assume all assets "
        "mentioned are jointly owned, with each spouse holding an equal undivided interest, unless "
        "explicitly stated otherwise. Assume all assets are held for the personal use of the "
        "Debtor(s), unless explicitly stated otherwise.";
    static const std::string ae =
        "Determine which state or federal exemptions may be claimed by the Debtor(s) under the "
        "provided statutes.\n\n"
        "Your answer to this task must be based solely on applying the provided Federal and State "
        "statutes to the given facts.\n\n"
        "Response Format: Your response must end with your final answer in the following template: "
        "FINAL ANSWER: [YOUR FINAL ANSWER]. Your final answer must consist of only a comma-separated "
        "list of jurisdictions, without any additional text. States should be identified by name. If "
        "federal exemptions are allowed, include 'Federal' in the list. Example response format: \n"
        "FINAL ANSWER: Alaska, Federal";
    static const std::string ec =
        "For each asset in the estate, identify all applicable exemptions under which that asset may "
        "be protected.\n\n" +
        middle +
        "\n\n"
        "Response Format: Your response must end with your final answer in the following template: "
        "FINAL ANSWER: [YOUR FINAL ANSWER]. Your final answer must consist of only valid JSON in the "
        "exact format specified below. Provide your final answer as a JSON object where: each key is "
        "the exact asset description provided in the fact pattern, and each value is an array of "
        "applicable exemption citations. Example response format: \n"
        "FINAL ANSWER: {\"1981 DeLorean DMC-12\": [\"11 U.S.C. § 522(d)(2)\", \"11 U.S.C. "
        "§ 522(d)(5)\"]}";
    static const std::string ev =
        "For each asset in the estate, identify all applicable exemptions and calculate the maximum "
        "dollar value of the asset that may be protected under each applicable exemption.\n\n" +
        middle +
        "\n\n"
        "Response Format: Your response must end with your final answer in the following template: "
        "FINAL ANSWER: [YOUR FINAL ANSWER]. Your final answer must consist of only valid JSON in the "
        "exact format specified below. Provide your final answer as a JSON object where: each key is "
        "the exact asset description provided in the fact pattern, and each value is an array of "
        "objects, one per applicable exemption, each containing a citation and the maximum "
        "protectable value. Max values must not contain any commas or dollar signs. Example response "
        "format: \n"
        "FINAL ANSWER: {\"1981 DeLorean DMC-12\": [{\"citation\": \"11 U.S.C. § 522(d)(2)\", "
        "\"max_value\": 4450}]}";
    static const std::string na =
        "Determine the minimal total dollar value of non-exempt assets after optimally applying all "
        "applicable exemptions, for each allowable exemption jurisdiction.\n\n" +
        middle +
        "\n\n"
        "Response Format: Your response must end with your final answer in the following template: "
        "FINAL ANSWER: [YOUR FINAL ANSWER]. Your final answer must consist of only valid JSON in the "
        "exact format specified below. Provide your final answer as a JSON object where: each key is "
        "an allowable exemption jurisdiction ('Federal' or the state name), and each value is the "
        "minimal total dollar value of non-exempt assets under that jurisdiction. Values must not "
        "contain any commas or dollar signs. Example response format: \n"
        "FINAL ANSWER: {\"Federal\": 3000, \"Alaska\": 4500}";
    static const std::string oe =
        "Determine the optimal set of exemptions to best protect the assets in the estate. The goal "
        "is to minimize the total dollar value of non-exempt assets. If property may be exempted "
        "under multiple jurisdictions, you must select the jurisdiction that would result in the "
        "best solution.\n\n" +
        middle +
        "\n\n"
        "Response Format: Your response must end with your final answer in the following template: "
        "FINAL ANSWER: [YOUR FINAL ANSWER]. Your final answer must consist of only valid JSON in the "
        "exact format specified below. Provide your response as a JSON object where: each key is the "
        "exact asset description provided in the fact pattern, and each value is an array "
        "representing the optimal exemptions for this asset. Each exemption in this array is an "
        "object containing a citation and a claim value. Claim values must not contain any commas or "
        "dollar signs. Example response format: \n"
        "FINAL ANSWER: {\"1981 DeLorean DMC-12\": [{\"citation\": \"11 U.S.C. § 522(d)(2)\", "
        "\"claim_value\": 3000}]}";
    switch (task) {
    case Task::AE: return ae;
    case Task::EC: return ec;
    case Task::EV: return ev;
    case Task::NA: return na;
    case Task::OE: return oe;
    }
    return ae;
}

std::string render_statute_block(const Corpus& corpus, const std::vector<std::string>& states) {
    std::string out;
    auto render_profile = [&](const JurisdictionProfile& profile) {
        if (!out.empty()) out += "\n";
        out += profile.id.is_federal() ? "Federal Exemptions:" : profile.id.label() + " Exemptions:";
        out += '\n';
        if (!profile.preamble.empty()) {
            out += profile.preamble;
            out += '\n';
        }
        for (const auto& st : profile.statutes) {
            out += st.citation;
            out += ": ";
            out += st.body_text;
            out += '\n';
        }
    };
    const JurisdictionProfile* federal = corpus.find(JurisdictionId::federal());
    if (federal) render_profile(*federal);
    std::vector<std::string> seen;
    for (const auto& state : states) {
        if (std::find(seen.begin(), seen.end(), state) != seen.end()) continue;
        seen.push_back(state);
        const JurisdictionProfile* profile = corpus.find_label(state);
        if (!profile) throw DataError("no statute profile for configured state: " + state);
        render_profile(*profile);
    }
    return out;
}

namespace {

std::vector<JurisdictionId> sorted_allowable(const Case& c) {
    auto sorted = c.allowable_jurisdictions;
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

std::vector<std::string> merged_citations(const Case& c, const AnnotatedAsset& asset) {
    std::vector<std::string> out;
    for (const auto& jur : sorted_allowable(c)) {
        for (const auto& cite : applicable_exemptions(asset, jur)) out.push_back(cite);
    }
    return out;
}

ordered_json gold_ae(const Case& c) {
    ordered_json arr = ordered_json::array();
    for (const auto& jur : sorted_allowable(c)) arr.push_back(jur.label());
    return arr;
}

ordered_json gold_ec(const Case& c) {
    ordered_json obj = ordered_json::object();
    for (const auto& asset : c.assets) {
        if (!asset.is_relevant) continue;
        obj[asset.description] = merged_citations(c, asset);
    }
    return obj;
}

Cents asset_level_cap(const ExemptionStatute& statute, bool married, Cents value) {
    Cents cap = std::min(value, effective_aggregate_limit(statute, married));
    if (auto per_item = effective_per_item_limit(statute, married)) cap = std::min(cap, *per_item);
    return cap;
}

ordered_json gold_ev(const Case& c, const Corpus& corpus) {
    ordered_json obj = ordered_json::object();
    for (const auto& asset : c.assets) {
        if (!asset.is_relevant) continue;
        ordered_json entries = ordered_json::array();
        for (const auto& cite : merged_citations(c, asset)) {
            const ExemptionStatute* statute = corpus.find_statute(cite);
            ordered_json entry;
            entry["citation"] = statute->citation;
            entry["max_value_cents"] = asset_level_cap(*statute, c.married, asset.value);
            entries.push_back(std::move(entry));
        }
        obj[asset.description] = std::move(entries);
    }
    return obj;
}

ordered_json gold_na(const Case& c, const Corpus& corpus) {
    ordered_json obj = ordered_json::object();
    for (const auto& jur : sorted_allowable(c)) {
        obj[jur.label()] = solve_optimal(c, jur, corpus).nonexempt_value;
    }
    return obj;
}

ordered_json gold_oe(const Case& c, const Corpus& corpus) {
    auto [jurisdiction, schedule] = solve_best_jurisdiction(c, corpus);
    ordered_json claims = ordered_json::object();
    for (const auto& asset : c.assets) {
        if (!asset.is_relevant) continue;
        ordered_json entries = ordered_json::array();
        for (const auto& claim : schedule.claims) {
            if (claim.asset_id != asset.asset_id) continue;
            ordered_json entry;
            entry["citation"] = claim.citation;
            entry["claim_value_cents"] = claim.amount;
            entries.push_back(std::move(entry));
        }
        if (!entries.empty()) claims[asset.description] = std::move(entries);
    }
    ordered_json obj;
    obj["jurisdiction"] = jurisdiction.label();
    obj["nonexempt_cents"] = schedule.nonexempt_value;
    obj["claims"] = std::move(claims);
    return obj;
}

} // namespace

ordered_json gold_for_task(Task task, const Case& c, const Corpus& corpus) {
    switch (task) {
    case Task::AE: return gold_ae(c);
    case Task::EC: return gold_ec(c);
    case Task::EV: return gold_ev(c, corpus);
    case Task::NA: return gold_na(c, corpus);
    case Task::OE: return gold_oe(c, corpus);
    }
    return {};
}

std::string render_solved_steps(const std::vector<Task>& variant, const Case& c,
                                const Corpus& corpus) {
    std::string out =
        "The following reasoning steps have already been solved. Use this information to aid you in "
        "completing the remainder of the task.";
    for (Task t : variant) {
        ordered_json gold = gold_for_task(t, c, corpus);
        switch (t) {
        case Task::AE: {
            std::vector<std::string> labels;
            for (const auto& label : gold) labels.push_back(label.get<std::string>());
            out += "\nThe allowable exemption jurisdictions have been determined: " +
                   join_with_and(labels) + ".";
            break;
        }
        case Task::EC: {
            out += "\nAll applicable exemptions have been identified below for each asset in the "
                   "estate.";
            for (const auto& [desc, citations] : gold.items()) {
                std::vector<std::string> cites = citations.get<std::vector<std::string>>();
                out += "\nThe " + desc + " may be exempted under " + join_with_and(cites) + ".";
            }
            break;
        }
        case Task::EV: {
            out += "\nThe maximum protectable value of each asset has been calculated below for "
                   "each applicable exemption.";
            for (const auto& [desc, entries] : gold.items()) {
                std::vector<std::string> parts;
                for (const auto& entry : entries) {
                    parts.push_back("up to " +
                                    format_money(entry.at("max_value_cents").get<Cents>()) +
                                    " under " + entry.at("citation").get<std::string>());
                }
                out += "\nThe " + desc + " may be protected " + join_with_and(parts) + ".";
            }
            break;
        }
        case Task::NA: {
            std::vector<std::string> parts;
            for (const auto& [label, cents] : gold.items()) {
                parts.push_back(label + ": " + format_money(cents.get<Cents>()));
            }
            out += "\nThe minimal total non-exempt asset value has been determined for each "
                   "allowable jurisdiction: " +
                   join_with_and(parts) + ".";
            break;
        }
        case Task::OE:
            break; // never a predecessor
        }
    }
    return out;
}

std::vector<std::vector<Task>> task_variants(Task task, bool solved_steps) {
    std::vector<std::vector<Task>> variants{{}};
    if (!solved_steps) return variants;
    std::vector<Task> prefix;
    for (int id = 1; id < static_cast<int>(task); ++id) {
        prefix.push_back(static_cast<Task>(id));
        variants.push_back(prefix);
    }
    return variants;
}

namespace {

std::uint64_t derive_seed(std::uint64_t seed, const std::string& label, int index) {
    std::uint64_t x = seed;
    Rng::splitmix64(x);
    for (unsigned char ch : label) {
        x ^= ch;
        Rng::splitmix64(x);
    }
    x ^= static_cast<std::uint64_t>(index) * 0x9E3779B97F4A7C15ull;
    return Rng::splitmix64(x);
}

} // namespace

std::vector<GeneratedDataset> generate_dataset(const GenerationConfig& config,
                                               const GeneratorContext& ctx) {
    config.validate();
    std::error_code ec;
    std::filesystem::create_directories(config.output_directory, ec);
    if (!std::filesystem::is_directory(config.output_directory)) {
        throw OutputNotWritable("cannot create output directory: " +
                                config.output_directory.string());
    }

    std::vector<GeneratedDataset> out;
    for (int task_id = config.start_task_id; task_id <= config.terminal_task_id; ++task_id) {
        Task task = static_cast<Task>(task_id);
        for (const auto& variant : task_variants(task, config.solved_steps)) {
            std::string dsname = (config.name.empty() ? "" : config.name + "__") +
                                 ascii_lower(task_name(task)) +
                                 (variant.empty() ? "" : "_" + variant_label(variant));
            // Case sampling keys off the cohort so paired suites (baseline vs
            // perturbed) draw identical underlying cases.
            std::string seed_label = (config.cohort.empty() ? dsname
                                                            : config.cohort + "__" +
                                                                  ascii_lower(task_name(task)) + "_" +
                                                                  variant_label(variant));
            std::filesystem::path root = config.output_directory / dsname;
            std::filesystem::remove_all(root);

            DatasetManifest manifest;
            manifest.name = dsname;
            manifest.task = task;
            manifest.variant = variant;
            manifest.seed = config.seed;
            manifest.corpus_hash = ctx.corpus.content_hash;
            manifest.config = config_to_json(config);
            DatasetWriter writer(root, manifest);

            const std::string instruction_ref = writer.put_component(instruction_text(task));
            const std::string statutes_ref =
                writer.put_component(render_statute_block(ctx.corpus, config.state_jurisdictions));

            bool include_domiciles =
                std::find(variant.begin(), variant.end(), Task::AE) == variant.end();
            bool include_assets = task != Task::AE;
            int id_width = std::max<int>(3, static_cast<int>(std::to_string(config.dataset_size).size()));

            for (int i = 0; i < config.dataset_size; ++i) {
                Rng case_rng(derive_seed(config.seed, seed_label, i));
                Case c = generate_case(config, ctx, case_rng, dsname + "-case-" + zero_pad(i, id_width));
                Rng render_rng = case_rng.fork(0x9e37u);

                TaskInstance inst;
                inst.instance_id = dsname + "-" + zero_pad(i, id_width);
                inst.task = task;
                inst.variant = variant;
                inst.split = (config.dataset_size > 5 && i < 5) ? "dev" : "test";
                inst.instruction_ref = instruction_ref;
                inst.statutes_ref = statutes_ref;
                inst.fact_pattern_ref = writer.put_component(
                    render_fact_pattern(c, ctx.templates, render_rng, include_domiciles, include_assets));
                if (!variant.empty()) {
                    inst.solved_steps_ref =
                        writer.put_component(render_solved_steps(variant, c, ctx.corpus));
                }
                inst.case_ref = c.case_id;
                inst.gold = gold_for_task(task, c, ctx.corpus);
                writer.put_case(c);
                writer.add_instance(std::move(inst));
            }
            writer.finalize(ctx.corpus);
            out.push_back({dsname, root, task, variant, static_cast<std::size_t>(config.dataset_size)});
        }
    }
    return out;
}

} // namespace exempt
