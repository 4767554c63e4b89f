#include "exempt/solver.hpp"

#include "exempt/errors.hpp"
#include "exempt/normalize.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace exempt {

namespace {

bool citation_in(const std::vector<std::string>& citations, const std::string& normalized) {
    for (const auto& c : citations) {
        if (normalize_citation(c) == normalized) return true;
    }
    return false;
}

} // namespace

ValidationResult is_valid_schedule(const Case& c, const ExemptionSchedule& schedule,
                                   const Corpus& corpus) {
    const JurisdictionProfile* profile = corpus.find(schedule.jurisdiction);
    if (!profile) {
        throw DataError("schedule names unknown jurisdiction: " + schedule.jurisdiction.label());
    }
    ValidationResult result;
    auto violate = [&](std::string msg) {
        result.valid = false;
        result.violations.push_back(std::move(msg));
    };

    std::map<std::string, const AnnotatedAsset*> assets;
    for (const auto& a : c.assets) assets[a.asset_id] = &a;

    // Merge duplicate (asset, citation) claims so split claims cannot dodge
    // per-item limits.
    struct Merged {
        const AnnotatedAsset* asset;
        const ExemptionStatute* statute;
        Cents amount = 0;
    };
    std::map<std::pair<std::string, std::string>, Merged> merged;
    for (const auto& claim : schedule.claims) {
        auto it = assets.find(claim.asset_id);
        if (it == assets.end()) throw UnknownAsset("unknown asset in schedule: " + claim.asset_id);
        const ExemptionStatute* statute = corpus.find_statute(claim.citation);
        if (!statute) throw UnknownCitation("unknown citation in schedule: " + claim.citation);
        if (claim.amount <= 0) {
            violate("claim amounts must be positive (" + claim.asset_id + " / " + claim.citation + ")");
            continue;
        }
        auto& m = merged[{claim.asset_id, normalize_citation(claim.citation)}];
        m.asset = it->second;
        m.statute = statute;
        m.amount += claim.amount;
    }

    std::map<const ExemptionStatute*, Cents> statute_total;
    std::map<const ExemptionStatute*, std::set<std::string>> statute_assets;
    std::map<std::string, Cents> asset_total;

    for (const auto& [key, m] : merged) {
        // (a) regime purity plus annotated applicability.
        if (m.statute->jurisdiction != profile->id) {
            violate(m.statute->citation + " does not belong to the " + profile->id.label() + " regime");
        } else if (!m.asset->is_relevant) {
            violate(m.asset->asset_id + " is not part of the estate");
        } else if (!citation_in(applicable_exemptions(*m.asset, profile->id), key.second)) {
            violate(m.statute->citation + " is not an annotated exemption for " + m.asset->asset_id);
        }
        // (c) per-item limit.
        if (auto per_item = effective_per_item_limit(*m.statute, c.married);
            per_item && m.amount > *per_item) {
            violate(m.asset->asset_id + ": claim under " + m.statute->citation +
                    " exceeds the per-item limit");
        }
        asset_total[m.asset->asset_id] += m.amount;
        statute_total[m.statute] += m.amount;
        statute_assets[m.statute].insert(m.asset->asset_id);
    }

    // (b) claims cannot exceed the asset's value.
    for (const auto& [asset_id, total] : asset_total) {
        if (total > assets.at(asset_id)->value) {
            violate(asset_id + ": claims exceed the asset's value");
        }
    }

    // (d) aggregate limits; overflow must be covered by the fallback, and all
    // draws into a target share the target's unused capacity.
    std::map<const ExemptionStatute*, Cents> drawn_into;
    for (const auto& [statute, total] : statute_total) {
        Cents aggregate = effective_aggregate_limit(*statute, c.married);
        if (total <= aggregate) continue;
        Cents overflow = total - aggregate;
        auto fb_limit = effective_fallback_limit(*statute, c.married);
        if (!fb_limit) {
            violate(statute->citation + ": claims exceed the aggregate limit");
            continue;
        }
        if (overflow > *fb_limit) {
            violate(statute->citation + ": claims exceed the aggregate limit plus the fallback cap");
            continue;
        }
        const ExemptionStatute* target = corpus.find_statute(*statute->constraints.fallback_exemption);
        drawn_into[target] += overflow;
    }
    for (const auto& [target, drawn] : drawn_into) {
        Cents own = 0;
        if (auto it = statute_total.find(target); it != statute_total.end()) own = it->second;
        Cents aggregate = effective_aggregate_limit(*target, c.married);
        if (!is_unlimited(aggregate) && cap_add(own, drawn) > aggregate) {
            violate(target->citation + ": fallback draws exceed the target's unused capacity");
        }
    }

    // (e) item claim counts over distinct assets.
    for (const auto& [statute, ids] : statute_assets) {
        if (auto count = effective_item_claim_count(*statute, c.married);
            count && static_cast<int>(ids.size()) > *count) {
            violate(statute->citation + ": more assets claimed than the item claim count allows");
        }
    }

    // (f) mutual exclusion.
    for (const auto& [statute, ids] : statute_assets) {
        if (!statute->constraints.mutual_exclusion) continue;
        const ExemptionStatute* partner = corpus.find_statute(*statute->constraints.mutual_exclusion);
        if (partner && statute_assets.count(partner) && statute->citation < partner->citation) {
            violate(statute->citation + " and " + partner->citation + " are mutually exclusive");
        }
    }

    return result;
}

namespace {

constexpr int kNoLimit = std::numeric_limits<int>::max();

struct StatuteModel {
    const ExemptionStatute* statute = nullptr;
    Cents aggregate = kUnlimited;
    Cents per_item = kUnlimited;
    int claim_count = kNoLimit;
    int fallback_target = -1;
    Cents fallback_limit = 0;
    int exclusion_partner = -1;
};

struct RegimeModel {
    JurisdictionId regime;
    bool married = false;
    Cents total_value = 0;
    std::vector<StatuteModel> statutes;
    std::vector<const AnnotatedAsset*> assets;  // relevant, descending value
    std::vector<std::vector<int>> applicable;   // per asset -> statute indices
};

RegimeModel build_model(const Case& c, const JurisdictionId& regime, const Corpus& corpus) {
    const JurisdictionProfile* profile = corpus.find(regime);
    if (!profile) throw DataError("no jurisdiction profile for " + regime.label());

    RegimeModel model;
    model.regime = regime;
    model.married = c.married;

    std::map<std::string, int> index;
    for (const auto& st : profile->statutes) {
        StatuteModel sm;
        sm.statute = &st;
        sm.aggregate = effective_aggregate_limit(st, c.married);
        if (auto p = effective_per_item_limit(st, c.married)) sm.per_item = *p;
        if (auto k = effective_item_claim_count(st, c.married)) sm.claim_count = *k;
        if (auto fb = effective_fallback_limit(st, c.married)) sm.fallback_limit = *fb;
        index[normalize_citation(st.citation)] = static_cast<int>(model.statutes.size());
        model.statutes.push_back(sm);
    }
    for (auto& sm : model.statutes) {
        const ConstraintSet& cs = sm.statute->constraints;
        if (cs.fallback_exemption) {
            sm.fallback_target = index.at(normalize_citation(*cs.fallback_exemption));
        }
        if (cs.mutual_exclusion) {
            sm.exclusion_partner = index.at(normalize_citation(*cs.mutual_exclusion));
        }
    }

    for (const auto& a : c.assets) {
        if (!a.is_relevant) continue;
        model.assets.push_back(&a);
        model.total_value += a.value;
    }
    std::stable_sort(model.assets.begin(), model.assets.end(),
                     [](const AnnotatedAsset* a, const AnnotatedAsset* b) {
                         if (a->value != b->value) return a->value > b->value;
                         return a->asset_id < b->asset_id;
                     });
    model.applicable.resize(model.assets.size());
    for (size_t i = 0; i < model.assets.size(); ++i) {
        for (const auto& cite : applicable_exemptions(*model.assets[i], regime)) {
            auto it = index.find(normalize_citation(cite));
            if (it == index.end()) {
                throw DataError(model.assets[i]->asset_id + ": annotation cites " + cite +
                                " outside " + regime.label());
            }
            model.applicable[i].push_back(it->second);
        }
    }
    return model;
}

class BranchAndBound {
public:
    BranchAndBound(const RegimeModel& model, SearchStats& stats)
        : model_(model), stats_(stats) {
        size_t n = model.statutes.size();
        agg_left_.resize(n);
        fb_left_.resize(n);
        count_left_.resize(n);
        disabled_.assign(n, 0);
        for (size_t s = 0; s < n; ++s) {
            agg_left_[s] = model.statutes[s].aggregate;
            fb_left_[s] = model.statutes[s].fallback_limit;
            count_left_[s] = model.statutes[s].claim_count;
        }
        asset_left_.resize(model.assets.size());
        for (size_t a = 0; a < model.assets.size(); ++a) asset_left_[a] = model.assets[a]->value;
        best_nonexempt_ = model.total_value;
    }

    ExemptionSchedule run() {
        seed_incumbent();
        if (best_nonexempt_ > 0) search(0);
        ExemptionSchedule schedule;
        schedule.jurisdiction = model_.regime;
        schedule.claims = best_claims_;
        schedule.nonexempt_value = best_nonexempt_;
        return schedule;
    }

private:
    struct Undo {
        Cents own = 0;
        Cents draw = 0;
        bool counted = false;
        int partner = -1;
        char partner_prev = 0;
    };

    // Capacity still reachable through statute s for one more claim.
    Cents statute_avail(int s) const {
        if (disabled_[s] || count_left_[s] <= 0) return 0;
        const auto& sm = model_.statutes[s];
        Cents avail = agg_left_[s];
        if (sm.fallback_target >= 0) {
            avail = cap_add(avail, std::min(fb_left_[s], agg_left_[sm.fallback_target]));
        }
        return avail;
    }

    Undo apply(int asset, int s, Cents amount) {
        Undo undo;
        const auto& sm = model_.statutes[s];
        Cents own = std::min(amount, agg_left_[s]);
        undo.own = own;
        if (!is_unlimited(agg_left_[s])) agg_left_[s] -= own;
        Cents draw = amount - own;
        undo.draw = draw;
        if (draw > 0) {
            fb_left_[s] -= draw;
            if (!is_unlimited(agg_left_[sm.fallback_target])) agg_left_[sm.fallback_target] -= draw;
        }
        if (count_left_[s] != kNoLimit) {
            --count_left_[s];
            undo.counted = true;
        }
        if (sm.exclusion_partner >= 0) {
            undo.partner = sm.exclusion_partner;
            undo.partner_prev = disabled_[sm.exclusion_partner];
            disabled_[sm.exclusion_partner] = 1;
        }
        asset_left_[asset] -= amount;
        protected_ += amount;
        claims_.push_back({model_.assets[asset]->asset_id, sm.statute->citation, amount});
        return undo;
    }

    void revert(int asset, int s, Cents amount, const Undo& undo) {
        claims_.pop_back();
        protected_ -= amount;
        asset_left_[asset] += amount;
        const auto& sm = model_.statutes[s];
        if (undo.partner >= 0) disabled_[undo.partner] = undo.partner_prev;
        if (undo.counted) ++count_left_[s];
        if (undo.draw > 0) {
            fb_left_[s] += undo.draw;
            if (!is_unlimited(agg_left_[sm.fallback_target])) agg_left_[sm.fallback_target] += undo.draw;
        }
        if (!is_unlimited(agg_left_[s])) agg_left_[s] += undo.own;
    }

    // Optimistic additional protection: per-asset reachable capacity capped
    // by remaining value, clamped by the global capacity pool. Sound upper
    // bound (fallback pools may be counted twice, never under-counted).
    Cents optimistic_extra(size_t from_asset) const {
        Cents global = 0;
        for (size_t s = 0; s < model_.statutes.size(); ++s) {
            global = cap_add(global, statute_avail(static_cast<int>(s)));
        }
        Cents per_asset = 0;
        for (size_t a = from_asset; a < model_.assets.size(); ++a) {
            if (asset_left_[a] == 0) continue;
            Cents cap = 0;
            for (int s : model_.applicable[a]) cap = cap_add(cap, statute_avail(s));
            per_asset = cap_add(per_asset, std::min(asset_left_[a], cap));
        }
        return std::min(per_asset, global);
    }

    void maybe_record() {
        Cents nonexempt = model_.total_value - protected_;
        if (nonexempt < best_nonexempt_) {
            best_nonexempt_ = nonexempt;
            best_claims_ = claims_;
        }
    }

    void seed_incumbent() {
        // Greedy pass along the branching order finds a strong incumbent.
        for (size_t a = 0; a < model_.assets.size(); ++a) {
            auto order = ordered_statutes(a);
            for (int s : order) {
                if (asset_left_[a] == 0) break;
                Cents cap = std::min(asset_left_[a], model_.statutes[s].per_item);
                Cents amount = std::min(cap, statute_avail(s));
                if (amount > 0) greedy_undo_.push_back({a, s, amount, apply(static_cast<int>(a), s, amount)});
            }
        }
        maybe_record();
        for (auto it = greedy_undo_.rbegin(); it != greedy_undo_.rend(); ++it) {
            revert(static_cast<int>(it->asset), it->statute, it->amount, it->undo);
        }
        greedy_undo_.clear();
    }

    std::vector<int> ordered_statutes(size_t asset) const {
        std::vector<int> order = model_.applicable[asset];
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
            Cents ax = statute_avail(x), ay = statute_avail(y);
            if (ax != ay) return ax > ay;
            return x < y;
        });
        return order;
    }

    void search(size_t asset) {
        if (asset == model_.assets.size()) {
            maybe_record();
            return;
        }
        auto order = ordered_statutes(asset);
        descend(asset, 0, order);
    }

    void descend(size_t asset, size_t k, const std::vector<int>& order) {
        ++stats_.nodes_expanded;
        Cents exposed = 0;
        for (size_t a = asset; a < model_.assets.size(); ++a) exposed += asset_left_[a];
        Cents lower_bound = (model_.total_value - protected_ - exposed) +
                            cap_sub(exposed, optimistic_extra(asset));
        if (lower_bound >= best_nonexempt_) {
            ++stats_.nodes_pruned;
            return;
        }
        if (k == order.size() || asset_left_[asset] == 0) {
            search(asset + 1);
            return;
        }
        int s = order[k];
        const auto& sm = model_.statutes[s];
        Cents cap = std::min(asset_left_[asset], sm.per_item);
        Cents with_fallback = std::min(cap, statute_avail(s));
        Cents own_only = std::min(cap, disabled_[s] || count_left_[s] <= 0 ? 0 : agg_left_[s]);

        Cents candidates[3] = {with_fallback, own_only, 0};
        Cents previous = -1;
        for (Cents amount : candidates) {
            if (amount == previous) continue;
            previous = amount;
            if (amount == 0) {
                descend(asset, k + 1, order);
                continue;
            }
            Undo undo = apply(static_cast<int>(asset), s, amount);
            descend(asset, k + 1, order);
            revert(static_cast<int>(asset), s, amount, undo);
            if (best_nonexempt_ == 0) return; // nothing can improve on zero
        }
    }

    struct GreedyStep {
        size_t asset;
        int statute;
        Cents amount;
        Undo undo;
    };

    const RegimeModel& model_;
    SearchStats& stats_;
    std::vector<Cents> agg_left_;
    std::vector<Cents> fb_left_;
    std::vector<int> count_left_;
    std::vector<char> disabled_;
    std::vector<Cents> asset_left_;
    std::vector<Claim> claims_;
    std::vector<GreedyStep> greedy_undo_;
    Cents protected_ = 0;
    Cents best_nonexempt_ = 0;
    std::vector<Claim> best_claims_;
};

} // namespace

ExemptionSchedule solve_optimal(const Case& c, const JurisdictionId& jurisdiction,
                                const Corpus& corpus, SearchStats* stats) {
    RegimeModel model = build_model(c, jurisdiction, corpus);
    SearchStats local;
    BranchAndBound search(model, stats ? *stats : local);
    return search.run();
}

std::pair<JurisdictionId, ExemptionSchedule> solve_best_jurisdiction(const Case& c,
                                                                     const Corpus& corpus,
                                                                     SearchStats* stats) {
    if (c.allowable_jurisdictions.empty()) {
        throw DataError("case has no allowable jurisdictions");
    }
    std::vector<JurisdictionId> regimes = c.allowable_jurisdictions;
    std::sort(regimes.begin(), regimes.end()); // Federal first, then states by name
    std::optional<std::pair<JurisdictionId, ExemptionSchedule>> best;
    for (const auto& regime : regimes) {
        ExemptionSchedule schedule = solve_optimal(c, regime, corpus, stats);
        if (!best || schedule.nonexempt_value < best->second.nonexempt_value) {
            best = {regime, std::move(schedule)};
        }
    }
    return *best;
}

} // namespace exempt
