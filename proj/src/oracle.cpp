#include "exempt/oracle.hpp"

#include "exempt/errors.hpp"
#include "exempt/normalize.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <vector>

namespace exempt {

namespace {

// Plain Edmonds-Karp; the graphs here have at most ~25 nodes.
class FlowNetwork {
public:
    explicit FlowNetwork(int nodes) : head_(nodes, -1) {}

    void add_edge(int from, int to, Cents capacity) {
        edges_.push_back({to, head_[from], capacity});
        head_[from] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[to], 0});
        head_[to] = static_cast<int>(edges_.size()) - 1;
    }

    Cents max_flow(int source, int sink) {
        Cents total = 0;
        while (true) {
            std::vector<int> via(head_.size(), -1);
            std::queue<int> frontier;
            frontier.push(source);
            via[source] = -2;
            while (!frontier.empty() && via[sink] == -1) {
                int node = frontier.front();
                frontier.pop();
                for (int e = head_[node]; e != -1; e = edges_[e].next) {
                    if (edges_[e].capacity > 0 && via[edges_[e].to] == -1) {
                        via[edges_[e].to] = e;
                        frontier.push(edges_[e].to);
                    }
                }
            }
            if (via[sink] == -1) return total;
            Cents bottleneck = kUnlimited;
            for (int node = sink; node != source;) {
                int e = via[node];
                bottleneck = std::min(bottleneck, edges_[e].capacity);
                node = edges_[e ^ 1].to;
            }
            for (int node = sink; node != source;) {
                int e = via[node];
                edges_[e].capacity -= bottleneck;
                edges_[e ^ 1].capacity += bottleneck;
                node = edges_[e ^ 1].to;
            }
            total += bottleneck;
        }
    }

private:
    struct Edge {
        int to;
        int next;
        Cents capacity;
    };
    std::vector<int> head_;
    std::vector<Edge> edges_;
};

struct OracleStatute {
    const ExemptionStatute* statute;
    Cents aggregate;
    Cents per_item;
    int claim_count;      // -1 = unconstrained
    int fallback_target;  // -1 = none
    Cents fallback_limit;
    int exclusion_partner;
    std::vector<int> claimants; // asset indices that may claim it
};

} // namespace

Cents oracle_enumerate(const Case& c, const JurisdictionId& jurisdiction, const Corpus& corpus) {
    const JurisdictionProfile* profile = corpus.find(jurisdiction);
    if (!profile) throw DataError("no jurisdiction profile for " + jurisdiction.label());

    std::vector<const AnnotatedAsset*> assets;
    Cents total_value = 0;
    for (const auto& a : c.assets) {
        if (!a.is_relevant) continue;
        assets.push_back(&a);
        total_value += a.value;
    }

    std::vector<OracleStatute> statutes;
    std::map<std::string, int> index;
    for (const auto& st : profile->statutes) {
        OracleStatute os;
        os.statute = &st;
        os.aggregate = effective_aggregate_limit(st, c.married);
        auto per_item = effective_per_item_limit(st, c.married);
        os.per_item = per_item ? *per_item : kUnlimited;
        auto count = effective_item_claim_count(st, c.married);
        os.claim_count = count ? *count : -1;
        auto fb = effective_fallback_limit(st, c.married);
        os.fallback_limit = fb ? *fb : 0;
        os.fallback_target = -1;
        os.exclusion_partner = -1;
        index[normalize_citation(st.citation)] = static_cast<int>(statutes.size());
        statutes.push_back(os);
    }
    for (auto& os : statutes) {
        const ConstraintSet& cs = os.statute->constraints;
        if (cs.fallback_exemption) os.fallback_target = index.at(normalize_citation(*cs.fallback_exemption));
        if (cs.mutual_exclusion) os.exclusion_partner = index.at(normalize_citation(*cs.mutual_exclusion));
    }
    for (size_t a = 0; a < assets.size(); ++a) {
        for (const auto& cite : applicable_exemptions(*assets[a], jurisdiction)) {
            auto it = index.find(normalize_citation(cite));
            if (it == index.end()) {
                throw DataError(assets[a]->asset_id + ": annotation cites " + cite + " outside " +
                                jurisdiction.label());
            }
            statutes[it->second].claimants.push_back(static_cast<int>(a));
        }
    }

    if (assets.size() > 8 || statutes.size() > 12) {
        throw InstanceTooLarge("oracle accepts at most 8 assets and 12 statutes");
    }

    // Choice axes: one asset subset per count-limited statute, one side per
    // exclusion pair.
    struct CountChoice {
        int statute;
        std::vector<std::vector<int>> subsets; // allowed claimant subsets
    };
    std::vector<CountChoice> count_choices;
    unsigned long long combinations = 1;
    for (size_t s = 0; s < statutes.size(); ++s) {
        const auto& os = statutes[s];
        if (os.claim_count < 0 || static_cast<int>(os.claimants.size()) <= os.claim_count) continue;
        CountChoice choice;
        choice.statute = static_cast<int>(s);
        int n = static_cast<int>(os.claimants.size());
        int k = os.claim_count;
        std::vector<int> pick(k);
        // All k-of-n claimant subsets.
        auto emit = [&](auto&& self, int start, int depth) -> void {
            if (depth == k) {
                std::vector<int> subset;
                for (int i : pick) subset.push_back(os.claimants[i]);
                choice.subsets.push_back(std::move(subset));
                return;
            }
            for (int i = start; i <= n - (k - depth); ++i) {
                pick[depth] = i;
                self(self, i + 1, depth + 1);
            }
        };
        if (k == 0) {
            choice.subsets.push_back({});
        } else {
            emit(emit, 0, 0);
        }
        combinations *= choice.subsets.size();
        count_choices.push_back(std::move(choice));
        if (combinations > 200000) throw InstanceTooLarge("oracle pattern count exceeds 200000");
    }
    std::vector<std::pair<int, int>> exclusion_pairs;
    for (size_t s = 0; s < statutes.size(); ++s) {
        int p = statutes[s].exclusion_partner;
        if (p >= 0 && static_cast<int>(s) < p) exclusion_pairs.push_back({static_cast<int>(s), p});
    }
    combinations <<= exclusion_pairs.size();
    if (combinations > 200000) throw InstanceTooLarge("oracle pattern count exceeds 200000");

    const int asset_base = 1;
    const int statute_base = asset_base + static_cast<int>(assets.size());
    const int sink = statute_base + static_cast<int>(statutes.size());
    const Cents inf = total_value + 1;

    Cents best_protected = 0;
    std::vector<char> statute_off(statutes.size(), 0);
    std::vector<std::vector<char>> allowed(statutes.size());
    for (size_t s = 0; s < statutes.size(); ++s) allowed[s].assign(assets.size(), 1);

    auto evaluate = [&]() {
        FlowNetwork net(sink + 1);
        for (size_t a = 0; a < assets.size(); ++a) {
            net.add_edge(0, asset_base + static_cast<int>(a), assets[a]->value);
        }
        for (size_t s = 0; s < statutes.size(); ++s) {
            const auto& os = statutes[s];
            Cents agg = is_unlimited(os.aggregate) ? inf : os.aggregate;
            net.add_edge(statute_base + static_cast<int>(s), sink, agg);
            if (os.fallback_target >= 0) {
                Cents fb = is_unlimited(os.fallback_limit) ? inf : os.fallback_limit;
                net.add_edge(statute_base + static_cast<int>(s), statute_base + os.fallback_target, fb);
            }
            if (statute_off[s]) continue;
            for (int a : os.claimants) {
                if (!allowed[s][a]) continue;
                Cents cap = is_unlimited(os.per_item) ? inf : os.per_item;
                net.add_edge(asset_base + a, statute_base + static_cast<int>(s), cap);
            }
        }
        best_protected = std::max(best_protected, net.max_flow(0, sink));
    };

    auto walk_exclusions = [&](auto&& self, size_t pair_index) -> void {
        if (pair_index == exclusion_pairs.size()) {
            evaluate();
            return;
        }
        auto [x, y] = exclusion_pairs[pair_index];
        statute_off[x] = 1;
        self(self, pair_index + 1);
        statute_off[x] = 0;
        statute_off[y] = 1;
        self(self, pair_index + 1);
        statute_off[y] = 0;
    };

    auto walk_counts = [&](auto&& self, size_t choice_index) -> void {
        if (choice_index == count_choices.size()) {
            walk_exclusions(walk_exclusions, 0);
            return;
        }
        const auto& choice = count_choices[choice_index];
        for (const auto& subset : choice.subsets) {
            auto& row = allowed[choice.statute];
            std::fill(row.begin(), row.end(), 0);
            for (int a : subset) row[a] = 1;
            self(self, choice_index + 1);
        }
        std::fill(allowed[choice.statute].begin(), allowed[choice.statute].end(), 1);
    };

    walk_counts(walk_counts, 0);
    return total_value - best_protected;
}

} // namespace exempt
