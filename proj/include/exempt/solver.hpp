#pragma once

#include "exempt/estate.hpp"
#include "exempt/money.hpp"
#include "exempt/statute.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace exempt {

struct Claim {
    std::string asset_id;
    std::string citation;
    Cents amount = 0; // > 0

    friend bool operator==(const Claim&, const Claim&) = default;
};

// One regime's worth of claims; state and federal statutes never mix.
struct ExemptionSchedule {
    JurisdictionId jurisdiction;
    std::vector<Claim> claims;
    Cents nonexempt_value = 0; // total relevant value minus claimed value

    friend bool operator==(const ExemptionSchedule&, const ExemptionSchedule&) = default;
};

struct ValidationResult {
    bool valid = true;
    std::vector<std::string> violations;

    explicit operator bool() const { return valid; }
};

// Full legality check: annotated applicability under the chosen regime, per
// asset value caps, per-item limits, aggregate limits with fallback draws
// debited against the target's unused capacity, item claim counts, and
// mutual exclusion. Duplicate (asset, citation) claims are merged before
// checking. Throws UnknownAsset / UnknownCitation for references outside the
// case or corpus; legality problems come back as violations.
ValidationResult is_valid_schedule(const Case& c, const ExemptionSchedule& schedule,
                                   const Corpus& corpus);

struct SearchStats {
    std::uint64_t nodes_expanded = 0;
    std::uint64_t nodes_pruned = 0;
};

// Branch-and-bound over legally valid claim assignments, minimizing the
// non-exempt value for one regime. Assets are branched in descending value,
// statutes per asset in descending remaining capacity, claim amounts over
// the capacity/value breakpoints. Deterministic: among equal-value optima
// the first schedule found under that order is returned.
ExemptionSchedule solve_optimal(const Case& c, const JurisdictionId& jurisdiction,
                                const Corpus& corpus, SearchStats* stats = nullptr);

// Runs solve_optimal for every allowable regime and keeps the smallest
// non-exempt value; ties break toward Federal, then lexicographic state name.
std::pair<JurisdictionId, ExemptionSchedule> solve_best_jurisdiction(const Case& c,
                                                                     const Corpus& corpus,
                                                                     SearchStats* stats = nullptr);

} // namespace exempt
