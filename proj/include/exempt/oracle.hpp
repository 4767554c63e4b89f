#pragma once

#include "exempt/estate.hpp"
#include "exempt/money.hpp"
#include "exempt/statute.hpp"

namespace exempt {

// Verification oracle: exhaustively enumerates the combinatorial side of the
// problem (item-claim-count asset subsets, mutual-exclusion sides) and solves
// each pattern exactly by integral max-flow (source -> asset -> statute ->
// sink, with fallback modeled as a statute->target edge sharing the target's
// sink capacity). Exact on every instance it accepts; deliberately shares no
// code with the branch-and-bound search. Test use only.
// Throws InstanceTooLarge when the pattern count would blow up.
Cents oracle_enumerate(const Case& c, const JurisdictionId& jurisdiction, const Corpus& corpus);

} // namespace exempt
