#pragma once

#include "exempt/dates.hpp"
#include "exempt/estate.hpp"
#include "exempt/statute.hpp"

#include <vector>

namespace exempt {

// The 730-day selection window and its 180-day lookback, both half-open in
// whole calendar days: window [window_start, petition), lookback
// [lookback_start, window_start).
struct ResidencyWindow {
    Date window_start;
    Date lookback_start;

    static ResidencyWindow for_petition(Date petition) {
        ResidencyWindow w;
        w.window_start = add_days(petition, -730);
        w.lookback_start = add_days(w.window_start, -180);
        return w;
    }
};

// The domicile selection test: (1) a single state spanning the whole 730-day
// window wins; (2) otherwise the state domiciled longest within the 180-day
// lookback wins (ties to the earlier-established domicile); (3) the winner
// comes alone when its profile opts out, else together with Federal. Only
// is_relevant records participate. Throws NoApplicableState when no relevant
// record covers any part of the window or lookback.
std::vector<JurisdictionId> determine_allowable_jurisdictions(
    const std::vector<DomicileRecord>& domiciles, Date petition_date, const Corpus& corpus);

} // namespace exempt
