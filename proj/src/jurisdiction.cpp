#include "exempt/jurisdiction.hpp"

#include "exempt/errors.hpp"

#include <algorithm>
#include <map>

namespace exempt {

std::vector<JurisdictionId> determine_allowable_jurisdictions(
    const std::vector<DomicileRecord>& domiciles, Date petition_date, const Corpus& corpus) {
    struct Segment {
        std::string state;
        Date begin;
        Date end;
    };

    std::vector<const DomicileRecord*> relevant;
    for (const auto& d : domiciles) {
        if (d.is_relevant && d.start_date <= petition_date) relevant.push_back(&d);
    }
    if (relevant.empty()) {
        throw NoApplicableState("no relevant domicile record on or before the petition date");
    }
    std::sort(relevant.begin(), relevant.end(),
              [](const auto* a, const auto* b) { return a->start_date < b->start_date; });

    std::vector<Segment> segments;
    for (size_t i = 0; i < relevant.size(); ++i) {
        Date end = (i + 1 < relevant.size()) ? relevant[i + 1]->start_date : petition_date;
        segments.push_back({relevant[i]->state_name, relevant[i]->start_date, end});
    }

    const ResidencyWindow window = ResidencyWindow::for_petition(petition_date);

    // Step 1: one state covering the entire 730-day window.
    std::string spanning;
    bool spans = relevant.front()->start_date <= window.window_start;
    if (spans) {
        for (const auto& seg : segments) {
            if (seg.end <= window.window_start || seg.begin >= petition_date) continue;
            if (spanning.empty()) {
                spanning = seg.state;
            } else if (seg.state != spanning) {
                spans = false;
                break;
            }
        }
    }

    std::string winner;
    if (spans && !spanning.empty()) {
        winner = spanning;
    } else {
        // Step 2: longest portion of the 180-day lookback.
        std::map<std::string, long> duration;
        for (const auto& seg : segments) {
            Date lo = std::max(seg.begin, window.lookback_start);
            Date hi = std::min(seg.end, window.window_start);
            if (hi > lo) duration[seg.state] += days_between(lo, hi);
        }
        long best = 0;
        for (const auto& [state, days] : duration) best = std::max(best, days);
        if (best == 0) {
            throw NoApplicableState("no relevant domicile covers the 180-day lookback window");
        }
        Date best_established{};
        for (const auto& [state, days] : duration) {
            if (days != best) continue;
            Date established = petition_date;
            for (const auto* rec : relevant) {
                if (rec->state_name == state) {
                    established = std::min(established, rec->start_date);
                }
            }
            if (winner.empty() || established < best_established) {
                winner = state;
                best_established = established;
            }
        }
    }

    const JurisdictionProfile* profile = corpus.find_label(winner);
    if (!profile) {
        throw DataError("applicable state '" + winner + "' has no jurisdiction profile");
    }
    std::vector<JurisdictionId> out;
    if (!profile->opt_out) out.push_back(JurisdictionId::federal());
    out.push_back(profile->id);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace exempt
