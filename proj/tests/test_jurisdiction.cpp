#include "doctest.h"

#include "support.hpp"

#include "exempt/errors.hpp"
#include "exempt/jurisdiction.hpp"
#include "exempt/rng.hpp"

using namespace exempt;

namespace {

DomicileRecord rec(const std::string& state, int y, unsigned m, unsigned d, bool relevant = true) {
    DomicileRecord out;
    out.state_name = state;
    out.start_date = make_date(y, m, d);
    out.is_relevant = relevant;
    return out;
}

std::vector<std::string> labels(const std::vector<JurisdictionId>& ids) {
    std::vector<std::string> out;
    for (const auto& id : ids) out.push_back(id.label());
    return out;
}

} // namespace

TEST_CASE("fixture timeline selects Pennsylvania plus Federal") {
    const Corpus& corpus = testsupport::shipped_corpus();
    auto result = determine_allowable_jurisdictions(
        {rec("Pennsylvania", 2020, 3, 21), rec("Arizona", 2024, 2, 29)},
        make_date(2024, 7, 14), corpus);
    CHECK(labels(result) == std::vector<std::string>{"Federal", "Pennsylvania"});
}

TEST_CASE("one long-held state spans the window") {
    const Corpus& corpus = testsupport::shipped_corpus();
    auto result = determine_allowable_jurisdictions({rec("Wisconsin", 2014, 6, 1)},
                                                    make_date(2024, 3, 7), corpus);
    CHECK(labels(result) == std::vector<std::string>{"Federal", "Wisconsin"});
}

TEST_CASE("the joshi timeline lands on wisconsin despite the temporary stay") {
    const Corpus& corpus = testsupport::shipped_corpus();
    std::vector<DomicileRecord> domiciles = {
        rec("Arizona", 2012, 3, 19),
        rec("Wisconsin", 2021, 9, 10),
        rec("Arizona", 2021, 9, 10, false), // 28-day stay, no change of domicile
        rec("Wisconsin", 2021, 9, 12),
    };
    auto result = determine_allowable_jurisdictions(domiciles, make_date(2024, 3, 7), corpus);
    CHECK(labels(result) == std::vector<std::string>{"Federal", "Wisconsin"});
}

TEST_CASE("opt-out states come alone") {
    const Corpus& corpus = testsupport::shipped_corpus();
    auto az = determine_allowable_jurisdictions({rec("Arizona", 2010, 1, 1)},
                                                make_date(2024, 5, 5), corpus);
    CHECK(labels(az) == std::vector<std::string>{"Arizona"});
    auto il = determine_allowable_jurisdictions({rec("Illinois", 2010, 1, 1)},
                                                make_date(2024, 5, 5), corpus);
    CHECK(labels(il) == std::vector<std::string>{"Illinois"});
}

TEST_CASE("window boundaries are half-open in whole days") {
    const Corpus& corpus = testsupport::shipped_corpus();
    Date petition = make_date(2024, 7, 14);
    // window_start is 2022-07-15; a move landing exactly there still spans.
    auto spanning = determine_allowable_jurisdictions(
        {rec("Oregon", 2018, 1, 1), rec("Wisconsin", 2022, 7, 15)}, petition, corpus);
    CHECK(labels(spanning) == std::vector<std::string>{"Federal", "Wisconsin"});
    // One day later the window is split and the lookback decides, which
    // Oregon occupied entirely.
    auto split = determine_allowable_jurisdictions(
        {rec("Oregon", 2018, 1, 1), rec("Wisconsin", 2022, 7, 16)}, petition, corpus);
    CHECK(labels(split) == std::vector<std::string>{"Federal", "Oregon"});
}

TEST_CASE("lookback durations decide and ties break to the earlier domicile") {
    const Corpus& corpus = testsupport::shipped_corpus();
    Date petition = make_date(2024, 7, 14); // lookback [2022-01-16, 2022-07-15)
    // Wisconsin holds 100 days of the lookback, Oregon only the first 80.
    auto longer = determine_allowable_jurisdictions(
        {rec("Oregon", 2021, 1, 1), rec("Wisconsin", 2022, 4, 6), rec("Arizona", 2023, 9, 1)},
        petition, corpus);
    CHECK(labels(longer) == std::vector<std::string>{"Federal", "Wisconsin"});
    // Exact 90/90 split ties; the earlier-established Oregon wins.
    auto tied = determine_allowable_jurisdictions(
        {rec("Oregon", 2021, 1, 1), rec("Wisconsin", 2022, 4, 16), rec("Arizona", 2023, 9, 1)},
        petition, corpus);
    CHECK(labels(tied) == std::vector<std::string>{"Federal", "Oregon"});
}

TEST_CASE("distractor residences never change the outcome") {
    const Corpus& corpus = testsupport::shipped_corpus();
    Rng rng(2024);
    const std::vector<std::string> states = {"Arizona", "Illinois", "Oregon", "Pennsylvania",
                                             "Wisconsin"};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<DomicileRecord> base = {
            rec("Pennsylvania", 2019, 5, 2),
            rec("Wisconsin", 2022, static_cast<unsigned>(rng.range(1, 12)),
                static_cast<unsigned>(rng.range(1, 28))),
        };
        Date petition = make_date(2024, 6, 30);
        auto expected = determine_allowable_jurisdictions(base, petition, corpus);
        auto noisy = base;
        for (int k = 0; k < 3; ++k) {
            DomicileRecord d = rec(states[rng.below(states.size())], 2020 + static_cast<int>(rng.below(4)),
                                   static_cast<unsigned>(rng.range(1, 12)),
                                   static_cast<unsigned>(rng.range(1, 28)), false);
            noisy.insert(noisy.begin() + static_cast<long>(rng.below(noisy.size() + 1)), d);
        }
        CHECK(determine_allowable_jurisdictions(noisy, petition, corpus) == expected);
    }
}

TEST_CASE("output always holds exactly one state") {
    const Corpus& corpus = testsupport::shipped_corpus();
    auto result = determine_allowable_jurisdictions(
        {rec("Oregon", 2020, 1, 1), rec("Wisconsin", 2023, 1, 1)}, make_date(2024, 2, 1), corpus);
    int state_count = 0;
    for (const auto& id : result) {
        if (!id.is_federal()) ++state_count;
    }
    CHECK(state_count == 1);
}

TEST_CASE("missing coverage is flagged, never defaulted") {
    const Corpus& corpus = testsupport::shipped_corpus();
    CHECK_THROWS_AS(determine_allowable_jurisdictions({}, make_date(2024, 1, 1), corpus),
                    NoApplicableState);
    // Only record starts after the petition.
    CHECK_THROWS_AS(determine_allowable_jurisdictions({rec("Oregon", 2025, 1, 1)},
                                                      make_date(2024, 1, 1), corpus),
                    NoApplicableState);
    // First domicile begins after the lookback closed and inside the window:
    // no single state spans, and nobody occupied the lookback.
    CHECK_THROWS_AS(determine_allowable_jurisdictions({rec("Oregon", 2023, 6, 1)},
                                                      make_date(2024, 1, 1), corpus),
                    NoApplicableState);
}
