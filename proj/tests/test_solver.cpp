#include "doctest.h"

#include "support.hpp"

#include "exempt/errors.hpp"
#include "exempt/oracle.hpp"
#include "exempt/solver.hpp"

using namespace exempt;
using testsupport::MiniAsset;
using testsupport::MiniStatute;
using testsupport::mini_case;
using testsupport::mini_corpus;

namespace {

Case fischer_case() {
    return load_case_file(testsupport::data_dir() / "cases" / "oe_fixture.case.json");
}

ExemptionSchedule fischer_gold_schedule() {
    ExemptionSchedule s;
    s.jurisdiction = JurisdictionId::federal();
    s.claims = {
        {"mountain-cabin", "11 U.S.C. § 522(d)(5)", 3085000},
        {"mountain-cabin", "11 U.S.C. § 522(d)(1)", 1865000},
        {"ankle-boots", "11 U.S.C. § 522(d)(3)", 22500},
        {"hearing-aids", "11 U.S.C. § 522(d)(9)", 142500},
        {"engagement-band", "11 U.S.C. § 522(d)(4)", 77000},
        {"oxygen-concentrator", "11 U.S.C. § 522(d)(9)", 325000},
        {"embroidered-curtains", "11 U.S.C. § 522(d)(3)", 28000},
    };
    Cents claimed = 0;
    for (const auto& c : s.claims) claimed += c.amount;
    s.nonexempt_value = 5545000 - claimed;
    return s;
}

} // namespace

TEST_CASE("the published optimal schedule validates and protects everything") {
    const Corpus& corpus = testsupport::shipped_corpus();
    Case c = fischer_case();
    ExemptionSchedule gold = fischer_gold_schedule();
    auto check = is_valid_schedule(c, gold, corpus);
    CAPTURE(check.violations);
    CHECK(check.valid);
    CHECK(gold.nonexempt_value == 0);
}

TEST_CASE("solving the fixture case protects the whole estate") {
    const Corpus& corpus = testsupport::shipped_corpus();
    Case c = fischer_case();

    ExemptionSchedule federal = solve_optimal(c, JurisdictionId::federal(), corpus);
    CHECK(federal.nonexempt_value == 0);
    CHECK(is_valid_schedule(c, federal, corpus).valid);

    ExemptionSchedule oregon = solve_optimal(c, JurisdictionId::state("Oregon"), corpus);
    CHECK(oregon.nonexempt_value == 0);

    // Both regimes reach zero; the tie breaks toward Federal.
    auto [regime, best] = solve_best_jurisdiction(c, corpus);
    CHECK(regime.is_federal());
    CHECK(best.nonexempt_value == 0);
}

TEST_CASE("an empty schedule is valid and exposes the whole estate") {
    const Corpus& corpus = testsupport::shipped_corpus();
    Case c = fischer_case();
    ExemptionSchedule empty;
    empty.jurisdiction = JurisdictionId::federal();
    CHECK(is_valid_schedule(c, empty, corpus).valid);
}

TEST_CASE("violations and reference errors") {
    const Corpus& corpus = testsupport::shipped_corpus();
    Case c = fischer_case();

    ExemptionSchedule not_annotated;
    not_annotated.jurisdiction = JurisdictionId::federal();
    not_annotated.claims = {{"mountain-cabin", "11 U.S.C. § 522(d)(4)", 100}};
    auto check = is_valid_schedule(c, not_annotated, corpus);
    CHECK_FALSE(check.valid);
    REQUIRE_FALSE(check.violations.empty());

    ExemptionSchedule mixed;
    mixed.jurisdiction = JurisdictionId::federal();
    mixed.claims = {{"ankle-boots", "Or. Rev. Stat. § 18.345(1)(b)", 100}};
    CHECK_FALSE(is_valid_schedule(c, mixed, corpus).valid);

    ExemptionSchedule over_value;
    over_value.jurisdiction = JurisdictionId::federal();
    over_value.claims = {{"ankle-boots", "11 U.S.C. § 522(d)(3)", 22501}};
    CHECK_FALSE(is_valid_schedule(c, over_value, corpus).valid);

    ExemptionSchedule unknown_asset;
    unknown_asset.jurisdiction = JurisdictionId::federal();
    unknown_asset.claims = {{"spaceship", "11 U.S.C. § 522(d)(5)", 100}};
    CHECK_THROWS_AS(is_valid_schedule(c, unknown_asset, corpus), UnknownAsset);

    ExemptionSchedule unknown_citation;
    unknown_citation.jurisdiction = JurisdictionId::federal();
    unknown_citation.claims = {{"ankle-boots", "11 U.S.C. § 522(d)(99)", 100}};
    CHECK_THROWS_AS(is_valid_schedule(c, unknown_citation, corpus), UnknownCitation);
}

TEST_CASE("split claims cannot dodge the per-item limit") {
    Corpus corpus = mini_corpus({{.citation = "HG", .single = 100000, .per_item = 700}});
    Case c = mini_case({{.id = "lamp", .value = 2000, .citations = {"HG"}}});
    ExemptionSchedule split;
    split.jurisdiction = JurisdictionId::federal();
    split.claims = {{"lamp", "HG", 400}, {"lamp", "HG", 400}};
    CHECK_FALSE(is_valid_schedule(c, split, corpus).valid);
}

TEST_CASE("single constrained statute leaves the arithmetic remainder") {
    Corpus corpus = mini_corpus({{.citation = "CAP", .single = 6000}});
    Case c = mini_case({{.id = "a", .value = 10000, .citations = {"CAP"}}});
    ExemptionSchedule s = solve_optimal(c, JurisdictionId::federal(), corpus);
    CHECK(s.nonexempt_value == 4000);
    CHECK(is_valid_schedule(c, s, corpus).valid);
    CHECK(oracle_enumerate(c, JurisdictionId::federal(), corpus) == 4000);
}

TEST_CASE("two assets competing for one statute") {
    Corpus corpus = mini_corpus({{.citation = "CAP", .single = 5000}});
    Case c = mini_case({{.id = "a", .value = 4000, .citations = {"CAP"}},
                        {.id = "b", .value = 3000, .citations = {"CAP"}}});
    CHECK(oracle_enumerate(c, JurisdictionId::federal(), corpus) == 2000);
    CHECK(solve_optimal(c, JurisdictionId::federal(), corpus).nonexempt_value == 2000);
}

TEST_CASE("fallback capacity is shared with the target's own claims") {
    Corpus corpus = mini_corpus({
        {.citation = "SRC", .single = 100, .fallback = "DST", .fb_single = 200},
        {.citation = "DST", .single = 300},
    });
    Case c = mini_case({{.id = "x", .value = 500, .citations = {"SRC"}},
                        {.id = "y", .value = 250, .citations = {"DST"}}});
    // Total usable capacity: SRC 100 plus the shared 300 pool = 400.
    CHECK(oracle_enumerate(c, JurisdictionId::federal(), corpus) == 350);
    ExemptionSchedule s = solve_optimal(c, JurisdictionId::federal(), corpus);
    CHECK(s.nonexempt_value == 350);
    CHECK(is_valid_schedule(c, s, corpus).valid);

    // Overdrawing the fallback must be rejected by the validator.
    ExemptionSchedule greedy;
    greedy.jurisdiction = JurisdictionId::federal();
    greedy.claims = {{"x", "SRC", 400}, {"y", "DST", 250}};
    CHECK_FALSE(is_valid_schedule(c, greedy, corpus).valid);
}

TEST_CASE("item claim counts bind per distinct asset") {
    Corpus corpus = mini_corpus({{.citation = "CAR",
                                  .single = 2400,
                                  .married = 4800,
                                  .count = 1,
                                  .married_count = 2}});
    Case single_case = mini_case({{.id = "car1", .value = 2000, .citations = {"CAR"}},
                                  {.id = "car2", .value = 1500, .citations = {"CAR"}}});
    CHECK(solve_optimal(single_case, JurisdictionId::federal(), corpus).nonexempt_value == 1500);
    CHECK(oracle_enumerate(single_case, JurisdictionId::federal(), corpus) == 1500);

    Case married_case = mini_case({{.id = "car1", .value = 2000, .citations = {"CAR"}},
                                   {.id = "car2", .value = 1500, .citations = {"CAR"}}},
                                  true);
    CHECK(solve_optimal(married_case, JurisdictionId::federal(), corpus).nonexempt_value == 0);
}

TEST_CASE("mutual exclusion forces a choice of side") {
    Corpus corpus = mini_corpus({
        {.citation = "P", .single = 1000, .excludes = "Q"},
        {.citation = "Q", .single = 800},
    });
    Case c = mini_case({{.id = "a", .value = 1000, .citations = {"P"}},
                        {.id = "b", .value = 800, .citations = {"Q"}}});
    CHECK(oracle_enumerate(c, JurisdictionId::federal(), corpus) == 800);
    ExemptionSchedule s = solve_optimal(c, JurisdictionId::federal(), corpus);
    CHECK(s.nonexempt_value == 800);

    ExemptionSchedule both;
    both.jurisdiction = JurisdictionId::federal();
    both.claims = {{"a", "P", 1000}, {"b", "Q", 800}};
    CHECK_FALSE(is_valid_schedule(c, both, corpus).valid);
}

TEST_CASE("solver output is deterministic") {
    Rng rng(99);
    auto inst = testsupport::random_instance(rng);
    ExemptionSchedule a = solve_optimal(inst.c, inst.regime, inst.corpus);
    ExemptionSchedule b = solve_optimal(inst.c, inst.regime, inst.corpus);
    CHECK(a == b);
}

TEST_CASE("optimal value never worsens with more statutes or fewer assets") {
    Rng rng(123);
    for (int trial = 0; trial < 40; ++trial) {
        auto inst = testsupport::random_instance(rng);
        Cents base = solve_optimal(inst.c, inst.regime, inst.corpus).nonexempt_value;

        // Add an unrestricted statute applicable to everything.
        std::vector<MiniStatute> statutes;
        for (const auto& st : inst.corpus.profiles[0].statutes) {
            MiniStatute m;
            m.citation = st.citation;
            m.single = st.constraints.single_limit;
            m.married = st.constraints.married_limit;
            m.per_item = st.constraints.per_item_limit;
            m.count = st.constraints.single_item_claim_count;
            m.married_count = st.constraints.married_item_claim_count;
            m.fallback = st.constraints.fallback_exemption;
            m.fb_single = st.constraints.fallback_single_limit;
            m.fb_married = st.constraints.fallback_married_limit;
            m.excludes = st.constraints.mutual_exclusion;
            statutes.push_back(std::move(m));
        }
        statutes.push_back({.citation = "Bonus Stat."});
        Corpus wider = mini_corpus(statutes);
        Case richer = inst.c;
        for (auto& a : richer.assets) a.applicable["Federal"].push_back("Bonus Stat.");
        CHECK(solve_optimal(richer, inst.regime, wider).nonexempt_value <= base);

        if (inst.c.assets.size() > 1) {
            Case fewer = inst.c;
            fewer.assets.pop_back();
            CHECK(solve_optimal(fewer, inst.regime, inst.corpus).nonexempt_value <= base);
        }
    }
}

TEST_CASE("optimal value scales with the instance") {
    Rng rng(456);
    for (int trial = 0; trial < 20; ++trial) {
        auto inst = testsupport::random_instance(rng, 4, 5);
        Cents base = solve_optimal(inst.c, inst.regime, inst.corpus).nonexempt_value;

        const Cents k = 7;
        std::vector<MiniStatute> statutes;
        for (const auto& st : inst.corpus.profiles[0].statutes) {
            MiniStatute m;
            m.citation = st.citation;
            if (!is_unlimited(st.constraints.single_limit)) m.single = st.constraints.single_limit * k;
            if (st.constraints.married_limit && !is_unlimited(*st.constraints.married_limit)) {
                m.married = *st.constraints.married_limit * k;
            }
            if (st.constraints.per_item_limit) m.per_item = *st.constraints.per_item_limit * k;
            m.count = st.constraints.single_item_claim_count;
            m.married_count = st.constraints.married_item_claim_count;
            m.fallback = st.constraints.fallback_exemption;
            if (st.constraints.fallback_single_limit) {
                m.fb_single = *st.constraints.fallback_single_limit * k;
            }
            if (st.constraints.fallback_married_limit) {
                m.fb_married = *st.constraints.fallback_married_limit * k;
            }
            m.excludes = st.constraints.mutual_exclusion;
            statutes.push_back(std::move(m));
        }
        Corpus scaled_corpus = mini_corpus(statutes);
        Case scaled = inst.c;
        for (auto& a : scaled.assets) a.value *= k;
        CHECK(solve_optimal(scaled, inst.regime, scaled_corpus).nonexempt_value == base * k);
    }
}

TEST_CASE("solver agrees with the enumeration oracle on random instances") {
    Rng rng(20240810);
    for (int trial = 0; trial < 300; ++trial) {
        auto inst = testsupport::random_instance(rng);
        CAPTURE(trial);
        ExemptionSchedule s = solve_optimal(inst.c, inst.regime, inst.corpus);
        CHECK(s.nonexempt_value == oracle_enumerate(inst.c, inst.regime, inst.corpus));
        CHECK(is_valid_schedule(inst.c, s, inst.corpus).valid);
    }
}

TEST_CASE("the oracle guards against oversized instances") {
    std::vector<MiniAsset> assets;
    for (int i = 0; i < 9; ++i) {
        assets.push_back({.id = "a" + std::to_string(i), .value = 100, .citations = {"S"}});
    }
    Corpus corpus = mini_corpus({{.citation = "S", .single = 100}});
    Case c = mini_case(assets);
    CHECK_THROWS_AS(oracle_enumerate(c, JurisdictionId::federal(), corpus), InstanceTooLarge);
}
