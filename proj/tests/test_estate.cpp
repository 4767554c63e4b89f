#include "doctest.h"

#include "support.hpp"

#include "exempt/errors.hpp"
#include "exempt/estate.hpp"

using namespace exempt;
using testsupport::MiniAsset;
using testsupport::mini_case;

TEST_CASE("total estate value sums relevant assets only") {
    Case fischer = load_case_file(testsupport::data_dir() / "cases" / "oe_fixture.case.json");
    CHECK(total_estate_value(fischer) == 5545000);

    Case empty = mini_case({});
    CHECK(total_estate_value(empty) == 0);

    Case mixed = mini_case({{.id = "real", .value = 100, .citations = {}},
                            {.id = "fake", .value = 999, .citations = {}, .relevant = false}});
    CHECK(total_estate_value(mixed) == 100);
}

TEST_CASE("applicable exemptions come from the annotations alone") {
    Case joshi = load_case_file(testsupport::data_dir() / "cases" / "ec_fixture.case.json");
    const AnnotatedAsset* pistol = nullptr;
    for (const auto& a : joshi.assets) {
        if (a.asset_id == "hipoint-pistol") pistol = &a;
    }
    REQUIRE(pistol != nullptr);
    CHECK(applicable_exemptions(*pistol, JurisdictionId::federal()) ==
          std::vector<std::string>{"11 U.S.C. § 522(d)(5)"});
    CHECK(applicable_exemptions(*pistol, JurisdictionId::state("Wisconsin")) ==
          std::vector<std::string>{"Wis. Stat. § 815.18(3)(d)"});
    CHECK(applicable_exemptions(*pistol, JurisdictionId::state("Nowhere")).empty());

    Case fischer = load_case_file(testsupport::data_dir() / "cases" / "oe_fixture.case.json");
    const AnnotatedAsset& boots = fischer.assets[1];
    CHECK(applicable_exemptions(boots, JurisdictionId::federal()) ==
          std::vector<std::string>{"11 U.S.C. § 522(d)(3)", "11 U.S.C. § 522(d)(5)"});
}

TEST_CASE("case serialization round-trips structurally") {
    for (const char* name : {"ae_fixture", "ec_fixture", "oe_fixture"}) {
        Case original =
            load_case_file(testsupport::data_dir() / "cases" / (std::string(name) + ".case.json"));
        Case reparsed = case_from_json(case_to_json(original));
        CAPTURE(name);
        CHECK(original == reparsed);
    }
}

TEST_CASE("fixture cases satisfy the structural validator") {
    const Corpus& corpus = testsupport::shipped_corpus();
    for (const char* name : {"ae_fixture", "ec_fixture", "oe_fixture"}) {
        Case c = load_case_file(testsupport::data_dir() / "cases" / (std::string(name) + ".case.json"));
        CAPTURE(name);
        CHECK_NOTHROW(validate_case(c, corpus));
    }
}

TEST_CASE("validator rejects broken cases") {
    const Corpus& corpus = testsupport::shipped_corpus();
    Case c = load_case_file(testsupport::data_dir() / "cases" / "ec_fixture.case.json");

    Case bad_married = c;
    bad_married.married = false;
    CHECK_THROWS_AS(validate_case(bad_married, corpus), DataError);

    Case bad_order = c;
    std::swap(bad_order.domiciles[0].start_date, bad_order.domiciles[1].start_date);
    CHECK_THROWS_AS(validate_case(bad_order, corpus), DataError);

    Case bad_citation = c;
    bad_citation.assets[0].applicable["Wisconsin"].push_back("Wis. Stat. § 0.00");
    CHECK_THROWS_AS(validate_case(bad_citation, corpus), DataError);

    Case bad_value = c;
    bad_value.assets[0].value = 0;
    CHECK_THROWS_AS(validate_case(bad_value, corpus), DataError);

    Case bad_allowable = c;
    bad_allowable.allowable_jurisdictions = {JurisdictionId::federal()};
    CHECK_THROWS_AS(validate_case(bad_allowable, corpus), DataError);
}

TEST_CASE("asset library loads and validates against the corpus") {
    AssetLibrary lib = load_asset_library(testsupport::data_dir() / "assets" / "assets.json");
    CHECK(lib.relevant().size() >= 20);
    CHECK(lib.distractors().size() >= 4);
    CHECK_NOTHROW(validate_asset_library(lib, testsupport::shipped_corpus()));

    // Annotations must be sorted within each jurisdiction so solved-steps
    // prose lists citations in a stable order.
    for (const auto& rec : lib.records) {
        for (const auto& [label, citations] : rec.applicable) {
            CHECK(std::is_sorted(citations.begin(), citations.end()));
        }
    }
}
