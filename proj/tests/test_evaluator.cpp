#include "doctest.h"

#include "support.hpp"

#include "exempt/evaluator.hpp"
#include "exempt/generator.hpp"

using namespace exempt;

TEST_CASE("final answer extraction takes the last marker") {
    auto a = extract_final_answer("thinking... FINAL ANSWER: Alaska, Federal");
    REQUIRE(a.has_value());
    CHECK(*a == "Alaska, Federal");
    auto b = extract_final_answer("FINAL ANSWER: x FINAL ANSWER: y");
    REQUIRE(b.has_value());
    CHECK(*b == "y");
    CHECK_FALSE(extract_final_answer("no marker anywhere").has_value());
    auto c = extract_final_answer("reasoning\nfinal answer:   Federal ");
    REQUIRE(c.has_value());
    CHECK(*c == "Federal");
}

TEST_CASE("balanced JSON extraction tolerates trailing prose and fences") {
    auto a = extract_balanced_json("{\"x\": 1} and some trailing words");
    REQUIRE(a.has_value());
    CHECK(*a == "{\"x\": 1}");
    auto b = extract_balanced_json("```json\n{\"a\": {\"b\": [1, 2]}}\n``` done");
    REQUIRE(b.has_value());
    CHECK(*b == "{\"a\": {\"b\": [1, 2]}}");
    auto c = extract_balanced_json("label: {\"s\": \"has } brace\"} tail");
    REQUIRE(c.has_value());
    CHECK(*c == "{\"s\": \"has } brace\"}");
    CHECK_FALSE(extract_balanced_json("no json here").has_value());
    CHECK_FALSE(extract_balanced_json("{\"unclosed\": 1").has_value());
}

TEST_CASE("payload parsing per task") {
    ParsedResponse ae = parse_payload(Task::AE, "Alaska, Federal");
    CHECK(ae.format_valid);
    CHECK(ae.jurisdictions == std::vector<std::string>{"Alaska", "Federal"});

    ParsedResponse oe = parse_payload(
        Task::OE,
        R"({"1981 DeLorean DMC-12": [{"citation": "11 U.S.C. § 522(d)(2)", "claim_value": 3000}]})");
    REQUIRE(oe.format_valid);
    REQUIRE(oe.oe.size() == 1);
    CHECK(oe.oe[0].first == "1981 DeLorean DMC-12");
    REQUIRE(oe.oe[0].second.size() == 1);
    CHECK(oe.oe[0].second[0].citation == "11 U.S.C. § 522(d)(2)");
    CHECK(oe.oe[0].second[0].amount == 300000);

    ParsedResponse ev = parse_payload(
        Task::EV, R"({"ring": [{"citation": "X", "max_value": "$1,875.00"}]} trailing prose)");
    REQUIRE(ev.format_valid);
    CHECK(ev.ev[0].second[0].amount == 187500);

    ParsedResponse na = parse_payload(Task::NA, R"({"Federal": 3000, "Alaska": 4500.5})");
    REQUIRE(na.format_valid);
    CHECK(na.na[0].second == 300000);
    CHECK(na.na[1].second == 450050);

    CHECK_FALSE(parse_payload(Task::EC, "").format_valid);
    CHECK_FALSE(parse_payload(Task::NA, "just words").format_valid);
    CHECK_FALSE(parse_response(Task::EC, "no marker {\"a\": []}").format_valid);
}

TEST_CASE("tolerance indicator boundary algebra") {
    auto dollars = [](Cents d) { return d * 100; };
    CHECK(within_tolerance(dollars(10400), dollars(10000)));
    CHECK_FALSE(within_tolerance(dollars(10501), dollars(10000)));
    CHECK(within_tolerance(dollars(0), dollars(0)));
    CHECK(within_tolerance(4, 0));        // four cents against a zero gold: 4/100 < 5%
    CHECK_FALSE(within_tolerance(5, 0));  // five cents hits the boundary exactly
    CHECK_FALSE(within_tolerance(dollars(1), dollars(0)));
    // self-tolerance for every y >= 0
    for (Cents y : {0, 1, 5, 19, 20, 100, 999999}) {
        CHECK(within_tolerance(y, y));
    }
    // strictness at the exact boundary: gold $1 -> band is diff*20 < 200 cents
    CHECK(within_tolerance(109, 100));       // diff 9 -> 180 < 200
    CHECK_FALSE(within_tolerance(110, 100)); // diff 10 -> 200 not < 200
    CHECK(stabilized_are(1040000, 1000000) == doctest::Approx(40000.0 / 1000100.0));
}

TEST_CASE("AE set metrics") {
    nlohmann::ordered_json gold = nlohmann::ordered_json::array({"Federal", "Pennsylvania"});
    Case dummy;
    const Corpus& corpus = testsupport::shipped_corpus();

    ParsedResponse exact = parse_payload(Task::AE, "Federal, Pennsylvania");
    SampleScore s1 = score_sample(Task::AE, exact, gold, dummy, corpus);
    CHECK(s1.f1 == doctest::Approx(1.0));

    ParsedResponse partial = parse_payload(Task::AE, "Federal");
    SampleScore s2 = score_sample(Task::AE, partial, gold, dummy, corpus);
    CHECK(s2.precision == doctest::Approx(1.0));
    CHECK(s2.recall == doctest::Approx(0.5));
    CHECK(s2.f1 == doctest::Approx(2.0 / 3.0));

    // case/spacing variations and a hallucinated name
    ParsedResponse noisy = parse_payload(Task::AE, "federal,  PENNSYLVANIA , Narnia");
    SampleScore s3 = score_sample(Task::AE, noisy, gold, dummy, corpus);
    CHECK(s3.precision == doctest::Approx(2.0 / 3.0));
    CHECK(s3.recall == doctest::Approx(1.0));
}

TEST_CASE("gold scored against itself is perfect for every task") {
    const Corpus& corpus = testsupport::shipped_corpus();
    for (const char* name : {"ec_fixture", "oe_fixture"}) {
        Case c = load_case_file(testsupport::data_dir() / "cases" / (std::string(name) + ".case.json"));
        for (Task task : {Task::EC, Task::EV, Task::NA, Task::OE}) {
            nlohmann::ordered_json gold = gold_for_task(task, c, corpus);
            ParsedResponse parsed = parse_response(task, testsupport::gold_to_response(task, gold));
            REQUIRE(parsed.format_valid);
            SampleScore score = score_sample(task, parsed, gold, c, corpus);
            CAPTURE(name);
            CAPTURE(task_name(task));
            CHECK(score.precision == doctest::Approx(1.0));
            CHECK(score.recall == doctest::Approx(1.0));
            CHECK(score.f1 == doctest::Approx(1.0));
            if (score.are) CHECK(*score.are == doctest::Approx(0.0));
            if (task == Task::OE) {
                CHECK(score.schedule_valid == true);
                CHECK(score.exact == true);
            }
        }
        nlohmann::ordered_json ae_gold = gold_for_task(Task::AE, c, corpus);
        ParsedResponse parsed = parse_response(Task::AE, testsupport::gold_to_response(Task::AE, ae_gold));
        CHECK(score_sample(Task::AE, parsed, ae_gold, c, corpus).f1 == doctest::Approx(1.0));
    }
}

TEST_CASE("NA tolerance example") {
    const Corpus& corpus = testsupport::shipped_corpus();
    Case dummy;
    nlohmann::ordered_json gold = {{"Federal", 1000000}}; // $10,000
    ParsedResponse near = parse_payload(Task::NA, R"({"Federal": 10400})");
    SampleScore s = score_sample(Task::NA, near, gold, dummy, corpus);
    CHECK(s.f1 == doctest::Approx(1.0));
    CHECK(*s.are == doctest::Approx(40000.0 / 1000100.0));

    ParsedResponse far = parse_payload(Task::NA, R"({"Federal": 10501})");
    CHECK(score_sample(Task::NA, far, gold, dummy, corpus).f1 == doctest::Approx(0.0));
}

TEST_CASE("alternate optimal schedules score as correct for OE") {
    const Corpus& corpus = testsupport::shipped_corpus();
    Case c = load_case_file(testsupport::data_dir() / "cases" / "oe_fixture.case.json");
    nlohmann::ordered_json gold = gold_for_task(Task::OE, c, corpus);

    // The paper's printed schedule differs from the solver's first-found one
    // but reaches the same zero exposure; it must count as correct.
    std::string printed =
        "FINAL ANSWER: {"
        "\"small mountain cabin used year-round as the principal residence\": ["
        "{\"citation\": \"11 U.S.C. § 522(d)(5)\", \"claim_value\": 30850},"
        "{\"citation\": \"11 U.S.C. § 522(d)(1)\", \"claim_value\": 18650}],"
        "\"pair of suede ankle boots with zipper closure\": ["
        "{\"citation\": \"11 U.S.C. § 522(d)(3)\", \"claim_value\": 225}],"
        "\"audiologist prescribed custom-fit hearing aids with behind-the-ear receiver and noise "
        "filtering\": [{\"citation\": \"11 U.S.C. § 522(d)(9)\", \"claim_value\": 1425}],"
        "\"14-karat gold engagement band with engraving on the inner surface\": ["
        "{\"citation\": \"11 U.S.C. § 522(d)(4)\", \"claim_value\": 770}],"
        "\"oxygen concentrator with portable carry cart and backup battery (physician authorized)\": "
        "[{\"citation\": \"11 U.S.C. § 522(d)(9)\", \"claim_value\": 3250}],"
        "\"floor-length curtains with floral embroidery\": ["
        "{\"citation\": \"11 U.S.C. § 522(d)(3)\", \"claim_value\": 280}]}";
    ParsedResponse parsed = parse_response(Task::OE, printed);
    REQUIRE(parsed.format_valid);
    SampleScore score = score_sample(Task::OE, parsed, gold, c, corpus);
    CHECK(score.schedule_valid == true);
    CHECK(score.exact == true);
    CHECK(score.precision == doctest::Approx(1.0));

    // An illegal schedule can never be scored correct, whatever it claims.
    std::string illegal =
        "FINAL ANSWER: {\"small mountain cabin used year-round as the principal residence\": "
        "[{\"citation\": \"11 U.S.C. § 522(d)(1)\", \"claim_value\": 49500}],"
        "\"pair of suede ankle boots with zipper closure\": "
        "[{\"citation\": \"11 U.S.C. § 522(d)(4)\", \"claim_value\": 225}]}";
    SampleScore bad = score_sample(Task::OE, parse_response(Task::OE, illegal), gold, c, corpus);
    CHECK(bad.schedule_valid == false);
    CHECK(bad.exact == false);
    CHECK(bad.f1 == doctest::Approx(0.0));

    // Mixing regimes is illegal too.
    std::string mixed =
        "FINAL ANSWER: {\"pair of suede ankle boots with zipper closure\": "
        "[{\"citation\": \"11 U.S.C. § 522(d)(3)\", \"claim_value\": 100},"
        "{\"citation\": \"Or. Rev. Stat. § 18.345(1)(b)\", \"claim_value\": 100}]}";
    SampleScore mix = score_sample(Task::OE, parse_response(Task::OE, mixed), gold, c, corpus);
    CHECK(mix.schedule_valid == false);
    CHECK(mix.exact == false);
}

TEST_CASE("evaluate_run aggregates, counts malformed, and rejects unknown ids") {
    const Corpus& corpus = testsupport::shipped_corpus();
    GenerationConfig config;
    config.start_task_id = 2;
    config.terminal_task_id = 2;
    config.dataset_size = 4;
    config.asset_count_min = config.asset_count_max = 2;
    config.domicile_count_min = config.domicile_count_max = 2;
    config.state_jurisdictions = {"Wisconsin", "Illinois"};
    config.statute_directory = testsupport::data_dir() / "statutes";
    config.asset_directory = testsupport::data_dir() / "assets";
    config.template_directory = testsupport::data_dir() / "templates";
    config.output_directory = testsupport::fresh_temp_dir("eval-run");
    config.seed = 11;
    GeneratorContext ctx = GeneratorContext::load(config);
    auto datasets = generate_dataset(config, ctx);
    REQUIRE(datasets.size() == 1);
    TaskDataset ds = TaskDataset::load(datasets[0].root);

    auto gold_path = config.output_directory / "gold.jsonl";
    testsupport::write_gold_responses(ds, gold_path);
    MetricReport all_gold = evaluate_run(ds, load_responses(gold_path));
    CHECK(all_gold.macro_f1 == doctest::Approx(1.0));
    CHECK(all_gold.malformed == 0);

    // Empty responses: every sample is malformed and scores zero.
    MetricReport all_empty = evaluate_run(ds, {});
    CHECK(all_empty.macro_f1 == doctest::Approx(0.0));
    CHECK(all_empty.malformed_rate == doctest::Approx(1.0));

    // One garbage response out of N.
    auto responses = load_responses(gold_path);
    responses.begin()->second = "no marker, no json";
    MetricReport mixed = evaluate_run(ds, responses);
    CHECK(mixed.malformed == 1);

    std::map<std::string, std::string> bogus = {{"nonexistent-id", "FINAL ANSWER: {}"}};
    CHECK_THROWS_AS(evaluate_run(ds, bogus), UnknownInstanceId);
    (void)corpus;
}
