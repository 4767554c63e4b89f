#include "doctest.h"

#include "support.hpp"

#include "exempt/fuzzy.hpp"
#include "exempt/normalize.hpp"
#include "exempt/rng.hpp"

using namespace exempt;

TEST_CASE("exact and contained matches score 100") {
    CHECK(partial_ratio("calico cat", "calico cat") == doctest::Approx(100.0));
    CHECK(partial_ratio("calico cat", "the calico cat worth $145") == doctest::Approx(100.0));
    CHECK(indel_similarity("abc", "abc") == doctest::Approx(100.0));
    CHECK(indel_similarity("", "") == doctest::Approx(100.0));
    CHECK(partial_ratio("", "abc") == doctest::Approx(0.0));
}

TEST_CASE("match_asset applies the 90 threshold") {
    std::vector<std::string> golds = {"calico cat", "woven tapestry wall hanging with bohemian motif"};
    CHECK(match_asset("calico cat", golds) == std::string("calico cat"));
    CHECK(match_asset("the calico cat worth $145", golds) == std::string("calico cat"));
    CHECK(match_asset("CALICO  CAT", golds) == std::string("calico cat"));
    CHECK(match_asset("calicoo cat", golds) == std::string("calico cat")); // one typo stays above 90
    CHECK_FALSE(match_asset("unrelated text", golds).has_value());
    CHECK_FALSE(match_asset("", golds).has_value());
}

TEST_CASE("ties break toward the longer gold description") {
    std::vector<std::string> golds = {"gold watch", "gold watch with leather band"};
    // Both contain the query verbatim, so both score 100.
    CHECK(match_asset("gold watch", golds) == std::string("gold watch with leather band"));
}

TEST_CASE("hand-labeled pairs match the expected side of the threshold") {
    struct Pair {
        const char* predicted;
        const char* gold;
        bool matches;
    };
    const Pair pairs[] = {
        {"calico cat", "calico cat", true},
        {"the calico cat", "calico cat", true},
        {"calico cat worth $145.00", "calico cat", true},
        {"calco cat", "calico cat", true},
        {"calio cat", "calico cat", true},
        {"cat", "calico cat", true}, // substring: partial ratio is 100 by design
        {"tabby kitten", "calico cat", false},
        {"dog", "calico cat", false},
        {"1981 DeLorean DMC-12", "1981 DeLorean DMC-12", true},
        {"1981 delorean dmc-12", "1981 DeLorean DMC-12", true},
        {"DeLorean DMC-12", "1981 DeLorean DMC-12", true},
        {"1982 DeLorean DMC13", "1981 DeLorean DMC-12", false},
        {"Hi-Point C9 9mm pistol", "Hi-Point C9 9mm pistol", true},
        {"Hi Point C9 9mm pistol", "Hi-Point C9 9mm pistol", true},
        {"Glock 19 9mm pistol", "Hi-Point C9 9mm pistol", false},
        {"oxygen concentrator", "oxygen concentrator with portable carry cart", true},
        {"oxygen tank", "oxygen concentrator with portable carry cart", false},
        {"pair of suede ankle boots", "pair of suede ankle boots with zipper closure", true},
        {"suede boots", "pair of suede ankle boots with zipper closure", false},
        {"woven tapestry wall hanging", "woven tapestry wall hanging with bohemian motif", true},
        {"bohemian tapestry", "woven tapestry wall hanging with bohemian motif", false},
        {"queen-size bed frame", "queen-size bed frame with memory foam mattress", true},
        {"king-size bed", "queen-size bed frame with memory foam mattress", false},
        {"savings account", "savings account at First Community Credit Union", true},
        {"checking account at Chase", "savings account at First Community Credit Union", false},
        {"insulin pump", "insulin pump with continuous glucose monitor", true},
    };
    for (const auto& p : pairs) {
        CAPTURE(p.predicted);
        CAPTURE(p.gold);
        bool matched = match_asset(p.predicted, {p.gold}).has_value();
        CHECK(matched == p.matches);
    }
}

TEST_CASE("production partial ratio equals the reference maximization") {
    Rng rng(31337);
    const std::string alphabet = "abcde ";
    auto random_string = [&](size_t max_len) {
        std::string s;
        size_t len = rng.below(max_len + 1);
        for (size_t i = 0; i < len; ++i) s.push_back(alphabet[rng.below(alphabet.size())]);
        return s;
    };
    for (int trial = 0; trial < 2000; ++trial) {
        std::string a = random_string(12);
        std::string b = random_string(18);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(partial_ratio(a, b) ==
              doctest::Approx(testsupport::reference_partial_ratio(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("similarity is symmetric and bounded") {
    Rng rng(8);
    const std::string alphabet = "xyz";
    for (int trial = 0; trial < 500; ++trial) {
        std::string a, b;
        for (size_t i = rng.below(10); i > 0; --i) a.push_back(alphabet[rng.below(3)]);
        for (size_t i = rng.below(10); i > 0; --i) b.push_back(alphabet[rng.below(3)]);
        double s = indel_similarity(a, b);
        CHECK(s >= 0.0);
        CHECK(s <= 100.0);
        CHECK(s == doctest::Approx(indel_similarity(b, a)));
        double pr = partial_ratio(a, b);
        CHECK(pr >= 0.0);
        CHECK(pr <= 100.0);
        CHECK(pr >= s - 1e-9); // widening to substrings never hurts
    }
}

TEST_CASE("citation normalization identifies equivalent spellings") {
    CHECK(normalize_citation("11 u.s.c. § 522(D)(3) ") == normalize_citation("11 U.S.C. § 522(d)(3)"));
    CHECK(normalize_citation("Wis. Stat. §815.18(3)(d)") ==
          normalize_citation("Wis. Stat. § 815.18(3)(d)"));
    CHECK(normalize_citation("11 U.S.C. sec. 522(d)(3)") ==
          normalize_citation("11 U.S.C. § 522(d)(3)"));
    std::string canonical = normalize_citation("11 U.S.C. § 522(d)(3)");
    CHECK(normalize_citation(canonical) == canonical); // idempotent
}

TEST_CASE("normalization never merges distinct corpus citations") {
    const Corpus& corpus = testsupport::shipped_corpus();
    std::vector<std::string> normalized;
    for (const auto& profile : corpus.profiles) {
        for (const auto& st : profile.statutes) {
            normalized.push_back(normalize_citation(st.citation));
        }
    }
    std::sort(normalized.begin(), normalized.end());
    CHECK(std::adjacent_find(normalized.begin(), normalized.end()) == normalized.end());
}
