#include <catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "lexidist/metrics.hpp"
#include "lexidist/utf8.hpp"

using Catch::Matchers::WithinAbs;
using namespace lexidist;

namespace {

double jaro8(const char* a, const char* b) {
    return jaro_similarity(utf8::decode(a), utf8::decode(b));
}

double naive8(const char* a, const char* b) {
    return jaro_similarity_naive(utf8::decode(a), utf8::decode(b));
}

}  // namespace

TEST_CASE("jaro matches hand-traced values", "[metrics]") {
    CHECK_THAT(jaro8("martha", "marhta"), WithinAbs(0.944444, 1e-6));
    CHECK_THAT(jaro8("dixon", "dicksonx"), WithinAbs(0.766667, 1e-6));
    CHECK_THAT(jaro8("crate", "trace"), WithinAbs(0.733333, 1e-6));
    CHECK_THAT(jaro8("av", "aw"), WithinAbs(2.0 / 3.0, 1e-12));
    CHECK_THAT(jaro8("se", "seg"), WithinAbs(8.0 / 9.0, 1e-12));
    CHECK_THAT(jaro8("dest", "dast"), WithinAbs(5.0 / 6.0, 1e-12));
}

TEST_CASE("jaro conventions on empty and disjoint inputs", "[metrics]") {
    CHECK(jaro8("", "") == 1.0);
    CHECK(jaro8("", "abc") == 0.0);
    CHECK(jaro8("abc", "") == 0.0);
    CHECK(jaro8("abc", "xyz") == 0.0);
    CHECK(jaro8("kit\xC3\xAA\x62", "kit\xC3\xAA\x62") == 1.0);  // kitêb
    CHECK(jaro8("heyv", "mang") == 0.0);
    CHECK(jaro8("kutik", "seg") == 0.0);
    // both length 1 -> window 0, so distinct scalars never match
    CHECK(jaro8("\xC3\xAA", "e") == 0.0);  // ê vs e
}

TEST_CASE("jaro window never goes negative", "[metrics]") {
    CHECK(detail::jaro_window(0, 0) == 0);
    CHECK(detail::jaro_window(1, 1) == 0);
    CHECK(detail::jaro_window(2, 2) == 0);
    CHECK(detail::jaro_window(3, 2) == 0);
    CHECK(detail::jaro_window(4, 2) == 1);
    CHECK(detail::jaro_window(8, 5) == 3);
}

TEST_CASE("jaro distance is the exact complement", "[metrics]") {
    CHECK_THAT(jaro_distance(utf8::decode("martha"), utf8::decode("marhta")),
               WithinAbs(0.055556, 1e-6));
    CHECK(jaro_distance(utf8::decode("roj"), utf8::decode("roj")) == 0.0);
    CHECK(jaro_distance(utf8::decode("abc"), utf8::decode("xyz")) == 1.0);
}

TEST_CASE("jaro operates on scalars, not bytes", "[metrics]") {
    // masî vs masi: 3 of 4 scalars match; byte-level would see 5 vs 4 units
    const auto a = utf8::decode("mas\xC3\xAE");
    const auto b = utf8::decode("masi");
    REQUIRE(a.size() == 4);
    CHECK_THAT(jaro_similarity(a, b), WithinAbs((3.0 / 4 + 3.0 / 4 + 1.0) / 3.0, 1e-12));
}

TEST_CASE("jaro-winkler boosts shared prefixes", "[metrics]") {
    CHECK_THAT(jaro_winkler_similarity(utf8::decode("martha"), utf8::decode("marhta")),
               WithinAbs(0.961111, 1e-6));
    CHECK_THAT(jaro_winkler_similarity(utf8::decode("dixon"), utf8::decode("dicksonx")),
               WithinAbs(0.813333, 1e-6));
    CHECK_THAT(jaro_winkler_similarity(utf8::decode("dwayne"), utf8::decode("duane")),
               WithinAbs(0.84, 1e-6));
    // no shared prefix -> plain jaro
    CHECK(jaro_winkler_similarity(utf8::decode("crate"), utf8::decode("trace")) ==
          jaro_similarity(utf8::decode("crate"), utf8::decode("trace")));
    // prefix contribution caps at 4 scalars
    const auto long_a = utf8::decode("abcdefgh");
    const auto long_b = utf8::decode("abcdexyz");
    const double j = jaro_similarity(long_a, long_b);
    CHECK_THAT(jaro_winkler_similarity(long_a, long_b), WithinAbs(j + 0.4 * (1.0 - j), 1e-12));
}

TEST_CASE("normalized levenshtein", "[metrics]") {
    CHECK_THAT(normalized_levenshtein(utf8::decode("kitten"), utf8::decode("sitting")),
               WithinAbs(0.571429, 1e-6));
    CHECK(normalized_levenshtein(utf8::decode(""), utf8::decode("")) == 1.0);
    CHECK(normalized_levenshtein(utf8::decode("abc"), utf8::decode("")) == 0.0);
    CHECK(normalized_levenshtein(utf8::decode("roj"), utf8::decode("roj")) == 1.0);
    CHECK_THAT(normalized_levenshtein(utf8::decode("av"), utf8::decode("aw")),
               WithinAbs(0.5, 1e-12));
}

TEST_CASE("metric registry", "[metrics]") {
    CHECK(parse_metric_id("jaro") == MetricId::jaro);
    CHECK(parse_metric_id("jaro_winkler") == MetricId::jaro_winkler);
    CHECK(parse_metric_id("levenshtein_norm") == MetricId::levenshtein_norm);
    CHECK_THROWS_AS(parse_metric_id("hamming"), std::invalid_argument);
    CHECK(to_string(MetricId::jaro) == "jaro");
    CHECK(metric_lookup(MetricId::jaro) == &jaro_similarity);
    CHECK(metric_lookup("levenshtein_norm") == &normalized_levenshtein);
    CHECK(metric_names().size() == 3);
}

namespace {

std::u32string random_word(std::mt19937& rng, const std::u32string& alphabet) {
    std::uniform_int_distribution<std::size_t> len_dist(0, 12);
    std::uniform_int_distribution<std::size_t> char_dist(0, alphabet.size() - 1);
    std::u32string word;
    const std::size_t len = len_dist(rng);
    word.reserve(len);
    for (std::size_t i = 0; i < len; ++i) word.push_back(alphabet[char_dist(rng)]);
    return word;
}

}  // namespace

TEST_CASE("property suite across three alphabets", "[metrics][property]") {
    const std::vector<std::u32string> alphabets = {
        U"abcdefghijklmnopqrstuvwxyz",
        U"abcdeêîûşçáéíóúàèìòùãõñäöü",
        U"ئابتجحخدرزسشعغفقكلمنهوىکگچپژیە",
    };
    std::mt19937 rng(42);
    std::size_t pairs = 0;
    for (const auto& alphabet : alphabets) {
        for (int iter = 0; iter < 400; ++iter) {
            const std::u32string a = random_word(rng, alphabet);
            const std::u32string b = random_word(rng, alphabet);
            ++pairs;

            const double sim = jaro_similarity(a, b);
            REQUIRE(sim >= 0.0);
            REQUIRE(sim <= 1.0);
            REQUIRE(sim == jaro_similarity(b, a));                     // symmetry, bit-exact
            REQUIRE((sim == 1.0) == (a == b));                         // identity
            REQUIRE_THAT(sim + jaro_distance(a, b), WithinAbs(1.0, 1e-12));
            REQUIRE(sim == jaro_similarity_naive(a, b));               // oracle, bit-exact

            for (auto fn : {&jaro_winkler_similarity, &normalized_levenshtein}) {
                const double s = fn(a, b);
                REQUIRE(s >= 0.0);
                REQUIRE(s <= 1.0);
                REQUIRE(s == fn(b, a));
                REQUIRE((s == 1.0) == (a == b));
            }
        }
    }
    REQUIRE(pairs >= 1000);
}
