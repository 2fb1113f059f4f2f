#include <catch_amalgamated.hpp>

#include <random>
#include <string>

#include "lexidist/errors.hpp"
#include "lexidist/normalize.hpp"
#include "lexidist/unicode.hpp"
#include "lexidist/utf8.hpp"

using namespace lexidist;

TEST_CASE("utf8 decode/encode round trip", "[utf8]") {
    const std::string samples[] = {
        "",
        "roj",
        "kit\xC3\xAA\x62",              // kitêb
        "\xD8\xA6\xD8\xA7\xD9\x88",     // ئاو
        "\xE2\x82\xAC",                 // €
        "\xF0\x9F\x8C\x8D",             // 🌍 (4-byte)
    };
    for (const auto& s : samples) {
        CAPTURE(s);
        CHECK(utf8::encode(utf8::decode(s)) == s);
    }
    CHECK(utf8::decode("kit\xC3\xAA\x62").size() == 5);
    CHECK(utf8::decode("\xF0\x9F\x8C\x8D").size() == 1);
}

TEST_CASE("utf8 decoding is strict", "[utf8]") {
    // overlong, bare continuation, truncated sequence, CESU surrogate,
    // beyond U+10FFFF, lone lead byte
    const std::string bad[] = {
        "\xC0\xAF",
        "\x80",
        "\xE2\x82",
        "\xED\xA0\x80",
        "\xF4\x90\x80\x80",
        "ab\xC3",
    };
    for (const auto& s : bad) {
        CAPTURE(s);
        CHECK_THROWS_AS(utf8::decode(s), encoding_error);
    }
    std::u32string out;
    std::size_t bad_offset = 0;
    CHECK_FALSE(utf8::try_decode("ab\xC0\xAF", out, bad_offset));
    CHECK(bad_offset == 2);
    CHECK_THROWS_WITH(utf8::decode("ab\xC0\xAF"),
                      Catch::Matchers::ContainsSubstring("byte offset 2"));
}

TEST_CASE("nfc composes combining sequences", "[unicode]") {
    // e + combining acute -> é
    CHECK(uni::nfc(U"é") == U"é");
    // already composed stays put
    CHECK(uni::nfc(U"é") == U"é");
    CHECK(uni::nfc(U"kitêb") == U"kitêb");
}

TEST_CASE("case folding is full, not simple", "[unicode]") {
    CHECK(uni::case_fold(U"KITÊB") == U"kitêb");
    CHECK(uni::case_fold(U"ß") == U"ss");  // ß
    CHECK(uni::case_fold(U"ROJ") == U"roj");
    CHECK(uni::case_fold(U"Ş") == U"ş");  // Ş -> ş
}

TEST_CASE("script detection", "[unicode]") {
    CHECK(uni::script_name(U'a') == "Latin");
    CHECK(uni::script_name(U'ا') == "Arabic");  // ا
    CHECK(uni::dominant_script(U"kitêb") == "Latin");
    CHECK(uni::dominant_script(U"ئاو") == "Arabic");  // ئاو
    // digits and space carry no script
    CHECK(uni::dominant_script(U"123 456") == "Common");
    // ties resolve alphabetically: 3 Latin vs 3 Arabic -> Arabic
    CHECK(uni::dominant_script(U"abcئاو") == "Arabic");
    // combining marks are Inherited and do not count
    CHECK(uni::dominant_script(U"é") == "Latin");
}

TEST_CASE("normalize_form pipeline", "[normalize]") {
    const NormalizationOptions defaults;
    CHECK(normalize_form("  Kit\xC3\xAA\x62.  ", defaults) == "kit\xC3\xAA\x62");
    CHECK(normalize_form("''se''", defaults) == "se");
    CHECK(normalize_form("a  \t b", defaults) == "a b");
    CHECK(normalize_form("ROJ", defaults) == "roj");
    // decomposed input comes out composed
    CHECK(normalize_form("e\xCC\x81", defaults) == "\xC3\xA9");
    // nothing survives: whitespace, punctuation-only
    CHECK(normalize_form("   ", defaults) == "");
    CHECK(normalize_form("...", defaults) == "");
    CHECK(normalize_form("\xE2\x80\x94", defaults) == "");  // em dash
    CHECK(normalize_form("", defaults) == "");
    // punctuation strips from the edges only
    CHECK(normalize_form("ji-bo", defaults) == "ji-bo");
    CHECK(normalize_form("(roj)", defaults) == "roj");
}

TEST_CASE("normalization options toggle steps", "[normalize]") {
    NormalizationOptions keep_case;
    keep_case.case_fold = false;
    CHECK(normalize_form("Kit\xC3\xAA\x62", keep_case) == "Kit\xC3\xAA\x62");

    NormalizationOptions keep_punct;
    keep_punct.strip_punctuation = false;
    CHECK(normalize_form("roj.", keep_punct) == "roj.");
    // whitespace still trims even with punctuation kept
    CHECK(normalize_form("  roj.  ", keep_punct) == "roj.");
}

TEST_CASE("normalization is idempotent", "[normalize][property]") {
    const NormalizationOptions variants[] = {
        {},
        {.case_fold = false},
        {.strip_punctuation = false},
        {.case_fold = false, .strip_punctuation = false},
    };
    const std::u32string pool =
        U"abcXYZ \t.',()-êŞß́ائ—É";
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> len_dist(0, 16);
    std::uniform_int_distribution<std::size_t> char_dist(0, pool.size() - 1);
    for (int iter = 0; iter < 500; ++iter) {
        std::u32string raw;
        const std::size_t len = len_dist(rng);
        for (std::size_t i = 0; i < len; ++i) raw.push_back(pool[char_dist(rng)]);
        const std::string raw8 = utf8::encode(raw);
        for (const auto& options : variants) {
            const std::string once = normalize_form(raw8, options);
            REQUIRE(normalize_form(once, options) == once);
        }
    }
}
