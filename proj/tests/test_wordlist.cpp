#include <catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "lexidist/concept_list.hpp"
#include "lexidist/errors.hpp"
#include "lexidist/wordlist.hpp"

using Catch::Matchers::ContainsSubstring;
using namespace lexidist;

namespace {

const std::string kDataDir = LEXIDIST_DATA_DIR;

ConceptList mini_concepts() {
    return load_concept_list(kDataDir + "/fixtures/mini10_concepts.tsv");
}

ParseResult parse_text(const std::string& text, const ConceptList& concepts,
                       NormalizationOptions options = {}) {
    std::istringstream in(text);
    return parse_wordlists(in, concepts, options, "<test>");
}

}  // namespace

TEST_CASE("concept list loads and validates", "[concepts]") {
    const auto concepts = mini_concepts();
    CHECK(concepts.size() == 10);
    CHECK(concepts.name() == "mini10_concepts");
    CHECK(concepts.gloss(1) == "water");
    CHECK(concepts.gloss(10) == "night");
    CHECK(concepts.contains(7));
    CHECK_FALSE(concepts.contains(11));

    const auto swadesh = load_concept_list(kDataDir + "/swadesh207.tsv");
    CHECK(swadesh.size() == 207);
    CHECK(swadesh.gloss(1) == "I");
    CHECK(swadesh.gloss(207) == "name");
}

TEST_CASE("concept list rejects gaps and bad rows", "[concepts]") {
    std::istringstream gap("concept_id\tgloss\n1\twater\n3\tdog\n");
    CHECK_THROWS_AS(load_concept_list(gap, "gap"), validation_error);

    std::istringstream dup("concept_id\tgloss\n1\twater\n1\tfire\n");
    CHECK_THROWS_AS(load_concept_list(dup, "dup"), validation_error);

    std::istringstream bad_id("concept_id\tgloss\nx\twater\n");
    CHECK_THROWS_AS(load_concept_list(bad_id, "bad"), parse_error);

    std::istringstream empty_gloss("concept_id\tgloss\n1\t\n");
    CHECK_THROWS_AS(load_concept_list(empty_gloss, "nogloss"), validation_error);
}

TEST_CASE("long format parses the bundled fixture", "[wordlist]") {
    const auto concepts = mini_concepts();
    const auto result = parse_wordlists_file(kDataDir + "/fixtures/mini10.tsv", concepts, {});
    REQUIRE(result.wordlists.size() == 2);
    const Wordlist& north = result.wordlists[0];
    const Wordlist& south = result.wordlists[1];
    CHECK(north.variety == "North");
    CHECK(south.variety == "South");
    CHECK(north.entries.size() == 9);
    CHECK(south.entries.size() == 10);
    REQUIRE(north.entries.at(3).size() == 2);
    CHECK(north.entries.at(3)[0].normalized == "se");
    CHECK(north.entries.at(3)[1].normalized == "kutik");
    CHECK_FALSE(north.entries.contains(10));
    CHECK(south.entries.at(10)[0].normalized == "\xC5\x9F\x65v");  // şev
    CHECK(south.entries.at(9)[0].script == "Latin");
    CHECK(result.warnings.empty());
}

TEST_CASE("long format enforces its header", "[wordlist]") {
    const auto concepts = mini_concepts();
    CHECK_THROWS_AS(parse_text("1\twater\tNorth\taw\n", concepts), parse_error);
    CHECK_THROWS_WITH(parse_text("concept\tgloss\tvariety\tform\n", concepts),
                      ContainsSubstring("header"));
    CHECK_THROWS_AS(parse_text("", concepts), parse_error);
    // comments and blank lines may precede the header
    const auto ok = parse_text("# c\n\nconcept_id\tgloss\tvariety\tform\n1\twater\tN\taw\n", concepts);
    CHECK(ok.wordlists.size() == 1);
}

TEST_CASE("long format surfaces bad rows with line numbers", "[wordlist]") {
    const auto concepts = mini_concepts();
    const std::string header = "concept_id\tgloss\tvariety\tform\n";
    CHECK_THROWS_WITH(parse_text(header + "1\twater\tN\n", concepts),
                      ContainsSubstring("line 2"));
    CHECK_THROWS_WITH(parse_text(header + "abc\twater\tN\taw\n", concepts),
                      ContainsSubstring("line 2"));
    CHECK_THROWS_AS(parse_text(header + "99\twater\tN\taw\n", concepts), validation_error);
    CHECK_THROWS_AS(parse_text(header + "1\twater\tBad(Name\taw\n", concepts), validation_error);
    CHECK_THROWS_AS(parse_text(header + "1\twater\tN\t\xC0\xAF\n", concepts), encoding_error);
}

TEST_CASE("long format tolerates BOM and CRLF", "[wordlist]") {
    const auto concepts = mini_concepts();
    const std::string text =
        "\xEF\xBB\xBF"
        "concept_id\tgloss\tvariety\tform\r\n1\twater\tN\taw\r\n";
    const auto result = parse_text(text, concepts);
    REQUIRE(result.wordlists.size() == 1);
    CHECK(result.wordlists[0].entries.at(1)[0].raw == "aw");
}

TEST_CASE("empty and duplicate forms warn and are skipped", "[wordlist]") {
    const auto concepts = mini_concepts();
    const std::string text =
        "concept_id\tgloss\tvariety\tform\n"
        "1\twater\tN\taw\n"
        "1\twater\tN\taw\n"       // duplicate raw
        "1\twater\tN\tAW.\n"      // duplicate after normalization
        "2\tfire\tN\t\n"          // empty cell
        "3\tdog\tN\t...\n";       // empty after normalization
    const auto result = parse_text(text, concepts);
    const Wordlist& wl = result.wordlists[0];
    REQUIRE(wl.entries.at(1).size() == 1);
    CHECK_FALSE(wl.entries.contains(2));
    CHECK_FALSE(wl.entries.contains(3));
    REQUIRE(result.warnings.size() == 4);
    CHECK_THAT(result.warnings[0].message, ContainsSubstring("duplicate form"));
    CHECK(result.warnings[0].line == 3);
    CHECK_THAT(result.warnings[2].message, ContainsSubstring("empty form"));
}

TEST_CASE("normalization feeds parsed forms", "[wordlist]") {
    const auto concepts = mini_concepts();
    const std::string text = "concept_id\tgloss\tvariety\tform\n1\twater\tN\t  AW.  \n";
    const auto result = parse_text(text, concepts);
    const LexicalForm& form = result.wordlists[0].entries.at(1)[0];
    CHECK(form.raw == "  AW.  ");
    CHECK(form.normalized == "aw");

    NormalizationOptions keep;
    keep.case_fold = false;
    keep.strip_punctuation = false;
    const auto result2 = parse_text(text, concepts, keep);
    CHECK(result2.wordlists[0].entries.at(1)[0].normalized == "AW.");
}

TEST_CASE("serialize then reparse is the identity", "[wordlist]") {
    const auto concepts = mini_concepts();
    const auto first = parse_wordlists_file(kDataDir + "/fixtures/mini10.tsv", concepts, {});
    const std::string text = serialize_wordlists_to_string(first.wordlists, concepts);
    const auto second = parse_text(text, concepts);
    REQUIRE(second.wordlists.size() == first.wordlists.size());
    CHECK(second.wordlists == first.wordlists);
    CHECK(second.warnings.empty());
}

TEST_CASE("column mapping parses and validates", "[wide]") {
    const auto mapping = ColumnMapping::parse("id=1,gloss=2,Zaza=3,Hawrami=4");
    CHECK(mapping.id_column == 1);
    CHECK(mapping.gloss_column == 2);
    REQUIRE(mapping.variety_columns.size() == 2);
    CHECK(mapping.variety_columns[0].first == "Zaza");
    CHECK(mapping.variety_columns[1].second == 4);
    CHECK(mapping.max_column() == 4);

    CHECK_THROWS_AS(ColumnMapping::parse("gloss=2,Zaza=3"), parse_error);       // no id
    CHECK_THROWS_AS(ColumnMapping::parse("id=1"), parse_error);                 // no variety
    CHECK_THROWS_AS(ColumnMapping::parse("id=1,Zaza=1"), parse_error);          // column twice
    CHECK_THROWS_AS(ColumnMapping::parse("id=1,Zaza=2,Zaza=3"), parse_error);   // name twice
    CHECK_THROWS_AS(ColumnMapping::parse("id=0,Zaza=2"), parse_error);          // not 1-based
    CHECK_THROWS_AS(ColumnMapping::parse("id=x,Zaza=2"), parse_error);
    CHECK_THROWS_AS(ColumnMapping::parse("id1,Zaza=2"), parse_error);
}

TEST_CASE("wide format ingests one column per variety", "[wide]") {
    const auto concepts = mini_concepts();
    const auto mapping = ColumnMapping::parse("id=1,gloss=2,North=3,South=4");
    const std::string text =
        "id,gloss,North,South\n"
        "1,water,aw,av\n"
        "2,fire,agir,agir\n"
        "3,dog,se/kutik,seg\n"
        "10,night,,\xC5\x9F\x65v\n";
    std::istringstream in(text);
    const auto result = parse_wordlists_wide(in, concepts, {}, mapping, ',', "<wide>");
    REQUIRE(result.wordlists.size() == 2);
    const Wordlist& north = result.wordlists[0];
    const Wordlist& south = result.wordlists[1];
    CHECK(north.variety == "North");
    REQUIRE(north.entries.at(3).size() == 2);
    CHECK(north.entries.at(3)[1].normalized == "kutik");
    CHECK_FALSE(north.entries.contains(10));  // empty cell is an absence
    CHECK(south.entries.at(10)[0].normalized == "\xC5\x9F\x65v");
}

TEST_CASE("wide format errors", "[wide]") {
    const auto concepts = mini_concepts();
    const auto mapping = ColumnMapping::parse("id=1,North=2,South=3");
    std::istringstream short_row("id,North,South\n1,aw\n");
    CHECK_THROWS_WITH(parse_wordlists_wide(short_row, concepts, {}, mapping, ',', "<wide>"),
                      ContainsSubstring("line 2"));
    std::istringstream no_header("");
    CHECK_THROWS_WITH(parse_wordlists_wide(no_header, concepts, {}, mapping, ',', "<wide>"),
                      ContainsSubstring("header"));
    std::istringstream bad_id("id,North,South\nseven,aw,av\n");
    CHECK_THROWS_AS(parse_wordlists_wide(bad_id, concepts, {}, mapping, ',', "<wide>"),
                    parse_error);
}

TEST_CASE("wide format quoted csv cells", "[wide]") {
    const auto concepts = mini_concepts();
    const auto mapping = ColumnMapping::parse("id=1,gloss=2,North=3");
    std::istringstream in("id,gloss,North\n1,\"water, cold\",aw\n");
    const auto result = parse_wordlists_wide(in, concepts, {}, mapping, ',', "<wide>");
    CHECK(result.wordlists[0].entries.at(1)[0].normalized == "aw");
}

TEST_CASE("validation reports coverage, scripts, histograms", "[validate]") {
    const auto concepts = mini_concepts();
    const auto parsed = parse_wordlists_file(kDataDir + "/fixtures/mini10.tsv", concepts, {});
    const auto report = validate_wordlists(parsed.wordlists, concepts);
    CHECK_FALSE(report.has_errors());
    REQUIRE(report.varieties.size() == 2);
    const VarietyCoverage& north = report.varieties[0];
    CHECK(north.covered == 9);
    CHECK(north.missing_ids == std::vector<int>{10});
    CHECK(north.variant_histogram.at(1) == 8);
    CHECK(north.variant_histogram.at(2) == 1);
    CHECK(north.dominant_script == "Latin");
    const VarietyCoverage& south = report.varieties[1];
    CHECK(south.covered == 10);
    CHECK(south.missing_ids.empty());
    CHECK(report.to_text().find("variety North: coverage 9/10") != std::string::npos);
    CHECK(report.to_text().find("missing ids 10") != std::string::npos);
}

TEST_CASE("validation flags duplicates, emptiness, script mixing", "[validate]") {
    const auto concepts = mini_concepts();
    const auto parsed = parse_wordlists_file(kDataDir + "/fixtures/mini10.tsv", concepts, {});

    std::vector<Wordlist> dup = {parsed.wordlists[0], parsed.wordlists[0]};
    CHECK(validate_wordlists(dup, concepts).has_errors());

    CHECK(validate_wordlists({}, concepts).has_errors());

    const auto mixed = parse_wordlists_file(kDataDir + "/fixtures/mixed_script.tsv", concepts, {});
    const auto report = validate_wordlists(mixed.wordlists, concepts);
    CHECK_FALSE(report.has_errors());
    bool warned = false;
    for (const auto& issue : report.issues) {
        if (issue.severity == Severity::warning &&
            issue.message.find("different dominant scripts") != std::string::npos) {
            warned = true;
        }
    }
    CHECK(warned);
    CHECK(report.varieties[0].dominant_script == "Latin");
    CHECK(report.varieties[1].dominant_script == "Arabic");
}

TEST_CASE("synthetic 207 fixture has full coverage", "[validate]") {
    const auto swadesh = load_concept_list(kDataDir + "/swadesh207.tsv");
    const auto parsed =
        parse_wordlists_file(kDataDir + "/fixtures/synthetic207.tsv", swadesh, {});
    REQUIRE(parsed.wordlists.size() == 4);
    const auto report = validate_wordlists(parsed.wordlists, swadesh);
    CHECK_FALSE(report.has_errors());
    for (const auto& v : report.varieties) {
        CAPTURE(v.variety);
        CHECK(v.covered == 207);
        CHECK(v.missing_ids.empty());
        CHECK(v.dominant_script == "Latin");
    }
    // Alpha carries double variants on the ids divisible by 29
    CHECK(report.varieties[0].variant_histogram.at(2) == 7);
}
