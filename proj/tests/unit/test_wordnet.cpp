#include <doctest.h>

#include <sstream>

#include "cognate/error.hpp"
#include "cognate/wordnet.hpp"
#include "support.hpp"

using namespace cognate;

namespace {

SynsetTable parse_ok(const std::string& text, Language lang) {
    std::istringstream in(text);
    auto result = parse_wordnet(in, lang);
    REQUIRE(result.diagnostics.empty());
    return result.synsets;
}

}  // namespace

TEST_CASE("wordnet records parse with and without examples") {
    auto table = parse_ok(
        "# header comment\n"
        "\n"
        "1\tnoun\tकमल, पद्म\ta flower\tthe flower opened\n"
        "2\tverb\tचलना\tto walk\n"
        "3\tnoun\tलाल कमल\ta red flower\n",
        Language::hi);
    REQUIRE(table.size() == 3);
    const auto& one = table.at(SynsetId{1});
    CHECK(one.lemmas == std::vector<std::string>{"कमल", "पद्म"});
    CHECK(one.example == "the flower opened");
    CHECK_FALSE(table.at(SynsetId{2}).example);
    CHECK(table.at(SynsetId{2}).pos == PartOfSpeech::verb);
    CHECK(is_multiword(table.at(SynsetId{3}).lemmas[0]));
}

TEST_CASE("malformed wordnet records become diagnostics with line numbers") {
    std::istringstream in(
        "1\tnoun\tक\tgloss\n"
        "x\tnoun\tक\tgloss\n"
        "3\tthing\tक\tgloss\n"
        "4\tnoun\t\tgloss\n"
        "5\tnoun\tक,क\tgloss\n"
        "6\tnoun\tक\t\n"
        "7\tnoun\n"
        "8\tnoun\t\xFF\tgloss\n");
    auto result = parse_wordnet(in, Language::hi);
    CHECK(result.synsets.size() == 1);
    REQUIRE(result.diagnostics.size() == 7);
    CHECK(result.diagnostics[0].line == 2);
    CHECK(result.diagnostics[6].line == 8);
}

TEST_CASE("duplicate synset id is fatal") {
    std::istringstream in("1\tnoun\tक\tg\n1\tnoun\tख\tg\n");
    CHECK_THROWS_AS(parse_wordnet(in, Language::hi), DataError);
}

TEST_CASE("write and parse round trip") {
    auto table = parse_ok("1\tnoun\tक,ख\tg1\tex\n5\tadverb\tग\tg5\n", Language::hi);
    std::ostringstream out;
    write_wordnet(out, table);
    CHECK(parse_ok(out.str(), Language::hi) == table);
}

TEST_CASE("linking joins on id and excludes part-of-speech mismatches") {
    LinkedWordnet wn;
    wn.add_language(Language::hi, parse_ok("1\tnoun\tक\tg\n2\tnoun\tख\tg\n3\tverb\tग\tg\n", Language::hi));
    wn.add_language(Language::bn, parse_ok("2\tnoun\tখ\tg\n3\tnoun\tগ\tg\n4\tnoun\tঘ\tg\n", Language::bn));
    auto link = wn.link_pairs(Language::hi, Language::bn);
    REQUIRE(link.pairs.size() == 1);
    CHECK(link.pairs[0].source->id == SynsetId{2});
    REQUIRE(link.pos_mismatches.size() == 1);
    CHECK(link.pos_mismatches[0] == SynsetId{3});
    CHECK(wn.find(Language::bn, SynsetId{4}) != nullptr);
    CHECK(wn.find(Language::bn, SynsetId{1}) == nullptr);
    CHECK_THROWS_AS(wn.table(Language::ta), DataError);
}

TEST_CASE("directory loading names missing files") {
    std::vector<LoadReport> reports;
    auto wn = load_wordnet_dir(testing::fixture_path("wordnet"), {Language::hi, Language::mr, Language::bn}, &reports);
    CHECK(reports.size() == 3);
    CHECK(wn.table(Language::hi).size() == 19);
    try {
        load_wordnet_dir(testing::fixture_path("wordnet"), {Language::ta});
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("ta.wordnet.tsv") != std::string::npos);
    }
}
