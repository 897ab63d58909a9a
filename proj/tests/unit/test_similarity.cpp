#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "cognate/error.hpp"
#include "cognate/phonetic.hpp"
#include "cognate/script.hpp"
#include "cognate/similarity.hpp"
#include "cognate/text.hpp"
#include "support.hpp"

using namespace cognate;

namespace {

std::u32string u(std::string_view s) { return utf8_decode(s); }

std::u32string random_string(std::mt19937_64& rng, std::size_t max_len, std::size_t alphabet) {
    std::u32string s(uniform_index(rng, max_len + 1), U'a');
    for (auto& c : s) c = U'a' + static_cast<char32_t>(uniform_index(rng, alphabet));
    return s;
}

}  // namespace

TEST_CASE("script normalization rebases Indic blocks onto Devanagari") {
    auto hi = normalize_script("कमल", Language::hi);
    auto bn = normalize_script("কমল", Language::bn);
    auto ml = normalize_script("കമല", Language::ml);
    CHECK(hi.canonical == bn.canonical);
    CHECK(hi.canonical == ml.canonical);
    CHECK(bn.original == "কমল");
    CHECK_FALSE(bn.has_non_indic);
    CHECK(normalize_script("कA", Language::hi).has_non_indic);
    CHECK_THROWS_AS(normalize_script("", Language::hi), UsageError);
    CHECK_THROWS_AS(normalize_script("\xFF", Language::hi), DataError);

    const std::u32string with_nukta = U"ड़";
    CHECK(canonicalize(with_nukta).size() == 2);
    CHECK(canonicalize(with_nukta, {true}) == U"ड");
    // Bengali nukta lands on the Devanagari nukta too.
    CHECK(canonicalize(U"ড়", {true}) == U"ड");
    CHECK(script_block_base(Language::ta) == 0x0B80);
}

TEST_CASE("edit distance reference values") {
    CHECK(edit_distance(U"kitten", U"sitting") == 3);
    CHECK(edit_distance(U"", U"abc") == 3);
    CHECK(edit_distance(U"flaw", U"lawn") == 2);
    CHECK(edit_distance(u("कमल"), u("कमला")) == 1);
}

TEST_CASE("NED is exact for decimal thresholds") {
    CHECK(ned_similarity(U"abcdefghij", U"abcdefgxyz") == 0.7);
    CHECK(ned_similarity(U"abc", U"abc") == 1.0);
    CHECK(ned_similarity(U"abc", U"") == 0.0);
    CHECK_THROWS_AS(ned_similarity(U"", U""), UsageError);
}

TEST_CASE("shingle cosine") {
    CHECK(shingle_cosine(U"abc", U"abc") == doctest::Approx(1.0));
    CHECK(shingle_cosine(U"ab", U"cd") == 0.0);
    // kgcjtdn vs kgcmtdn share 4 of 6 bigrams.
    CHECK(shingle_cosine(U"kgcjtdn", U"kgcmtdn") == doctest::Approx(4.0 / 6.0));
    // Repeated shingles are counted.
    CHECK(shingle_cosine(U"aaa", U"aa") == doctest::Approx(1.0));
    // Too short for one shingle: boundary padding still compares them.
    CHECK(shingle_cosine(U"a", U"a") == doctest::Approx(1.0));
    CHECK(shingle_cosine(U"a", U"b") == 0.0);
    CHECK(shingle_cosine(U"ab", U"abc", 3) == 0.0);
    CHECK(shingle_cosine(U"abc", U"abd", 1) == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(shingle_cosine(U"a", U"b", 0), UsageError);
}

TEST_CASE("Jaro-Winkler reference values") {
    CHECK(jaro_winkler(U"MARTHA", U"MARHTA") == doctest::Approx(0.9611).epsilon(1e-4));
    CHECK(jaro_winkler(U"DWAYNE", U"DUANE") == doctest::Approx(0.84).epsilon(1e-3));
    CHECK(jaro_winkler(U"DIXON", U"DICKSONX") == doctest::Approx(0.8133).epsilon(1e-3));
    CHECK(jaro_winkler(U"abc", U"xyz") == 0.0);
    CHECK(jaro_winkler(U"", U"") == 1.0);
    CHECK(jaro_winkler(U"", U"a") == 0.0);
}

TEST_CASE("metric properties on random strings") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        auto a = random_string(rng, 8, 4);
        auto b = random_string(rng, 8, 4);
        auto c = random_string(rng, 8, 4);
        CHECK(edit_distance(a, b) == edit_distance(b, a));
        CHECK(edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c));
        CHECK(jaro_winkler(a, b) == jaro_winkler(b, a));
        double cos = shingle_cosine(a, b);
        CHECK(cos == shingle_cosine(b, a));
        CHECK((cos >= 0.0 && cos <= 1.0));
        if (!a.empty() || !b.empty()) {
            double ned = ned_similarity(a, b);
            CHECK((ned >= 0.0 && ned <= 1.0));
        }
        if (!a.empty()) {
            CHECK(ned_similarity(a, a) == 1.0);
            CHECK(jaro_winkler(a, a) == 1.0);
        }
    }
}

TEST_CASE("phonetic similarity prefers articulatorily close substitutions") {
    const auto& table = PhoneticTable::builtin();
    const std::u32string ka = U"क";
    const std::u32string kha = U"ख";
    const std::u32string ma = U"म";
    CHECK(phonetic_similarity(ka, ka, table) == 1.0);
    double close = phonetic_similarity(ka, kha, table);
    double far = phonetic_similarity(ka, ma, table);
    CHECK(close > far);
    CHECK(close < 1.0);
    CHECK(phonetic_similarity(ka + ma, kha + ma, table) > phonetic_similarity(ka + ma, ma + ma, table));
    CHECK(phonetic_substitution_cost(U'क', U'ख', table) ==
          phonetic_substitution_cost(U'ख', U'क', table));
    CHECK_THROWS_AS(phonetic_similarity(U"", ka, table), UsageError);

    table.reset_diagnostics();
    CHECK(phonetic_substitution_cost(U'x', U'क', table) == 1.0);
    CHECK(table.unmapped_lookups() == 1);
    table.reset_diagnostics();
}

TEST_CASE("phonetic table TSV round trip and shipped copy") {
    const auto& builtin = PhoneticTable::builtin();
    CHECK(PhoneticTable::feature_names().size() == kPhoneticDim);
    std::ostringstream out;
    builtin.write(out);
    std::istringstream in(out.str());
    CHECK(PhoneticTable::read(in, "mem") == builtin);
    CHECK(PhoneticTable::read_file(testing::source_path("data/phonetic_features.tsv")) == builtin);

    std::istringstream bad("# version: 1\noffset\tvowel\n15\t1\n");
    CHECK_THROWS_AS(PhoneticTable::read(bad, "mem"), DataError);
}

TEST_CASE("every letter of the shared block has a feature row") {
    const auto& table = PhoneticTable::builtin();
    for (char32_t cp = 0x0915; cp <= 0x0939; ++cp) CHECK(table.contains(cp));
    for (char32_t cp = 0x0905; cp <= 0x0914; ++cp) CHECK(table.contains(cp));
    CHECK(table.contains(0x093E));
    CHECK(table.contains(0x094D));
}
