#include <doctest.h>

#include <numeric>
#include <sstream>

#include "cognate/error.hpp"
#include "cognate/gold.hpp"
#include "support.hpp"

using namespace cognate;

namespace {

GoldEntry entry(std::uint64_t id, std::string src, std::string tgt, Provenance p,
                PartOfSpeech pos = PartOfSpeech::noun, Language target = Language::mr) {
    return {SynsetId{id}, pos, Language::hi, std::move(src), target, std::move(tgt), p};
}

GoldDataset random_dataset(std::mt19937_64& rng, std::size_t n) {
    GoldDataset out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(entry(1 + uniform_index(rng, 5), std::string(1, char('a' + uniform_index(rng, 3))),
                            std::string(1, char('a' + uniform_index(rng, 3))),
                            static_cast<Provenance>(uniform_index(rng, 3)),
                            static_cast<PartOfSpeech>(uniform_index(rng, 4)),
                            uniform_index(rng, 2) ? Language::mr : Language::bn));
    }
    return out;
}

}  // namespace

TEST_CASE("merge keeps the dictionary entry on collisions") {
    GoldDataset d1{entry(1, "a", "b", Provenance::D1)};
    GoldDataset d2{entry(1, "a", "b", Provenance::D2), entry(2, "c", "d", Provenance::D2)};
    auto merged = merge_gold(d2, d1);
    REQUIRE(merged.size() == 2);
    CHECK(merged[0].provenance == Provenance::D1);
    CHECK(merged == merge_gold(d1, d2));
}

TEST_CASE("merge is idempotent, commutative and associative") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        auto a = random_dataset(rng, uniform_index(rng, 15));
        auto b = random_dataset(rng, uniform_index(rng, 15));
        auto c = random_dataset(rng, uniform_index(rng, 15));
        auto ab = merge_gold(a, b);
        CHECK(merge_gold(ab, ab) == ab);
        CHECK(merge_gold(ab, {}) == ab);
        CHECK(ab == merge_gold(b, a));
        CHECK(merge_gold(ab, c) == merge_gold(a, merge_gold(b, c)));
        for (std::size_t k = 1; k < ab.size(); ++k) CHECK(ab[k - 1].key() < ab[k].key());
    }
}

TEST_CASE("gold CSV round trip rejects duplicates") {
    GoldDataset data{entry(1, "कमल", "কমল", Provenance::D2, PartOfSpeech::noun, Language::bn),
                     entry(3, "x,y", "z", Provenance::D1)};
    canonicalize(data);
    std::ostringstream out;
    write_gold(out, data);
    std::istringstream in(out.str());
    CHECK(read_gold(in, "mem") == data);

    std::istringstream dup(out.str() + "1,noun,hi,कमल,bn,কমল,D3\n");
    CHECK_THROWS_AS(read_gold(dup, "mem"), DataError);
    std::istringstream bad_prov("synset_id,pos,source_lang,source_word,target_lang,target_word,provenance\n"
                                "1,noun,hi,a,mr,b,D9\n");
    CHECK_THROWS_AS(read_gold(bad_prov, "mem"), DataError);
}

TEST_CASE("dictionary import excludes partial rows and expands word lists") {
    auto imported = import_d1_file(testing::fixture_path("d1.csv"));
    CHECK(imported.rows == 14);
    CHECK(imported.partial_rows_excluded == 2);
    CHECK(imported.dataset.size() == 25);
    for (const auto& e : imported.dataset) {
        CHECK(e.provenance == Provenance::D1);
        CHECK(e.source_lang == Language::hi);
        CHECK(e.synset.value != 109);
        CHECK(e.synset.value != 110);
    }

    std::istringstream inline_csv(
        "synset_id,pos,hi,mr,flag\n"
        "1,noun,क|ख,ग,\n"
        "2,noun,घ,ङ,partial\n"
        "3,verb,,च,\n");
    auto small = import_d1(inline_csv, "mem");
    CHECK(small.partial_rows_excluded == 1);
    CHECK(small.dataset.size() == 2);  // row 3 has no pivot word

    std::istringstream no_pivot("synset_id,pos,mr,bn\n1,noun,क,ক\n");
    CHECK_THROWS_AS(import_d1(no_pivot, "mem"), DataError);
}

TEST_CASE("part-of-speech distribution sums to 100") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        auto data = random_dataset(rng, 1 + uniform_index(rng, 400));
        canonicalize(data);
        auto dist = pos_distribution(data);
        CHECK(dist.total() == data.size());
        double sum = std::accumulate(dist.percent.begin(), dist.percent.end(), 0.0);
        CHECK(std::abs(sum - 100.0) <= 0.02 + 1e-9);
    }
    CHECK_THROWS_AS(pos_distribution({}), DataError);
    CHECK(render_pos_row("D1", {78.2, 0.06, 19.0, 0.6}) == "D1,78.20,0.06,19.00,0.60");
}
