#include <doctest.h>

#include <sstream>

#include "cognate/error.hpp"
#include "cognate/extraction.hpp"
#include "cognate/similarity.hpp"
#include "support.hpp"

using namespace cognate;

namespace {

const LinkedWordnet& fixture() {
    static const LinkedWordnet wn =
        load_wordnet_dir(testing::fixture_path("wordnet"), {Language::hi, Language::mr, Language::bn});
    return wn;
}

bool same(const std::vector<ScoredPair>& a, const std::vector<ScoredPair>& b) {
    std::ostringstream x, y;
    write_candidates(x, a);
    write_candidates(y, b);
    return x.str() == y.str();
}

}  // namespace

TEST_CASE("pair ids are stable 16-digit hex") {
    auto id = make_pair_id({Language::hi, Language::mr}, "कमल", "कमल", SynsetId{1}, SynsetId{1});
    CHECK(id.size() == 16);
    CHECK(id == make_pair_id({Language::hi, Language::mr}, "कमल", "कमल", SynsetId{1}, SynsetId{1}));
    CHECK(id != make_pair_id({Language::hi, Language::bn}, "कमल", "कमल", SynsetId{1}, SynsetId{1}));
    CHECK(id != make_pair_id({Language::hi, Language::mr}, "कमल", "कमल", SynsetId{1}, SynsetId{2}));
}

TEST_CASE("every emitted cognate passes both thresholds") {
    for (double threshold : {0.5, 0.7, 0.9}) {
        ExtractionOptions options;
        options.threshold = threshold;
        for (auto target : {Language::mr, Language::bn}) {
            for (const auto& p : generate_cognate_candidates(fixture(), Language::hi, target, options)) {
                CHECK(*p.ned >= threshold);
                CHECK(*p.cosine >= threshold);
                CHECK(p.is_cognate_candidate());
            }
        }
    }
}

TEST_CASE("the intersection rule drops pairs that pass only one measure") {
    auto pairs = generate_cognate_candidates(fixture(), Language::hi, Language::mr);
    for (const auto& p : pairs) {
        CHECK(p.synset_src != SynsetId{2});  // high NED, low cosine
        CHECK(p.synset_src != SynsetId{3});  // high cosine, low NED
        CHECK(p.synset_src != SynsetId{12}); // multiword lemmas are skipped
    }
    ExtractionOptions multi;
    multi.include_multiword = true;
    auto with_multi = generate_cognate_candidates(fixture(), Language::hi, Language::mr, multi);
    CHECK(with_multi.size() == pairs.size() + 1);
}

TEST_CASE("threshold validation") {
    ExtractionOptions options;
    options.threshold = 0.0;
    CHECK_THROWS_AS(generate_cognate_candidates(fixture(), Language::hi, Language::mr, options), UsageError);
    options.threshold = 1.5;
    CHECK_THROWS_AS(generate_false_friend_candidates(fixture(), Language::hi, Language::mr, options), UsageError);
    CHECK_THROWS_AS(generate_cognate_candidates(fixture(), Language::hi, Language::ta), DataError);
}

TEST_CASE("shared spellings fall into exactly one relation") {
    for (auto target : {Language::mr, Language::bn}) {
        SpellingIndex src(fixture(), Language::hi);
        SpellingIndex tgt(fixture(), target);
        std::size_t shared = 0;
        for (const auto& spelling : src.spellings()) {
            if (!tgt.synsets(spelling)) {
                CHECK(classify_relation(spelling, src, tgt) == PairRelation::unrelated);
                continue;
            }
            ++shared;
            const auto& p = *src.synsets(spelling);
            const auto& q = *tgt.synsets(spelling);
            bool equal = p == q;
            bool overlap = std::any_of(p.begin(), p.end(), [&](SynsetId id) { return q.contains(id); });
            int memberships = int(equal) + int(overlap && !equal) + int(!overlap);
            CHECK(memberships == 1);
            auto relation = classify_relation(spelling, src, tgt);
            CHECK(relation == (equal ? PairRelation::true_cognate
                                     : overlap ? PairRelation::partial_cognate : PairRelation::false_friend));
        }
        CHECK(shared > 0);
    }
}

TEST_CASE("partial cognates are not false friends") {
    auto man = normalize_script("मान", Language::hi).canonical;
    CHECK(classify_relation(man, fixture(), Language::hi, Language::mr) == PairRelation::partial_cognate);
    for (const auto& p : generate_false_friend_candidates(fixture(), Language::hi, Language::mr)) {
        CHECK(p.source_word.canonical != man);
    }
}

TEST_CASE("false friends are not transitive") {
    // siksA: hi {8}, mr {9}, bn {9}.
    auto spelling = normalize_script("सिकसा", Language::hi).canonical;
    CHECK(classify_relation(spelling, fixture(), Language::hi, Language::mr) == PairRelation::false_friend);
    CHECK(classify_relation(spelling, fixture(), Language::hi, Language::bn) == PairRelation::false_friend);
    CHECK(classify_relation(spelling, fixture(), Language::mr, Language::bn) == PairRelation::true_cognate);
    auto ff = generate_false_friend_candidates(fixture(), Language::hi, Language::mr);
    REQUIRE(ff.size() == 1);
    CHECK(ff[0].synset_src == SynsetId{8});
    CHECK(ff[0].synset_tgt == SynsetId{9});
    CHECK_FALSE(ff[0].is_cognate_candidate());
    CHECK(generate_false_friend_candidates(fixture(), Language::mr, Language::bn).empty());
}

TEST_CASE("parallel generators match the serial reference") {
    const std::vector<Language> langs{Language::hi, Language::bn, Language::ta};
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        auto wn = testing::synthetic_wordnet(seed, 400, langs, 6);
        for (auto target : {Language::bn, Language::ta}) {
            for (double threshold : {0.5, 0.7}) {
                ExtractionOptions options;
                options.threshold = threshold;
                auto parallel = generate_cognate_candidates(wn, Language::hi, target, options);
                CHECK(!parallel.empty());
                CHECK(same(parallel, serial::generate_cognate_candidates(wn, Language::hi, target, options)));
                auto ff = generate_false_friend_candidates(wn, Language::hi, target, options);
                CHECK(!ff.empty());
                CHECK(same(ff, serial::generate_false_friend_candidates(wn, Language::hi, target, options)));
            }
        }
    }
}

TEST_CASE("candidate files round trip") {
    auto pairs = generate_cognate_candidates(fixture(), Language::hi, Language::mr);
    std::ostringstream out;
    write_candidates(out, pairs);
    std::istringstream in(out.str());
    auto back = read_candidates(in, "mem");
    REQUIRE(back.size() == pairs.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].pair_id == pairs[i].pair_id);
        CHECK(back[i].source_word.canonical == pairs[i].source_word.canonical);
        CHECK(back[i].synset_src == pairs[i].synset_src);
        CHECK(*back[i].ned == doctest::Approx(*pairs[i].ned).epsilon(1e-4));
    }
    std::ostringstream again;
    write_candidates(again, back);
    CHECK(again.str() == out.str());

    std::istringstream bad("pair_id,source_lang\nx,hi\n");
    CHECK_THROWS_AS(read_candidates(bad, "mem"), DataError);
}

TEST_CASE("count table layout") {
    PairCounts counts;
    counts.order = {{Language::hi, Language::mr}, {Language::hi, Language::bn}};
    counts.counts[counts.order[0]] = 13;
    counts.counts[counts.order[1]] = 7;
    CHECK(render_count_table(counts, "Potential Candidates") ==
          "Language Pair,Hi-Mr,Hi-Bn\nPotential Candidates,13,7\n");
}
