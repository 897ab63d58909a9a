#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cognate/csv.hpp"
#include "cognate/language.hpp"
#include "cognate/phonetic.hpp"
#include "cognate/script.hpp"
#include "cognate/wordnet.hpp"

namespace cognate {

inline constexpr double kDefaultThreshold = 0.7;

// One candidate pair flowing from extraction through annotation to training.
// Cognate candidates have synset_src == synset_tgt; false-friend candidates
// never do.
struct ScoredPair {
    std::string pair_id;
    NormalizedWord source_word;
    NormalizedWord target_word;
    SynsetId synset_src;
    SynsetId synset_tgt;
    std::optional<double> ned;
    std::optional<double> cosine;
    std::optional<double> jaro_winkler;
    std::optional<double> phonetic;

    LanguagePair languages() const { return {source_word.language, target_word.language}; }
    bool is_cognate_candidate() const { return synset_src == synset_tgt; }
};

// First 16 hex digits of SHA-256 over the languages, original words and context.
std::string make_pair_id(LanguagePair languages, std::string_view source_word,
                         std::string_view target_word, SynsetId synset_src, SynsetId synset_tgt);

struct ExtractionOptions {
    double threshold = kDefaultThreshold;
    std::size_t shingle_size = 2;
    bool include_multiword = false;
    NormalizeOptions normalize;
    const PhoneticTable* phonetic_table = nullptr;  // null: builtin
};

// Fills ned, cosine, jaro_winkler and phonetic from the canonical forms.
void score_pair(ScoredPair& pair, const ExtractionOptions& options);

// Lemma cross-pairs inside each linked synset whose NED and shingle cosine are
// both >= threshold, sorted by (synset, source word, target word). Work is
// spread over OpenMP threads; output is identical to the serial reference.
std::vector<ScoredPair> generate_cognate_candidates(const LinkedWordnet& wn, Language source,
                                                    Language target, const ExtractionOptions& options = {});

enum class PairRelation { true_cognate, false_friend, partial_cognate, unrelated };
std::string_view to_string(PairRelation relation);

// canonical spelling -> ids of the synsets that contain it.
class SpellingIndex {
public:
    SpellingIndex(const LinkedWordnet& wn, Language language, const NormalizeOptions& normalize = {},
                  bool include_multiword = false);

    const std::set<SynsetId>* synsets(const std::u32string& spelling) const;
    // First lemma (original form) in `id` whose canonical form is `spelling`.
    const std::string* lemma(const std::u32string& spelling, SynsetId id) const;
    std::vector<std::u32string> spellings() const;  // sorted
    Language language() const { return language_; }

private:
    Language language_;
    std::unordered_map<std::u32string, std::set<SynsetId>> ids_;
    std::map<std::pair<std::u32string, SynsetId>, std::string> lemmas_;
};

PairRelation classify_relation(const std::u32string& spelling, const SpellingIndex& source,
                               const SpellingIndex& target);
PairRelation classify_relation(const std::u32string& spelling, const LinkedWordnet& wn, Language source,
                               Language target, const NormalizeOptions& normalize = {});

// One pair per (spelling, source synset, target synset) for every shared exact
// canonical spelling whose source and target synset sets are disjoint.
// Sorted by (source synset, target synset, source word, target word).
std::vector<ScoredPair> generate_false_friend_candidates(const LinkedWordnet& wn, Language source,
                                                         Language target,
                                                         const ExtractionOptions& options = {});

// Single-threaded reference implementations, kept for testing and benchmarking.
namespace serial {
std::vector<ScoredPair> generate_cognate_candidates(const LinkedWordnet& wn, Language source,
                                                    Language target, const ExtractionOptions& options = {});
std::vector<ScoredPair> generate_false_friend_candidates(const LinkedWordnet& wn, Language source,
                                                         Language target,
                                                         const ExtractionOptions& options = {});
}  // namespace serial

// Candidate file with the fixed header; scores with 4 decimals, absent scores empty.
extern const csv::Row kCandidateHeader;
void write_candidates(std::ostream& out, const std::vector<ScoredPair>& candidates);
std::vector<ScoredPair> read_candidates(std::istream& in, std::string_view source_name,
                                        const NormalizeOptions& normalize = {});
std::vector<ScoredPair> read_candidates_file(const std::string& path, const NormalizeOptions& normalize = {});

// Candidate counts per language pair, in the order pairs were first seen
// unless `order` is given.
struct PairCounts {
    std::vector<LanguagePair> order;
    std::map<LanguagePair, std::size_t> counts;
};
PairCounts pair_report(const std::vector<ScoredPair>& candidates);
// Two-row table: "Language Pair,Hi-Bn,..." then "<row label>,<count>,...".
std::string render_count_table(const PairCounts& counts, std::string_view row_label);

}  // namespace cognate
