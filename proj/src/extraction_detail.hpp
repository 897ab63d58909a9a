#pragma once

#include <vector>

#include "cognate/extraction.hpp"

namespace cognate::detail {

void validate(const LinkedWordnet& wn, Language source, Language target, const ExtractionOptions& options);
std::vector<NormalizedWord> normalized_lemmas(const Synset& synset, const ExtractionOptions& options);
void cognates_in_synset(const LinkedPair& link, const ExtractionOptions& options, std::vector<ScoredPair>& out);
void false_friends_for_spelling(const std::u32string& spelling, const SpellingIndex& source,
                                const SpellingIndex& target, const ExtractionOptions& options,
                                std::vector<ScoredPair>& out);
std::vector<std::u32string> shared_spellings(const SpellingIndex& source, const SpellingIndex& target);
bool cognate_order(const ScoredPair& a, const ScoredPair& b);
bool false_friend_order(const ScoredPair& a, const ScoredPair& b);
void sort_unique_cognates(std::vector<ScoredPair>& pairs);

}  // namespace cognate::detail
