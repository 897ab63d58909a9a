#pragma once

#include <cstddef>
#include <string_view>

#include "cognate/phonetic.hpp"
#include "cognate/script.hpp"

namespace cognate {

// All measures operate on canonical (script-normalised) codepoint strings,
// are symmetric, and return values in [0, 1].

// Levenshtein distance, unit costs, over codepoints.
std::size_t edit_distance(std::u32string_view a, std::u32string_view b);

// 1 - distance / max(|a|, |b|). Throws UsageError when both strings are empty.
double ned_similarity(std::u32string_view a, std::u32string_view b);

inline constexpr std::size_t kDefaultShingleSize = 2;

// Cosine of character n-gram count vectors. A word shorter than n is padded
// with n-1 boundary sentinels on each side so it yields at least one shingle.
double shingle_cosine(std::u32string_view a, std::u32string_view b,
                      std::size_t n = kDefaultShingleSize);

// Jaro similarity with the Winkler prefix boost (weight 0.1, prefix up to 4).
double jaro_winkler(std::u32string_view a, std::u32string_view b);

// Edit distance where substituting x for y costs 1 - cos(phon(x), phon(y)),
// normalised like NED. Throws UsageError on an empty word.
double phonetic_similarity(std::u32string_view a, std::u32string_view b,
                           const PhoneticTable& table = PhoneticTable::builtin());
double phonetic_similarity(const NormalizedWord& a, const NormalizedWord& b,
                           const PhoneticTable& table = PhoneticTable::builtin());

// Cost of substituting one canonical codepoint for another under the table.
double phonetic_substitution_cost(char32_t x, char32_t y, const PhoneticTable& table);

}  // namespace cognate
