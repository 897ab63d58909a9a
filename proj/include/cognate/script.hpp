#pragma once

#include <string>
#include <string_view>

#include "cognate/language.hpp"

namespace cognate {

// The nine Brahmic blocks (Devanagari .. Malayalam) share one 128-codepoint
// layout, so a constant offset moves a letter from any of them onto its
// Devanagari counterpart.
inline constexpr char32_t kCanonicalBlockBase = 0x0900;
inline constexpr char32_t kIndicRangeEnd = 0x0D80;
inline constexpr char32_t kBlockSize = 0x80;
inline constexpr char32_t kNukta = 0x093C;

// Base of the block a language is normally written in.
char32_t script_block_base(Language language);

inline bool is_indic(char32_t cp) { return cp >= kCanonicalBlockBase && cp < kIndicRangeEnd; }

struct NormalizeOptions {
    bool strip_nukta = false;
};

struct NormalizedWord {
    std::string original;       // UTF-8 as found in the wordnet
    std::u32string canonical;   // rebased onto the Devanagari block
    Language language = Language::hi;
    bool has_non_indic = false; // some codepoint passed through unchanged
};

// Throws UsageError on an empty word, DataError on invalid UTF-8.
NormalizedWord normalize_script(std::string_view word, Language language,
                                NormalizeOptions options = {});

std::u32string canonicalize(std::u32string_view text, NormalizeOptions options = {});

}  // namespace cognate
