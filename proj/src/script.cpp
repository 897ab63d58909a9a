#include "cognate/script.hpp"

#include "cognate/error.hpp"
#include "cognate/text.hpp"

namespace cognate {

char32_t script_block_base(Language language) {
    switch (language) {
        case Language::hi:
        case Language::mr:
        case Language::sa:
            return 0x0900;
        case Language::bn:
        case Language::as:
            return 0x0980;
        case Language::pa:
            return 0x0A00;
        case Language::gu:
            return 0x0A80;
        case Language::or_:
            return 0x0B00;
        case Language::ta:
            return 0x0B80;
        case Language::te:
            return 0x0C00;
        case Language::kn:
            return 0x0C80;
        case Language::ml:
            return 0x0D00;
    }
    return kCanonicalBlockBase;
}

std::u32string canonicalize(std::u32string_view text, NormalizeOptions options) {
    std::u32string out;
    out.reserve(text.size());
    for (char32_t cp : text) {
        if (is_indic(cp)) cp = kCanonicalBlockBase + (cp - kCanonicalBlockBase) % kBlockSize;
        if (options.strip_nukta && cp == kNukta) continue;
        out.push_back(cp);
    }
    return out;
}

NormalizedWord normalize_script(std::string_view word, Language language, NormalizeOptions options) {
    if (word.empty()) throw UsageError("cannot normalize an empty word");
    NormalizedWord result;
    result.original = std::string(word);
    result.language = language;
    auto decoded = utf8_decode(word);
    for (char32_t cp : decoded) {
        if (!is_indic(cp)) {
            result.has_non_indic = true;
            break;
        }
    }
    result.canonical = canonicalize(decoded, options);
    return result;
}

}  // namespace cognate
