#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cognate {

// The twelve languages of the linked wordnets.
enum class Language : std::uint8_t { hi, bn, gu, mr, pa, sa, ml, ta, te, as, kn, or_ };

inline constexpr std::array<Language, 12> kAllLanguages = {
    Language::hi, Language::bn, Language::gu, Language::mr, Language::pa, Language::sa,
    Language::ml, Language::ta, Language::te, Language::as, Language::kn, Language::or_};

inline constexpr Language kPivotLanguage = Language::hi;

std::string_view to_string(Language lang);

// Two-letter code with the first letter upper-cased ("Hi"), as used in report headers.
std::string display_code(Language lang);

std::optional<Language> try_parse_language(std::string_view code);

// Throws DataError on an unknown code.
Language parse_language(std::string_view code);

struct LanguagePair {
    Language source;
    Language target;

    friend auto operator<=>(const LanguagePair&, const LanguagePair&) = default;
};

// "hi-mr"
std::string to_string(const LanguagePair& pair);
// "Hi-Mr"
std::string display_name(const LanguagePair& pair);
std::optional<LanguagePair> try_parse_language_pair(std::string_view text);
LanguagePair parse_language_pair(std::string_view text);

}  // namespace cognate
