#include "cognate/language.hpp"

#include <cctype>

#include "cognate/error.hpp"

namespace cognate {

namespace {

constexpr std::array<std::string_view, 12> kCodes = {"hi", "bn", "gu", "mr", "pa", "sa",
                                                     "ml", "ta", "te", "as", "kn", "or"};

}  // namespace

std::string_view to_string(Language lang) { return kCodes[static_cast<std::size_t>(lang)]; }

std::string display_code(Language lang) {
    std::string code(to_string(lang));
    code[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(code[0])));
    return code;
}

std::optional<Language> try_parse_language(std::string_view code) {
    for (std::size_t i = 0; i < kCodes.size(); ++i) {
        if (kCodes[i] == code) return static_cast<Language>(i);
    }
    return std::nullopt;
}

Language parse_language(std::string_view code) {
    if (auto lang = try_parse_language(code)) return *lang;
    throw DataError("unknown language code '" + std::string(code) + "'");
}

std::string to_string(const LanguagePair& pair) {
    return std::string(to_string(pair.source)) + "-" + std::string(to_string(pair.target));
}

std::string display_name(const LanguagePair& pair) {
    return display_code(pair.source) + "-" + display_code(pair.target);
}

std::optional<LanguagePair> try_parse_language_pair(std::string_view text) {
    std::string lowered(text);
    for (auto& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::string_view view = lowered;
    auto dash = view.find('-');
    if (dash == std::string_view::npos) return std::nullopt;
    auto source = try_parse_language(view.substr(0, dash));
    auto target = try_parse_language(view.substr(dash + 1));
    if (!source || !target) return std::nullopt;
    return LanguagePair{*source, *target};
}

LanguagePair parse_language_pair(std::string_view text) {
    auto pair = try_parse_language_pair(text);
    if (!pair) throw DataError("malformed language pair '" + std::string(text) + "'");
    return *pair;
}

}  // namespace cognate
