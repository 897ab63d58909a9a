#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cognate/language.hpp"

namespace cognate {

struct SynsetId {
    std::uint64_t value = 0;

    friend auto operator<=>(const SynsetId&, const SynsetId&) = default;
};

// Throws DataError unless text is a positive decimal integer.
SynsetId parse_synset_id(std::string_view text);

enum class PartOfSpeech : std::uint8_t { noun, verb, adjective, adverb };

inline constexpr std::array<PartOfSpeech, 4> kAllPartsOfSpeech = {
    PartOfSpeech::noun, PartOfSpeech::verb, PartOfSpeech::adjective, PartOfSpeech::adverb};

std::string_view to_string(PartOfSpeech pos);
std::optional<PartOfSpeech> try_parse_pos(std::string_view text);

struct Synset {
    SynsetId id;
    Language language = Language::hi;
    PartOfSpeech pos = PartOfSpeech::noun;
    std::vector<std::string> lemmas;
    std::string gloss;
    std::optional<std::string> example;

    bool operator==(const Synset&) const = default;
};

// Multi-word expressions are kept in the wordnet but skipped by extraction by default.
bool is_multiword(std::string_view lemma);

struct Diagnostic {
    std::size_t line = 0;
    std::string message;
};

using SynsetTable = std::map<SynsetId, Synset>;

struct ParseResult {
    SynsetTable synsets;
    std::vector<Diagnostic> diagnostics;
};

// Reads the wordnet TSV format: id, pos, comma-separated lemmas, gloss, optional
// example. Blank lines and lines starting with '#' are ignored. Malformed lines
// are collected as diagnostics; a duplicate id throws DataError.
ParseResult parse_wordnet(std::istream& in, Language language);

// Inverse of parse_wordnet for a well-formed table.
void write_wordnet(std::ostream& out, const SynsetTable& table);

struct LinkedPair {
    const Synset* source = nullptr;
    const Synset* target = nullptr;
};

struct LinkResult {
    std::vector<LinkedPair> pairs;          // ascending SynsetId
    std::vector<SynsetId> pos_mismatches;   // shared ids excluded from pairing
};

// Per-language synset tables over a shared concept-id space. Immutable once
// built; concurrent reads need no synchronisation.
class LinkedWordnet {
public:
    void add_language(Language language, SynsetTable table);

    bool has_language(Language language) const { return tables_.contains(language); }
    // Throws DataError naming the language if it was not loaded.
    const SynsetTable& table(Language language) const;
    const Synset* find(Language language, SynsetId id) const;
    std::vector<Language> languages() const;

    LinkResult link_pairs(Language source, Language target) const;

private:
    std::map<Language, SynsetTable> tables_;
};

// Loads `<code>.wordnet.tsv` for each language from a directory.
struct LoadReport {
    Language language;
    std::string path;
    std::vector<Diagnostic> diagnostics;
};
LinkedWordnet load_wordnet_dir(const std::string& directory, const std::vector<Language>& languages,
                               std::vector<LoadReport>* reports = nullptr);
std::string wordnet_file_name(Language language);

}  // namespace cognate
