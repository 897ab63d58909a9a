#pragma once

#include <array>
#include <istream>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "cognate/language.hpp"
#include "cognate/wordnet.hpp"

namespace cognate {

// D1: digitised dictionary sets, D2: wordnet-mined cognates, D3: false friends.
enum class Provenance { D1, D2, D3, merged };
std::string_view to_string(Provenance provenance);
Provenance parse_provenance(std::string_view text);

struct GoldEntry {
    SynsetId synset;
    PartOfSpeech pos = PartOfSpeech::noun;
    Language source_lang = Language::hi;
    std::string source_word;
    Language target_lang = Language::hi;
    std::string target_word;
    Provenance provenance = Provenance::D1;

    auto key() const { return std::tie(synset, source_lang, source_word, target_lang, target_word); }
    LanguagePair languages() const { return {source_lang, target_lang}; }
    bool operator==(const GoldEntry&) const = default;
};

// Sorted by key, no two entries share a key.
using GoldDataset = std::vector<GoldEntry>;

// Sorts and removes key duplicates; the entry with the earliest provenance
// (D1 before D2 before D3) survives.
void canonicalize(GoldDataset& dataset);

// Union keyed on (synset, words); D1 wins collisions. Idempotent and commutative.
GoldDataset merge_gold(const GoldDataset& a, const GoldDataset& b);

extern const std::vector<std::string> kGoldHeader;
void write_gold(std::ostream& out, const GoldDataset& dataset);
GoldDataset read_gold(std::istream& in, std::string_view source_name);
GoldDataset read_gold_file(const std::string& path);

struct PosDistribution {
    std::array<std::size_t, 4> counts{};  // noun, verb, adjective, adverb
    std::array<double, 4> percent{};      // rounded to two decimals
    std::size_t total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
};

// Throws DataError on an empty dataset.
PosDistribution pos_distribution(const GoldDataset& dataset);
// "label,78.20,0.06,19.00,0.60"
std::string render_pos_row(std::string_view label, const std::array<double, 4>& percent);
inline constexpr std::string_view kPosHeader = "Dataset,Nouns,Verbs,Adjectives,Adverbs";

struct D1Import {
    GoldDataset dataset;
    std::size_t rows = 0;
    std::size_t partial_rows_excluded = 0;
    std::size_t words = 0;  // non-blank words in accepted rows
};

// Dictionary CSV: synset_id, pos, one column per language code, and an
// optional `flag` column where "partial" rejects the row. A cell may list
// several words separated by '|'. Every accepted row expands into
// pivot-language pairs (pivot word x target word).
D1Import import_d1(std::istream& in, std::string_view source_name, Language pivot = kPivotLanguage);
D1Import import_d1_file(const std::string& path, Language pivot = kPivotLanguage);

}  // namespace cognate
