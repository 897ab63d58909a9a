#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cognate/language.hpp"
#include "cognate/random.hpp"
#include "cognate/script.hpp"
#include "cognate/text.hpp"
#include "cognate/wordnet.hpp"

namespace cognate::testing {

#ifndef COGNATE_SOURCE_DIR
#define COGNATE_SOURCE_DIR "."
#endif

inline std::string source_path(const std::string& relative) {
    return (std::filesystem::path(COGNATE_SOURCE_DIR) / relative).string();
}
inline std::string fixture_path(const std::string& relative) { return source_path("tests/fixtures/" + relative); }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::filesystem::create_directories(std::filesystem::path(path).parent_path());
    std::ofstream(path, std::ios::binary) << text;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 rng(std::random_device{}());
        path_ = std::filesystem::temp_directory_path() / ("cognate-" + tag + "-" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ignored;
        std::filesystem::remove_all(path_, ignored);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string str() const { return path_.string(); }
    std::string operator/(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

// Devanagari-layout offsets used to spell synthetic words in any Indic block.
inline constexpr char32_t kSyntheticLetters[] = {0x15, 0x17, 0x1A, 0x1C, 0x24, 0x26, 0x28, 0x2A,
                                                 0x2C, 0x2E, 0x30, 0x32, 0x38, 0x39, 0x3E, 0x3F};

inline std::u32string synthetic_word(std::mt19937_64& rng, Language language, std::size_t alphabet = 16) {
    const std::size_t length = 1 + uniform_index(rng, 6);
    std::u32string word;
    for (std::size_t i = 0; i < length; ++i) {
        word.push_back(script_block_base(language) + kSyntheticLetters[uniform_index(rng, alphabet)]);
    }
    return word;
}

// Random linked wordnet. Target lemmas are frequently mutated copies of a
// source lemma, so candidate generation has real work to do.
inline LinkedWordnet synthetic_wordnet(std::uint64_t seed, std::size_t synsets,
                                       const std::vector<Language>& languages, std::size_t alphabet = 16) {
    std::mt19937_64 rng(seed);
    std::vector<SynsetTable> tables(languages.size());
    for (std::size_t id = 1; id <= synsets; ++id) {
        const auto pos = static_cast<PartOfSpeech>(uniform_index(rng, 4));
        std::vector<std::u32string> base;
        for (std::size_t k = 0, n = 1 + uniform_index(rng, 3); k < n; ++k) {
            base.push_back(synthetic_word(rng, Language::hi, alphabet));
        }
        for (std::size_t l = 0; l < languages.size(); ++l) {
            if (l > 0 && uniform_index(rng, 10) == 0) continue;  // concept missing in this language
            Synset s;
            s.id = SynsetId{id};
            s.language = languages[l];
            s.pos = (l > 0 && uniform_index(rng, 50) == 0) ? PartOfSpeech::adverb : pos;
            const char32_t shift = script_block_base(languages[l]) - kCanonicalBlockBase;
            for (const auto& b : base) {
                std::u32string w = b;
                if (uniform_index(rng, 3) == 0) {
                    w[uniform_index(rng, w.size())] = 0x0900 + kSyntheticLetters[uniform_index(rng, alphabet)];
                }
                if (uniform_index(rng, 4) == 0) w = synthetic_word(rng, Language::hi, alphabet);
                for (auto& c : w) c += shift;
                auto text = utf8_encode(w);
                if (std::find(s.lemmas.begin(), s.lemmas.end(), text) == s.lemmas.end()) s.lemmas.push_back(text);
            }
            s.gloss = "gloss " + std::to_string(id);
            tables[l].emplace(s.id, std::move(s));
        }
    }
    LinkedWordnet wn;
    for (std::size_t l = 0; l < languages.size(); ++l) wn.add_language(languages[l], std::move(tables[l]));
    return wn;
}

}  // namespace cognate::testing

#include "cognate/classify.hpp"

namespace cognate::testing {

// Separable toy task: positives are a word and a copy with at most one
// substitution (length 5..8); negatives pair words drawn from disjoint halves
// of the alphabet.
inline std::vector<std::pair<ScoredPair, bool>> toy_pairs(std::size_t per_class, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto word = [&](std::size_t from, std::size_t count) {
        std::u32string w(5 + uniform_index(rng, 4), U'\0');
        for (auto& c : w) c = kCanonicalBlockBase + kSyntheticLetters[from + uniform_index(rng, count)];
        return w;
    };
    auto make = [](const std::u32string& a, const std::u32string& b, std::size_t k) {
        ScoredPair p;
        p.source_word = normalize_script(utf8_encode(a), Language::hi);
        p.target_word = normalize_script(utf8_encode(b), Language::mr);
        p.synset_src = p.synset_tgt = SynsetId{k + 1};
        p.pair_id = "toy" + std::to_string(k);
        return p;
    };
    std::vector<std::pair<ScoredPair, bool>> out;
    for (std::size_t i = 0; i < per_class; ++i) {
        auto a = word(0, 16);
        auto b = a;
        if (uniform_index(rng, 2)) b[uniform_index(rng, b.size())] = kCanonicalBlockBase + kSyntheticLetters[uniform_index(rng, 16)];
        out.emplace_back(make(a, b, 2 * i), true);
        out.emplace_back(make(word(0, 8), word(8, 8), 2 * i + 1), false);
    }
    return out;
}

inline std::vector<LabeledExample> toy_examples(FeatureScheme scheme, std::size_t per_class, std::uint64_t seed) {
    std::vector<LabeledExample> out;
    for (const auto& [pair, label] : toy_pairs(per_class, seed)) {
        out.push_back({featurize(pair, scheme), label, pair.pair_id});
    }
    return out;
}

}  // namespace cognate::testing
