#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cognate/language.hpp"

namespace cognate {

// Flat `key = value` project file. Command-line flags override any key.
struct ProjectConfig {
    std::string wordnet_dir = "wordnet";
    Language source = kPivotLanguage;
    std::vector<Language> targets;
    double threshold = 0.7;
    std::size_t shingle_n = 2;
    std::optional<std::uint64_t> seed;
    std::string output_dir = "out";
    std::string phonetic_table;  // empty: builtin table
    bool include_multiword = false;
    bool strip_nukta = false;
    std::size_t hidden = 16;
    std::size_t epochs = 200;
    double learning_rate = 0.05;
    double split_ratio = 0.8;
    std::string d1_file;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string static_dir;

    // Throws UsageError on an unknown key or a value that does not parse.
    void set(std::string_view key, std::string_view value);
    // Throws UsageError when an invariant does not hold (threshold range, targets, seed).
    void validate() const;
    // Every key with its current value, sorted by key.
    std::vector<std::pair<std::string, std::string>> snapshot() const;

    std::vector<LanguagePair> language_pairs() const;
    std::uint64_t require_seed() const;
};

// Relative paths inside the file are resolved against the file's directory.
ProjectConfig parse_config(std::istream& in, std::string_view source_name, const std::string& base_dir = {});
ProjectConfig load_config(const std::string& path);

}  // namespace cognate
