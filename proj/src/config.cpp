#include "cognate/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>

#include <fmt/format.h>

#include "cognate/error.hpp"
#include "cognate/text.hpp"

namespace cognate {

namespace {

template <typename T>
T parse_integer(std::string_view key, std::string_view value) {
    T out{};
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || p != value.data() + value.size()) {
        throw UsageError(fmt::format("{}: '{}' is not an integer", key, value));
    }
    return out;
}

double parse_real(std::string_view key, std::string_view value) {
    std::string text(value);
    std::size_t used = 0;
    double out = 0;
    try {
        out = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw UsageError(fmt::format("{}: '{}' is not a number", key, value));
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw UsageError(fmt::format("{}: '{}' is not a boolean", key, value));
}

Language parse_lang_arg(std::string_view key, std::string_view value) {
    if (auto lang = try_parse_language(value)) return *lang;
    throw UsageError(fmt::format("{}: unknown language code '{}'", key, value));
}

std::string join_languages(const std::vector<Language>& langs) {
    std::string out;
    for (std::size_t i = 0; i < langs.size(); ++i) {
        if (i) out += ',';
        out += to_string(langs[i]);
    }
    return out;
}

}  // namespace

void ProjectConfig::set(std::string_view key, std::string_view raw) {
    auto value = trim(raw);
    if (key == "wordnet_dir") wordnet_dir = value;
    else if (key == "source") source = parse_lang_arg(key, value);
    else if (key == "targets") {
        targets.clear();
        for (auto code : split(value, ',')) {
            code = trim(code);
            if (!code.empty()) targets.push_back(parse_lang_arg(key, code));
        }
    } else if (key == "threshold") threshold = parse_real(key, value);
    else if (key == "shingle_n") shingle_n = parse_integer<std::size_t>(key, value);
    else if (key == "seed") seed = parse_integer<std::uint64_t>(key, value);
    else if (key == "output_dir") output_dir = value;
    else if (key == "phonetic_table") phonetic_table = value;
    else if (key == "include_multiword") include_multiword = parse_bool(key, value);
    else if (key == "strip_nukta") strip_nukta = parse_bool(key, value);
    else if (key == "hidden") hidden = parse_integer<std::size_t>(key, value);
    else if (key == "epochs") epochs = parse_integer<std::size_t>(key, value);
    else if (key == "learning_rate") learning_rate = parse_real(key, value);
    else if (key == "split_ratio") split_ratio = parse_real(key, value);
    else if (key == "d1_file") d1_file = value;
    else if (key == "host") host = value;
    else if (key == "port") port = parse_integer<int>(key, value);
    else if (key == "static_dir") static_dir = value;
    else throw UsageError(fmt::format("unknown configuration key '{}'", key));
}

void ProjectConfig::validate() const {
    if (!(threshold > 0.0 && threshold <= 1.0)) throw UsageError(fmt::format("threshold {} outside (0, 1]", threshold));
    if (targets.empty()) throw UsageError("no target languages configured");
    for (auto t : targets) {
        if (t == source) throw UsageError(fmt::format("target '{}' equals the source language", to_string(t)));
    }
    if (!seed) throw UsageError("no seed configured; set `seed` for reproducible runs");
    if (shingle_n == 0) throw UsageError("shingle_n must be at least 1");
    if (hidden == 0) throw UsageError("hidden must be at least 1");
    if (!(learning_rate > 0)) throw UsageError("learning_rate must be positive");
    if (!(split_ratio > 0 && split_ratio < 1)) throw UsageError("split_ratio must lie in (0, 1)");
}

std::vector<std::pair<std::string, std::string>> ProjectConfig::snapshot() const {
    return {
        {"d1_file", d1_file},
        {"epochs", std::to_string(epochs)},
        {"hidden", std::to_string(hidden)},
        {"host", host},
        {"include_multiword", include_multiword ? "true" : "false"},
        {"learning_rate", fmt::format("{}", learning_rate)},
        {"output_dir", output_dir},
        {"phonetic_table", phonetic_table},
        {"port", std::to_string(port)},
        {"seed", seed ? std::to_string(*seed) : ""},
        {"shingle_n", std::to_string(shingle_n)},
        {"source", std::string(to_string(source))},
        {"split_ratio", fmt::format("{}", split_ratio)},
        {"static_dir", static_dir},
        {"strip_nukta", strip_nukta ? "true" : "false"},
        {"targets", join_languages(targets)},
        {"threshold", fmt::format("{}", threshold)},
        {"wordnet_dir", wordnet_dir},
    };
}

std::vector<LanguagePair> ProjectConfig::language_pairs() const {
    std::vector<LanguagePair> out;
    for (auto t : targets) out.push_back({source, t});
    return out;
}

std::uint64_t ProjectConfig::require_seed() const {
    if (!seed) throw UsageError("no seed configured");
    return *seed;
}

ProjectConfig parse_config(std::istream& in, std::string_view source_name, const std::string& base_dir) {
    ProjectConfig config;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line.starts_with('#')) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw UsageError(fmt::format("{}:{}: expected key = value", source_name, line_no));
        }
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        try {
            config.set(key, value);
        } catch (const UsageError& e) {
            throw UsageError(fmt::format("{}:{}: {}", source_name, line_no, e.what()));
        }
    }
    if (!base_dir.empty()) {
        for (auto* path : {&config.wordnet_dir, &config.output_dir, &config.phonetic_table, &config.d1_file,
                           &config.static_dir}) {
            if (!path->empty() && std::filesystem::path(*path).is_relative()) {
                *path = (std::filesystem::path(base_dir) / *path).lexically_normal().string();
            }
        }
    }
    return config;
}

ProjectConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError(fmt::format("cannot open config file '{}'", path));
    auto base = std::filesystem::path(path).parent_path().string();
    return parse_config(in, path, base.empty() ? "." : base);
}

}  // namespace cognate
