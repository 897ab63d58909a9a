#include "cognate/wordnet.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "cognate/error.hpp"
#include "cognate/text.hpp"

namespace cognate {

namespace {

constexpr std::array<std::string_view, 4> kPosNames = {"noun", "verb", "adjective", "adverb"};

std::optional<SynsetId> try_parse_synset_id(std::string_view text) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() || value == 0) {
        return std::nullopt;
    }
    return SynsetId{value};
}

bool valid_utf8(std::string_view text) {
    try {
        utf8_decode(text);
        return true;
    } catch (const DataError&) {
        return false;
    }
}

}  // namespace

SynsetId parse_synset_id(std::string_view text) {
    if (auto id = try_parse_synset_id(trim(text))) return *id;
    throw DataError(fmt::format("invalid synset id '{}'", text));
}

std::string_view to_string(PartOfSpeech pos) { return kPosNames[static_cast<std::size_t>(pos)]; }

std::optional<PartOfSpeech> try_parse_pos(std::string_view text) {
    for (std::size_t i = 0; i < kPosNames.size(); ++i) {
        if (kPosNames[i] == text) return static_cast<PartOfSpeech>(i);
    }
    return std::nullopt;
}

bool is_multiword(std::string_view lemma) {
    return lemma.find_first_of(" \t") != std::string_view::npos;
}

ParseResult parse_wordnet(std::istream& in, Language language) {
    ParseResult result;
    std::map<SynsetId, std::size_t> first_seen;
    std::string raw;
    std::size_t line_no = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (line.ends_with('\r')) line.remove_suffix(1);
        if (trim(line).empty() || line.starts_with('#')) continue;

        auto report = [&](std::string message) {
            result.diagnostics.push_back({line_no, std::move(message)});
        };

        if (!valid_utf8(line)) {
            report("invalid UTF-8");
            continue;
        }
        auto fields = split(line, '\t');
        if (fields.size() != 4 && fields.size() != 5) {
            report(fmt::format("expected 4 or 5 tab-separated fields, found {}", fields.size()));
            continue;
        }
        auto id = try_parse_synset_id(trim(fields[0]));
        if (!id) {
            report(fmt::format("synset id '{}' is not a positive integer", fields[0]));
            continue;
        }
        auto pos = try_parse_pos(trim(fields[1]));
        if (!pos) {
            report(fmt::format("unknown part of speech '{}'", fields[1]));
            continue;
        }

        Synset synset;
        synset.id = *id;
        synset.language = language;
        synset.pos = *pos;

        bool lemmas_ok = true;
        std::set<std::string_view> seen;
        for (auto lemma : split(fields[2], ',')) {
            lemma = trim(lemma);
            if (lemma.empty()) {
                report("empty lemma");
                lemmas_ok = false;
                break;
            }
            if (!seen.insert(lemma).second) {
                report(fmt::format("duplicate lemma '{}'", lemma));
                lemmas_ok = false;
                break;
            }
            synset.lemmas.emplace_back(lemma);
        }
        if (!lemmas_ok) continue;

        synset.gloss = std::string(trim(fields[3]));
        if (synset.gloss.empty()) {
            report("empty gloss");
            continue;
        }
        if (fields.size() == 5 && !trim(fields[4]).empty()) {
            synset.example = std::string(trim(fields[4]));
        }

        if (auto [it, inserted] = first_seen.emplace(synset.id, line_no); !inserted) {
            throw DataError(fmt::format("duplicate synset id {} on lines {} and {}", synset.id.value,
                                        it->second, line_no));
        }
        result.synsets.emplace(synset.id, std::move(synset));
    }
    return result;
}

void write_wordnet(std::ostream& out, const SynsetTable& table) {
    for (const auto& [id, synset] : table) {
        out << id.value << '\t' << to_string(synset.pos) << '\t';
        for (std::size_t i = 0; i < synset.lemmas.size(); ++i) {
            if (i) out << ',';
            out << synset.lemmas[i];
        }
        out << '\t' << synset.gloss;
        if (synset.example) out << '\t' << *synset.example;
        out << '\n';
    }
}

void LinkedWordnet::add_language(Language language, SynsetTable table) {
    tables_[language] = std::move(table);
}

const SynsetTable& LinkedWordnet::table(Language language) const {
    auto it = tables_.find(language);
    if (it == tables_.end()) {
        throw DataError(fmt::format("language '{}' is not loaded", to_string(language)));
    }
    return it->second;
}

const Synset* LinkedWordnet::find(Language language, SynsetId id) const {
    auto it = tables_.find(language);
    if (it == tables_.end()) return nullptr;
    auto s = it->second.find(id);
    return s == it->second.end() ? nullptr : &s->second;
}

std::vector<Language> LinkedWordnet::languages() const {
    std::vector<Language> out;
    for (const auto& [lang, table] : tables_) out.push_back(lang);
    return out;
}

LinkResult LinkedWordnet::link_pairs(Language source, Language target) const {
    const auto& src = table(source);
    const auto& tgt = table(target);
    LinkResult result;
    auto a = src.begin();
    auto b = tgt.begin();
    while (a != src.end() && b != tgt.end()) {
        if (a->first < b->first) {
            ++a;
        } else if (b->first < a->first) {
            ++b;
        } else {
            if (a->second.pos == b->second.pos) {
                result.pairs.push_back({&a->second, &b->second});
            } else {
                result.pos_mismatches.push_back(a->first);
            }
            ++a;
            ++b;
        }
    }
    return result;
}

std::string wordnet_file_name(Language language) {
    return std::string(to_string(language)) + ".wordnet.tsv";
}

LinkedWordnet load_wordnet_dir(const std::string& directory, const std::vector<Language>& languages,
                               std::vector<LoadReport>* reports) {
    LinkedWordnet wn;
    for (auto lang : languages) {
        if (wn.has_language(lang)) continue;
        auto path = (std::filesystem::path(directory) / wordnet_file_name(lang)).string();
        std::ifstream in(path, std::ios::binary);
        if (!in) throw DataError(fmt::format("cannot open wordnet file '{}'", path));
        ParseResult parsed;
        try {
            parsed = parse_wordnet(in, lang);
        } catch (const DataError& e) {
            throw DataError(fmt::format("{}: {}", path, e.what()));
        }
        if (reports) reports->push_back({lang, path, std::move(parsed.diagnostics)});
        wn.add_language(lang, std::move(parsed.synsets));
    }
    return wn;
}

}  // namespace cognate
