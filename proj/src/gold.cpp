#include "cognate/gold.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "cognate/csv.hpp"
#include "cognate/error.hpp"
#include "cognate/text.hpp"

namespace cognate {

const std::vector<std::string> kGoldHeader = {"synset_id",   "pos",         "source_lang", "source_word",
                                              "target_lang", "target_word", "provenance"};

std::string_view to_string(Provenance provenance) {
    switch (provenance) {
        case Provenance::D1: return "D1";
        case Provenance::D2: return "D2";
        case Provenance::D3: return "D3";
        case Provenance::merged: return "merged";
    }
    return "merged";
}

Provenance parse_provenance(std::string_view text) {
    if (text == "D1") return Provenance::D1;
    if (text == "D2") return Provenance::D2;
    if (text == "D3") return Provenance::D3;
    if (text == "merged") return Provenance::merged;
    throw DataError(fmt::format("unknown provenance '{}'", text));
}

void canonicalize(GoldDataset& dataset) {
    std::stable_sort(dataset.begin(), dataset.end(), [](const GoldEntry& a, const GoldEntry& b) {
        if (a.key() != b.key()) return a.key() < b.key();
        return std::tie(a.provenance, a.pos) < std::tie(b.provenance, b.pos);
    });
    dataset.erase(std::unique(dataset.begin(), dataset.end(),
                              [](const GoldEntry& a, const GoldEntry& b) { return a.key() == b.key(); }),
                  dataset.end());
}

GoldDataset merge_gold(const GoldDataset& a, const GoldDataset& b) {
    GoldDataset merged;
    merged.reserve(a.size() + b.size());
    merged.insert(merged.end(), a.begin(), a.end());
    merged.insert(merged.end(), b.begin(), b.end());
    canonicalize(merged);
    return merged;
}

void write_gold(std::ostream& out, const GoldDataset& dataset) {
    csv::write_row(out, kGoldHeader);
    for (const auto& e : dataset) {
        csv::write_row(out, {std::to_string(e.synset.value), std::string(to_string(e.pos)),
                             std::string(to_string(e.source_lang)), e.source_word,
                             std::string(to_string(e.target_lang)), e.target_word,
                             std::string(to_string(e.provenance))});
    }
}

GoldDataset read_gold(std::istream& in, std::string_view source_name) {
    auto table = csv::read_table(in, source_name);
    if (table.header != kGoldHeader) {
        throw DataError(fmt::format("{}: not a gold file (unexpected header)", source_name));
    }
    GoldDataset dataset;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        try {
            GoldEntry e;
            e.synset = parse_synset_id(row[0]);
            auto pos = try_parse_pos(row[1]);
            if (!pos) throw DataError(fmt::format("unknown part of speech '{}'", row[1]));
            e.pos = *pos;
            e.source_lang = parse_language(row[2]);
            e.source_word = row[3];
            e.target_lang = parse_language(row[4]);
            e.target_word = row[5];
            e.provenance = parse_provenance(row[6]);
            if (e.source_word.empty() || e.target_word.empty()) throw DataError("empty word");
            dataset.push_back(std::move(e));
        } catch (const DataError& e) {
            throw DataError(fmt::format("{}:{}: {}", source_name, table.lines[r], e.what()));
        }
    }
    auto before = dataset.size();
    canonicalize(dataset);
    if (dataset.size() != before) {
        throw DataError(fmt::format("{}: {} duplicate entries", source_name, before - dataset.size()));
    }
    return dataset;
}

GoldDataset read_gold_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(fmt::format("cannot open gold file '{}'", path));
    return read_gold(in, path);
}

PosDistribution pos_distribution(const GoldDataset& dataset) {
    if (dataset.empty()) throw DataError("part-of-speech distribution of an empty dataset");
    PosDistribution dist;
    for (const auto& e : dataset) ++dist.counts[static_cast<std::size_t>(e.pos)];
    const auto total = static_cast<double>(dataset.size());
    for (std::size_t i = 0; i < 4; ++i) {
        dist.percent[i] = std::round(static_cast<double>(dist.counts[i]) * 10000.0 / total) / 100.0;
    }
    return dist;
}

std::string render_pos_row(std::string_view label, const std::array<double, 4>& percent) {
    return fmt::format("{},{},{},{},{}", label, format_fixed(percent[0], 2), format_fixed(percent[1], 2),
                       format_fixed(percent[2], 2), format_fixed(percent[3], 2));
}

D1Import import_d1(std::istream& in, std::string_view source_name, Language pivot) {
    auto table = csv::read_table(in, source_name);
    auto id_col = table.require_column("synset_id");
    auto pos_col = table.require_column("pos");
    auto flag_col = table.column("flag");

    std::vector<std::pair<std::size_t, Language>> language_cols;
    std::optional<std::size_t> pivot_col;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c == id_col || c == pos_col || (flag_col && c == *flag_col)) continue;
        auto lang = try_parse_language(table.header[c]);
        if (!lang) {
            throw DataError(fmt::format("{}: unknown language column '{}'", source_name, table.header[c]));
        }
        if (*lang == pivot) pivot_col = c;
        language_cols.emplace_back(c, *lang);
    }
    if (!pivot_col) {
        throw DataError(fmt::format("{}: no column for pivot language '{}'", source_name, to_string(pivot)));
    }

    auto words_in = [](std::string_view cell) {
        std::vector<std::string> words;
        for (auto w : split(cell, '|')) {
            w = trim(w);
            if (!w.empty()) words.emplace_back(w);
        }
        return words;
    };

    D1Import result;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        auto where = fmt::format("{}:{}", source_name, table.lines[r]);
        ++result.rows;
        SynsetId id;
        try {
            id = parse_synset_id(row[id_col]);
        } catch (const DataError& e) {
            throw DataError(fmt::format("{}: {}", where, e.what()));
        }
        auto pos = try_parse_pos(trim(row[pos_col]));
        if (!pos) throw DataError(fmt::format("{}: unknown part of speech '{}'", where, row[pos_col]));
        if (flag_col && trim(row[*flag_col]) == "partial") {
            ++result.partial_rows_excluded;
            continue;
        }
        auto pivot_words = words_in(row[*pivot_col]);
        result.words += pivot_words.size();
        for (auto [c, lang] : language_cols) {
            if (lang == pivot) continue;
            auto targets = words_in(row[c]);
            result.words += targets.size();
            for (const auto& p : pivot_words) {
                for (const auto& t : targets) {
                    result.dataset.push_back({id, *pos, pivot, p, lang, t, Provenance::D1});
                }
            }
        }
    }
    canonicalize(result.dataset);
    return result;
}

D1Import import_d1_file(const std::string& path, Language pivot) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(fmt::format("cannot open dictionary file '{}'", path));
    return import_d1(in, path, pivot);
}

}  // namespace cognate
