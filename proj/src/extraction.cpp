#include "cognate/extraction.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "cognate/digest.hpp"
#include "cognate/error.hpp"
#include "cognate/similarity.hpp"
#include "cognate/text.hpp"
#include "extraction_detail.hpp"

namespace cognate {

const csv::Row kCandidateHeader = {"pair_id",   "source_lang", "target_lang", "source_word",
                                   "target_word", "synset_src", "synset_tgt", "ned",
                                   "cosine",    "jaro_winkler", "phonetic"};

std::string make_pair_id(LanguagePair languages, std::string_view source_word,
                         std::string_view target_word, SynsetId synset_src, SynsetId synset_tgt) {
    auto key = fmt::format("{}\t{}\t{}\t{}\t{}\t{}", to_string(languages.source),
                           to_string(languages.target), source_word, target_word, synset_src.value,
                           synset_tgt.value);
    return sha256_hex(key).substr(0, 16);
}

std::string_view to_string(PairRelation relation) {
    switch (relation) {
        case PairRelation::true_cognate: return "true_cognate";
        case PairRelation::false_friend: return "false_friend";
        case PairRelation::partial_cognate: return "partial_cognate";
        case PairRelation::unrelated: return "unrelated";
    }
    return "unrelated";
}

void score_pair(ScoredPair& pair, const ExtractionOptions& options) {
    const auto& a = pair.source_word.canonical;
    const auto& b = pair.target_word.canonical;
    const auto& table = options.phonetic_table ? *options.phonetic_table : PhoneticTable::builtin();
    if (!pair.ned) pair.ned = ned_similarity(a, b);
    if (!pair.cosine) pair.cosine = shingle_cosine(a, b, options.shingle_size);
    if (!pair.jaro_winkler) pair.jaro_winkler = jaro_winkler(a, b);
    if (!pair.phonetic) pair.phonetic = phonetic_similarity(a, b, table);
}

namespace detail {

void validate(const LinkedWordnet& wn, Language source, Language target, const ExtractionOptions& options) {
    if (!(options.threshold > 0.0 && options.threshold <= 1.0)) {
        throw UsageError(fmt::format("threshold {} outside (0, 1]", options.threshold));
    }
    if (options.shingle_size == 0) throw UsageError("shingle size must be at least 1");
    wn.table(source);
    wn.table(target);
}

std::vector<NormalizedWord> normalized_lemmas(const Synset& synset, const ExtractionOptions& options) {
    std::vector<NormalizedWord> out;
    out.reserve(synset.lemmas.size());
    for (const auto& lemma : synset.lemmas) {
        if (!options.include_multiword && is_multiword(lemma)) continue;
        out.push_back(normalize_script(lemma, synset.language, options.normalize));
    }
    return out;
}

void cognates_in_synset(const LinkedPair& link, const ExtractionOptions& options,
                        std::vector<ScoredPair>& out) {
    auto sources = normalized_lemmas(*link.source, options);
    auto targets = normalized_lemmas(*link.target, options);
    for (const auto& s : sources) {
        for (const auto& t : targets) {
            double ned = ned_similarity(s.canonical, t.canonical);
            if (ned < options.threshold) continue;
            double cosine = shingle_cosine(s.canonical, t.canonical, options.shingle_size);
            if (cosine < options.threshold) continue;
            ScoredPair pair;
            pair.source_word = s;
            pair.target_word = t;
            pair.synset_src = pair.synset_tgt = link.source->id;
            pair.ned = ned;
            pair.cosine = cosine;
            score_pair(pair, options);
            pair.pair_id = make_pair_id(pair.languages(), s.original, t.original, pair.synset_src,
                                        pair.synset_tgt);
            out.push_back(std::move(pair));
        }
    }
}

void false_friends_for_spelling(const std::u32string& spelling, const SpellingIndex& source,
                                const SpellingIndex& target, const ExtractionOptions& options,
                                std::vector<ScoredPair>& out) {
    if (classify_relation(spelling, source, target) != PairRelation::false_friend) return;
    for (auto p : *source.synsets(spelling)) {
        for (auto q : *target.synsets(spelling)) {
            ScoredPair pair;
            pair.source_word = normalize_script(*source.lemma(spelling, p), source.language(), options.normalize);
            pair.target_word = normalize_script(*target.lemma(spelling, q), target.language(), options.normalize);
            pair.synset_src = p;
            pair.synset_tgt = q;
            score_pair(pair, options);
            pair.pair_id = make_pair_id(pair.languages(), pair.source_word.original,
                                        pair.target_word.original, p, q);
            out.push_back(std::move(pair));
        }
    }
}

std::vector<std::u32string> shared_spellings(const SpellingIndex& source, const SpellingIndex& target) {
    std::vector<std::u32string> shared;
    for (auto& spelling : source.spellings()) {
        if (target.synsets(spelling)) shared.push_back(spelling);
    }
    return shared;
}

bool cognate_order(const ScoredPair& a, const ScoredPair& b) {
    return std::tie(a.synset_src, a.source_word.original, a.target_word.original) <
           std::tie(b.synset_src, b.source_word.original, b.target_word.original);
}

bool false_friend_order(const ScoredPair& a, const ScoredPair& b) {
    return std::tie(a.synset_src, a.synset_tgt, a.source_word.original, a.target_word.original) <
           std::tie(b.synset_src, b.synset_tgt, b.source_word.original, b.target_word.original);
}

void sort_unique_cognates(std::vector<ScoredPair>& pairs) {
    std::sort(pairs.begin(), pairs.end(), cognate_order);
    auto same = [](const ScoredPair& a, const ScoredPair& b) {
        return !cognate_order(a, b) && !cognate_order(b, a);
    };
    pairs.erase(std::unique(pairs.begin(), pairs.end(), same), pairs.end());
}

}  // namespace detail

SpellingIndex::SpellingIndex(const LinkedWordnet& wn, Language language, const NormalizeOptions& normalize,
                             bool include_multiword)
    : language_(language) {
    for (const auto& [id, synset] : wn.table(language)) {
        for (const auto& lemma : synset.lemmas) {
            if (!include_multiword && is_multiword(lemma)) continue;
            auto canonical = normalize_script(lemma, language, normalize).canonical;
            ids_[canonical].insert(id);
            lemmas_.try_emplace({canonical, id}, lemma);
        }
    }
}

const std::set<SynsetId>* SpellingIndex::synsets(const std::u32string& spelling) const {
    auto it = ids_.find(spelling);
    return it == ids_.end() ? nullptr : &it->second;
}

const std::string* SpellingIndex::lemma(const std::u32string& spelling, SynsetId id) const {
    auto it = lemmas_.find({spelling, id});
    return it == lemmas_.end() ? nullptr : &it->second;
}

std::vector<std::u32string> SpellingIndex::spellings() const {
    std::vector<std::u32string> out;
    out.reserve(ids_.size());
    for (const auto& [spelling, ids] : ids_) out.push_back(spelling);
    std::sort(out.begin(), out.end());
    return out;
}

PairRelation classify_relation(const std::u32string& spelling, const SpellingIndex& source,
                               const SpellingIndex& target) {
    const auto* p = source.synsets(spelling);
    const auto* q = target.synsets(spelling);
    if (!p || !q || p->empty() || q->empty()) return PairRelation::unrelated;
    if (*p == *q) return PairRelation::true_cognate;
    bool overlap = std::any_of(p->begin(), p->end(), [&](SynsetId id) { return q->contains(id); });
    return overlap ? PairRelation::partial_cognate : PairRelation::false_friend;
}

PairRelation classify_relation(const std::u32string& spelling, const LinkedWordnet& wn, Language source,
                               Language target, const NormalizeOptions& normalize) {
    return classify_relation(spelling, SpellingIndex(wn, source, normalize, true),
                             SpellingIndex(wn, target, normalize, true));
}

std::vector<ScoredPair> generate_cognate_candidates(const LinkedWordnet& wn, Language source,
                                                    Language target, const ExtractionOptions& options) {
    detail::validate(wn, source, target, options);
    const auto links = wn.link_pairs(source, target).pairs;
    const auto n = static_cast<long long>(links.size());
    std::vector<ScoredPair> result;

#pragma omp parallel
    {
        std::vector<ScoredPair> local;
#pragma omp for schedule(dynamic, 32) nowait
        for (long long i = 0; i < n; ++i) {
            detail::cognates_in_synset(links[static_cast<std::size_t>(i)], options, local);
        }
#pragma omp critical(cognate_merge)
        result.insert(result.end(), std::make_move_iterator(local.begin()),
                      std::make_move_iterator(local.end()));
    }
    detail::sort_unique_cognates(result);
    return result;
}

std::vector<ScoredPair> generate_false_friend_candidates(const LinkedWordnet& wn, Language source,
                                                         Language target, const ExtractionOptions& options) {
    detail::validate(wn, source, target, options);
    SpellingIndex src(wn, source, options.normalize, options.include_multiword);
    SpellingIndex tgt(wn, target, options.normalize, options.include_multiword);
    const auto shared = detail::shared_spellings(src, tgt);
    const auto n = static_cast<long long>(shared.size());
    std::vector<ScoredPair> result;

#pragma omp parallel
    {
        std::vector<ScoredPair> local;
#pragma omp for schedule(dynamic, 64) nowait
        for (long long i = 0; i < n; ++i) {
            detail::false_friends_for_spelling(shared[static_cast<std::size_t>(i)], src, tgt, options, local);
        }
#pragma omp critical(false_friend_merge)
        result.insert(result.end(), std::make_move_iterator(local.begin()),
                      std::make_move_iterator(local.end()));
    }
    std::sort(result.begin(), result.end(), detail::false_friend_order);
    return result;
}

namespace {

std::string score_field(const std::optional<double>& score) {
    return score ? format_fixed(*score, 4) : std::string();
}

std::optional<double> parse_score(const std::string& cell, std::string_view where) {
    if (cell.empty()) return std::nullopt;
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(cell, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != cell.size() || !(value >= 0.0 && value <= 1.0)) {
        throw DataError(fmt::format("{}: score '{}' is not a number in [0,1]", where, cell));
    }
    return value;
}

}  // namespace

void write_candidates(std::ostream& out, const std::vector<ScoredPair>& candidates) {
    csv::write_row(out, kCandidateHeader);
    for (const auto& c : candidates) {
        csv::write_row(out, {c.pair_id, std::string(to_string(c.source_word.language)),
                             std::string(to_string(c.target_word.language)), c.source_word.original,
                             c.target_word.original, std::to_string(c.synset_src.value),
                             std::to_string(c.synset_tgt.value), score_field(c.ned), score_field(c.cosine),
                             score_field(c.jaro_winkler), score_field(c.phonetic)});
    }
}

std::vector<ScoredPair> read_candidates(std::istream& in, std::string_view source_name,
                                        const NormalizeOptions& normalize) {
    auto table = csv::read_table(in, source_name);
    if (table.header != kCandidateHeader) {
        throw DataError(fmt::format("{}: not a candidate file (unexpected header)", source_name));
    }
    std::vector<ScoredPair> out;
    out.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        auto where = fmt::format("{}:{}", source_name, table.lines[r]);
        try {
            ScoredPair pair;
            pair.pair_id = row[0];
            pair.source_word = normalize_script(row[3], parse_language(row[1]), normalize);
            pair.target_word = normalize_script(row[4], parse_language(row[2]), normalize);
            pair.synset_src = parse_synset_id(row[5]);
            pair.synset_tgt = parse_synset_id(row[6]);
            pair.ned = parse_score(row[7], where);
            pair.cosine = parse_score(row[8], where);
            pair.jaro_winkler = parse_score(row[9], where);
            pair.phonetic = parse_score(row[10], where);
            out.push_back(std::move(pair));
        } catch (const DataError& e) {
            throw DataError(fmt::format("{}: {}", where, e.what()));
        } catch (const UsageError& e) {
            throw DataError(fmt::format("{}: {}", where, e.what()));
        }
    }
    return out;
}

std::vector<ScoredPair> read_candidates_file(const std::string& path, const NormalizeOptions& normalize) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(fmt::format("cannot open candidate file '{}'", path));
    return read_candidates(in, path, normalize);
}

PairCounts pair_report(const std::vector<ScoredPair>& candidates) {
    PairCounts report;
    for (const auto& c : candidates) {
        auto key = c.languages();
        if (report.counts[key]++ == 0) report.order.push_back(key);
    }
    return report;
}

std::string render_count_table(const PairCounts& counts, std::string_view row_label) {
    std::ostringstream out;
    csv::Row header{"Language Pair"};
    csv::Row row{std::string(row_label)};
    for (const auto& pair : counts.order) {
        header.push_back(display_name(pair));
        auto it = counts.counts.find(pair);
        row.push_back(std::to_string(it == counts.counts.end() ? 0 : it->second));
    }
    csv::write_row(out, header);
    csv::write_row(out, row);
    return out.str();
}

}  // namespace cognate
