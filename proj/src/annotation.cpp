#include "cognate/annotation.hpp"

#include <cctype>
#include <ctime>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "cognate/csv.hpp"
#include "cognate/error.hpp"
#include "cognate/text.hpp"

namespace cognate {

const std::vector<std::string> kAnnotationHeader = {"pair_id", "annotator", "label", "timestamp"};
const std::vector<std::string> kAgreementHeader = {"language_pair", "n_items", "percent_agreement",
                                                   "kappa", "retained"};
const std::vector<std::string> kWorksheetHeader = {"pair_id",   "source_lang", "target_lang", "source_word",
                                                   "target_word", "gloss_src", "example_src", "gloss_tgt",
                                                   "example_tgt", "label"};

std::string_view to_string(Label label) {
    switch (label) {
        case Label::positive: return "positive";
        case Label::negative: return "negative";
        case Label::skip: return "skip";
    }
    return "skip";
}

std::optional<Label> try_parse_label(std::string_view text) {
    if (text == "positive") return Label::positive;
    if (text == "negative") return Label::negative;
    if (text == "skip") return Label::skip;
    return std::nullopt;
}

std::string utc_timestamp_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool is_utc_timestamp(std::string_view text) {
    // YYYY-MM-DDTHH:MM:SS[.fff]Z
    if (text.size() < 20 || text.back() != 'Z') return false;
    const std::string_view pattern = "dddd-dd-ddTdd:dd:dd";
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        char c = text[i];
        if (pattern[i] == 'd' ? !(c >= '0' && c <= '9') : c != pattern[i]) return false;
    }
    auto rest = text.substr(pattern.size(), text.size() - pattern.size() - 1);
    if (rest.empty()) return true;
    if (rest.size() < 2 || rest[0] != '.') return false;
    return rest.substr(1).find_first_not_of("0123456789") == std::string_view::npos;
}

void write_annotation(std::ostream& out, const AnnotationRecord& r) {
    csv::write_row(out, {r.pair_id, r.annotator, std::string(to_string(r.label)), r.timestamp});
}

void write_annotations(std::ostream& out, const std::vector<AnnotationRecord>& records) {
    csv::write_row(out, kAnnotationHeader);
    for (const auto& r : records) write_annotation(out, r);
}

std::vector<AnnotationRecord> read_annotations(std::istream& in, std::string_view source_name) {
    auto table = csv::read_table(in, source_name);
    if (table.header != kAnnotationHeader) {
        throw DataError(fmt::format("{}: not an annotation file (unexpected header)", source_name));
    }
    std::vector<AnnotationRecord> out;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        auto label = try_parse_label(row[2]);
        auto where = fmt::format("{}:{}", source_name, table.lines[r]);
        if (row[0].empty() || row[1].empty()) throw DataError(where + ": empty pair_id or annotator");
        if (!label) throw DataError(fmt::format("{}: invalid label '{}'", where, row[2]));
        if (!is_utc_timestamp(row[3])) throw DataError(fmt::format("{}: invalid timestamp '{}'", where, row[3]));
        out.push_back({row[0], row[1], *label, row[3]});
    }
    return out;
}

bool AnnotationStore::upsert(const AnnotationRecord& record) {
    auto& slot = by_annotator_[record.annotator];
    auto it = slot.find(record.pair_id);
    if (it != slot.end() && it->second.label == record.label) return false;
    slot[record.pair_id] = record;
    return true;
}

std::vector<std::string> AnnotationStore::annotators() const {
    std::vector<std::string> out;
    for (const auto& [name, records] : by_annotator_) out.push_back(name);
    return out;
}

LabelMap AnnotationStore::labels(const std::string& annotator) const {
    LabelMap out;
    if (auto it = by_annotator_.find(annotator); it != by_annotator_.end()) {
        for (const auto& [pair_id, record] : it->second) out.emplace(pair_id, record.label);
    }
    return out;
}

const AnnotationRecord* AnnotationStore::find(const std::string& pair_id, const std::string& annotator) const {
    auto a = by_annotator_.find(annotator);
    if (a == by_annotator_.end()) return nullptr;
    auto r = a->second.find(pair_id);
    return r == a->second.end() ? nullptr : &r->second;
}

std::size_t AnnotationStore::size() const {
    std::size_t n = 0;
    for (const auto& [name, records] : by_annotator_) n += records.size();
    return n;
}

AgreementCounts tally(const LabelMap& a, const LabelMap& b) {
    AgreementCounts counts;
    for (const auto& [pair_id, la] : a) {
        auto it = b.find(pair_id);
        if (it == b.end() || la == Label::skip || it->second == Label::skip) continue;
        bool pa = la == Label::positive;
        bool pb = it->second == Label::positive;
        if (pa && pb) ++counts.both_positive;
        else if (pa) ++counts.a_positive_b_negative;
        else if (pb) ++counts.a_negative_b_positive;
        else ++counts.both_negative;
    }
    return counts;
}

double percent_agreement(const AgreementCounts& c) {
    if (c.total() == 0) throw DataError("agreement is undefined without co-annotated items");
    return static_cast<double>(c.both_positive + c.both_negative) / static_cast<double>(c.total());
}

double cohens_kappa(const AgreementCounts& c) {
    const std::size_t n = c.total();
    if (n == 0) throw DataError("kappa is undefined without co-annotated items");
    // Scaled by n^2 so the common cases stay in exact integer arithmetic:
    // kappa = (n * agreed - expected) / (n^2 - expected).
    const std::size_t agreed = c.both_positive + c.both_negative;
    const std::size_t a_pos = c.both_positive + c.a_positive_b_negative;
    const std::size_t b_pos = c.both_positive + c.a_negative_b_positive;
    const std::size_t expected = a_pos * b_pos + (n - a_pos) * (n - b_pos);
    const std::size_t n2 = n * n;
    if (expected == n2) return agreed == n ? 1.0 : 0.0;
    const double numerator = static_cast<double>(n * agreed) - static_cast<double>(expected);
    return numerator / static_cast<double>(n2 - expected);
}

double cohens_kappa(const LabelMap& a, const LabelMap& b) { return cohens_kappa(tally(a, b)); }

DualMerge merge_dual(const LabelMap& a, const LabelMap& b, LanguagePair languages,
                     const std::set<std::string>* known) {
    if (known) {
        for (const auto* labels : {&a, &b}) {
            for (const auto& [pair_id, label] : *labels) {
                if (!known->contains(pair_id)) throw DataError(fmt::format("unknown pair_id '{}'", pair_id));
            }
        }
    }
    auto counts = tally(a, b);
    if (counts.total() == 0) {
        throw DataError(fmt::format("annotators share no labelled item for {}", to_string(languages)));
    }
    DualMerge merge;
    for (const auto& [pair_id, la] : a) {
        auto it = b.find(pair_id);
        if (la == Label::positive && it != b.end() && it->second == Label::positive) {
            merge.retained.push_back(pair_id);
        }
    }
    merge.report = {languages, counts.total(), percent_agreement(counts), cohens_kappa(counts),
                    merge.retained.size()};
    return merge;
}

void write_agreement(std::ostream& out, const std::vector<AgreementReport>& reports) {
    csv::write_row(out, kAgreementHeader);
    for (const auto& r : reports) {
        csv::write_row(out, {to_string(r.languages), std::to_string(r.n_items),
                             fmt::format("{}", r.percent_agreement), fmt::format("{}", r.kappa),
                             std::to_string(r.retained)});
    }
}

std::string render_agreement_table(const std::vector<AgreementReport>& reports,
                                   const std::map<LanguagePair, std::size_t>& potential,
                                   std::string_view retained_label) {
    csv::Row header{"Language Pair"}, pot{"Potential Candidates"}, kept{std::string(retained_label)},
        agree{"Percent Agreement"}, kappa{"Cohen's kappa"};
    for (const auto& r : reports) {
        header.push_back(display_name(r.languages));
        auto it = potential.find(r.languages);
        pot.push_back(it == potential.end() ? "" : std::to_string(it->second));
        kept.push_back(std::to_string(r.retained));
        agree.push_back(format_fixed(r.percent_agreement, 4));
        kappa.push_back(format_fixed(r.kappa, 4));
    }
    std::ostringstream out;
    for (const auto* row : {&header, &pot, &kept, &agree, &kappa}) csv::write_row(out, *row);
    return out.str();
}

void export_worksheet(std::ostream& out, const std::vector<ScoredPair>& candidates, const LinkedWordnet& wn) {
    std::ostringstream body;
    csv::write_row(body, kWorksheetHeader);
    for (const auto& c : candidates) {
        const Synset* src = wn.find(c.source_word.language, c.synset_src);
        const Synset* tgt = wn.find(c.target_word.language, c.synset_tgt);
        if (!src || !tgt) {
            throw DataError(fmt::format("candidate {} refers to a synset missing from the wordnet", c.pair_id));
        }
        csv::write_row(body, {c.pair_id, std::string(to_string(c.source_word.language)),
                              std::string(to_string(c.target_word.language)), c.source_word.original,
                              c.target_word.original, src->gloss, src->example.value_or(""), tgt->gloss,
                              tgt->example.value_or(""), ""});
    }
    out << body.str();
}

std::vector<AnnotationRecord> read_worksheet_labels(std::istream& in, std::string_view source_name,
                                                    const std::string& annotator, const std::string& timestamp) {
    auto table = csv::read_table(in, source_name);
    if (table.header != kWorksheetHeader) {
        throw DataError(fmt::format("{}: not a worksheet (unexpected header)", source_name));
    }
    std::vector<AnnotationRecord> out;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        auto cell = trim(table.rows[r][9]);
        if (cell.empty()) continue;
        auto label = try_parse_label(cell);
        // Hand-filled sheets may use the Y/N/S keys.
        if (!label && cell.size() == 1) {
            switch (std::tolower(static_cast<unsigned char>(cell[0]))) {
                case 'y': label = Label::positive; break;
                case 'n': label = Label::negative; break;
                case 's': label = Label::skip; break;
                default: break;
            }
        }
        if (!label) {
            throw DataError(fmt::format("{}:{}: invalid label '{}'", source_name, table.lines[r], cell));
        }
        out.push_back({table.rows[r][0], annotator, *label, timestamp});
    }
    return out;
}

GoldDataset retained_to_gold(const std::vector<std::string>& retained, const std::vector<ScoredPair>& candidates,
                             const LinkedWordnet& wn) {
    std::unordered_map<std::string, const ScoredPair*> by_id;
    for (const auto& c : candidates) by_id.emplace(c.pair_id, &c);
    GoldDataset gold;
    for (const auto& id : retained) {
        auto it = by_id.find(id);
        if (it == by_id.end()) throw DataError(fmt::format("retained pair '{}' is not a candidate", id));
        const auto& c = *it->second;
        const Synset* src = wn.find(c.source_word.language, c.synset_src);
        if (!src) throw DataError(fmt::format("candidate {} refers to a missing synset", c.pair_id));
        gold.push_back({c.synset_src, src->pos, c.source_word.language, c.source_word.original,
                        c.target_word.language, c.target_word.original,
                        c.is_cognate_candidate() ? Provenance::D2 : Provenance::D3});
    }
    canonicalize(gold);
    return gold;
}

}  // namespace cognate
