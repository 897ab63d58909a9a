#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "cognate/extraction.hpp"
#include "cognate/gold.hpp"

namespace cognate {

enum class Label { positive, negative, skip };
std::string_view to_string(Label label);
std::optional<Label> try_parse_label(std::string_view text);

struct AnnotationRecord {
    std::string pair_id;
    std::string annotator;
    Label label = Label::skip;
    std::string timestamp;  // ISO-8601 UTC, e.g. 2020-01-31T12:00:00Z

    bool operator==(const AnnotationRecord&) const = default;
};

std::string utc_timestamp_now();
bool is_utc_timestamp(std::string_view text);

extern const std::vector<std::string> kAnnotationHeader;
void write_annotation(std::ostream& out, const AnnotationRecord& record);
void write_annotations(std::ostream& out, const std::vector<AnnotationRecord>& records);
std::vector<AnnotationRecord> read_annotations(std::istream& in, std::string_view source_name);

using LabelMap = std::map<std::string, Label>;  // pair_id -> label

// Latest verdict per (pair_id, annotator); a later record replaces an earlier one.
class AnnotationStore {
public:
    // Returns false when the stored record already carries the same label.
    bool upsert(const AnnotationRecord& record);

    std::vector<std::string> annotators() const;
    LabelMap labels(const std::string& annotator) const;
    const AnnotationRecord* find(const std::string& pair_id, const std::string& annotator) const;
    std::size_t size() const;

private:
    std::map<std::string, std::map<std::string, AnnotationRecord>> by_annotator_;
};

// 2x2 contingency table over items both annotators labelled (skips excluded).
struct AgreementCounts {
    std::size_t both_positive = 0;
    std::size_t a_positive_b_negative = 0;
    std::size_t a_negative_b_positive = 0;
    std::size_t both_negative = 0;

    std::size_t total() const {
        return both_positive + a_positive_b_negative + a_negative_b_positive + both_negative;
    }
};

AgreementCounts tally(const LabelMap& a, const LabelMap& b);

// Fraction of co-annotated items with the same label. Throws DataError when
// nothing was co-annotated.
double percent_agreement(const AgreementCounts& counts);

// (p_o - p_e) / (1 - p_e), with p_e from each annotator's marginals. When
// p_e = 1 the result is 1 if p_o = 1, else 0. Throws DataError when nothing
// was co-annotated.
double cohens_kappa(const AgreementCounts& counts);
double cohens_kappa(const LabelMap& a, const LabelMap& b);

struct AgreementReport {
    LanguagePair languages;
    std::size_t n_items = 0;
    double percent_agreement = 0;
    double kappa = 0;
    std::size_t retained = 0;
};

struct DualMerge {
    std::vector<std::string> retained;  // positive under both, sorted
    AgreementReport report;
};

// Throws DataError when the annotators share no non-skip item, or when
// `known` is given and a label references an unknown pair id.
DualMerge merge_dual(const LabelMap& a, const LabelMap& b, LanguagePair languages,
                     const std::set<std::string>* known = nullptr);

// Machine-readable agreement file: shortest round-trip decimals.
extern const std::vector<std::string> kAgreementHeader;
void write_agreement(std::ostream& out, const std::vector<AgreementReport>& reports);

// Human-readable statistics table: Language Pair, Potential Candidates,
// <retained label>, Percent Agreement, Cohen's kappa (4 decimals).
std::string render_agreement_table(const std::vector<AgreementReport>& reports,
                                   const std::map<LanguagePair, std::size_t>& potential,
                                   std::string_view retained_label);

// Worksheet shown to annotators: both words with gloss and example sentence.
extern const std::vector<std::string> kWorksheetHeader;
// Throws DataError naming the pair id when a candidate's synset is missing.
void export_worksheet(std::ostream& out, const std::vector<ScoredPair>& candidates, const LinkedWordnet& wn);
// Labels filled into a worksheet; blank label cells are ignored.
std::vector<AnnotationRecord> read_worksheet_labels(std::istream& in, std::string_view source_name,
                                                    const std::string& annotator, const std::string& timestamp);

// Gold entries for retained candidates (D2 for cognates, D3 for false friends).
GoldDataset retained_to_gold(const std::vector<std::string>& retained, const std::vector<ScoredPair>& candidates,
                             const LinkedWordnet& wn);

}  // namespace cognate
