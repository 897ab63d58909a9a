#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cognate/extraction.hpp"
#include "cognate/gold.hpp"

namespace cognate {

// orthographic = (NED), phonetic = (phonetic similarity),
// combo = (NED, shingle cosine, Jaro-Winkler).
enum class FeatureScheme { orthographic, phonetic, combo };
inline constexpr std::array<FeatureScheme, 3> kAllSchemes = {FeatureScheme::orthographic,
                                                             FeatureScheme::phonetic, FeatureScheme::combo};

std::string_view to_string(FeatureScheme scheme);
FeatureScheme parse_scheme(std::string_view text);
std::size_t feature_dimension(FeatureScheme scheme);
std::vector<std::string> feature_names(FeatureScheme scheme);
// Row label in result tables, e.g. "Orthographic Similarity".
std::string approach_name(FeatureScheme scheme);

struct FeatureOptions {
    std::size_t shingle_size = 2;
    const PhoneticTable* phonetic_table = nullptr;
};

// Uses the scores already on the pair and computes the missing ones.
std::vector<double> featurize(const ScoredPair& pair, FeatureScheme scheme, const FeatureOptions& options = {});

struct LabeledExample {
    std::vector<double> features;
    bool positive = false;
    std::string pair_id;

    bool operator==(const LabeledExample&) const = default;
};

struct DatasetSplit {
    std::vector<LabeledExample> train;
    std::vector<LabeledExample> validation;
};

// Stratified by label: each class is shuffled with the seed and round(n_c * ratio)
// of it goes to training. Throws UsageError unless 0 < ratio < 1, and DataError
// when either side ends up empty.
DatasetSplit split_dataset(const std::vector<LabeledExample>& examples, double ratio, std::uint64_t seed);

enum class Task { cognate, false_friend };
std::string_view to_string(Task task);
Task parse_task(std::string_view text);

// Gold entries that are positives for the task: D3 for false friends, the rest for cognates.
GoldDataset task_positives(const GoldDataset& gold, Task task);

ScoredPair to_scored_pair(const GoldEntry& entry, const NormalizeOptions& normalize = {});

// For every language pair among the task positives, as many negatives as positives.
// Cognate task: random lemma pairs from synsets with different ids. False-friend
// task: the pair's true cognates, topped up with random pairs when too few.
// Throws DataError when the wordnet is too small to supply them.
std::vector<ScoredPair> make_negatives(const LinkedWordnet& wn, const GoldDataset& gold, Task task,
                                       std::uint64_t seed, const NormalizeOptions& normalize = {});

struct Hyperparameters {
    std::size_t hidden = 16;
    std::size_t epochs = 200;
    double learning_rate = 0.05;
    std::uint64_t seed = 0;
};

// Input -> ReLU hidden layer -> two-way softmax. Parameters are stored flat:
// hidden weights (H x D, row-major), hidden bias (H), output weights (2 x H),
// output bias (2). Output unit 1 is the positive class.
struct ClassifierModel {
    FeatureScheme scheme = FeatureScheme::combo;
    std::size_t input = 0;
    std::size_t hidden = 0;
    std::vector<double> params;
    std::uint64_t seed = 0;
    std::size_t epochs = 0;
    double learning_rate = 0;
    double final_loss = 0;

    std::size_t parameter_count() const { return hidden * input + hidden + 2 * hidden + 2; }
    std::array<double, 2> probabilities(std::span<const double> x) const;
    bool predict(std::span<const double> x) const;

    bool operator==(const ClassifierModel&) const = default;
};

// Uniform in +-sqrt(6 / (fan_in + fan_out)), zero biases.
ClassifierModel initialize_model(FeatureScheme scheme, std::size_t input, std::size_t hidden, std::uint64_t seed);

// Mean cross-entropy over the examples.
double cross_entropy(const ClassifierModel& model, const std::vector<LabeledExample>& examples);
// Gradient of cross_entropy with respect to model.params.
std::vector<double> loss_gradient(const ClassifierModel& model, const std::vector<LabeledExample>& examples);

struct TrainResult {
    ClassifierModel model;
    std::vector<double> loss_history;  // initial loss, then one entry per epoch; non-increasing
};

// Full-batch gradient descent. A step that would raise the loss is rejected and
// the learning rate halved. Examples are put in a canonical order first, so the
// result does not depend on their input order. Throws DataError unless both
// labels are present.
TrainResult train(const std::vector<LabeledExample>& examples, FeatureScheme scheme, const Hyperparameters& hyper);

struct EvalReport {
    std::size_t true_positive = 0;
    std::size_t false_positive = 0;
    std::size_t false_negative = 0;
    std::size_t true_negative = 0;
    double precision = 0;
    double recall = 0;
    double f_score = 0;
};

EvalReport report_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn);
EvalReport evaluate(const ClassifierModel& model, const std::vector<LabeledExample>& examples);

void write_model(std::ostream& out, const ClassifierModel& model);
ClassifierModel read_model(std::istream& in, std::string_view source_name);

// Approach x language-pair F-score matrix, one row per approach.
struct ResultTable {
    std::vector<LanguagePair> columns;
    std::vector<std::string> approaches;
    std::map<std::pair<std::string, LanguagePair>, double> scores;

    void set(const std::string& approach, LanguagePair pair, double score);
};
std::string render_results(const ResultTable& table, int decimals = 4);
// Reads rows in the rendered layout (e.g. scores of systems run elsewhere) into `table`.
void merge_result_rows(ResultTable& table, std::istream& in, std::string_view source_name);

}  // namespace cognate
