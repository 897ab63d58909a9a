#include "cognate/classify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "cognate/csv.hpp"
#include "cognate/error.hpp"
#include "cognate/random.hpp"
#include "cognate/similarity.hpp"
#include "cognate/text.hpp"

namespace cognate {

std::string_view to_string(FeatureScheme scheme) {
    switch (scheme) {
        case FeatureScheme::orthographic: return "orthographic";
        case FeatureScheme::phonetic: return "phonetic";
        case FeatureScheme::combo: return "combo";
    }
    return "combo";
}

FeatureScheme parse_scheme(std::string_view text) {
    for (auto s : kAllSchemes) {
        if (to_string(s) == text) return s;
    }
    throw UsageError(fmt::format("unknown feature scheme '{}'", text));
}

std::size_t feature_dimension(FeatureScheme scheme) { return scheme == FeatureScheme::combo ? 3 : 1; }

std::vector<std::string> feature_names(FeatureScheme scheme) {
    switch (scheme) {
        case FeatureScheme::orthographic: return {"ned"};
        case FeatureScheme::phonetic: return {"phonetic"};
        case FeatureScheme::combo: return {"ned", "cosine", "jaro_winkler"};
    }
    return {};
}

std::string approach_name(FeatureScheme scheme) {
    switch (scheme) {
        case FeatureScheme::orthographic: return "Orthographic Similarity";
        case FeatureScheme::phonetic: return "Phonetic Similarity";
        case FeatureScheme::combo: return "Combined Similarity (NED+CoS+JW)";
    }
    return {};
}

std::vector<double> featurize(const ScoredPair& pair, FeatureScheme scheme, const FeatureOptions& options) {
    const auto& a = pair.source_word.canonical;
    const auto& b = pair.target_word.canonical;
    if (a.empty() || b.empty()) {
        throw DataError(fmt::format("pair {} has no word data", pair.pair_id));
    }
    const auto& table = options.phonetic_table ? *options.phonetic_table : PhoneticTable::builtin();
    auto ned = [&] { return pair.ned ? *pair.ned : ned_similarity(a, b); };
    switch (scheme) {
        case FeatureScheme::orthographic: return {ned()};
        case FeatureScheme::phonetic:
            return {pair.phonetic ? *pair.phonetic : phonetic_similarity(a, b, table)};
        case FeatureScheme::combo:
            return {ned(), pair.cosine ? *pair.cosine : shingle_cosine(a, b, options.shingle_size),
                    pair.jaro_winkler ? *pair.jaro_winkler : jaro_winkler(a, b)};
    }
    return {};
}

DatasetSplit split_dataset(const std::vector<LabeledExample>& examples, double ratio, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw UsageError(fmt::format("split ratio {} outside (0, 1)", ratio));
    if (examples.size() < 2) throw DataError("need at least two examples to split");
    std::mt19937_64 rng(seed);
    DatasetSplit split;
    for (bool label : {true, false}) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < examples.size(); ++i) {
            if (examples[i].positive == label) idx.push_back(i);
        }
        shuffle(idx, rng);
        auto n_train = static_cast<std::size_t>(std::llround(static_cast<double>(idx.size()) * ratio));
        for (std::size_t k = 0; k < idx.size(); ++k) {
            (k < n_train ? split.train : split.validation).push_back(examples[idx[k]]);
        }
    }
    if (split.train.empty() || split.validation.empty()) {
        throw DataError(fmt::format("split of {} examples at ratio {} leaves one side empty", examples.size(), ratio));
    }
    return split;
}

std::string_view to_string(Task task) { return task == Task::cognate ? "cognate" : "falsefriend"; }

Task parse_task(std::string_view text) {
    if (text == "cognate" || text == "cognates") return Task::cognate;
    if (text == "falsefriend" || text == "falsefriends" || text == "false_friend") return Task::false_friend;
    throw UsageError(fmt::format("unknown task '{}'", text));
}

GoldDataset task_positives(const GoldDataset& gold, Task task) {
    GoldDataset out;
    for (const auto& e : gold) {
        bool is_ff = e.provenance == Provenance::D3;
        if (is_ff == (task == Task::false_friend)) out.push_back(e);
    }
    return out;
}

ScoredPair to_scored_pair(const GoldEntry& entry, const NormalizeOptions& normalize) {
    ScoredPair pair;
    pair.source_word = normalize_script(entry.source_word, entry.source_lang, normalize);
    pair.target_word = normalize_script(entry.target_word, entry.target_lang, normalize);
    pair.synset_src = pair.synset_tgt = entry.synset;
    pair.pair_id = make_pair_id(entry.languages(), entry.source_word, entry.target_word, entry.synset, entry.synset);
    return pair;
}

namespace {

struct LemmaPool {
    std::vector<std::pair<SynsetId, const std::string*>> lemmas;
};

LemmaPool single_word_lemmas(const SynsetTable& table) {
    LemmaPool pool;
    for (const auto& [id, synset] : table) {
        for (const auto& lemma : synset.lemmas) {
            if (!is_multiword(lemma)) pool.lemmas.emplace_back(id, &lemma);
        }
    }
    return pool;
}

// Random lemma pairs drawn from synsets with different ids.
void sample_unlinked(const LinkedWordnet& wn, LanguagePair languages, std::size_t count,
                     std::set<std::pair<std::string, std::string>>& taken, std::mt19937_64& rng,
                     const NormalizeOptions& normalize, std::vector<ScoredPair>& out) {
    if (count == 0) return;
    auto src = single_word_lemmas(wn.table(languages.source));
    auto tgt = single_word_lemmas(wn.table(languages.target));
    if (src.lemmas.empty() || tgt.lemmas.empty()) {
        throw DataError(fmt::format("wordnet for {} has no lemmas to sample negatives from", to_string(languages)));
    }
    const std::size_t max_attempts = 100 * count + 10000;
    std::size_t made = 0;
    for (std::size_t attempt = 0; attempt < max_attempts && made < count; ++attempt) {
        const auto& [sid, sw] = src.lemmas[uniform_index(rng, src.lemmas.size())];
        const auto& [tid, tw] = tgt.lemmas[uniform_index(rng, tgt.lemmas.size())];
        if (sid == tid) continue;
        if (!taken.emplace(*sw, *tw).second) continue;
        ScoredPair pair;
        pair.source_word = normalize_script(*sw, languages.source, normalize);
        pair.target_word = normalize_script(*tw, languages.target, normalize);
        pair.synset_src = sid;
        pair.synset_tgt = tid;
        pair.pair_id = make_pair_id(languages, *sw, *tw, sid, tid);
        out.push_back(std::move(pair));
        ++made;
    }
    if (made < count) {
        throw DataError(fmt::format("wordnet too small: sampled {} of {} negative pairs for {}", made, count,
                                    to_string(languages)));
    }
}

}  // namespace

std::vector<ScoredPair> make_negatives(const LinkedWordnet& wn, const GoldDataset& gold, Task task,
                                       std::uint64_t seed, const NormalizeOptions& normalize) {
    if (gold.empty()) throw DataError("cannot sample negatives for an empty gold dataset");
    auto positives = task_positives(gold, task);
    if (positives.empty()) {
        throw DataError(fmt::format("gold dataset has no positives for the {} task", to_string(task)));
    }
    std::map<LanguagePair, std::size_t> wanted;
    for (const auto& e : positives) ++wanted[e.languages()];

    std::mt19937_64 rng(seed);
    std::vector<ScoredPair> out;
    for (const auto& [languages, count] : wanted) {
        std::set<std::pair<std::string, std::string>> taken;
        for (const auto& e : gold) {
            if (e.languages() == languages) taken.emplace(e.source_word, e.target_word);
        }
        std::size_t remaining = count;
        if (task == Task::false_friend) {
            GoldDataset cognates;
            for (const auto& e : task_positives(gold, Task::cognate)) {
                if (e.languages() == languages) cognates.push_back(e);
            }
            shuffle(cognates, rng);
            for (std::size_t i = 0; i < cognates.size() && remaining > 0; ++i, --remaining) {
                out.push_back(to_scored_pair(cognates[i], normalize));
            }
        }
        sample_unlinked(wn, languages, remaining, taken, rng, normalize, out);
    }
    return out;
}

std::array<double, 2> ClassifierModel::probabilities(std::span<const double> x) const {
    const double* w1 = params.data();
    const double* b1 = w1 + hidden * input;
    const double* w2 = b1 + hidden;
    const double* b2 = w2 + 2 * hidden;
    std::array<double, 2> z = {b2[0], b2[1]};
    for (std::size_t h = 0; h < hidden; ++h) {
        double a = b1[h];
        for (std::size_t i = 0; i < input; ++i) a += w1[h * input + i] * x[i];
        if (a <= 0) continue;
        z[0] += w2[h] * a;
        z[1] += w2[hidden + h] * a;
    }
    double m = std::max(z[0], z[1]);
    double e0 = std::exp(z[0] - m);
    double e1 = std::exp(z[1] - m);
    return {e0 / (e0 + e1), e1 / (e0 + e1)};
}

bool ClassifierModel::predict(std::span<const double> x) const {
    auto p = probabilities(x);
    return p[1] > p[0];
}

ClassifierModel initialize_model(FeatureScheme scheme, std::size_t input, std::size_t hidden, std::uint64_t seed) {
    if (input == 0 || hidden == 0) throw UsageError("model dimensions must be positive");
    ClassifierModel model;
    model.scheme = scheme;
    model.input = input;
    model.hidden = hidden;
    model.seed = seed;
    model.params.assign(model.parameter_count(), 0.0);
    std::mt19937_64 rng(seed);
    const double r1 = std::sqrt(6.0 / static_cast<double>(input + hidden));
    const double r2 = std::sqrt(6.0 / static_cast<double>(hidden + 2));
    for (std::size_t k = 0; k < hidden * input; ++k) model.params[k] = uniform_real(rng, -r1, r1);
    const std::size_t w2 = hidden * input + hidden;
    for (std::size_t k = 0; k < 2 * hidden; ++k) model.params[w2 + k] = uniform_real(rng, -r2, r2);
    return model;
}

namespace {

void check_examples(const ClassifierModel& model, const std::vector<LabeledExample>& examples) {
    if (examples.empty()) throw DataError("no examples");
    for (const auto& ex : examples) {
        if (ex.features.size() != model.input) {
            throw DataError(fmt::format("example {} has {} features, model expects {}", ex.pair_id,
                                        ex.features.size(), model.input));
        }
        for (double v : ex.features) {
            if (!std::isfinite(v)) throw DataError(fmt::format("example {} has a non-finite feature", ex.pair_id));
        }
    }
}

// Loss and (optionally) gradient in one pass.
double loss_and_gradient(const ClassifierModel& model, const std::vector<LabeledExample>& examples,
                         std::vector<double>* grad) {
    const std::size_t D = model.input;
    const std::size_t H = model.hidden;
    const double* w1 = model.params.data();
    const double* b1 = w1 + H * D;
    const double* w2 = b1 + H;
    const double* b2 = w2 + 2 * H;
    if (grad) grad->assign(model.parameter_count(), 0.0);

    std::vector<double> pre(H);
    double total = 0;
    for (const auto& ex : examples) {
        const auto& x = ex.features;
        std::array<double, 2> z = {b2[0], b2[1]};
        for (std::size_t h = 0; h < H; ++h) {
            double a = b1[h];
            for (std::size_t i = 0; i < D; ++i) a += w1[h * D + i] * x[i];
            pre[h] = a;
            if (a > 0) {
                z[0] += w2[h] * a;
                z[1] += w2[H + h] * a;
            }
        }
        const double m = std::max(z[0], z[1]);
        const double lse = m + std::log(std::exp(z[0] - m) + std::exp(z[1] - m));
        const std::size_t y = ex.positive ? 1 : 0;
        total += lse - z[y];
        if (!grad) continue;

        std::array<double, 2> dz = {std::exp(z[0] - lse), std::exp(z[1] - lse)};
        dz[y] -= 1.0;
        double* g_w1 = grad->data();
        double* g_b1 = g_w1 + H * D;
        double* g_w2 = g_b1 + H;
        double* g_b2 = g_w2 + 2 * H;
        g_b2[0] += dz[0];
        g_b2[1] += dz[1];
        for (std::size_t h = 0; h < H; ++h) {
            if (pre[h] <= 0) continue;
            g_w2[h] += dz[0] * pre[h];
            g_w2[H + h] += dz[1] * pre[h];
            const double dh = w2[h] * dz[0] + w2[H + h] * dz[1];
            g_b1[h] += dh;
            for (std::size_t i = 0; i < D; ++i) g_w1[h * D + i] += dh * x[i];
        }
    }
    const double n = static_cast<double>(examples.size());
    if (grad) {
        for (double& g : *grad) g /= n;
    }
    return total / n;
}

}  // namespace

double cross_entropy(const ClassifierModel& model, const std::vector<LabeledExample>& examples) {
    check_examples(model, examples);
    return loss_and_gradient(model, examples, nullptr);
}

std::vector<double> loss_gradient(const ClassifierModel& model, const std::vector<LabeledExample>& examples) {
    check_examples(model, examples);
    std::vector<double> grad;
    loss_and_gradient(model, examples, &grad);
    return grad;
}

TrainResult train(const std::vector<LabeledExample>& examples, FeatureScheme scheme, const Hyperparameters& hyper) {
    if (examples.size() < 2) throw DataError("training needs at least two examples");
    bool any_pos = std::any_of(examples.begin(), examples.end(), [](const auto& e) { return e.positive; });
    bool any_neg = std::any_of(examples.begin(), examples.end(), [](const auto& e) { return !e.positive; });
    if (!any_pos || !any_neg) throw DataError("training set contains a single label");
    if (!(hyper.learning_rate > 0)) throw UsageError("learning rate must be positive");

    auto ordered = examples;
    std::sort(ordered.begin(), ordered.end(), [](const LabeledExample& a, const LabeledExample& b) {
        return std::tie(a.features, a.positive, a.pair_id) < std::tie(b.features, b.positive, b.pair_id);
    });

    TrainResult result;
    auto& model = result.model;
    model = initialize_model(scheme, feature_dimension(scheme), hyper.hidden, hyper.seed);
    model.epochs = hyper.epochs;
    model.learning_rate = hyper.learning_rate;
    check_examples(model, ordered);

    std::vector<double> grad;
    double loss = loss_and_gradient(model, ordered, &grad);
    result.loss_history.push_back(loss);
    double rate = hyper.learning_rate;
    ClassifierModel trial = model;
    for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
        for (int halving = 0; halving < 40; ++halving) {
            for (std::size_t k = 0; k < grad.size(); ++k) trial.params[k] = model.params[k] - rate * grad[k];
            double trial_loss = loss_and_gradient(trial, ordered, nullptr);
            if (trial_loss <= loss) {
                model.params.swap(trial.params);
                loss = loss_and_gradient(model, ordered, &grad);
                break;
            }
            rate /= 2;
        }
        result.loss_history.push_back(loss);
    }
    model.final_loss = loss;
    return result;
}

EvalReport report_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
    EvalReport r{tp, fp, fn, tn, 0, 0, 0};
    if (tp + fp > 0) r.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    if (tp + fn > 0) r.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    if (r.precision + r.recall > 0) r.f_score = 2 * r.precision * r.recall / (r.precision + r.recall);
    return r;
}

EvalReport evaluate(const ClassifierModel& model, const std::vector<LabeledExample>& examples) {
    if (examples.empty()) throw DataError("cannot evaluate on an empty test set");
    check_examples(model, examples);
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    const auto n = static_cast<long long>(examples.size());
#pragma omp parallel for reduction(+ : tp, fp, fn, tn) schedule(static)
    for (long long i = 0; i < n; ++i) {
        const auto& ex = examples[static_cast<std::size_t>(i)];
        bool predicted = model.predict(ex.features);
        if (predicted && ex.positive) ++tp;
        else if (predicted) ++fp;
        else if (ex.positive) ++fn;
        else ++tn;
    }
    return report_from_counts(tp, fp, fn, tn);
}

void write_model(std::ostream& out, const ClassifierModel& m) {
    const std::size_t D = m.input;
    const std::size_t H = m.hidden;
    auto row = [&](std::size_t offset, std::size_t len) {
        for (std::size_t k = 0; k < len; ++k) out << (k ? " " : "") << fmt::format("{}", m.params[offset + k]);
        out << '\n';
    };
    out << "cognate-ffnn 1\n";
    out << "scheme " << to_string(m.scheme) << '\n';
    out << "input " << D << "\nhidden " << H << "\noutput 2\n";
    out << "seed " << m.seed << "\nepochs " << m.epochs << '\n';
    out << "learning_rate " << fmt::format("{}", m.learning_rate) << '\n';
    out << "final_loss " << fmt::format("{}", m.final_loss) << '\n';
    out << "hidden_weights " << H << ' ' << D << '\n';
    for (std::size_t h = 0; h < H; ++h) row(h * D, D);
    out << "hidden_bias " << H << '\n';
    row(H * D, H);
    out << "output_weights 2 " << H << '\n';
    row(H * D + H, H);
    row(H * D + 2 * H, H);
    out << "output_bias 2\n";
    row(H * D + 3 * H, 2);
}

ClassifierModel read_model(std::istream& in, std::string_view source_name) {
    auto fail = [&](const std::string& what) -> void {
        throw DataError(fmt::format("{}: malformed model file: {}", source_name, what));
    };
    auto expect = [&](std::string_view keyword) {
        std::string word;
        if (!(in >> word) || word != keyword) fail(fmt::format("expected '{}'", keyword));
    };
    auto read_size = [&] {
        std::size_t v = 0;
        if (!(in >> v)) fail("expected an integer");
        return v;
    };
    auto read_double = [&] {
        std::string token;
        if (!(in >> token)) fail("expected a number");
        char* end = nullptr;
        double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size()) fail(fmt::format("bad number '{}'", token));
        return v;
    };

    ClassifierModel m;
    expect("cognate-ffnn");
    if (read_size() != 1) fail("unsupported format version");
    expect("scheme");
    std::string scheme;
    in >> scheme;
    try {
        m.scheme = parse_scheme(scheme);
    } catch (const UsageError& e) {
        fail(e.what());
    }
    expect("input");
    m.input = read_size();
    expect("hidden");
    m.hidden = read_size();
    expect("output");
    if (read_size() != 2) fail("output layer must have 2 units");
    expect("seed");
    m.seed = read_size();
    expect("epochs");
    m.epochs = read_size();
    expect("learning_rate");
    m.learning_rate = read_double();
    expect("final_loss");
    m.final_loss = read_double();
    if (m.input != feature_dimension(m.scheme) || m.hidden == 0) fail("dimensions do not match the scheme");
    m.params.resize(m.parameter_count());

    std::size_t offset = 0;
    auto block = [&](std::string_view keyword, std::size_t rows, std::size_t cols) {
        expect(keyword);
        if (rows == 1) {
            if (read_size() != cols) fail(fmt::format("bad size for {}", keyword));
        } else if (read_size() != rows || read_size() != cols) {
            fail(fmt::format("bad shape for {}", keyword));
        }
        for (std::size_t k = 0; k < rows * cols; ++k) m.params[offset++] = read_double();
    };
    block("hidden_weights", m.hidden, m.input);
    block("hidden_bias", 1, m.hidden);
    block("output_weights", 2, m.hidden);
    block("output_bias", 1, 2);
    return m;
}

void ResultTable::set(const std::string& approach, LanguagePair pair, double score) {
    if (std::find(columns.begin(), columns.end(), pair) == columns.end()) columns.push_back(pair);
    if (std::find(approaches.begin(), approaches.end(), approach) == approaches.end()) approaches.push_back(approach);
    scores[{approach, pair}] = score;
}

std::string render_results(const ResultTable& table, int decimals) {
    std::ostringstream out;
    csv::Row header{"Approaches"};
    for (const auto& pair : table.columns) header.push_back(display_name(pair));
    csv::write_row(out, header);
    for (const auto& approach : table.approaches) {
        csv::Row row{approach};
        for (const auto& pair : table.columns) {
            auto it = table.scores.find({approach, pair});
            row.push_back(it == table.scores.end() ? "" : format_fixed(it->second, decimals));
        }
        csv::write_row(out, row);
    }
    return out.str();
}

void merge_result_rows(ResultTable& table, std::istream& in, std::string_view source_name) {
    auto parsed = csv::read_table(in, source_name);
    if (parsed.header.empty() || parsed.header[0] != "Approaches") {
        throw DataError(fmt::format("{}: first column must be 'Approaches'", source_name));
    }
    std::vector<LanguagePair> pairs;
    for (std::size_t c = 1; c < parsed.header.size(); ++c) pairs.push_back(parse_language_pair(parsed.header[c]));
    for (std::size_t r = 0; r < parsed.rows.size(); ++r) {
        const auto& row = parsed.rows[r];
        for (std::size_t c = 1; c < row.size(); ++c) {
            auto cell = trim(row[c]);
            if (cell.empty()) continue;
            std::size_t used = 0;
            double v = -1;
            try {
                v = std::stod(std::string(cell), &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != cell.size() || !(v >= 0 && v <= 1)) {
                throw DataError(fmt::format("{}:{}: bad score '{}'", source_name, parsed.lines[r], cell));
            }
            table.set(row[0], pairs[c - 1], v);
        }
    }
}

}  // namespace cognate
