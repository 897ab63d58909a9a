#include "cognate/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "cognate/annotation.hpp"
#include "cognate/csv.hpp"
#include "cognate/error.hpp"
#include "cognate/gold.hpp"
#include "cognate/manifest.hpp"
#include "cognate/random.hpp"
#include "cognate/service.hpp"
#include "cognate/text.hpp"

namespace cognate::pipeline {

namespace fs = std::filesystem;

int guarded(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kData;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}

namespace {

std::string task_stem(Task task) { return task == Task::cognate ? "cognates" : "falsefriends"; }

std::string under(const ProjectConfig& config, const std::string& relative) {
    return (fs::path(config.output_dir) / relative).string();
}

std::ofstream open_output(const std::string& path) {
    fs::create_directories(fs::path(path).parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(fmt::format("cannot write '{}'", path));
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    auto out = open_output(path);
    out << text;
}

std::vector<Language> project_languages(const ProjectConfig& config) {
    std::vector<Language> langs{config.source};
    for (auto t : config.targets) langs.push_back(t);
    return langs;
}

// Loads every configured wordnet; parse diagnostics are printed and make the load fail.
LinkedWordnet load_project_wordnet(const ProjectConfig& config, Io io, RunManifest* manifest) {
    std::vector<LoadReport> reports;
    auto wn = load_wordnet_dir(config.wordnet_dir, project_languages(config), &reports);
    std::size_t problems = 0;
    for (const auto& report : reports) {
        if (manifest) manifest->add_input(report.path);
        for (const auto& d : report.diagnostics) {
            io.err << report.path << ':' << d.line << ": " << d.message << '\n';
            ++problems;
        }
    }
    if (problems) throw DataError(fmt::format("{} malformed wordnet record(s)", problems));
    return wn;
}

struct PhoneticSource {
    std::optional<PhoneticTable> loaded;
    const PhoneticTable* get() const { return loaded ? &*loaded : &PhoneticTable::builtin(); }
};

PhoneticSource load_phonetic(const ProjectConfig& config, RunManifest* manifest) {
    PhoneticSource source;
    if (!config.phonetic_table.empty()) {
        source.loaded = PhoneticTable::read_file(config.phonetic_table);
        if (manifest) manifest->add_input(config.phonetic_table);
    }
    if (manifest) manifest->note("phonetic_table_version", source.get()->version());
    return source;
}

std::string finish(RunManifest& manifest, const ProjectConfig& config) {
    return manifest.write(config.output_dir);
}

}  // namespace

std::string candidate_path(const ProjectConfig& config, Task task, LanguagePair pair) {
    return under(config, fmt::format("candidates/{}.{}.csv", task_stem(task), to_string(pair)));
}
std::string worksheet_path(const ProjectConfig& config, Task task, LanguagePair pair) {
    return under(config, fmt::format("worksheets/{}.{}.csv", task_stem(task), to_string(pair)));
}
std::string agreement_path(const ProjectConfig& config, Task task) {
    return under(config, fmt::format("agreement/{}.csv", task_stem(task)));
}
std::string retained_gold_path(const ProjectConfig& config, Task task) {
    return under(config, fmt::format("gold/{}.retained.csv", task_stem(task)));
}
std::string d1_gold_path(const ProjectConfig& config) { return under(config, "gold/d1.csv"); }
std::string merged_gold_path(const ProjectConfig& config) { return under(config, "gold/merged.csv"); }
std::string report_path(const ProjectConfig& config, Task task) {
    return under(config, fmt::format("reports/{}.csv", task_stem(task)));
}
std::string model_path(const ProjectConfig& config, Task task, FeatureScheme scheme, LanguagePair pair) {
    return under(config, fmt::format("models/{}.{}.{}.model", task_stem(task), to_string(scheme), to_string(pair)));
}
std::string annotation_log_path(const ProjectConfig& config) { return under(config, "annotations/log.csv"); }

ExtractionOptions extraction_options(const ProjectConfig& config, const PhoneticTable* table) {
    ExtractionOptions options;
    options.threshold = config.threshold;
    options.shingle_size = config.shingle_n;
    options.include_multiword = config.include_multiword;
    options.normalize.strip_nukta = config.strip_nukta;
    options.phonetic_table = table;
    return options;
}

int ingest(const ProjectConfig& config, Io io) {
    config.validate();
    RunManifest manifest("ingest", config);
    auto wn = load_project_wordnet(config, io, &manifest);

    csv::write_row(io.out, {"language", "synsets", "lemmas", "multiword"});
    for (auto lang : project_languages(config)) {
        std::size_t lemmas = 0;
        std::size_t multiword = 0;
        for (const auto& [id, synset] : wn.table(lang)) {
            lemmas += synset.lemmas.size();
            for (const auto& l : synset.lemmas) multiword += is_multiword(l) ? 1 : 0;
        }
        csv::write_row(io.out, {std::string(to_string(lang)), std::to_string(wn.table(lang).size()),
                                std::to_string(lemmas), std::to_string(multiword)});
    }
    for (auto pair : config.language_pairs()) {
        for (auto id : wn.link_pairs(pair.source, pair.target).pos_mismatches) {
            io.err << fmt::format("warning: {}: synset {} has different parts of speech; excluded from pairing\n",
                                  to_string(pair), id.value);
        }
    }
    finish(manifest, config);
    return kOk;
}

int generate(const ProjectConfig& config, Task task, Io io) {
    config.validate();
    RunManifest manifest(task == Task::cognate ? "gen-cognates" : "gen-falsefriends", config);
    auto wn = load_project_wordnet(config, io, &manifest);
    auto phonetic = load_phonetic(config, &manifest);
    auto options = extraction_options(config, phonetic.get());

    PairCounts counts;
    for (auto pair : config.language_pairs()) {
        auto candidates = task == Task::cognate
                              ? generate_cognate_candidates(wn, pair.source, pair.target, options)
                              : generate_false_friend_candidates(wn, pair.source, pair.target, options);
        auto path = candidate_path(config, task, pair);
        {
            auto out = open_output(path);
            write_candidates(out, candidates);
        }
        manifest.add_output(path);
        counts.order.push_back(pair);
        counts.counts[pair] = candidates.size();
    }
    io.out << render_count_table(counts, "Potential Candidates");
    finish(manifest, config);
    return kOk;
}

int export_worksheets(const ProjectConfig& config, Task task, Io io) {
    config.validate();
    RunManifest manifest(fmt::format("export-worksheet.{}", task_stem(task)), config);
    auto wn = load_project_wordnet(config, io, &manifest);
    NormalizeOptions normalize{config.strip_nukta};
    for (auto pair : config.language_pairs()) {
        auto in_path = candidate_path(config, task, pair);
        auto candidates = read_candidates_file(in_path, normalize);
        manifest.add_input(in_path);
        auto path = worksheet_path(config, task, pair);
        {
            auto out = open_output(path);
            export_worksheet(out, candidates, wn);
        }
        manifest.add_output(path);
        io.out << fmt::format("{}: {} rows -> {}\n", to_string(pair), candidates.size(), path);
    }
    finish(manifest, config);
    return kOk;
}

namespace {

// Loads annotation CSVs and filled worksheets into one store. A worksheet's
// annotator is taken from `names[i]` when given, else from the file stem.
AnnotationStore load_annotation_files(const std::vector<std::string>& files,
                                      const std::vector<std::optional<std::string>>& names, RunManifest& manifest) {
    AnnotationStore store;
    const auto now = utc_timestamp_now();
    for (std::size_t i = 0; i < files.size(); ++i) {
        const auto& path = files[i];
        std::ifstream in(path, std::ios::binary);
        if (!in) throw DataError(fmt::format("cannot open annotation file '{}'", path));
        std::string first_line;
        std::getline(in, first_line);
        in.seekg(0);
        manifest.add_input(path);
        if (first_line.starts_with("pair_id,annotator,")) {
            for (const auto& r : read_annotations(in, path)) store.upsert(r);
        } else {
            auto name = i < names.size() && names[i] ? *names[i] : fs::path(path).stem().string();
            for (const auto& r : read_worksheet_labels(in, path, name, now)) store.upsert(r);
        }
    }
    return store;
}

}  // namespace

int agree(const ProjectConfig& config, Task task, const AgreeInputs& inputs, Io io) {
    config.validate();
    if (inputs.files.empty()) throw UsageError("agree needs at least one annotation file");
    RunManifest manifest(fmt::format("agree.{}", task_stem(task)), config);
    auto wn = load_project_wordnet(config, io, &manifest);
    NormalizeOptions normalize{config.strip_nukta};

    std::vector<std::optional<std::string>> names;
    if (inputs.files.size() == 2) names = {inputs.annotator_a, inputs.annotator_b};
    auto store = load_annotation_files(inputs.files, names, manifest);

    std::string a_name;
    std::string b_name;
    auto annotators = store.annotators();
    if (inputs.annotator_a && inputs.annotator_b) {
        a_name = *inputs.annotator_a;
        b_name = *inputs.annotator_b;
    } else if (annotators.size() == 2) {
        a_name = annotators[0];
        b_name = annotators[1];
    } else {
        throw UsageError(fmt::format("found {} annotators; name the two to compare", annotators.size()));
    }
    const auto all_a = store.labels(a_name);
    const auto all_b = store.labels(b_name);
    manifest.note("annotator_a", a_name);
    manifest.note("annotator_b", b_name);

    std::vector<AgreementReport> reports;
    std::map<LanguagePair, std::size_t> potential;
    GoldDataset retained_gold;
    for (auto pair : config.language_pairs()) {
        auto path = candidate_path(config, task, pair);
        auto candidates = read_candidates_file(path, normalize);
        manifest.add_input(path);
        std::set<std::string> ids;
        for (const auto& c : candidates) ids.insert(c.pair_id);
        auto restrict = [&](const LabelMap& labels) {
            LabelMap out;
            for (const auto& [id, label] : labels) {
                if (ids.contains(id)) out.emplace(id, label);
            }
            return out;
        };
        auto a = restrict(all_a);
        auto b = restrict(all_b);
        if (a.empty() && b.empty()) {
            io.err << fmt::format("note: {}: no annotations, skipped\n", to_string(pair));
            continue;
        }
        auto merged = merge_dual(a, b, pair, &ids);
        potential[pair] = candidates.size();
        reports.push_back(merged.report);
        auto gold = retained_to_gold(merged.retained, candidates, wn);
        retained_gold.insert(retained_gold.end(), gold.begin(), gold.end());
    }
    if (reports.empty()) throw DataError("no language pair has annotations from both annotators");
    canonicalize(retained_gold);

    auto report_file = agreement_path(config, task);
    {
        auto out = open_output(report_file);
        write_agreement(out, reports);
    }
    auto gold_file = retained_gold_path(config, task);
    {
        auto out = open_output(gold_file);
        write_gold(out, retained_gold);
    }
    manifest.add_output(report_file);
    manifest.add_output(gold_file);
    io.out << render_agreement_table(reports, potential,
                                     task == Task::cognate ? "Cognates (D2)" : "False Friends (D3)");
    finish(manifest, config);
    return kOk;
}

int import_d1(const ProjectConfig& config, const std::optional<std::string>& path, Io io) {
    config.validate();
    auto input = path ? *path : config.d1_file;
    if (input.empty()) throw UsageError("no dictionary file given (set d1_file or pass --input)");
    RunManifest manifest("import-d1", config);
    manifest.add_input(input);
    auto imported = import_d1_file(input, config.source);
    auto out_path = d1_gold_path(config);
    {
        auto out = open_output(out_path);
        write_gold(out, imported.dataset);
    }
    manifest.add_output(out_path);
    manifest.note("rows", std::to_string(imported.rows));
    manifest.note("partial_rows_excluded", std::to_string(imported.partial_rows_excluded));
    io.out << fmt::format("rows {}\naccepted {}\npartial_excluded {}\nwords {}\npairs {}\n", imported.rows,
                          imported.rows - imported.partial_rows_excluded, imported.partial_rows_excluded,
                          imported.words, imported.dataset.size());
    finish(manifest, config);
    return kOk;
}

int merge_gold(const ProjectConfig& config, const std::vector<std::string>& inputs,
               const std::optional<std::string>& output, Io io) {
    config.validate();
    std::vector<std::string> files = inputs;
    if (files.empty()) {
        for (const auto& candidate : {d1_gold_path(config), retained_gold_path(config, Task::cognate),
                                      retained_gold_path(config, Task::false_friend)}) {
            if (fs::exists(candidate)) files.push_back(candidate);
        }
    }
    if (files.empty()) throw UsageError("no gold files to merge");
    RunManifest manifest("merge-gold", config);
    GoldDataset merged;
    for (const auto& f : files) {
        merged = merge_gold(merged, read_gold_file(f));
        manifest.add_input(f);
    }
    auto out_path = output ? *output : merged_gold_path(config);
    {
        auto out = open_output(out_path);
        write_gold(out, merged);
    }
    manifest.add_output(out_path);
    std::map<Provenance, std::size_t> by_provenance;
    for (const auto& e : merged) ++by_provenance[e.provenance];
    io.out << fmt::format("entries {}\n", merged.size());
    for (const auto& [p, n] : by_provenance) io.out << fmt::format("{} {}\n", to_string(p), n);
    finish(manifest, config);
    return kOk;
}

int train_eval(const ProjectConfig& config, Task task, const TrainEvalInputs& inputs, Io io) {
    config.validate();
    auto schemes = inputs.schemes.empty() ? std::vector<FeatureScheme>(kAllSchemes.begin(), kAllSchemes.end())
                                          : inputs.schemes;
    RunManifest manifest(fmt::format("train-eval.{}", task_stem(task)), config);
    auto wn = load_project_wordnet(config, io, &manifest);
    auto phonetic = load_phonetic(config, &manifest);
    auto gold_file = inputs.gold ? *inputs.gold : merged_gold_path(config);
    auto gold = read_gold_file(gold_file);
    manifest.add_input(gold_file);

    NormalizeOptions normalize{config.strip_nukta};
    FeatureOptions features{config.shingle_n, phonetic.get()};
    SeedStreams streams(config.require_seed());
    manifest.note("task", std::string(to_string(task)));
    for (auto scheme : schemes) {
        auto names = feature_names(scheme);
        std::string joined;
        for (const auto& n : names) joined += (joined.empty() ? "" : ",") + n;
        manifest.note(fmt::format("features.{}", to_string(scheme)), fmt::format("{} ({})", names.size(), joined));
    }

    ResultTable table;
    table.columns = config.language_pairs();
    for (auto scheme : schemes) table.approaches.push_back(approach_name(scheme));

    bool failed = false;
    for (auto pair : config.language_pairs()) {
        auto tag = fmt::format("{}/{}", to_string(task), to_string(pair));
        try {
            GoldDataset pair_gold;
            for (const auto& e : gold) {
                if (e.languages() == pair) pair_gold.push_back(e);
            }
            auto positives = task_positives(pair_gold, task);
            if (positives.empty()) throw DataError("no positive examples");
            auto negatives = make_negatives(wn, pair_gold, task, streams.derive("negatives/" + tag), normalize);
            std::vector<std::pair<ScoredPair, bool>> labelled;
            for (const auto& e : positives) labelled.emplace_back(to_scored_pair(e, normalize), true);
            for (auto& n : negatives) labelled.emplace_back(std::move(n), false);
            manifest.note(fmt::format("examples.{}", to_string(pair)),
                          fmt::format("{} positive, {} negative", positives.size(), negatives.size()));

            for (auto scheme : schemes) {
                std::vector<LabeledExample> examples;
                examples.reserve(labelled.size());
                for (const auto& [p, label] : labelled) examples.push_back({featurize(p, scheme, features), label, p.pair_id});
                auto split = split_dataset(examples, config.split_ratio, streams.derive("split/" + tag));
                Hyperparameters hyper{config.hidden, config.epochs, config.learning_rate,
                                      streams.derive(fmt::format("init/{}/{}", tag, to_string(scheme)))};
                auto trained = train(split.train, scheme, hyper);
                auto report = evaluate(trained.model, split.validation);
                table.set(approach_name(scheme), pair, report.f_score);

                auto path = model_path(config, task, scheme, pair);
                {
                    auto out = open_output(path);
                    write_model(out, trained.model);
                }
                manifest.add_output(path);
                manifest.note(fmt::format("result.{}.{}", to_string(scheme), to_string(pair)),
                              fmt::format("train={} validation={} tp={} fp={} fn={} tn={} f={}", split.train.size(),
                                          split.validation.size(), report.true_positive, report.false_positive,
                                          report.false_negative, report.true_negative, report.f_score));
            }
        } catch (const DataError& e) {
            io.err << fmt::format("error: {}: {}\n", to_string(pair), e.what());
            failed = true;
        }
    }

    if (inputs.external_rows) {
        std::ifstream in(*inputs.external_rows, std::ios::binary);
        if (!in) throw DataError(fmt::format("cannot open '{}'", *inputs.external_rows));
        merge_result_rows(table, in, *inputs.external_rows);
        manifest.add_input(*inputs.external_rows);
    }

    auto rendered = render_results(table);
    auto out_path = report_path(config, task);
    write_text(out_path, rendered);
    manifest.add_output(out_path);
    io.out << rendered;
    finish(manifest, config);
    return failed ? kData : kOk;
}

int stats(const ProjectConfig& config, const std::optional<std::string>& gold_path, Io io) {
    config.validate();
    auto path = gold_path ? *gold_path : merged_gold_path(config);
    auto gold = read_gold_file(path);
    auto dist = pos_distribution(gold);
    io.out << kPosHeader << '\n' << render_pos_row(fs::path(path).stem().string(), dist.percent) << '\n';
    io.out << fmt::format("entries {} (noun {}, verb {}, adjective {}, adverb {})\n", dist.total(), dist.counts[0],
                          dist.counts[1], dist.counts[2], dist.counts[3]);

    for (auto task : {Task::cognate, Task::false_friend}) {
        PairCounts counts;
        for (auto pair : config.language_pairs()) {
            auto file = candidate_path(config, task, pair);
            if (!fs::exists(file)) continue;
            counts.order.push_back(pair);
            counts.counts[pair] = read_candidates_file(file).size();
        }
        if (counts.order.empty()) continue;
        io.out << '\n'
               << render_count_table(counts, task == Task::cognate ? "Potential Cognates" : "Potential False Friends");
    }
    return kOk;
}

int serve(const ProjectConfig& config, Io io) {
    config.validate();
    AnnotationService service(config, annotation_log_path(config));
    HttpFrontEnd front(service, config.static_dir);
    int port = front.bind(config.host, config.port);
    if (port < 0) throw DataError(fmt::format("cannot bind {}:{}", config.host, config.port));
    io.out << fmt::format("serving {} candidates on http://{}:{}/ (log {})\n", service.candidate_count(),
                          config.host, port, service.log_path());
    io.out.flush();
    front.listen();
    return kOk;
}

}  // namespace cognate::pipeline
