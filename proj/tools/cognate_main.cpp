#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cognate/config.hpp"
#include "cognate/error.hpp"
#include "cognate/manifest.hpp"
#include "cognate/pipeline.hpp"

using namespace cognate;

namespace {

struct Overrides {
    std::optional<std::string> config_file;
    std::vector<std::pair<std::string, std::string>> pairs;
    std::vector<std::string> raw_sets;
};

void add_override(CLI::App& app, Overrides& o, const std::string& flag, const std::string& key,
                  const std::string& help) {
    app.add_option_function<std::string>(
        flag, [&o, key](const std::string& value) { o.pairs.emplace_back(key, value); }, help);
}

ProjectConfig resolve(const Overrides& o) {
    ProjectConfig config = o.config_file ? load_config(*o.config_file) : ProjectConfig{};
    for (const auto& [key, value] : o.pairs) config.set(key, value);
    for (const auto& item : o.raw_sets) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + item + "'");
        config.set(item.substr(0, eq), item.substr(eq + 1));
    }
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cognate and false-friend mining over linked Indian-language wordnets"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    app.fallthrough();

    Overrides o;
    app.add_option("--config", o.config_file, "Project config file (key = value)");
    app.add_option("--set", o.raw_sets, "Override any config key: key=value");
    add_override(app, o, "--wordnet-dir", "wordnet_dir", "Directory holding <code>.wordnet.tsv files");
    add_override(app, o, "--source", "source", "Pivot language code");
    add_override(app, o, "--targets", "targets", "Comma-separated target language codes");
    add_override(app, o, "--threshold", "threshold", "Similarity threshold for candidates");
    add_override(app, o, "--shingle-n", "shingle_n", "Character shingle size");
    add_override(app, o, "--seed", "seed", "Master random seed");
    add_override(app, o, "--output-dir", "output_dir", "Where outputs and manifests go");
    add_override(app, o, "--phonetic-table", "phonetic_table", "Phonetic feature table TSV");

    pipeline::Io io{std::cout, std::cerr};

    auto* ingest = app.add_subcommand("ingest", "Load and validate the configured wordnets");
    auto* gen_c = app.add_subcommand("gen-cognates", "Write cognate candidate files");
    auto* gen_f = app.add_subcommand("gen-falsefriends", "Write false-friend candidate files");

    auto* worksheet = app.add_subcommand("export-worksheet", "Write annotation worksheets from candidate files");
    std::string worksheet_task = "cognate";
    worksheet->add_option("--task", worksheet_task, "cognate or falsefriend")->capture_default_str();

    auto* agree = app.add_subcommand("agree", "Inter-annotator agreement and retained gold pairs");
    std::string agree_task = "cognate";
    pipeline::AgreeInputs agree_inputs;
    agree->add_option("--task", agree_task, "cognate or falsefriend")->capture_default_str();
    agree->add_option("files", agree_inputs.files, "Annotation CSVs or filled worksheets")->required();
    agree->add_option("--annotator-a", agree_inputs.annotator_a, "First annotator name");
    agree->add_option("--annotator-b", agree_inputs.annotator_b, "Second annotator name");

    auto* import = app.add_subcommand("import-d1", "Import the dictionary cognate sets");
    std::optional<std::string> d1_input;
    import->add_option("--input", d1_input, "Dictionary CSV (default: d1_file from config)");

    auto* merge = app.add_subcommand("merge-gold", "Union gold datasets");
    std::vector<std::string> merge_inputs;
    std::optional<std::string> merge_output;
    merge->add_option("inputs", merge_inputs, "Gold CSVs (default: every gold file under output_dir)");
    merge->add_option("-o,--output", merge_output, "Output path");

    auto* train = app.add_subcommand("train-eval", "Train and evaluate the classifier per language pair");
    std::string train_task = "cognate";
    std::vector<std::string> scheme_names;
    pipeline::TrainEvalInputs train_inputs;
    train->add_option("--task", train_task, "cognate or falsefriend")->capture_default_str();
    train->add_option("--scheme", scheme_names, "orthographic, phonetic, combo (default: all)");
    train->add_option("--gold", train_inputs.gold, "Gold CSV (default: merged gold)");
    train->add_option("--external-rows", train_inputs.external_rows, "Extra result rows to include in the report");

    auto* stats = app.add_subcommand("stats", "Dataset statistics");
    std::optional<std::string> stats_gold;
    stats->add_option("--gold", stats_gold, "Gold CSV (default: merged gold)");

    auto* serve = app.add_subcommand("serve", "Run the annotation service");
    add_override(*serve, o, "--host", "host", "Bind address");
    add_override(*serve, o, "--port", "port", "Port (0 picks a free one)");
    add_override(*serve, o, "--static-dir", "static_dir", "Static assets served at /");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : pipeline::kUsage;
    }

    return pipeline::guarded(
        [&]() -> int {
            auto config = resolve(o);
            if (ingest->parsed()) return pipeline::ingest(config, io);
            if (gen_c->parsed()) return pipeline::generate(config, Task::cognate, io);
            if (gen_f->parsed()) return pipeline::generate(config, Task::false_friend, io);
            if (worksheet->parsed()) return pipeline::export_worksheets(config, parse_task(worksheet_task), io);
            if (agree->parsed()) return pipeline::agree(config, parse_task(agree_task), agree_inputs, io);
            if (import->parsed()) return pipeline::import_d1(config, d1_input, io);
            if (merge->parsed()) return pipeline::merge_gold(config, merge_inputs, merge_output, io);
            if (train->parsed()) {
                for (const auto& name : scheme_names) train_inputs.schemes.push_back(parse_scheme(name));
                return pipeline::train_eval(config, parse_task(train_task), train_inputs, io);
            }
            if (stats->parsed()) return pipeline::stats(config, stats_gold, io);
            if (serve->parsed()) return pipeline::serve(config, io);
            throw UsageError("no command given");
        },
        std::cerr);
}
