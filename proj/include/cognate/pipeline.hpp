#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cognate/classify.hpp"
#include "cognate/config.hpp"
#include "cognate/extraction.hpp"

namespace cognate::pipeline {

// Stable process exit codes.
enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

struct Io {
    std::ostream& out;
    std::ostream& err;
};

// Runs a command body, mapping UsageError -> 1, DataError -> 2, anything else -> 3.
int guarded(const std::function<int()>& body, std::ostream& err);

// Project file layout under output_dir.
std::string candidate_path(const ProjectConfig& config, Task task, LanguagePair pair);
std::string worksheet_path(const ProjectConfig& config, Task task, LanguagePair pair);
std::string agreement_path(const ProjectConfig& config, Task task);
std::string retained_gold_path(const ProjectConfig& config, Task task);
std::string d1_gold_path(const ProjectConfig& config);
std::string merged_gold_path(const ProjectConfig& config);
std::string report_path(const ProjectConfig& config, Task task);
std::string model_path(const ProjectConfig& config, Task task, FeatureScheme scheme, LanguagePair pair);
std::string annotation_log_path(const ProjectConfig& config);

ExtractionOptions extraction_options(const ProjectConfig& config, const PhoneticTable* table);

int ingest(const ProjectConfig& config, Io io);
int generate(const ProjectConfig& config, Task task, Io io);
int export_worksheets(const ProjectConfig& config, Task task, Io io);

struct AgreeInputs {
    std::vector<std::string> files;  // annotation CSVs and/or filled worksheets
    std::optional<std::string> annotator_a;
    std::optional<std::string> annotator_b;
};
int agree(const ProjectConfig& config, Task task, const AgreeInputs& inputs, Io io);

int import_d1(const ProjectConfig& config, const std::optional<std::string>& path, Io io);
int merge_gold(const ProjectConfig& config, const std::vector<std::string>& inputs,
               const std::optional<std::string>& output, Io io);

struct TrainEvalInputs {
    std::vector<FeatureScheme> schemes;
    std::optional<std::string> gold;
    std::optional<std::string> external_rows;
};
int train_eval(const ProjectConfig& config, Task task, const TrainEvalInputs& inputs, Io io);

int stats(const ProjectConfig& config, const std::optional<std::string>& gold, Io io);

// Runs the annotation service until the process is stopped.
int serve(const ProjectConfig& config, Io io);

}  // namespace cognate::pipeline
