#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tsnn/dataset.hpp"
#include "tsnn/models.hpp"
#include "tsnn/sensitivity.hpp"

namespace tsnn {

/// Fully resolved run configuration. A single global seed derives every
/// stage seed (see stage_seed below), so one value reproduces the whole
/// run. Serializes to a flat key=value file; unspecified keys keep the
/// defaults shown here.
struct PipelineConfig {
    std::string input_path;  // empty means synthetic input
    SyntheticSpec synthetic; // used when input_path is empty; seed derived from the global seed
    std::string label_column = "Label";
    std::size_t top_k = 10;
    std::size_t tsi_samples = 4096;
    std::size_t neighbors = 5;
    double threshold = 0.5;
    TrainConfig train;
    SplitSpec split;
    std::string out_dir = "tsnn_out";
    std::uint64_t seed = 0;
};

/// Stage indices for sub-seed derivation from the global seed.
enum class Stage : std::uint64_t {
    synthetic = 0,
    split = 1,
    sampling = 2,
    mlp = 3,
    logistic = 4,
    svm = 5,
};

std::uint64_t stage_seed(const PipelineConfig& cfg, Stage stage);

PipelineConfig parse_config_text(const std::string& text);
PipelineConfig load_config_file(const std::filesystem::path& path);
std::string config_to_text(const PipelineConfig& cfg);
void write_config_file(const PipelineConfig& cfg, const std::filesystem::path& path);

struct SelectResult {
    SensitivityReport report;
    FeatureRanking ranking;
    std::vector<std::size_t> selected; // top_k column indices
    std::filesystem::path ranking_csv;
    std::filesystem::path report_json;
};

struct PipelineResult {
    SelectResult selection;
    EvalReport eval;
    std::filesystem::path eval_csv;
    std::filesystem::path eval_json;
    std::vector<std::filesystem::path> model_files;
};

/// Rank every feature by total sensitivity on the (normalized) input and
/// write the ranking table, the raw report, and the resolved config to
/// cfg.out_dir. A constant-response input degenerates to an all-zero
/// report with a warning rather than an error.
SelectResult run_select(const PipelineConfig& cfg);

/// Full run: ingest, stratified split, normalize on the training part,
/// rank features on it, train the deep classifier on the top_k columns
/// and both baselines on all columns, then evaluate everything on the
/// shared held-out part. Writes ranking, sensitivity, evaluation
/// reports (CSV and JSON), the three model files, and the resolved
/// config.
PipelineResult run_pipeline(const PipelineConfig& cfg);

/// Train one model ("mlp", "logistic" or "svm") on the given columns
/// (all columns when empty) and save it with its scaling.
std::filesystem::path run_train(const PipelineConfig& cfg, const std::string& model_type,
                                const std::vector<std::size_t>& columns);

/// Evaluate a saved model against a labeled CSV; returns the metrics row
/// and writes it under out_dir.
EvalRow run_evaluate(const std::filesystem::path& model_file, const std::filesystem::path& data_file,
                     const std::string& label_column, double threshold, const std::filesystem::path& out_dir);

void write_eval_csv(const EvalReport& report, const std::filesystem::path& path);
void write_eval_json(const EvalReport& report, const std::filesystem::path& path);

} // namespace tsnn
