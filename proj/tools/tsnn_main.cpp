#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsnn/dataset.hpp"
#include "tsnn/pipeline.hpp"

namespace {

// Shared flag set for select/train/pipeline. Flags override config-file
// values, which override the built-in defaults.
struct CommonFlags {
    std::string config_file;
    std::string input;
    std::string label_column;
    std::string out_dir;
    std::size_t top_k = 0;
    std::size_t tsi_samples = 0;
    std::size_t neighbors = 0;
    std::size_t epochs = 0;
    std::size_t batch_size = 0;
    double learning_rate = 0.0;
    double train_fraction = 0.0;
    std::uint64_t seed = 0;
    std::size_t synth_rows = 0;
    std::size_t synth_features = 0;
    std::string synth_informative;
    double synth_effect_size = 0.0;
    double synth_class_ratio = 0.0;
};

void add_common_options(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_file, "flat key = value config file");
    cmd->add_option("--input", flags.input, "input CSV (omit to use a synthetic dataset)");
    cmd->add_option("--label-column", flags.label_column, "label column name (default Label)");
    cmd->add_option("--out", flags.out_dir, "output directory");
    cmd->add_option("--top-k", flags.top_k, "number of features to select");
    cmd->add_option("--tsi-samples", flags.tsi_samples, "Monte Carlo sample count per matrix");
    cmd->add_option("--neighbors", flags.neighbors, "surrogate neighbor count");
    cmd->add_option("--epochs", flags.epochs, "training epochs");
    cmd->add_option("--batch-size", flags.batch_size, "mini-batch size");
    cmd->add_option("--learning-rate", flags.learning_rate, "optimizer learning rate");
    cmd->add_option("--train-fraction", flags.train_fraction, "train split fraction");
    cmd->add_option("--seed", flags.seed, "global seed (drives every stage)");
    cmd->add_option("--synth-rows", flags.synth_rows, "synthetic dataset rows");
    cmd->add_option("--synth-features", flags.synth_features, "synthetic dataset features");
    cmd->add_option("--synth-informative", flags.synth_informative, "comma-separated informative columns");
    cmd->add_option("--synth-effect-size", flags.synth_effect_size, "synthetic class shift");
    cmd->add_option("--synth-class-ratio", flags.synth_class_ratio, "benign:attack ratio");
}

std::vector<std::size_t> parse_indices(const std::string& text) {
    std::vector<std::size_t> out;
    std::string item;
    for (char c : text + ",") {
        if (c == ',') {
            if (!item.empty()) out.push_back(std::stoull(item));
            item.clear();
        } else {
            item += c;
        }
    }
    return out;
}

tsnn::PipelineConfig resolve_config(const CLI::App* cmd, const CommonFlags& flags) {
    tsnn::PipelineConfig cfg;
    if (cmd->count("--config")) cfg = tsnn::load_config_file(flags.config_file);
    if (cmd->count("--input")) cfg.input_path = flags.input;
    if (cmd->count("--label-column")) cfg.label_column = flags.label_column;
    if (cmd->count("--out")) cfg.out_dir = flags.out_dir;
    if (cmd->count("--top-k")) cfg.top_k = flags.top_k;
    if (cmd->count("--tsi-samples")) cfg.tsi_samples = flags.tsi_samples;
    if (cmd->count("--neighbors")) cfg.neighbors = flags.neighbors;
    if (cmd->count("--epochs")) cfg.train.epochs = flags.epochs;
    if (cmd->count("--batch-size")) cfg.train.batch_size = flags.batch_size;
    if (cmd->count("--learning-rate")) cfg.train.learning_rate = flags.learning_rate;
    if (cmd->count("--train-fraction")) cfg.split.train_fraction = flags.train_fraction;
    if (cmd->count("--seed")) cfg.seed = flags.seed;
    if (cmd->count("--synth-rows")) cfg.synthetic.n_rows = flags.synth_rows;
    if (cmd->count("--synth-features")) cfg.synthetic.n_features = flags.synth_features;
    if (cmd->count("--synth-informative")) cfg.synthetic.informative_indices = parse_indices(flags.synth_informative);
    if (cmd->count("--synth-effect-size")) cfg.synthetic.effect_size = flags.synth_effect_size;
    if (cmd->count("--synth-class-ratio")) cfg.synthetic.class_ratio = flags.synth_class_ratio;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feature ranking by total sensitivity index and DDoS flow classification"};
    app.require_subcommand(1);

    CommonFlags select_flags, pipeline_flags, train_flags;
    CLI::App* select_cmd = app.add_subcommand("select", "rank features by total sensitivity index");
    add_common_options(select_cmd, select_flags);
    CLI::App* pipeline_cmd =
        app.add_subcommand("pipeline", "select features, train TSNN plus LR/SVM baselines, evaluate");
    add_common_options(pipeline_cmd, pipeline_flags);

    CLI::App* train_cmd = app.add_subcommand("train", "train a single model and save it");
    add_common_options(train_cmd, train_flags);
    std::string train_model = "mlp";
    std::string train_columns;
    train_cmd->add_option("--model", train_model, "mlp, logistic or svm");
    train_cmd->add_option("--columns", train_columns, "comma-separated training columns (default all)");

    CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "evaluate a saved model on a labeled CSV");
    std::string eval_model_file, eval_input, eval_label = "Label", eval_out = "tsnn_out";
    double eval_threshold = 0.5;
    evaluate_cmd->add_option("--model-file", eval_model_file, "saved model JSON")->required();
    evaluate_cmd->add_option("--input", eval_input, "labeled CSV to score")->required();
    evaluate_cmd->add_option("--label-column", eval_label, "label column name");
    evaluate_cmd->add_option("--threshold", eval_threshold, "classification threshold");
    evaluate_cmd->add_option("--out", eval_out, "output directory");

    CLI::App* synth_cmd = app.add_subcommand("synth", "generate a synthetic labeled dataset");
    tsnn::SyntheticSpec synth_spec;
    synth_spec.n_rows = 600;
    synth_spec.n_features = 10;
    std::string synth_informative = "0,3";
    std::string synth_out = "synthetic.csv";
    synth_cmd->add_option("--rows", synth_spec.n_rows, "row count");
    synth_cmd->add_option("--features", synth_spec.n_features, "feature count");
    synth_cmd->add_option("--informative", synth_informative, "comma-separated informative columns");
    synth_cmd->add_option("--effect-size", synth_spec.effect_size, "class shift of informative columns");
    synth_cmd->add_option("--class-ratio", synth_spec.class_ratio, "benign:attack ratio");
    synth_cmd->add_option("--seed", synth_spec.seed, "generator seed");
    synth_cmd->add_option("--out", synth_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (select_cmd->parsed()) {
            tsnn::PipelineConfig cfg = resolve_config(select_cmd, select_flags);
            tsnn::SelectResult result = tsnn::run_select(cfg);
            std::printf("wrote %s\n", result.ranking_csv.string().c_str());
            for (const auto& entry : result.ranking.entries) {
                if (entry.rank > cfg.top_k) break;
                std::printf("%2zu  %.4f  %s\n", entry.rank, entry.score, entry.name.c_str());
            }
        } else if (pipeline_cmd->parsed()) {
            tsnn::PipelineConfig cfg = resolve_config(pipeline_cmd, pipeline_flags);
            tsnn::PipelineResult result = tsnn::run_pipeline(cfg);
            std::printf("wrote %s\n", result.eval_csv.string().c_str());
            for (const auto& row : result.eval.rows)
                std::printf("%-8s %3zu features  accuracy %.4f  precision %.4f  recall %.4f\n",
                            row.model_name.c_str(), row.n_features_used, row.accuracy, row.precision,
                            row.recall);
        } else if (train_cmd->parsed()) {
            tsnn::PipelineConfig cfg = resolve_config(train_cmd, train_flags);
            auto file = tsnn::run_train(cfg, train_model, parse_indices(train_columns));
            std::printf("wrote %s\n", file.string().c_str());
        } else if (evaluate_cmd->parsed()) {
            tsnn::EvalRow row =
                tsnn::run_evaluate(eval_model_file, eval_input, eval_label, eval_threshold, eval_out);
            std::printf("%-8s %3zu features  accuracy %.4f  precision %.4f  recall %.4f\n",
                        row.model_name.c_str(), row.n_features_used, row.accuracy, row.precision, row.recall);
        } else if (synth_cmd->parsed()) {
            synth_spec.informative_indices = parse_indices(synth_informative);
            tsnn::FlowDataset ds = tsnn::generate_synthetic(synth_spec);
            tsnn::write_csv(ds, synth_out);
            std::printf("wrote %s (%zu rows, %zu features)\n", synth_out.c_str(), ds.rows(),
                        ds.feature_count());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
