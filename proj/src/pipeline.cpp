#include "tsnn/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tsnn/rng.hpp"
#include "tsnn/sampling.hpp"
#include "tsnn/surrogate.hpp"

namespace tsnn {

namespace {

template <typename F>
auto stage_run(const char* name, F&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("[") + name + "] " + e.what());
    }
}

std::string format_number(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v); // shortest round-trip form
    return std::string(buf, ptr);
}

std::string format_rate(double v) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string join_indices(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc{} || ptr != item.data() + item.size())
            throw std::runtime_error("bad index list entry '" + item + "'");
        out.push_back(value);
    }
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw std::runtime_error("config: bad value '" + value + "' for key '" + key + "'");
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw std::runtime_error("config: bad value '" + value + "' for key '" + key + "' (want true/false)");
}

std::vector<std::size_t> all_columns(std::size_t k) {
    std::vector<std::size_t> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = i;
    return out;
}

FlowDataset ingest(const PipelineConfig& cfg) {
    if (!cfg.input_path.empty()) return load_csv(cfg.input_path, cfg.label_column);
    if (cfg.synthetic.n_rows == 0)
        throw std::runtime_error("no input: set an input path or a synthetic spec");
    SyntheticSpec spec = cfg.synthetic;
    spec.seed = stage_seed(cfg, Stage::synthetic);
    return generate_synthetic(spec);
}

FeatureRanking ranking_head(const FeatureRanking& ranking, std::size_t top_k) {
    FeatureRanking head;
    head.entries.assign(ranking.entries.begin(), ranking.entries.begin() + static_cast<std::ptrdiff_t>(top_k));
    return head;
}

SavedModel make_bundle(std::string type, const FlowDataset& train, const std::vector<std::size_t>& columns,
                       const TrainConfig& cfg) {
    SavedModel bundle;
    bundle.type = std::move(type);
    bundle.columns = columns;
    bundle.config = cfg;
    for (std::size_t c : columns) {
        bundle.column_names.push_back(train.column_names[c]);
        bundle.scaling.push_back(train.scaling[c]);
    }
    return bundle;
}

} // namespace

std::uint64_t stage_seed(const PipelineConfig& cfg, Stage stage) {
    return derive_seed(cfg.seed, static_cast<std::uint64_t>(stage));
}

PipelineConfig parse_config_text(const std::string& text) {
    PipelineConfig cfg;
    std::stringstream ss(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(line_no) + " is not key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));

        if (key == "input") cfg.input_path = value;
        else if (key == "label_column") cfg.label_column = value;
        else if (key == "top_k") cfg.top_k = parse_number<std::size_t>(key, value);
        else if (key == "tsi_samples") cfg.tsi_samples = parse_number<std::size_t>(key, value);
        else if (key == "neighbors") cfg.neighbors = parse_number<std::size_t>(key, value);
        else if (key == "threshold") cfg.threshold = parse_number<double>(key, value);
        else if (key == "epochs") cfg.train.epochs = parse_number<std::size_t>(key, value);
        else if (key == "batch_size") cfg.train.batch_size = parse_number<std::size_t>(key, value);
        else if (key == "learning_rate") cfg.train.learning_rate = parse_number<double>(key, value);
        else if (key == "rms_decay") cfg.train.rms_decay = parse_number<double>(key, value);
        else if (key == "rms_epsilon") cfg.train.rms_epsilon = parse_number<double>(key, value);
        else if (key == "l2_lambda") cfg.train.l2_lambda = parse_number<double>(key, value);
        else if (key == "train_fraction") cfg.split.train_fraction = parse_number<double>(key, value);
        else if (key == "stratified") cfg.split.stratified = parse_bool(key, value);
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
        else if (key == "synth_rows") cfg.synthetic.n_rows = parse_number<std::size_t>(key, value);
        else if (key == "synth_features") cfg.synthetic.n_features = parse_number<std::size_t>(key, value);
        else if (key == "synth_informative") cfg.synthetic.informative_indices = parse_index_list(value);
        else if (key == "synth_class_ratio") cfg.synthetic.class_ratio = parse_number<double>(key, value);
        else if (key == "synth_effect_size") cfg.synthetic.effect_size = parse_number<double>(key, value);
        else throw std::runtime_error("config: unknown key '" + key + "'");
    }
    return cfg;
}

PipelineConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::string config_to_text(const PipelineConfig& cfg) {
    std::string out;
    out += "input = " + cfg.input_path + "\n";
    out += "label_column = " + cfg.label_column + "\n";
    out += "top_k = " + std::to_string(cfg.top_k) + "\n";
    out += "tsi_samples = " + std::to_string(cfg.tsi_samples) + "\n";
    out += "neighbors = " + std::to_string(cfg.neighbors) + "\n";
    out += "threshold = " + format_number(cfg.threshold) + "\n";
    out += "epochs = " + std::to_string(cfg.train.epochs) + "\n";
    out += "batch_size = " + std::to_string(cfg.train.batch_size) + "\n";
    out += "learning_rate = " + format_number(cfg.train.learning_rate) + "\n";
    out += "rms_decay = " + format_number(cfg.train.rms_decay) + "\n";
    out += "rms_epsilon = " + format_number(cfg.train.rms_epsilon) + "\n";
    out += "l2_lambda = " + format_number(cfg.train.l2_lambda) + "\n";
    out += "train_fraction = " + format_number(cfg.split.train_fraction) + "\n";
    out += std::string("stratified = ") + (cfg.split.stratified ? "true" : "false") + "\n";
    out += "out_dir = " + cfg.out_dir + "\n";
    out += "seed = " + std::to_string(cfg.seed) + "\n";
    out += "synth_rows = " + std::to_string(cfg.synthetic.n_rows) + "\n";
    out += "synth_features = " + std::to_string(cfg.synthetic.n_features) + "\n";
    out += "synth_informative = " + join_indices(cfg.synthetic.informative_indices) + "\n";
    out += "synth_class_ratio = " + format_number(cfg.synthetic.class_ratio) + "\n";
    out += "synth_effect_size = " + format_number(cfg.synthetic.effect_size) + "\n";
    return out;
}

void write_config_file(const PipelineConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("config: cannot open '" + path.string() + "' for writing");
    out << config_to_text(cfg);
}

void write_eval_csv(const EvalReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_eval_csv: cannot open '" + path.string() + "'");
    out << "algorithm,n_features,accuracy,precision,recall\n";
    for (const auto& row : report.rows)
        out << row.model_name << ',' << row.n_features_used << ',' << format_rate(row.accuracy) << ','
            << format_rate(row.precision) << ',' << format_rate(row.recall) << '\n';
}

void write_eval_json(const EvalReport& report, const std::filesystem::path& path) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows)
        rows.push_back({{"algorithm", row.model_name},
                        {"n_features", row.n_features_used},
                        {"accuracy", row.accuracy},
                        {"precision", row.precision},
                        {"recall", row.recall},
                        {"precision_degenerate", row.precision_degenerate}});
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_eval_json: cannot open '" + path.string() + "'");
    out << nlohmann::json{{"rows", rows}}.dump(2) << '\n';
}

SelectResult run_select(const PipelineConfig& cfg) {
    FlowDataset ds = stage_run("ingest", [&] { return ingest(cfg); });
    FlowDataset normalized = stage_run("normalize", [&] { return fit_normalize(ds); });

    SelectResult result;
    stage_run("select", [&] {
        KnnSurrogate surrogate = KnnSurrogate::fit(normalized, cfg.neighbors);
        SamplingPlan plan = build_plan(cfg.tsi_samples, normalized.feature_count(), stage_seed(cfg, Stage::sampling));
        result.report = estimate_tsi(surrogate, plan, normalized.column_names);
        result.ranking = rank_features(result.report);
        result.selected = select_top(result.ranking, cfg.top_k);
        return 0;
    });
    if (result.report.degenerate)
        std::fprintf(stderr, "warning: response variance is zero, all sensitivity indices are 0\n");

    stage_run("report", [&] {
        std::filesystem::create_directories(cfg.out_dir);
        result.ranking_csv = std::filesystem::path(cfg.out_dir) / "ranking.csv";
        result.report_json = std::filesystem::path(cfg.out_dir) / "sensitivity.json";
        write_ranking_csv(ranking_head(result.ranking, cfg.top_k), result.ranking_csv);
        write_report_json(result.report, result.report_json);
        write_config_file(cfg, std::filesystem::path(cfg.out_dir) / "config.txt");
        return 0;
    });
    return result;
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    FlowDataset ds = stage_run("ingest", [&] { return ingest(cfg); });

    SplitSpec split = cfg.split;
    split.seed = stage_seed(cfg, Stage::split);
    auto [train_raw, test_raw] = stage_run("split", [&] { return stratified_split(ds, split); });

    FlowDataset train = stage_run("normalize", [&] { return fit_normalize(train_raw); });
    FlowDataset test = stage_run("normalize", [&] { return apply_normalize(test_raw, train.scaling); });

    PipelineResult result;
    stage_run("select", [&] {
        KnnSurrogate surrogate = KnnSurrogate::fit(train, cfg.neighbors);
        SamplingPlan plan = build_plan(cfg.tsi_samples, train.feature_count(), stage_seed(cfg, Stage::sampling));
        result.selection.report = estimate_tsi(surrogate, plan, train.column_names);
        result.selection.ranking = rank_features(result.selection.report);
        result.selection.selected = select_top(result.selection.ranking, cfg.top_k);
        return 0;
    });
    if (result.selection.report.degenerate)
        std::fprintf(stderr, "warning: response variance is zero, all sensitivity indices are 0\n");

    const std::vector<std::size_t> full = all_columns(train.feature_count());

    TrainConfig mlp_cfg = cfg.train;
    mlp_cfg.seed = stage_seed(cfg, Stage::mlp);
    MlpModel mlp = stage_run("train", [&] { return train_mlp(train, result.selection.selected, mlp_cfg); });

    TrainConfig lr_cfg = cfg.train;
    lr_cfg.seed = stage_seed(cfg, Stage::logistic);
    LinearModel logistic = stage_run("train", [&] { return train_logistic(train, full, lr_cfg); });

    TrainConfig svm_cfg = cfg.train;
    svm_cfg.seed = stage_seed(cfg, Stage::svm);
    LinearModel svm = stage_run("train", [&] { return train_linear_svm(train, full, svm_cfg); });

    stage_run("evaluate", [&] {
        result.eval.rows.push_back(evaluate(mlp, test, result.selection.selected, cfg.threshold, "TSNN"));
        result.eval.rows.push_back(evaluate(svm, test, full, cfg.threshold, "SVM"));
        result.eval.rows.push_back(evaluate(logistic, test, full, cfg.threshold, "LR"));
        return 0;
    });

    stage_run("report", [&] {
        std::filesystem::create_directories(cfg.out_dir);
        const std::filesystem::path dir(cfg.out_dir);
        result.selection.ranking_csv = dir / "ranking.csv";
        result.selection.report_json = dir / "sensitivity.json";
        result.eval_csv = dir / "evaluation.csv";
        result.eval_json = dir / "evaluation.json";
        write_ranking_csv(ranking_head(result.selection.ranking, cfg.top_k), result.selection.ranking_csv);
        write_report_json(result.selection.report, result.selection.report_json);
        write_eval_csv(result.eval, result.eval_csv);
        write_eval_json(result.eval, result.eval_json);
        write_config_file(cfg, dir / "config.txt");

        SavedModel tsnn_bundle = make_bundle("mlp", train, result.selection.selected, mlp_cfg);
        tsnn_bundle.mlp = std::move(mlp);
        SavedModel lr_bundle = make_bundle("logistic", train, full, lr_cfg);
        lr_bundle.linear = std::move(logistic);
        SavedModel svm_bundle = make_bundle("svm", train, full, svm_cfg);
        svm_bundle.linear = std::move(svm);
        save_model(tsnn_bundle, dir / "tsnn.model.json");
        save_model(lr_bundle, dir / "logistic.model.json");
        save_model(svm_bundle, dir / "svm.model.json");
        result.model_files = {dir / "tsnn.model.json", dir / "logistic.model.json", dir / "svm.model.json"};
        return 0;
    });
    return result;
}

std::filesystem::path run_train(const PipelineConfig& cfg, const std::string& model_type,
                                const std::vector<std::size_t>& columns) {
    FlowDataset ds = stage_run("ingest", [&] { return ingest(cfg); });
    FlowDataset train = stage_run("normalize", [&] { return fit_normalize(ds); });
    std::vector<std::size_t> cols = columns.empty() ? all_columns(train.feature_count()) : columns;

    SavedModel bundle;
    TrainConfig train_cfg = cfg.train;
    stage_run("train", [&] {
        if (model_type == "mlp") {
            train_cfg.seed = stage_seed(cfg, Stage::mlp);
            bundle = make_bundle("mlp", train, cols, train_cfg);
            bundle.mlp = train_mlp(train, cols, train_cfg);
        } else if (model_type == "logistic") {
            train_cfg.seed = stage_seed(cfg, Stage::logistic);
            bundle = make_bundle("logistic", train, cols, train_cfg);
            bundle.linear = train_logistic(train, cols, train_cfg);
        } else if (model_type == "svm") {
            train_cfg.seed = stage_seed(cfg, Stage::svm);
            bundle = make_bundle("svm", train, cols, train_cfg);
            bundle.linear = train_linear_svm(train, cols, train_cfg);
        } else {
            throw std::runtime_error("unknown model type '" + model_type + "' (want mlp, logistic or svm)");
        }
        return 0;
    });

    return stage_run("report", [&] {
        std::filesystem::create_directories(cfg.out_dir);
        std::filesystem::path file = std::filesystem::path(cfg.out_dir) / (model_type + ".model.json");
        save_model(bundle, file);
        write_config_file(cfg, std::filesystem::path(cfg.out_dir) / "config.txt");
        return file;
    });
}

EvalRow run_evaluate(const std::filesystem::path& model_file, const std::filesystem::path& data_file,
                     const std::string& label_column, double threshold, const std::filesystem::path& out_dir) {
    SavedModel bundle = stage_run("load", [&] { return load_model(model_file); });
    FlowDataset ds = stage_run("ingest", [&] { return load_csv(data_file, label_column); });

    // Resolve the model's input columns by name in the incoming dataset.
    std::vector<std::size_t> columns;
    stage_run("evaluate", [&] {
        for (const auto& name : bundle.column_names) {
            auto it = std::find(ds.column_names.begin(), ds.column_names.end(), name);
            if (it == ds.column_names.end())
                throw std::runtime_error("model expects " + std::to_string(bundle.column_names.size()) +
                                         " features including '" + name + "', dataset has " +
                                         std::to_string(ds.feature_count()) + " columns without it");
            columns.push_back(static_cast<std::size_t>(it - ds.column_names.begin()));
        }
        return 0;
    });

    EvalRow row = stage_run("evaluate", [&] {
        FlowDataset scaled = apply_normalize(select_columns(ds, columns), bundle.scaling);
        return evaluate(bundle.classifier(), scaled, all_columns(columns.size()), threshold, bundle.type);
    });

    stage_run("report", [&] {
        std::filesystem::create_directories(out_dir);
        EvalReport report;
        report.rows.push_back(row);
        write_eval_csv(report, out_dir / "metrics.csv");
        write_eval_json(report, out_dir / "metrics.json");
        return 0;
    });
    return row;
}

} // namespace tsnn
