#include "tsnn/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "tsnn/rng.hpp"

namespace tsnn {

namespace {

constexpr std::size_t kHiddenWidths[] = {64, 32, 16, 8};

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

/// Binary cross-entropy from the pre-sigmoid logit, in the overflow-safe
/// form max(z,0) - y*z + log(1 + exp(-|z|)).
double bce_from_logit(double z, int y) {
    return std::max(z, 0.0) - static_cast<double>(y) * z + std::log1p(std::exp(-std::abs(z)));
}

Matrix gather_columns(const FlowDataset& ds, const std::vector<std::size_t>& columns) {
    for (std::size_t c : columns)
        if (c >= ds.feature_count())
            throw std::out_of_range("column index " + std::to_string(c) + " out of range for " +
                                    std::to_string(ds.feature_count()) + " features");
    Matrix x(ds.rows(), columns.size());
    for (std::size_t r = 0; r < ds.rows(); ++r)
        for (std::size_t i = 0; i < columns.size(); ++i) x(r, i) = ds.features(r, columns[i]);
    return x;
}

void check_training_input(const FlowDataset& ds, const std::vector<std::size_t>& columns) {
    if (columns.empty()) throw std::runtime_error("training requires at least one selected column");
    if (ds.rows() == 0) throw std::runtime_error("training requires a nonempty dataset");
    for (double v : ds.features.data())
        if (!(v >= 0.0 && v <= 1.0))
            throw std::runtime_error("training data is not normalized (value " + std::to_string(v) +
                                     " outside [0,1])");
    bool has0 = false, has1 = false;
    for (int y : ds.labels) (y == 0 ? has0 : has1) = true;
    if (!has0 || !has1) throw std::runtime_error("training data contains a single class");
}

struct MlpGrads {
    std::vector<Matrix> w;
    std::vector<std::vector<double>> b;

    explicit MlpGrads(const MlpModel& model) {
        for (const auto& wl : model.weights) w.emplace_back(wl.rows(), wl.cols());
        for (const auto& bl : model.biases) b.emplace_back(bl.size(), 0.0);
    }
};

double mlp_forward(const MlpModel& model, const double* x, std::vector<std::vector<double>>& activations) {
    const std::size_t layers = model.weights.size();
    activations[0].assign(x, x + model.layer_sizes[0]);
    for (std::size_t l = 0; l < layers; ++l) {
        const Matrix& w = model.weights[l];
        const auto& prev = activations[l];
        auto& next = activations[l + 1];
        next.assign(w.rows(), 0.0);
        for (std::size_t i = 0; i < w.rows(); ++i) {
            double z = model.biases[l][i];
            const double* wrow = w.row(i).data();
            for (std::size_t j = 0; j < w.cols(); ++j) z += wrow[j] * prev[j];
            next[i] = l < layers - 1 ? std::max(z, 0.0) : z; // ReLU on hidden, raw logit out
        }
    }
    return activations[layers][0]; // output logit
}

/// Mean cross-entropy over the batch rows plus the L2 penalty; gradient
/// (including the penalty term) accumulated into grads.
double mlp_batch_gradients(const MlpModel& model, const Matrix& x, const std::vector<int>& y,
                           const std::size_t* rows, std::size_t count, MlpGrads& grads) {
    const std::size_t layers = model.weights.size();
    std::vector<std::vector<double>> activations(layers + 1);
    std::vector<std::vector<double>> deltas(layers + 1);

    for (auto& g : grads.w) std::fill(g.data().begin(), g.data().end(), 0.0);
    for (auto& g : grads.b) std::fill(g.begin(), g.end(), 0.0);

    double loss = 0.0;
    for (std::size_t s = 0; s < count; ++s) {
        const std::size_t r = rows[s];
        double logit = mlp_forward(model, x.row(r).data(), activations);
        loss += bce_from_logit(logit, y[r]);

        deltas[layers].assign(1, sigmoid(logit) - static_cast<double>(y[r]));
        for (std::size_t l = layers; l-- > 0;) {
            const Matrix& w = model.weights[l];
            const auto& delta = deltas[l + 1];
            const auto& prev = activations[l];
            for (std::size_t i = 0; i < w.rows(); ++i) {
                double* grow = grads.w[l].row(i).data();
                for (std::size_t j = 0; j < w.cols(); ++j) grow[j] += delta[i] * prev[j];
                grads.b[l][i] += delta[i];
            }
            if (l > 0) {
                auto& below = deltas[l];
                below.assign(w.cols(), 0.0);
                for (std::size_t i = 0; i < w.rows(); ++i) {
                    const double* wrow = w.row(i).data();
                    for (std::size_t j = 0; j < w.cols(); ++j) below[j] += wrow[j] * delta[i];
                }
                // ReLU is active exactly where the forward pass kept the value
                for (std::size_t j = 0; j < w.cols(); ++j)
                    if (activations[l][j] <= 0.0) below[j] = 0.0;
            }
        }
    }

    const double inv = 1.0 / static_cast<double>(count);
    loss *= inv;
    for (auto& g : grads.w)
        for (double& v : g.data()) v *= inv;
    for (auto& g : grads.b)
        for (double& v : g) v *= inv;

    double penalty = 0.0;
    for (std::size_t l = 0; l < layers; ++l) {
        const auto& wdata = model.weights[l].data();
        auto& gdata = grads.w[l].data();
        for (std::size_t i = 0; i < wdata.size(); ++i) {
            penalty += wdata[i] * wdata[i];
            gdata[i] += model.l2_lambda * wdata[i];
        }
    }
    return loss + 0.5 * model.l2_lambda * penalty;
}

void rmsprop_step(std::vector<double>& params, const std::vector<double>& grads, std::vector<double>& cache,
                  const TrainConfig& cfg) {
    for (std::size_t i = 0; i < params.size(); ++i) {
        cache[i] = cfg.rms_decay * cache[i] + (1.0 - cfg.rms_decay) * grads[i] * grads[i];
        params[i] -= cfg.learning_rate * grads[i] / (std::sqrt(cache[i]) + cfg.rms_epsilon);
    }
}

/// Decision values w.x + b for each row.
std::vector<double> linear_decision(const LinearModel& model, const Matrix& rows) {
    if (rows.cols() != model.weights.size())
        throw std::runtime_error("predict: input has " + std::to_string(rows.cols()) +
                                 " columns, model expects " + std::to_string(model.weights.size()));
    std::vector<double> out(rows.rows());
    for (std::size_t r = 0; r < rows.rows(); ++r) {
        double z = model.bias;
        const double* row = rows.row(r).data();
        for (std::size_t c = 0; c < rows.cols(); ++c) z += model.weights[c] * row[c];
        out[r] = z;
    }
    return out;
}

/// Mean loss over the batch plus the L2 penalty; gradients for weights
/// and bias written into grad_w / grad_b.
double linear_batch_gradients(const LinearModel& model, const Matrix& x, const std::vector<int>& y,
                              const std::size_t* rows, std::size_t count, std::vector<double>& grad_w,
                              double& grad_b) {
    grad_w.assign(model.weights.size(), 0.0);
    grad_b = 0.0;
    double loss = 0.0;
    for (std::size_t s = 0; s < count; ++s) {
        const std::size_t r = rows[s];
        const double* row = x.row(r).data();
        double z = model.bias;
        for (std::size_t c = 0; c < x.cols(); ++c) z += model.weights[c] * row[c];

        double dz = 0.0;
        if (model.kind == LinearModel::Kind::logistic) {
            loss += bce_from_logit(z, y[r]);
            dz = sigmoid(z) - static_cast<double>(y[r]);
        } else {
            double sign = y[r] == 1 ? 1.0 : -1.0;
            double margin = sign * z;
            if (margin < 1.0) {
                loss += 1.0 - margin;
                dz = -sign;
            }
        }
        if (dz != 0.0) {
            for (std::size_t c = 0; c < x.cols(); ++c) grad_w[c] += dz * row[c];
            grad_b += dz;
        }
    }
    const double inv = 1.0 / static_cast<double>(count);
    loss *= inv;
    grad_b *= inv;
    double penalty = 0.0;
    for (std::size_t c = 0; c < grad_w.size(); ++c) {
        grad_w[c] = grad_w[c] * inv + model.l2_lambda * model.weights[c];
        penalty += model.weights[c] * model.weights[c];
    }
    return loss + 0.5 * model.l2_lambda * penalty;
}

std::vector<std::size_t> iota_rows(std::size_t n) {
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = i;
    return rows;
}

LinearModel train_linear(const FlowDataset& train, const std::vector<std::size_t>& columns,
                         const TrainConfig& cfg, LinearModel::Kind kind, std::vector<double>* epoch_loss) {
    check_training_input(train, columns);
    if (cfg.batch_size == 0) throw std::runtime_error("batch_size must be positive");
    Matrix x = gather_columns(train, columns);

    LinearModel model;
    model.kind = kind;
    model.weights.assign(columns.size(), 0.0);
    model.bias = 0.0;
    model.l2_lambda = cfg.l2_lambda;
    model.seed = cfg.seed;

    const std::size_t n = train.rows();
    const std::size_t batch = std::min(cfg.batch_size, n);
    std::vector<std::size_t> order = iota_rows(n);
    Rng shuffle_rng(derive_seed(cfg.seed, 1));

    std::vector<double> grad_w(columns.size(), 0.0), cache_w(columns.size(), 0.0);
    double grad_b = 0.0, cache_b = 0.0;
    if (epoch_loss) epoch_loss->clear();

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        for (std::size_t start = 0; start < n; start += batch) {
            std::size_t count = std::min(batch, n - start);
            double loss = linear_batch_gradients(model, x, train.labels, order.data() + start, count,
                                                 grad_w, grad_b);
            if (!std::isfinite(loss))
                throw std::runtime_error("non-finite training loss at epoch " + std::to_string(epoch) +
                                         ", batch " + std::to_string(start / batch));
            if (kind == LinearModel::Kind::logistic) {
                rmsprop_step(model.weights, grad_w, cache_w, cfg);
                cache_b = cfg.rms_decay * cache_b + (1.0 - cfg.rms_decay) * grad_b * grad_b;
                model.bias -= cfg.learning_rate * grad_b / (std::sqrt(cache_b) + cfg.rms_epsilon);
            } else {
                for (std::size_t c = 0; c < model.weights.size(); ++c)
                    model.weights[c] -= cfg.learning_rate * grad_w[c];
                model.bias -= cfg.learning_rate * grad_b;
            }
        }
        if (epoch_loss) {
            double loss = model_loss(model, x, train.labels);
            if (!std::isfinite(loss))
                throw std::runtime_error("non-finite training loss at epoch " + std::to_string(epoch));
            epoch_loss->push_back(loss);
        }
    }
    return model;
}

} // namespace

std::vector<double> MlpModel::predict(const Matrix& rows) const {
    if (rows.cols() != input_width())
        throw std::runtime_error("predict: input has " + std::to_string(rows.cols()) +
                                 " columns, model expects " + std::to_string(input_width()));
    std::vector<std::vector<double>> activations(weights.size() + 1);
    std::vector<double> out(rows.rows());
    for (std::size_t r = 0; r < rows.rows(); ++r)
        out[r] = sigmoid(mlp_forward(*this, rows.row(r).data(), activations));
    return out;
}

std::vector<double> LinearModel::predict(const Matrix& rows) const {
    std::vector<double> out = linear_decision(*this, rows);
    for (double& z : out) z = sigmoid(z);
    return out;
}

MlpModel train_mlp(const FlowDataset& train, const std::vector<std::size_t>& selected,
                   const TrainConfig& cfg, std::vector<double>* epoch_loss) {
    check_training_input(train, selected);
    if (cfg.batch_size == 0) throw std::runtime_error("batch_size must be positive");
    Matrix x = gather_columns(train, selected);

    MlpModel model;
    model.layer_sizes.push_back(selected.size());
    for (std::size_t width : kHiddenWidths) model.layer_sizes.push_back(width);
    model.layer_sizes.push_back(1);
    model.l2_lambda = cfg.l2_lambda;
    model.seed = cfg.seed;

    // Symmetric uniform init with variance 1/fan_in, biases at zero.
    Rng init_rng(derive_seed(cfg.seed, 0));
    for (std::size_t l = 0; l + 1 < model.layer_sizes.size(); ++l) {
        std::size_t fan_in = model.layer_sizes[l], fan_out = model.layer_sizes[l + 1];
        double limit = std::sqrt(3.0 / static_cast<double>(fan_in));
        Matrix w(fan_out, fan_in);
        for (double& v : w.data()) v = init_rng.uniform(-limit, limit);
        model.weights.push_back(std::move(w));
        model.biases.emplace_back(fan_out, 0.0);
    }

    const std::size_t n = train.rows();
    const std::size_t batch = std::min(cfg.batch_size, n);
    std::vector<std::size_t> order = iota_rows(n);
    Rng shuffle_rng(derive_seed(cfg.seed, 1));

    MlpGrads grads(model);
    MlpGrads cache(model);
    if (epoch_loss) epoch_loss->clear();

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        for (std::size_t start = 0; start < n; start += batch) {
            std::size_t count = std::min(batch, n - start);
            double loss = mlp_batch_gradients(model, x, train.labels, order.data() + start, count, grads);
            if (!std::isfinite(loss))
                throw std::runtime_error("non-finite training loss at epoch " + std::to_string(epoch) +
                                         ", batch " + std::to_string(start / batch));
            for (std::size_t l = 0; l < model.weights.size(); ++l) {
                rmsprop_step(model.weights[l].data(), grads.w[l].data(), cache.w[l].data(), cfg);
                rmsprop_step(model.biases[l], grads.b[l], cache.b[l], cfg);
            }
        }
        if (epoch_loss) {
            double loss = model_loss(model, x, train.labels);
            if (!std::isfinite(loss))
                throw std::runtime_error("non-finite training loss at epoch " + std::to_string(epoch));
            epoch_loss->push_back(loss);
        }
    }
    return model;
}

LinearModel train_logistic(const FlowDataset& train, const std::vector<std::size_t>& columns,
                           const TrainConfig& cfg, std::vector<double>* epoch_loss) {
    return train_linear(train, columns, cfg, LinearModel::Kind::logistic, epoch_loss);
}

LinearModel train_linear_svm(const FlowDataset& train, const std::vector<std::size_t>& columns,
                             const TrainConfig& cfg, std::vector<double>* epoch_loss) {
    return train_linear(train, columns, cfg, LinearModel::Kind::svm, epoch_loss);
}

double model_loss(const MlpModel& model, const Matrix& x, const std::vector<int>& y) {
    std::vector<std::vector<double>> activations(model.weights.size() + 1);
    double loss = 0.0;
    for (std::size_t r = 0; r < x.rows(); ++r)
        loss += bce_from_logit(mlp_forward(model, x.row(r).data(), activations), y[r]);
    loss /= static_cast<double>(x.rows());
    double penalty = 0.0;
    for (const auto& w : model.weights)
        for (double v : w.data()) penalty += v * v;
    return loss + 0.5 * model.l2_lambda * penalty;
}

double model_loss(const LinearModel& model, const Matrix& x, const std::vector<int>& y) {
    std::vector<double> z = linear_decision(model, x);
    double loss = 0.0;
    for (std::size_t r = 0; r < z.size(); ++r) {
        if (model.kind == LinearModel::Kind::logistic) {
            loss += bce_from_logit(z[r], y[r]);
        } else {
            double margin = (y[r] == 1 ? 1.0 : -1.0) * z[r];
            loss += std::max(0.0, 1.0 - margin);
        }
    }
    loss /= static_cast<double>(z.size());
    double penalty = 0.0;
    for (double w : model.weights) penalty += w * w;
    return loss + 0.5 * model.l2_lambda * penalty;
}

namespace {

/// Relative error with a floor so that near-zero gradient pairs compare
/// absolutely instead of dividing noise by noise.
double relative_error(double analytic, double numeric) {
    double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-4});
    return std::abs(analytic - numeric) / denom;
}

template <typename Model, typename EvalLoss>
double check_params(Model& scratch, std::vector<double*> params, const std::vector<double>& analytic,
                    EvalLoss&& loss_at, double step) {
    double worst = 0.0;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double saved = *params[i];
        *params[i] = saved + step;
        double up = loss_at(scratch);
        *params[i] = saved - step;
        double down = loss_at(scratch);
        *params[i] = saved;
        worst = std::max(worst, relative_error(analytic[i], (up - down) / (2.0 * step)));
    }
    return worst;
}

} // namespace

double gradient_check(const MlpModel& model, const Matrix& x, const std::vector<int>& y, double step) {
    MlpGrads grads(model);
    std::vector<std::size_t> rows = iota_rows(x.rows());
    mlp_batch_gradients(model, x, y, rows.data(), rows.size(), grads);

    MlpModel scratch = model;
    std::vector<double*> params;
    std::vector<double> analytic;
    for (std::size_t l = 0; l < scratch.weights.size(); ++l) {
        for (std::size_t i = 0; i < scratch.weights[l].data().size(); ++i) {
            params.push_back(&scratch.weights[l].data()[i]);
            analytic.push_back(grads.w[l].data()[i]);
        }
        for (std::size_t i = 0; i < scratch.biases[l].size(); ++i) {
            params.push_back(&scratch.biases[l][i]);
            analytic.push_back(grads.b[l][i]);
        }
    }
    return check_params(scratch, params, analytic,
                        [&](const MlpModel& m) { return model_loss(m, x, y); }, step);
}

double gradient_check(const LinearModel& model, const Matrix& x, const std::vector<int>& y, double step) {
    std::vector<double> grad_w;
    double grad_b = 0.0;
    std::vector<std::size_t> rows = iota_rows(x.rows());
    linear_batch_gradients(model, x, y, rows.data(), rows.size(), grad_w, grad_b);

    LinearModel scratch = model;
    std::vector<double*> params;
    std::vector<double> analytic;
    for (std::size_t i = 0; i < scratch.weights.size(); ++i) {
        params.push_back(&scratch.weights[i]);
        analytic.push_back(grad_w[i]);
    }
    params.push_back(&scratch.bias);
    analytic.push_back(grad_b);
    return check_params(scratch, params, analytic,
                        [&](const LinearModel& m) { return model_loss(m, x, y); }, step);
}

EvalRow metrics_from_predictions(const std::vector<double>& probabilities, const std::vector<int>& labels,
                                 double threshold, const std::string& model_name, std::size_t n_features_used) {
    if (probabilities.size() != labels.size())
        throw std::runtime_error("metrics: " + std::to_string(probabilities.size()) + " predictions for " +
                                 std::to_string(labels.size()) + " labels");
    if (labels.empty()) throw std::runtime_error("metrics: empty test set");

    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        bool predicted = probabilities[i] >= threshold;
        bool actual = labels[i] == 1;
        if (predicted && actual) ++tp;
        else if (predicted) ++fp;
        else if (actual) ++fn;
        else ++tn;
    }

    EvalRow row;
    row.model_name = model_name;
    row.n_features_used = n_features_used;
    row.accuracy = static_cast<double>(tp + tn) / static_cast<double>(labels.size());
    if (tp + fp > 0) {
        row.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    } else {
        row.precision = (tp + fn == 0) ? 1.0 : 0.0;
        row.precision_degenerate = true;
    }
    row.recall = (tp + fn > 0) ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 1.0;
    return row;
}

EvalRow evaluate(const Classifier& model, const FlowDataset& test, const std::vector<std::size_t>& columns,
                 double threshold, const std::string& model_name) {
    if (test.rows() == 0) throw std::runtime_error("evaluate: empty test set");
    Matrix x = gather_columns(test, columns);
    std::vector<double> probs = model.predict(x);
    return metrics_from_predictions(probs, test.labels, threshold,
                                    model_name.empty() ? model.type() : model_name, columns.size());
}

namespace {

nlohmann::json scaling_to_json(const std::vector<ColumnScale>& scaling) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : scaling) j.push_back({s.min, s.max});
    return j;
}

std::vector<ColumnScale> scaling_from_json(const nlohmann::json& j) {
    std::vector<ColumnScale> out;
    for (const auto& pair : j) out.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
    return out;
}

nlohmann::json config_to_json(const TrainConfig& cfg) {
    return {{"epochs", cfg.epochs},       {"batch_size", cfg.batch_size},
            {"learning_rate", cfg.learning_rate}, {"rms_decay", cfg.rms_decay},
            {"rms_epsilon", cfg.rms_epsilon},     {"l2_lambda", cfg.l2_lambda},
            {"seed", cfg.seed}};
}

TrainConfig config_from_json(const nlohmann::json& j) {
    TrainConfig cfg;
    cfg.epochs = j.at("epochs").get<std::size_t>();
    cfg.batch_size = j.at("batch_size").get<std::size_t>();
    cfg.learning_rate = j.at("learning_rate").get<double>();
    cfg.rms_decay = j.at("rms_decay").get<double>();
    cfg.rms_epsilon = j.at("rms_epsilon").get<double>();
    cfg.l2_lambda = j.at("l2_lambda").get<double>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    return cfg;
}

} // namespace

void save_model(const SavedModel& model, const std::filesystem::path& path) {
    nlohmann::json j{
        {"format", "tsnn-model"},
        {"version", 1},
        {"type", model.type},
        {"columns", model.columns},
        {"column_names", model.column_names},
        {"scaling", scaling_to_json(model.scaling)},
        {"config", config_to_json(model.config)},
    };
    if (model.type == "mlp") {
        nlohmann::json layers = nlohmann::json::array();
        for (std::size_t l = 0; l < model.mlp.weights.size(); ++l)
            layers.push_back({{"weights", model.mlp.weights[l].data()}, {"biases", model.mlp.biases[l]}});
        j["mlp"] = {{"layer_sizes", model.mlp.layer_sizes},
                    {"layers", layers},
                    {"l2_lambda", model.mlp.l2_lambda},
                    {"seed", model.mlp.seed}};
    } else {
        j["linear"] = {{"kind", model.linear.type()},
                       {"weights", model.linear.weights},
                       {"bias", model.linear.bias},
                       {"l2_lambda", model.linear.l2_lambda},
                       {"seed", model.linear.seed}};
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_model: cannot open '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

SavedModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_model: cannot open '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("load_model: '" + path.string() + "' is not a valid model file: " + e.what());
    }
    if (j.value("format", "") != "tsnn-model")
        throw std::runtime_error("load_model: '" + path.string() + "' is not a tsnn model file");

    SavedModel model;
    model.type = j.at("type").get<std::string>();
    model.columns = j.at("columns").get<std::vector<std::size_t>>();
    model.column_names = j.at("column_names").get<std::vector<std::string>>();
    model.scaling = scaling_from_json(j.at("scaling"));
    model.config = config_from_json(j.at("config"));

    if (model.type == "mlp") {
        const auto& m = j.at("mlp");
        model.mlp.layer_sizes = m.at("layer_sizes").get<std::vector<std::size_t>>();
        model.mlp.l2_lambda = m.at("l2_lambda").get<double>();
        model.mlp.seed = m.at("seed").get<std::uint64_t>();
        const auto& layers = m.at("layers");
        for (std::size_t l = 0; l + 1 < model.mlp.layer_sizes.size(); ++l) {
            Matrix w(model.mlp.layer_sizes[l + 1], model.mlp.layer_sizes[l]);
            w.data() = layers.at(l).at("weights").get<std::vector<double>>();
            if (w.data().size() != model.mlp.layer_sizes[l + 1] * model.mlp.layer_sizes[l])
                throw std::runtime_error("load_model: layer " + std::to_string(l) + " size mismatch");
            model.mlp.weights.push_back(std::move(w));
            model.mlp.biases.push_back(layers.at(l).at("biases").get<std::vector<double>>());
        }
    } else if (model.type == "logistic" || model.type == "svm") {
        const auto& m = j.at("linear");
        model.linear.kind = model.type == "svm" ? LinearModel::Kind::svm : LinearModel::Kind::logistic;
        model.linear.weights = m.at("weights").get<std::vector<double>>();
        model.linear.bias = m.at("bias").get<double>();
        model.linear.l2_lambda = m.at("l2_lambda").get<double>();
        model.linear.seed = m.at("seed").get<std::uint64_t>();
    } else {
        throw std::runtime_error("load_model: unknown model type '" + model.type + "'");
    }
    return model;
}

} // namespace tsnn
