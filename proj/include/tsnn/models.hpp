#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "tsnn/dataset.hpp"
#include "tsnn/matrix.hpp"

namespace tsnn {

struct TrainConfig {
    std::size_t epochs = 200;
    std::size_t batch_size = 500;
    double learning_rate = 0.001;
    double rms_decay = 0.9;
    double rms_epsilon = 1e-7;
    double l2_lambda = 0.00001;
    std::uint64_t seed = 0;

    bool operator==(const TrainConfig&) const = default;
};

/// Common prediction surface for the classifier and the two baselines.
/// predict returns per-row probabilities in [0,1]; callers apply the
/// classification threshold.
class Classifier {
public:
    virtual ~Classifier() = default;
    virtual std::vector<double> predict(const Matrix& rows) const = 0;
    virtual std::size_t input_width() const = 0;
    virtual std::string type() const = 0; // "mlp" | "logistic" | "svm"
};

/// Feed-forward network with five weight layers (input -> 64 -> 32 ->
/// 16 -> 8 -> 1), ReLU on hidden layers and a sigmoid output.
struct MlpModel final : public Classifier {
    std::vector<std::size_t> layer_sizes;
    std::vector<Matrix> weights; // weights[l] is layer_sizes[l+1] x layer_sizes[l]
    std::vector<std::vector<double>> biases;
    double l2_lambda = 0.00001;
    std::uint64_t seed = 0;

    std::vector<double> predict(const Matrix& rows) const override;
    std::size_t input_width() const override { return layer_sizes.empty() ? 0 : layer_sizes.front(); }
    std::string type() const override { return "mlp"; }
};

/// Logistic regression or linear SVM, depending on kind. Both report a
/// probability through a sigmoid of the decision value, so the 0.5
/// threshold coincides with the SVM's zero-margin boundary.
struct LinearModel final : public Classifier {
    enum class Kind { logistic, svm };
    Kind kind = Kind::logistic;
    std::vector<double> weights;
    double bias = 0.0;
    double l2_lambda = 0.0;
    std::uint64_t seed = 0;

    std::vector<double> predict(const Matrix& rows) const override;
    std::size_t input_width() const override { return weights.size(); }
    std::string type() const override { return kind == Kind::logistic ? "logistic" : "svm"; }
};

struct EvalRow {
    std::string model_name;
    std::size_t n_features_used = 0;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    bool precision_degenerate = false; // no positive predictions: 1.0 if no actual positives, else 0.0

    bool operator==(const EvalRow&) const = default;
};

struct EvalReport {
    std::vector<EvalRow> rows;
    bool operator==(const EvalReport&) const = default;
};

/// Train the deep classifier on the selected columns by mini-batch
/// RMSProp on mean binary cross-entropy plus (l2_lambda/2)*sum ||W||^2.
/// Deterministic for a given config; pass epoch_loss to record the
/// full-dataset regularized loss after every epoch.
MlpModel train_mlp(const FlowDataset& train, const std::vector<std::size_t>& selected,
                   const TrainConfig& cfg, std::vector<double>* epoch_loss = nullptr);

/// Logistic regression: RMSProp on the negative log-likelihood (plus L2
/// on weights). Coefficients start at zero, so zero epochs means an
/// all-0.5 predictor.
LinearModel train_logistic(const FlowDataset& train, const std::vector<std::size_t>& columns,
                           const TrainConfig& cfg, std::vector<double>* epoch_loss = nullptr);

/// Linear SVM: plain mini-batch sub-gradient descent on mean hinge loss
/// plus (l2_lambda/2)*||w||^2.
LinearModel train_linear_svm(const FlowDataset& train, const std::vector<std::size_t>& columns,
                             const TrainConfig& cfg, std::vector<double>* epoch_loss = nullptr);

/// Regularized mean training loss of a model on a batch (cross-entropy
/// for mlp/logistic, hinge for svm).
double model_loss(const MlpModel& model, const Matrix& x, const std::vector<int>& y);
double model_loss(const LinearModel& model, const Matrix& x, const std::vector<int>& y);

/// Max relative error between analytic gradients of the regularized
/// loss and central finite differences over every parameter.
double gradient_check(const MlpModel& model, const Matrix& x, const std::vector<int>& y, double step = 1e-5);
double gradient_check(const LinearModel& model, const Matrix& x, const std::vector<int>& y, double step = 1e-5);

/// Confusion-matrix metrics at a threshold; positive class is label 1,
/// predicted positive means probability >= threshold. Recall with no
/// actual positives is vacuously 1.
EvalRow metrics_from_predictions(const std::vector<double>& probabilities, const std::vector<int>& labels,
                                 double threshold, const std::string& model_name, std::size_t n_features_used);

EvalRow evaluate(const Classifier& model, const FlowDataset& test, const std::vector<std::size_t>& columns,
                 double threshold = 0.5, const std::string& model_name = "");

/// A trained model plus everything needed to run it on raw data: the
/// source columns it consumes, their names, and the training-set
/// scaling. Serializes to JSON with exact double round-trip, so loading
/// reproduces bit-identical predictions.
struct SavedModel {
    std::string type; // "mlp" | "logistic" | "svm"
    MlpModel mlp;
    LinearModel linear;
    std::vector<std::size_t> columns;
    std::vector<std::string> column_names;
    std::vector<ColumnScale> scaling;
    TrainConfig config;

    const Classifier& classifier() const {
        return type == "mlp" ? static_cast<const Classifier&>(mlp) : linear;
    }
};

void save_model(const SavedModel& model, const std::filesystem::path& path);
SavedModel load_model(const std::filesystem::path& path);

} // namespace tsnn
