#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "tsnn/matrix.hpp"

namespace tsnn {

/// Per-column min/max recorded when normalization is fitted.
struct ColumnScale {
    double min = 0.0;
    double max = 0.0;
    bool operator==(const ColumnScale&) const = default;
};

/// A labeled flow table: one row per network flow, one column per
/// continuous feature, labels 0 = benign / 1 = attack. Immutable by
/// convention: operations return new datasets.
struct FlowDataset {
    Matrix features;
    std::vector<int> labels;
    std::vector<std::string> column_names;
    std::vector<ColumnScale> scaling; // empty until fit_normalize

    std::size_t rows() const { return labels.size(); }
    std::size_t feature_count() const { return features.cols(); }
    bool normalized() const { return !scaling.empty(); }

    bool operator==(const FlowDataset&) const = default;
};

struct SplitSpec {
    double train_fraction = 0.8;
    bool stratified = true;
    std::uint64_t seed = 0;
};

/// Recipe for a synthetic dataset with known informative columns.
/// Benign rows draw every column uniform on [0,1]; attack rows draw the
/// informative columns as min(u + effect_size, 1) so their mass shifts
/// toward 1 while staying inside the unit interval.
struct SyntheticSpec {
    std::size_t n_rows = 0;
    std::size_t n_features = 0;
    std::vector<std::size_t> informative_indices;
    double class_ratio = 5.0; // benign : attack
    double effect_size = 0.5;
    std::uint64_t seed = 0;
};

/// Load a CSV with a header row. Every column except the label must
/// parse as a finite real. Labels matching "benign" case-insensitively
/// map to 0, everything else to 1.
FlowDataset load_csv(const std::filesystem::path& path, const std::string& label_column = "Label");

/// Write a dataset in the same CSV dialect (labels as BENIGN / DDoS,
/// features with 9 significant digits).
void write_csv(const FlowDataset& ds, const std::filesystem::path& path);

/// Min-max scale each column to [0,1] and record the scaling. Constant
/// columns map to all zeros.
FlowDataset fit_normalize(const FlowDataset& ds);

/// Apply previously fitted scaling to held-out data, clipping into [0,1].
FlowDataset apply_normalize(const FlowDataset& ds, const std::vector<ColumnScale>& scaling);

/// Seeded train/test split preserving the class ratio within one sample
/// per class. Row order within each part follows the input order.
std::pair<FlowDataset, FlowDataset> stratified_split(const FlowDataset& ds, const SplitSpec& spec);

FlowDataset generate_synthetic(const SyntheticSpec& spec);

/// Dataset restricted to the given columns (names and scaling follow).
FlowDataset select_columns(const FlowDataset& ds, const std::vector<std::size_t>& columns);

/// Plain k-fold partition of row indices: returns (train, validation)
/// index pairs, fold sizes differing by at most one.
std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
kfold_indices(std::size_t n_rows, std::size_t folds, std::uint64_t seed);

} // namespace tsnn
