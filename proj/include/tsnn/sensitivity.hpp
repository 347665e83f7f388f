#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tsnn/sampling.hpp"
#include "tsnn/surrogate.hpp"

namespace tsnn {

/// Total sensitivity index per feature plus the estimator's internals.
/// tsi holds the raw estimates, which may be slightly negative at finite
/// sample size; display clamping happens in rank_features.
struct SensitivityReport {
    std::vector<double> tsi;
    double f0 = 0.0;             // estimate of E[Y]
    double total_variance = 0.0; // estimate of V(Y)
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> column_names;
    bool degenerate = false; // V(Y) below threshold, all tsi forced to 0

    bool operator==(const SensitivityReport&) const = default;
};

struct RankedFeature {
    std::size_t rank = 0;   // 1-based
    std::size_t column = 0; // original column index
    std::string name;
    double score = 0.0; // display score, clamped to >= 0
};

struct FeatureRanking {
    std::vector<RankedFeature> entries;
};

/// Monte Carlo estimate of every feature's total sensitivity index.
/// Costs exactly k + 2 batch evaluations of f (once on A, once on B,
/// once per column-swapped matrix). A response variance below 1e-12
/// short-circuits to an all-zero, degeneracy-flagged report.
SensitivityReport estimate_tsi(const ResponseFunction& f, const SamplingPlan& plan,
                               std::vector<std::string> column_names = {});

/// Features sorted by score descending, ties broken by ascending column
/// index; negative raw estimates display as 0.
FeatureRanking rank_features(const SensitivityReport& report);

/// Column indices of the top_k ranked features, in ranking order.
std::vector<std::size_t> select_top(const FeatureRanking& ranking, std::size_t top_k);

/// CSV with columns rank, TSI (4 decimals), feature.
void write_ranking_csv(const FeatureRanking& ranking, const std::filesystem::path& path);

/// Full raw report (unclamped tsi plus estimator metadata) as JSON.
void write_report_json(const SensitivityReport& report, const std::filesystem::path& path);

} // namespace tsnn
