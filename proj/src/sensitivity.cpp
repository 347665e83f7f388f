#include "tsnn/sensitivity.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace tsnn {

SensitivityReport estimate_tsi(const ResponseFunction& f, const SamplingPlan& plan,
                               std::vector<std::string> column_names) {
    if (f.dimension() != plan.k)
        throw std::runtime_error("estimate_tsi: function expects " + std::to_string(f.dimension()) +
                                 " inputs, plan has k=" + std::to_string(plan.k));
    if (!column_names.empty() && column_names.size() != plan.k)
        throw std::runtime_error("estimate_tsi: got " + std::to_string(column_names.size()) +
                                 " column names for k=" + std::to_string(plan.k));

    SensitivityReport report;
    report.n = plan.n;
    report.seed = plan.seed;
    if (column_names.empty())
        for (std::size_t i = 0; i < plan.k; ++i) column_names.push_back("f" + std::to_string(i));
    report.column_names = std::move(column_names);

    const auto n = static_cast<double>(plan.n);
    std::vector<double> y_a = f.evaluate_batch(plan.a);
    std::vector<double> y_b = f.evaluate_batch(plan.b);

    // Mean and population variance of the pooled response sample.
    double sum = 0.0, sum_sq = 0.0;
    for (double y : y_a) { sum += y; sum_sq += y * y; }
    for (double y : y_b) { sum += y; sum_sq += y * y; }
    report.f0 = sum / (2.0 * n);
    report.total_variance = std::max(0.0, sum_sq / (2.0 * n) - report.f0 * report.f0);

    if (report.total_variance < 1e-12) {
        report.degenerate = true;
        report.tsi.assign(plan.k, 0.0);
        return report;
    }

    // Per feature: the cross moment of y(A) with y(A_B^(i)) estimates the
    // variance explained by everything except feature i; one minus its
    // share of the total variance is the feature's total effect.
    report.tsi.reserve(plan.k);
    for (std::size_t i = 0; i < plan.k; ++i) {
        std::vector<double> y_swapped = f.evaluate_batch(swap_column(plan, i));
        double cross = 0.0;
        for (std::size_t j = 0; j < plan.n; ++j) cross += y_a[j] * y_swapped[j];
        double variance_without_i = cross / n - report.f0 * report.f0;
        report.tsi.push_back(1.0 - variance_without_i / report.total_variance);
    }
    return report;
}

FeatureRanking rank_features(const SensitivityReport& report) {
    if (report.tsi.empty()) throw std::runtime_error("rank_features: empty report");

    FeatureRanking ranking;
    ranking.entries.reserve(report.tsi.size());
    for (std::size_t c = 0; c < report.tsi.size(); ++c)
        ranking.entries.push_back({0, c, report.column_names[c], std::max(0.0, report.tsi[c])});

    std::sort(ranking.entries.begin(), ranking.entries.end(), [](const RankedFeature& x, const RankedFeature& y) {
        if (x.score != y.score) return x.score > y.score;
        return x.column < y.column;
    });
    for (std::size_t i = 0; i < ranking.entries.size(); ++i) ranking.entries[i].rank = i + 1;
    return ranking;
}

std::vector<std::size_t> select_top(const FeatureRanking& ranking, std::size_t top_k) {
    if (top_k == 0 || top_k > ranking.entries.size())
        throw std::runtime_error("select_top: top_k " + std::to_string(top_k) +
                                 " out of range for " + std::to_string(ranking.entries.size()) + " features");

    std::vector<std::size_t> columns;
    columns.reserve(top_k);
    for (std::size_t i = 0; i < top_k; ++i) columns.push_back(ranking.entries[i].column);
    return columns;
}

void write_ranking_csv(const FeatureRanking& ranking, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_ranking_csv: cannot open '" + path.string() + "'");
    out << "rank,TSI,feature\n";
    for (const auto& entry : ranking.entries) {
        char score[32];
        std::snprintf(score, sizeof(score), "%.4f", entry.score);
        out << entry.rank << ',' << score << ',' << entry.name << '\n';
    }
}

void write_report_json(const SensitivityReport& report, const std::filesystem::path& path) {
    nlohmann::json j{
        {"column_names", report.column_names},
        {"tsi", report.tsi},
        {"f0", report.f0},
        {"total_variance", report.total_variance},
        {"n", report.n},
        {"seed", report.seed},
        {"degenerate", report.degenerate},
    };
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_report_json: cannot open '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

} // namespace tsnn
