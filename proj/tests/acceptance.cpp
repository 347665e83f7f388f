// Acceptance suite: one criterion per function, each printing a single
// PASS/FAIL line with the measured values. Runtime limits are enforced
// inside the criteria. Exit status is the number of failed criteria.
//
// Usage: tsnn_acceptance [N ...] [--external-csv PATH]
//   With no criterion numbers, runs 1 through 9. Criterion 10 needs an
//   external flow CSV and is skipped (not counted) unless the flag is
//   given.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "support/analytic.hpp"
#include "tsnn/models.hpp"
#include "tsnn/pipeline.hpp"
#include "tsnn/sensitivity.hpp"

using namespace tsnn;
using namespace tsnn::testing;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::filesystem::path scratch_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("tsnn_acceptance_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// 1. Ishigami oracle at n = 2^14, within 0.02 of the analytic totals.
Outcome criterion_ishigami() {
    auto start = std::chrono::steady_clock::now();
    LambdaFunction f = ishigami_function();
    SamplingPlan plan = build_plan(1 << 14, 3, 9);
    SensitivityReport report = estimate_tsi(f, plan);
    double elapsed = seconds_since(start);

    const double expected[3] = {0.5576, 0.4424, 0.2437};
    bool pass = elapsed < 10.0;
    char buf[160];
    for (int i = 0; i < 3; ++i) pass = pass && std::abs(report.tsi[i] - expected[i]) < 0.02;
    std::snprintf(buf, sizeof(buf), "totals (%.4f, %.4f, %.4f) vs (0.5576, 0.4424, 0.2437), %.2f s",
                  report.tsi[0], report.tsi[1], report.tsi[2], elapsed);
    return {pass, buf};
}

// 2. Additive oracle: f = 2*x1 + x2 has totals (0.8, 0.2).
Outcome criterion_additive() {
    auto start = std::chrono::steady_clock::now();
    LambdaFunction f = additive_function(2.0, 1.0);
    SamplingPlan plan = build_plan(1 << 14, 2, 2);
    SensitivityReport report = estimate_tsi(f, plan);
    double elapsed = seconds_since(start);

    bool pass = std::abs(report.tsi[0] - 0.8) < 0.02 && std::abs(report.tsi[1] - 0.2) < 0.02 &&
                elapsed < 5.0;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "totals (%.4f, %.4f) vs (0.8, 0.2), %.2f s", report.tsi[0],
                  report.tsi[1], elapsed);
    return {pass, buf};
}

// 3. Interaction oracle: f = x1*x2 has total 4/7 on each input.
Outcome criterion_product() {
    LambdaFunction f = product_function();
    SamplingPlan plan = build_plan(1 << 14, 2, 5);
    SensitivityReport report = estimate_tsi(f, plan);

    const double expected = 4.0 / 7.0;
    bool pass = std::abs(report.tsi[0] - expected) < 0.02;
    char buf[100];
    std::snprintf(buf, sizeof(buf), "total %.4f vs %.4f", report.tsi[0], expected);
    return {pass, buf};
}

// 4. A feature the function ignores gets |total| <= 0.02.
Outcome criterion_ignored_feature() {
    LambdaFunction f(3, [](std::span<const double> x) { return 2.0 * x[0] + x[1]; });
    SamplingPlan plan = build_plan(1 << 14, 3, 9);
    SensitivityReport report = estimate_tsi(f, plan);

    bool pass = std::abs(report.tsi[2]) <= 0.02;
    char buf[80];
    std::snprintf(buf, sizeof(buf), "|total| of unused feature = %.4f", std::abs(report.tsi[2]));
    return {pass, buf};
}

// 5. The data-driven path ranks both informative columns in the top 2
// for at least 9 of 10 seeds.
Outcome criterion_selection_recovery() {
    auto start = std::chrono::steady_clock::now();
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SyntheticSpec spec;
        spec.n_rows = 600;
        spec.n_features = 10;
        spec.informative_indices = {0, 3};
        spec.effect_size = 0.8;
        spec.class_ratio = 5.0;
        spec.seed = seed;
        FlowDataset normalized = fit_normalize(generate_synthetic(spec));
        KnnSurrogate surrogate = KnnSurrogate::fit(normalized, 5);
        SamplingPlan plan = build_plan(4096, 10, 1000 + seed);
        SensitivityReport report = estimate_tsi(surrogate, plan, normalized.column_names);
        std::vector<std::size_t> top = select_top(rank_features(report), 2);
        bool hit = (top[0] == 0 && top[1] == 3) || (top[0] == 3 && top[1] == 0);
        hits += hit;
    }
    double elapsed = seconds_since(start);
    bool pass = hits >= 9 && elapsed < 30.0;
    char buf[100];
    std::snprintf(buf, sizeof(buf), "recovered top-2 for %d/10 seeds, %.1f s", hits, elapsed);
    return {pass, buf};
}

// The 0.99 bar needs the network to pick up the clip atoms at exactly
// 1.0 on the informative columns, which takes far more updates than the
// defaults provide: small batches, a raised learning rate and a few
// thousand epochs. Even the Bayes rule misses ~0.7% on this family, so
// the margin at 400 held-out rows is a couple of samples.
PipelineConfig benchmark_config(const std::filesystem::path& out_dir) {
    PipelineConfig cfg;
    cfg.synthetic.n_rows = 2000;
    cfg.synthetic.n_features = 10;
    cfg.synthetic.informative_indices = {0, 3};
    cfg.synthetic.effect_size = 0.8;
    cfg.synthetic.class_ratio = 5.0;
    cfg.top_k = 2;
    cfg.tsi_samples = 4096;
    cfg.neighbors = 5;
    cfg.train.epochs = 4000;
    cfg.train.batch_size = 100;
    cfg.train.learning_rate = 0.03;
    cfg.seed = 13;
    cfg.out_dir = out_dir.string();
    return cfg;
}

// 6. End-to-end benchmark ordering: TSNN >= 0.99 held-out accuracy and
// at least as accurate as both baselines.
Outcome criterion_benchmark_ordering() {
    auto start = std::chrono::steady_clock::now();
    auto dir = scratch_dir("benchmark");
    PipelineResult result = run_pipeline(benchmark_config(dir));
    double elapsed = seconds_since(start);

    double tsnn = result.eval.rows[0].accuracy;
    double svm = result.eval.rows[1].accuracy;
    double lr = result.eval.rows[2].accuracy;
    bool pass = tsnn >= 0.99 && tsnn >= lr && tsnn >= svm && elapsed < 300.0;
    char buf[140];
    std::snprintf(buf, sizeof(buf), "accuracy TSNN %.4f, LR %.4f, SVM %.4f, %.0f s", tsnn, lr, svm,
                  elapsed);
    return {pass, buf};
}

// 7. Analytic gradients of all three model losses agree with central
// finite differences to 1e-4.
Outcome criterion_gradients() {
    SyntheticSpec spec;
    spec.n_rows = 200;
    spec.n_features = 4;
    spec.informative_indices = {0, 2};
    spec.effect_size = 0.8;
    spec.seed = 12;
    FlowDataset ds = generate_synthetic(spec);

    TrainConfig cfg;
    cfg.epochs = 0;
    cfg.seed = 5;
    MlpModel mlp = train_mlp(ds, {0, 1, 2, 3}, cfg);

    Matrix x(24, 4);
    Rng rng(88);
    for (double& v : x.data()) v = rng.uniform01();
    std::vector<int> y(24);
    for (int& v : y) v = rng.uniform01() < 0.4 ? 1 : 0;

    LinearModel logistic;
    logistic.kind = LinearModel::Kind::logistic;
    logistic.weights = {0.4, -0.3, 0.2, 0.6};
    logistic.bias = -0.2;
    logistic.l2_lambda = 0.01;

    LinearModel svm;
    svm.kind = LinearModel::Kind::svm;
    svm.weights = {-0.5, 0.3, 0.1, 0.2};
    svm.bias = 0.3;
    svm.l2_lambda = 0.01;

    double e_mlp = gradient_check(mlp, x, y);
    double e_lr = gradient_check(logistic, x, y);
    double e_svm = gradient_check(svm, x, y);
    bool pass = e_mlp < 1e-4 && e_lr < 1e-4 && e_svm < 1e-4;
    char buf[140];
    std::snprintf(buf, sizeof(buf), "max relative error mlp %.2e, logistic %.2e, svm %.2e", e_mlp,
                  e_lr, e_svm);
    return {pass, buf};
}

// 8. Two identically-configured runs leave byte-identical reports.
Outcome criterion_determinism() {
    auto dir = scratch_dir("determinism");
    PipelineConfig cfg1 = benchmark_config(dir / "run1");
    PipelineConfig cfg2 = benchmark_config(dir / "run2");
    cfg1.synthetic.n_rows = cfg2.synthetic.n_rows = 600;
    cfg1.train.epochs = cfg2.train.epochs = 60;

    PipelineResult r1 = run_pipeline(cfg1);
    PipelineResult r2 = run_pipeline(cfg2);
    bool ranking_same = slurp(r1.selection.ranking_csv) == slurp(r2.selection.ranking_csv);
    bool eval_csv_same = slurp(r1.eval_csv) == slurp(r2.eval_csv);
    bool eval_json_same = slurp(r1.eval_json) == slurp(r2.eval_json);
    bool pass = ranking_same && eval_csv_same && eval_json_same;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "ranking %s, evaluation csv %s, evaluation json %s",
                  ranking_same ? "identical" : "DIFFERS", eval_csv_same ? "identical" : "DIFFERS",
                  eval_json_same ? "identical" : "DIFFERS");
    return {pass, buf};
}

// 9. Estimator agrees with exhaustive conditional-variance computation
// on a piecewise-constant function.
Outcome criterion_grid_oracle() {
    GridFunction grid(2, 5, 777);
    std::vector<double> exact = grid.exact_totals();
    SamplingPlan plan = build_plan(1 << 14, 2, 2032);
    SensitivityReport report = estimate_tsi(grid, plan);

    double d0 = std::abs(report.tsi[0] - exact[0]);
    double d1 = std::abs(report.tsi[1] - exact[1]);
    bool pass = d0 < 0.02 && d1 < 0.02;
    char buf[140];
    std::snprintf(buf, sizeof(buf), "estimated (%.4f, %.4f) vs exhaustive (%.4f, %.4f)", report.tsi[0],
                  report.tsi[1], exact[0], exact[1]);
    return {pass, buf};
}

// 10. Optional: a user-supplied flow CSV sampled like the reference
// protocol should run end to end with TSNN accuracy >= 0.99.
Outcome criterion_external(const std::string& csv_path) {
    auto dir = scratch_dir("external");
    PipelineConfig cfg;
    cfg.input_path = csv_path;
    cfg.top_k = 10;
    cfg.train.epochs = 3000;
    cfg.train.batch_size = 100;
    cfg.train.learning_rate = 0.02;
    cfg.seed = 7;
    cfg.out_dir = dir.string();
    PipelineResult result = run_pipeline(cfg);

    double tsnn = result.eval.rows[0].accuracy;
    bool pass = tsnn >= 0.99;
    char buf[100];
    std::snprintf(buf, sizeof(buf), "TSNN held-out accuracy %.4f on %s", tsnn, csv_path.c_str());
    return {pass, buf};
}

const char* kDescriptions[] = {
    "Sobol oracle, Ishigami totals",
    "Sobol oracle, additive linear",
    "Sobol oracle, interaction 4/7",
    "ignored-feature null",
    "selection recovery across seeds",
    "end-to-end benchmark ordering",
    "gradient correctness, all models",
    "byte-identical reruns",
    "estimator vs brute-force grid",
    "external dataset check",
};

} // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    std::string external_csv;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--external-csv") == 0 && i + 1 < argc) {
            external_csv = argv[++i];
        } else {
            wanted.push_back(std::atoi(argv[i]));
        }
    }
    if (wanted.empty())
        for (int c = 1; c <= 10; ++c) wanted.push_back(c);

    int failures = 0;
    for (int c : wanted) {
        if (c < 1 || c > 10) {
            std::fprintf(stderr, "unknown criterion %d\n", c);
            return 2;
        }
        if (c == 10 && external_csv.empty()) {
            std::printf("[SKIP] criterion 10: %s (pass --external-csv PATH to enable)\n",
                        kDescriptions[9]);
            continue;
        }
        Outcome outcome;
        try {
            switch (c) {
                case 1: outcome = criterion_ishigami(); break;
                case 2: outcome = criterion_additive(); break;
                case 3: outcome = criterion_product(); break;
                case 4: outcome = criterion_ignored_feature(); break;
                case 5: outcome = criterion_selection_recovery(); break;
                case 6: outcome = criterion_benchmark_ordering(); break;
                case 7: outcome = criterion_gradients(); break;
                case 8: outcome = criterion_determinism(); break;
                case 9: outcome = criterion_grid_oracle(); break;
                case 10: outcome = criterion_external(external_csv); break;
            }
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %d: %s (%s)\n", outcome.pass ? "PASS" : "FAIL", c,
                    kDescriptions[c - 1], outcome.detail.c_str());
        failures += !outcome.pass;
    }
    return failures;
}
