#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <string>

#include "support/analytic.hpp"
#include "tsnn/dataset.hpp"

using namespace tsnn;

namespace {

std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name,
                                 const std::string& content) {
    auto path = dir / name;
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_SUITE("dataio") {

TEST_CASE("load_csv maps labels and keeps column order") {
    auto dir = testing::temp_dir("load_basic");
    auto path = write_file(dir, "flows.csv",
                           "f1,f2,label\n"
                           "1.0,2.0,BENIGN\n"
                           "3.5,4.5,DDoS\n"
                           "5.0,6.0,BENIGN\n");
    FlowDataset ds = load_csv(path, "label");
    CHECK(ds.rows() == 3);
    CHECK(ds.feature_count() == 2);
    CHECK(ds.labels == std::vector<int>{0, 1, 0});
    CHECK(ds.column_names == std::vector<std::string>{"f1", "f2"});
    CHECK(ds.features(1, 0) == 3.5);
}

TEST_CASE("label matching is case-insensitive on 'benign', everything else is attack") {
    auto dir = testing::temp_dir("load_labels");
    auto path = write_file(dir, "flows.csv",
                           "f1,Label\n"
                           "1,benign\n"
                           "2,Benign\n"
                           "3,DoS Hulk\n"
                           "4,PortScan\n");
    FlowDataset ds = load_csv(path);
    CHECK(ds.labels == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("non-finite cell reports row and column") {
    auto dir = testing::temp_dir("load_nan");
    auto path = write_file(dir, "flows.csv",
                           "f1,f2,Label\n"
                           "1.0,2.0,BENIGN\n"
                           "1.5,NaN,DDoS\n");
    CHECK_THROWS_WITH_AS(load_csv(path), doctest::Contains("row 2"), std::runtime_error);
    try {
        load_csv(path);
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("f2") != std::string::npos);
    }
}

TEST_CASE("missing file, missing label column and empty file all fail") {
    auto dir = testing::temp_dir("load_errors");
    CHECK_THROWS(load_csv(dir / "absent.csv"));
    auto no_label = write_file(dir, "no_label.csv", "f1,f2\n1,2\n");
    CHECK_THROWS_WITH_AS(load_csv(no_label), doctest::Contains("Label"), std::runtime_error);
    auto empty = write_file(dir, "empty.csv", "");
    CHECK_THROWS_WITH_AS(load_csv(empty), doctest::Contains("empty"), std::runtime_error);
    auto header_only = write_file(dir, "header_only.csv", "f1,Label\n");
    CHECK_THROWS_WITH_AS(load_csv(header_only), doctest::Contains("no data rows"), std::runtime_error);
}

TEST_CASE("duplicate feature column names are rejected") {
    auto dir = testing::temp_dir("load_dup");
    auto path = write_file(dir, "dup.csv", "f1,f1,Label\n1,2,BENIGN\n3,4,DDoS\n");
    CHECK_THROWS_WITH_AS(load_csv(path), doctest::Contains("duplicate"), std::runtime_error);
}

TEST_CASE("63-feature header loads with names in order") {
    auto dir = testing::temp_dir("load_wide");
    std::string header, row;
    for (int i = 0; i < 63; ++i) {
        header += "feat_" + std::to_string(i) + ",";
        row += std::to_string(i) + ".5,";
    }
    auto path = write_file(dir, "wide.csv", header + "Label\n" + row + "DDoS\n" + row + "BENIGN\n");
    FlowDataset ds = load_csv(path);
    CHECK(ds.feature_count() == 63);
    CHECK(ds.column_names.front() == "feat_0");
    CHECK(ds.column_names.back() == "feat_62");
}

TEST_CASE("write then load round-trips") {
    SyntheticSpec spec;
    spec.n_rows = 50;
    spec.n_features = 4;
    spec.informative_indices = {0};
    spec.seed = 3;
    FlowDataset ds = generate_synthetic(spec);

    auto dir = testing::temp_dir("round_trip");
    write_csv(ds, dir / "out.csv");
    FlowDataset back = load_csv(dir / "out.csv");
    REQUIRE(back.rows() == ds.rows());
    CHECK(back.labels == ds.labels);
    CHECK(back.column_names == ds.column_names);
    for (std::size_t r = 0; r < ds.rows(); ++r)
        for (std::size_t c = 0; c < ds.feature_count(); ++c)
            CHECK(back.features(r, c) == doctest::Approx(ds.features(r, c)).epsilon(1e-8));
}

TEST_CASE("fit_normalize scales columns to [0,1]") {
    FlowDataset ds;
    ds.column_names = {"a", "b"};
    ds.labels = {0, 1, 0};
    ds.features = Matrix(3, 2);
    ds.features(0, 0) = 2.0; ds.features(1, 0) = 4.0; ds.features(2, 0) = 6.0;
    ds.features(0, 1) = 5.0; ds.features(1, 1) = 5.0; ds.features(2, 1) = 5.0; // constant

    FlowDataset norm = fit_normalize(ds);
    CHECK(norm.features(0, 0) == 0.0);
    CHECK(norm.features(1, 0) == 0.5);
    CHECK(norm.features(2, 0) == 1.0);
    // constant column maps to zeros, scaling recorded as-is
    for (std::size_t r = 0; r < 3; ++r) CHECK(norm.features(r, 1) == 0.0);
    CHECK(norm.scaling[0].min == 2.0);
    CHECK(norm.scaling[0].max == 6.0);
}

TEST_CASE("apply_normalize uses stored parameters and clips") {
    FlowDataset held;
    held.column_names = {"a"};
    held.labels = {1, 0};
    held.features = Matrix(2, 1);
    held.features(0, 0) = 8.0; // (8-2)/(6-2) = 1.5 before clipping
    held.features(1, 0) = 4.0;

    FlowDataset out = apply_normalize(held, {{2.0, 6.0}});
    CHECK(out.features(0, 0) == 1.0);
    CHECK(out.features(1, 0) == 0.5);
}

TEST_CASE("normalization is idempotent on already-normalized data") {
    SyntheticSpec spec;
    spec.n_rows = 40;
    spec.n_features = 3;
    spec.informative_indices = {1};
    spec.seed = 8;
    FlowDataset norm = fit_normalize(generate_synthetic(spec));
    FlowDataset again = fit_normalize(norm);
    CHECK(again.features == norm.features);
}

TEST_CASE("fit_normalize requires at least two rows") {
    FlowDataset ds;
    ds.column_names = {"a"};
    ds.labels = {0};
    ds.features = Matrix(1, 1, 1.0);
    CHECK_THROWS(fit_normalize(ds));
}

TEST_CASE("stratified split: 6000 rows at 5:1 gives 4800/1200 with preserved ratio") {
    SyntheticSpec spec;
    spec.n_rows = 6000;
    spec.n_features = 3;
    spec.informative_indices = {0};
    spec.class_ratio = 5.0;
    spec.seed = 21;
    FlowDataset ds = generate_synthetic(spec);

    auto [train, test] = stratified_split(ds, {0.8, true, 17});
    CHECK(train.rows() == 4800);
    CHECK(test.rows() == 1200);
    auto count_attacks = [](const FlowDataset& d) {
        std::size_t n = 0;
        for (int y : d.labels) n += (y == 1);
        return n;
    };
    CHECK(count_attacks(train) == 800);
    CHECK(count_attacks(test) == 200);
}

TEST_CASE("stratified split is deterministic and exact on 10 rows") {
    FlowDataset ds;
    ds.column_names = {"a"};
    ds.labels = {0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
    ds.features = Matrix(10, 1);
    for (std::size_t r = 0; r < 10; ++r) ds.features(r, 0) = static_cast<double>(r);

    auto [train1, test1] = stratified_split(ds, {0.8, true, 5});
    auto [train2, test2] = stratified_split(ds, {0.8, true, 5});
    CHECK(train1 == train2);
    CHECK(test1 == test2);
    CHECK(train1.rows() == 8);
    CHECK(test1.rows() == 2);
    int train_attacks = 0;
    for (int y : train1.labels) train_attacks += y;
    CHECK(train_attacks == 4);
}

TEST_CASE("split parts are disjoint and cover the input") {
    SyntheticSpec spec;
    spec.n_rows = 333;
    spec.n_features = 2;
    spec.informative_indices = {0};
    spec.seed = 31;
    FlowDataset ds = generate_synthetic(spec);
    auto [train, test] = stratified_split(ds, {0.7, true, 9});

    CHECK(train.rows() + test.rows() == ds.rows());
    // every row's feature vector is unique with continuous features, so
    // multiset membership identifies rows
    std::multiset<double> original, recombined;
    for (std::size_t r = 0; r < ds.rows(); ++r) original.insert(ds.features(r, 0));
    for (std::size_t r = 0; r < train.rows(); ++r) recombined.insert(train.features(r, 0));
    for (std::size_t r = 0; r < test.rows(); ++r) recombined.insert(test.features(r, 0));
    CHECK(original == recombined);
}

TEST_CASE("non-stratified split still partitions deterministically") {
    SyntheticSpec spec;
    spec.n_rows = 100;
    spec.n_features = 2;
    spec.informative_indices = {0};
    spec.seed = 51;
    FlowDataset ds = generate_synthetic(spec);

    auto [train1, test1] = stratified_split(ds, {0.8, false, 3});
    auto [train2, test2] = stratified_split(ds, {0.8, false, 3});
    CHECK(train1.rows() == 80);
    CHECK(test1.rows() == 20);
    CHECK(train1 == train2);
    CHECK(test1 == test2);
}

TEST_CASE("split rejects missing or tiny classes") {
    FlowDataset ds;
    ds.column_names = {"a"};
    ds.labels = {0, 0, 0, 0};
    ds.features = Matrix(4, 1, 0.5);
    CHECK_THROWS_WITH_AS(stratified_split(ds, {0.8, true, 1}), doctest::Contains("both classes"),
                         std::runtime_error);
    ds.labels = {0, 0, 0, 1};
    CHECK_THROWS_WITH_AS(stratified_split(ds, {0.8, true, 1}), doctest::Contains("fewer than 2"),
                         std::runtime_error);
}

TEST_CASE("generate_synthetic is deterministic and honors the class ratio") {
    SyntheticSpec spec;
    spec.n_rows = 600;
    spec.n_features = 10;
    spec.informative_indices = {0, 3};
    spec.effect_size = 0.5;
    spec.seed = 7;

    FlowDataset d1 = generate_synthetic(spec);
    FlowDataset d2 = generate_synthetic(spec);
    CHECK(d1 == d2);

    std::size_t attacks = 0;
    for (int y : d1.labels) attacks += (y == 1);
    CHECK(attacks == 100);
    CHECK(d1.rows() == 600);
    for (double v : d1.features.data()) CHECK((v >= 0.0 && v <= 1.0));
}

TEST_CASE("mean-difference oracle ranks informative columns first at effect 0.5") {
    SyntheticSpec spec;
    spec.n_rows = 600;
    spec.n_features = 8;
    spec.informative_indices = {1, 4};
    spec.effect_size = 0.5;
    spec.seed = 19;
    FlowDataset ds = generate_synthetic(spec);

    std::vector<double> gap(spec.n_features);
    for (std::size_t c = 0; c < spec.n_features; ++c) {
        double sum[2] = {0, 0};
        std::size_t count[2] = {0, 0};
        for (std::size_t r = 0; r < ds.rows(); ++r) {
            sum[ds.labels[r]] += ds.features(r, c);
            ++count[ds.labels[r]];
        }
        gap[c] = std::abs(sum[1] / static_cast<double>(count[1]) - sum[0] / static_cast<double>(count[0]));
    }
    double weakest_informative = std::min(gap[1], gap[4]);
    for (std::size_t c = 0; c < spec.n_features; ++c) {
        if (c == 1 || c == 4) continue;
        CHECK(gap[c] < weakest_informative);
    }
}

TEST_CASE("zero effect size leaves informative columns indistinguishable") {
    SyntheticSpec spec;
    spec.n_rows = 2000;
    spec.n_features = 4;
    spec.informative_indices = {0};
    spec.effect_size = 0.0;
    spec.seed = 23;
    FlowDataset ds = generate_synthetic(spec);

    double sum[2] = {0, 0};
    std::size_t count[2] = {0, 0};
    for (std::size_t r = 0; r < ds.rows(); ++r) {
        sum[ds.labels[r]] += ds.features(r, 0);
        ++count[ds.labels[r]];
    }
    double gap = std::abs(sum[1] / static_cast<double>(count[1]) - sum[0] / static_cast<double>(count[0]));
    CHECK(gap < 0.05);
}

TEST_CASE("generate_synthetic validates its spec") {
    SyntheticSpec spec;
    spec.n_rows = 10;
    spec.n_features = 3;
    spec.informative_indices = {5};
    CHECK_THROWS(generate_synthetic(spec));
    spec.informative_indices = {};
    CHECK_THROWS(generate_synthetic(spec));
    spec.informative_indices = {0};
    spec.class_ratio = 0.0;
    CHECK_THROWS(generate_synthetic(spec));
}

TEST_CASE("kfold indices partition the rows with balanced folds") {
    auto folds = kfold_indices(23, 5, 77);
    REQUIRE(folds.size() == 5);
    std::set<std::size_t> seen;
    for (const auto& [train, val] : folds) {
        CHECK(train.size() + val.size() == 23);
        CHECK((val.size() == 4 || val.size() == 5));
        for (std::size_t idx : val) CHECK(seen.insert(idx).second);
    }
    CHECK(seen.size() == 23);
}

TEST_CASE("select_columns keeps names and scaling aligned") {
    SyntheticSpec spec;
    spec.n_rows = 30;
    spec.n_features = 5;
    spec.informative_indices = {2};
    spec.seed = 4;
    FlowDataset ds = fit_normalize(generate_synthetic(spec));
    FlowDataset sub = select_columns(ds, {4, 2});
    CHECK(sub.column_names == std::vector<std::string>{"f4", "f2"});
    CHECK(sub.feature_count() == 2);
    CHECK(sub.scaling[0] == ds.scaling[4]);
    for (std::size_t r = 0; r < ds.rows(); ++r) CHECK(sub.features(r, 1) == ds.features(r, 2));
    CHECK_THROWS_AS(select_columns(ds, {9}), std::out_of_range);
}

} // TEST_SUITE
