#include "tsnn/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tsnn/rng.hpp"

namespace tsnn {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

bool iequals(const std::string& a, const char* b) {
    std::size_t n = 0;
    while (b[n] != '\0') ++n;
    if (a.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& column) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        throw std::runtime_error("load_csv: row " + std::to_string(row) + ", column '" + column +
                                 "': value '" + cell + "' is not a finite number");
    }
    return value;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

} // namespace

FlowDataset load_csv(const std::filesystem::path& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_csv: '" + path.string() + "' is empty");
    std::vector<std::string> header = split_line(line);

    std::size_t label_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == label_column) { label_idx = i; break; }
    if (label_idx == header.size())
        throw std::runtime_error("load_csv: label column '" + label_column + "' not found in header");

    std::vector<std::string> names;
    for (std::size_t i = 0; i < header.size(); ++i)
        if (i != label_idx) names.push_back(header[i]);

    std::set<std::string> unique(names.begin(), names.end());
    if (unique.size() != names.size())
        throw std::runtime_error("load_csv: duplicate feature column names in header");

    std::vector<double> values;
    std::vector<int> labels;
    std::size_t data_row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++data_row;
        std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size())
            throw std::runtime_error("load_csv: row " + std::to_string(data_row) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(header.size()));
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i == label_idx) {
                labels.push_back(iequals(cells[i], "benign") ? 0 : 1);
            } else {
                values.push_back(parse_cell(cells[i], data_row, header[i]));
            }
        }
    }
    if (labels.empty()) throw std::runtime_error("load_csv: '" + path.string() + "' has no data rows");

    FlowDataset ds;
    ds.column_names = std::move(names);
    ds.labels = std::move(labels);
    ds.features = Matrix(ds.labels.size(), ds.column_names.size());
    ds.features.data() = std::move(values);
    return ds;
}

void write_csv(const FlowDataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open '" + path.string() + "' for writing");
    for (const auto& name : ds.column_names) out << name << ',';
    out << "Label\n";
    for (std::size_t r = 0; r < ds.rows(); ++r) {
        for (std::size_t c = 0; c < ds.feature_count(); ++c)
            out << format_value(ds.features(r, c)) << ',';
        out << (ds.labels[r] == 0 ? "BENIGN" : "DDoS") << '\n';
    }
}

FlowDataset fit_normalize(const FlowDataset& ds) {
    if (ds.rows() < 2) throw std::runtime_error("fit_normalize: need at least 2 rows");

    FlowDataset out = ds;
    out.scaling.assign(ds.feature_count(), ColumnScale{});
    for (std::size_t c = 0; c < ds.feature_count(); ++c) {
        double lo = ds.features(0, c), hi = ds.features(0, c);
        for (std::size_t r = 1; r < ds.rows(); ++r) {
            lo = std::min(lo, ds.features(r, c));
            hi = std::max(hi, ds.features(r, c));
        }
        out.scaling[c] = {lo, hi};
        for (std::size_t r = 0; r < ds.rows(); ++r) {
            double v = ds.features(r, c);
            out.features(r, c) = hi > lo ? (v - lo) / (hi - lo) : 0.0;
        }
    }
    return out;
}

FlowDataset apply_normalize(const FlowDataset& ds, const std::vector<ColumnScale>& scaling) {
    if (scaling.size() != ds.feature_count())
        throw std::runtime_error("apply_normalize: scaling has " + std::to_string(scaling.size()) +
                                 " columns, dataset has " + std::to_string(ds.feature_count()));

    FlowDataset out = ds;
    out.scaling = scaling;
    for (std::size_t c = 0; c < ds.feature_count(); ++c) {
        const auto& [lo, hi] = scaling[c];
        for (std::size_t r = 0; r < ds.rows(); ++r) {
            double v = hi > lo ? (ds.features(r, c) - lo) / (hi - lo) : 0.0;
            out.features(r, c) = std::clamp(v, 0.0, 1.0);
        }
    }
    return out;
}

namespace {

FlowDataset take_rows(const FlowDataset& ds, const std::vector<std::size_t>& rows) {
    FlowDataset out;
    out.column_names = ds.column_names;
    out.scaling = ds.scaling;
    out.features = Matrix(rows.size(), ds.feature_count());
    out.labels.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::copy_n(ds.features.row(rows[i]).data(), ds.feature_count(), out.features.row(i).data());
        out.labels.push_back(ds.labels[rows[i]]);
    }
    return out;
}

} // namespace

std::pair<FlowDataset, FlowDataset> stratified_split(const FlowDataset& ds, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw std::runtime_error("stratified_split: train_fraction must be in (0,1)");

    std::vector<std::size_t> by_class[2];
    for (std::size_t r = 0; r < ds.rows(); ++r) by_class[ds.labels[r] == 0 ? 0 : 1].push_back(r);
    if (by_class[0].empty() || by_class[1].empty())
        throw std::runtime_error("stratified_split: both classes must be present");
    for (int c = 0; c < 2; ++c)
        if (by_class[c].size() < 2)
            throw std::runtime_error("stratified_split: class " + std::to_string(c) +
                                     " has fewer than 2 samples");

    Rng rng(spec.seed);
    std::vector<std::size_t> train_rows, test_rows;
    if (spec.stratified) {
        for (auto& rows : by_class) {
            rng.shuffle(rows);
            auto want = static_cast<std::size_t>(std::llround(spec.train_fraction * static_cast<double>(rows.size())));
            std::size_t n_train = std::clamp<std::size_t>(want, 1, rows.size() - 1);
            train_rows.insert(train_rows.end(), rows.begin(), rows.begin() + n_train);
            test_rows.insert(test_rows.end(), rows.begin() + n_train, rows.end());
        }
    } else {
        std::vector<std::size_t> rows(ds.rows());
        for (std::size_t r = 0; r < rows.size(); ++r) rows[r] = r;
        rng.shuffle(rows);
        auto want = static_cast<std::size_t>(std::llround(spec.train_fraction * static_cast<double>(rows.size())));
        std::size_t n_train = std::clamp<std::size_t>(want, 1, rows.size() - 1);
        train_rows.assign(rows.begin(), rows.begin() + n_train);
        test_rows.assign(rows.begin() + n_train, rows.end());
    }
    std::sort(train_rows.begin(), train_rows.end());
    std::sort(test_rows.begin(), test_rows.end());
    return {take_rows(ds, train_rows), take_rows(ds, test_rows)};
}

FlowDataset generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n_rows < 2 || spec.n_features == 0)
        throw std::runtime_error("generate_synthetic: need n_rows >= 2 and n_features >= 1");
    if (spec.informative_indices.empty())
        throw std::runtime_error("generate_synthetic: need at least one informative column");
    for (std::size_t idx : spec.informative_indices)
        if (idx >= spec.n_features)
            throw std::runtime_error("generate_synthetic: informative index " + std::to_string(idx) +
                                     " out of range for " + std::to_string(spec.n_features) + " features");
    if (!(spec.class_ratio > 0.0) || !(spec.effect_size >= 0.0))
        throw std::runtime_error("generate_synthetic: class_ratio must be > 0 and effect_size >= 0");

    auto n_attack = static_cast<std::size_t>(
        std::llround(static_cast<double>(spec.n_rows) / (spec.class_ratio + 1.0)));
    n_attack = std::clamp<std::size_t>(n_attack, 1, spec.n_rows - 1);

    std::vector<int> labels(spec.n_rows, 0);
    std::fill(labels.end() - static_cast<std::ptrdiff_t>(n_attack), labels.end(), 1);
    Rng label_rng(derive_seed(spec.seed, 0));
    label_rng.shuffle(labels);

    std::vector<bool> informative(spec.n_features, false);
    for (std::size_t idx : spec.informative_indices) informative[idx] = true;

    FlowDataset ds;
    ds.labels = std::move(labels);
    ds.features = Matrix(spec.n_rows, spec.n_features);
    Rng feature_rng(derive_seed(spec.seed, 1));
    for (std::size_t r = 0; r < spec.n_rows; ++r) {
        for (std::size_t c = 0; c < spec.n_features; ++c) {
            double u = feature_rng.uniform01();
            if (informative[c] && ds.labels[r] == 1) u = std::min(u + spec.effect_size, 1.0);
            ds.features(r, c) = u;
        }
    }
    ds.column_names.reserve(spec.n_features);
    for (std::size_t c = 0; c < spec.n_features; ++c) ds.column_names.push_back("f" + std::to_string(c));
    return ds;
}

FlowDataset select_columns(const FlowDataset& ds, const std::vector<std::size_t>& columns) {
    for (std::size_t c : columns)
        if (c >= ds.feature_count())
            throw std::out_of_range("select_columns: column " + std::to_string(c) + " out of range");

    FlowDataset out;
    out.labels = ds.labels;
    out.features = Matrix(ds.rows(), columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out.column_names.push_back(ds.column_names[columns[i]]);
        if (!ds.scaling.empty()) out.scaling.push_back(ds.scaling[columns[i]]);
        for (std::size_t r = 0; r < ds.rows(); ++r) out.features(r, i) = ds.features(r, columns[i]);
    }
    return out;
}

std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
kfold_indices(std::size_t n_rows, std::size_t folds, std::uint64_t seed) {
    if (folds < 2 || folds > n_rows)
        throw std::runtime_error("kfold_indices: need 2 <= folds <= n_rows");

    std::vector<std::size_t> order(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);

    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> out(folds);
    std::size_t base = n_rows / folds, extra = n_rows % folds, pos = 0;
    for (std::size_t f = 0; f < folds; ++f) {
        std::size_t size = base + (f < extra ? 1 : 0);
        auto& [train, val] = out[f];
        val.assign(order.begin() + pos, order.begin() + pos + size);
        train.reserve(n_rows - size);
        train.insert(train.end(), order.begin(), order.begin() + pos);
        train.insert(train.end(), order.begin() + pos + size, order.end());
        std::sort(val.begin(), val.end());
        std::sort(train.begin(), train.end());
        pos += size;
    }
    return out;
}

} // namespace tsnn
