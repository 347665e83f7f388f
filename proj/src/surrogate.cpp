#include "tsnn/surrogate.hpp"

#include <stdexcept>
#include <string>

namespace tsnn {

KnnSurrogate KnnSurrogate::fit(const FlowDataset& ds, std::size_t neighbor_count) {
    if (neighbor_count == 0) throw std::runtime_error("KnnSurrogate::fit: neighbor_count must be positive");
    if (neighbor_count > ds.rows())
        throw std::runtime_error("KnnSurrogate::fit: neighbor_count " + std::to_string(neighbor_count) +
                                 " exceeds reference count " + std::to_string(ds.rows()));
    for (double v : ds.features.data())
        if (!(v >= 0.0 && v <= 1.0))
            throw std::runtime_error("KnnSurrogate::fit: dataset is not normalized (value " +
                                     std::to_string(v) + " outside [0,1])");

    KnnSurrogate s;
    s.reference_points_ = ds.features;
    s.reference_values_.reserve(ds.rows());
    for (int label : ds.labels) s.reference_values_.push_back(static_cast<double>(label));
    s.neighbor_count_ = neighbor_count;
    return s;
}

std::vector<double> KnnSurrogate::evaluate_batch(const Matrix& points) const {
    const std::size_t k = reference_points_.cols();
    if (points.cols() != k)
        throw std::runtime_error("KnnSurrogate::evaluate_batch: query has " + std::to_string(points.cols()) +
                                 " columns, surrogate expects " + std::to_string(k));

    const std::size_t m = reference_points_.rows();
    const std::size_t nc = neighbor_count_;
    const double* refs = reference_points_.data().data();

    // Best-so-far neighbors kept sorted by (distance^2, index) so the
    // final accumulation order is independent of reference row order.
    std::vector<double> best_dist(nc);
    std::vector<std::size_t> best_idx(nc);

    std::vector<double> out(points.rows());
    for (std::size_t q = 0; q < points.rows(); ++q) {
        const double* query = points.row(q).data();
        std::size_t filled = 0;
        for (std::size_t r = 0; r < m; ++r) {
            const double* ref = refs + r * k;
            double d2 = 0.0;
            for (std::size_t c = 0; c < k; ++c) {
                double diff = query[c] - ref[c];
                d2 += diff * diff;
            }
            if (filled == nc && d2 >= best_dist[nc - 1]) continue; // equal distance: lower index wins
            std::size_t pos = filled < nc ? filled : nc - 1;
            while (pos > 0 && best_dist[pos - 1] > d2) {
                best_dist[pos] = best_dist[pos - 1];
                best_idx[pos] = best_idx[pos - 1];
                --pos;
            }
            best_dist[pos] = d2;
            best_idx[pos] = r;
            if (filled < nc) ++filled;
        }
        double sum = 0.0;
        for (std::size_t i = 0; i < nc; ++i) sum += reference_values_[best_idx[i]];
        out[q] = sum / static_cast<double>(nc);
    }
    return out;
}

} // namespace tsnn
