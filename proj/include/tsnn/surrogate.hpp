#pragma once

#include <cstddef>
#include <vector>

#include "tsnn/dataset.hpp"
#include "tsnn/matrix.hpp"

namespace tsnn {

/// Anything that can be evaluated on batches of points in [0,1]^k.
/// The sensitivity estimator only sees this interface, so analytic test
/// functions plug in exactly like data-fitted surrogates.
class ResponseFunction {
public:
    virtual ~ResponseFunction() = default;
    virtual std::size_t dimension() const = 0;
    virtual std::vector<double> evaluate_batch(const Matrix& points) const = 0;
};

/// k-nearest-neighbor regression over the normalized training rows:
/// the prediction at a point is the mean label of its neighbor_count
/// nearest references (Euclidean distance, ties broken by lower
/// reference index). No fitting beyond storing the references.
class KnnSurrogate final : public ResponseFunction {
public:
    static KnnSurrogate fit(const FlowDataset& ds, std::size_t neighbor_count = 5);

    std::size_t dimension() const override { return reference_points_.cols(); }
    std::vector<double> evaluate_batch(const Matrix& points) const override;

    std::size_t reference_count() const { return reference_points_.rows(); }
    std::size_t neighbor_count() const { return neighbor_count_; }
    const std::vector<double>& reference_values() const { return reference_values_; }

private:
    KnnSurrogate() = default;

    Matrix reference_points_;
    std::vector<double> reference_values_;
    std::size_t neighbor_count_ = 5;
};

} // namespace tsnn
