#pragma once

#include <cstdint>

#include "tsnn/matrix.hpp"

namespace tsnn {

/// Paired independent uniform samples of the unit hypercube. The two
/// matrices come from disjoint sub-seeds of the plan seed, so their
/// entries are statistically independent of each other.
struct SamplingPlan {
    Matrix a;
    Matrix b;
    std::size_t n = 0;
    std::size_t k = 0;
    std::uint64_t seed = 0;
};

/// Build an n x k plan. Deterministic in (n, k, seed).
SamplingPlan build_plan(std::size_t n, std::size_t k, std::uint64_t seed);

/// Matrix A with column i replaced by column i of B. The plan itself is
/// left untouched; each call materializes a fresh matrix.
Matrix swap_column(const SamplingPlan& plan, std::size_t column);

} // namespace tsnn
