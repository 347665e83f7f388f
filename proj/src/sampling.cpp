#include "tsnn/sampling.hpp"

#include <stdexcept>
#include <string>

#include "tsnn/rng.hpp"

namespace tsnn {

SamplingPlan build_plan(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (n < 2 || k == 0) throw std::runtime_error("build_plan: need n >= 2 and k >= 1");

    SamplingPlan plan;
    plan.n = n;
    plan.k = k;
    plan.seed = seed;
    plan.a = Matrix(n, k);
    plan.b = Matrix(n, k);
    Rng rng_a(derive_seed(seed, 0));
    Rng rng_b(derive_seed(seed, 1));
    for (double& v : plan.a.data()) v = rng_a.uniform01();
    for (double& v : plan.b.data()) v = rng_b.uniform01();
    return plan;
}

Matrix swap_column(const SamplingPlan& plan, std::size_t column) {
    if (column >= plan.k)
        throw std::out_of_range("swap_column: column " + std::to_string(column) +
                                " out of range for k=" + std::to_string(plan.k));

    Matrix swapped = plan.a;
    for (std::size_t r = 0; r < plan.n; ++r) swapped(r, column) = plan.b(r, column);
    return swapped;
}

} // namespace tsnn
