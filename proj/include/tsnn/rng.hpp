#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace tsnn {

/// SplitMix64 step. Used only to derive independent sub-seeds from a
/// master seed, so that every stage of a run (split, sampling, weight
/// init, shuffling) gets its own statistically disjoint stream.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t state = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
    return splitmix64(state);
}

/// Seeded uniform generator. mt19937_64 is fully specified by the C++
/// standard and the 53-bit mantissa mapping below is fixed, so the same
/// seed reproduces the same sequence on every conforming platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    /// Unbiased index in [0, bound) by rejection.
    std::size_t index(std::size_t bound) {
        const std::uint64_t n = bound;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % n);
    }

    /// Fisher-Yates shuffle. Hand-rolled because std::shuffle's draw
    /// order is implementation-defined.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace tsnn
