#pragma once

#include <cstdint>
#include <vector>

#include "umf/grid_fn.hpp"

namespace umf {

/// splitmix64: fixed algorithm, identical streams on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in (0, 1); 53 random bits, never exactly 0.
    double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    /// Standard normal by Box-Muller (one value per call, no caching).
    double normal();

    /// Complex Gaussian with unit expected modulus squared.
    cplx complex_normal();

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

private:
    std::uint64_t state_;
};

/// Complex-Gaussian values on `cells` (zero elsewhere), scaled to
/// norm_sq == 1. An empty cell list gives the zero function.
FreqFn random_test_function(const FieldPtr& field, GridSpec grid, const std::vector<std::uint64_t>& cells,
                            SplitMix64& rng);

}  // namespace umf
