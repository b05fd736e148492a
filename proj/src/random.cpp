#include "umf/random.hpp"

#include <cmath>
#include <numbers>

namespace umf {

double SplitMix64::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx SplitMix64::complex_normal() {
    const double re = normal();
    const double im = normal();
    return cplx(re, im) * std::numbers::sqrt2 * 0.5;
}

FreqFn random_test_function(const FieldPtr& field, GridSpec grid, const std::vector<std::uint64_t>& cells,
                            SplitMix64& rng) {
    std::vector<cplx> values(grid_dim(*field, grid));
    for (const auto c : cells) values.at(c) = rng.complex_normal();
    FreqFn f(field, grid, std::move(values));
    const double n2 = norm_sq(f);
    if (n2 == 0.0) return f;
    return scale(f, 1.0 / std::sqrt(n2));
}

}  // namespace umf
