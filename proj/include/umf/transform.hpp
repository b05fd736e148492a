#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "umf/grid_fn.hpp"

namespace umf {

/// Counts complex multiplications performed by a transform.
struct OpCounter {
    std::uint64_t multiplies = 0;
};

/// f^(xi) = integral f(x) chi(-xi x) dx. A function on grid (s, m) maps to
/// one on the dual grid (m, s).
FreqFn transform_naive(const TimeFn& f, OpCounter* counter = nullptr);
FreqFn transform_fast(const TimeFn& f, OpCounter* counter = nullptr);

/// f(x) = integral f^(xi) chi(xi x) dxi.
TimeFn inverse_naive(const FreqFn& f, OpCounter* counter = nullptr);
TimeFn inverse_fast(const FreqFn& f, OpCounter* counter = nullptr);

/// Raw kernel sum q^{-m} sum_c v_c chi(sign * y . c) from grid `in` onto
/// the dual grid (in.m, in.s); sign is +1 or -1.
std::vector<cplx> dual_values_naive(const Field& field, GridSpec in, std::span<const cplx> values, int sign,
                                    OpCounter* counter = nullptr);
std::vector<cplx> dual_values_fast(const Field& field, GridSpec in, std::span<const cplx> values, int sign,
                                   OpCounter* counter = nullptr);

}  // namespace umf
