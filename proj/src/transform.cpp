#include "umf/transform.hpp"

#include <cmath>

namespace umf {

namespace {

// K[a * q + b] = omega^{sign * tr(a b)}
std::vector<cplx> pairing_kernel(const Field& field, int sign) {
    const auto q = field.q();
    const int p = field.p();
    const auto roots = roots_of_unity(p);
    std::vector<cplx> k(static_cast<std::size_t>(q) * q);
    for (std::uint32_t a = 0; a < q; ++a) {
        for (std::uint32_t b = 0; b < q; ++b) {
            const int ph = ((sign * field.trace_mul(a, b)) % p + p) % p;
            k[a * q + b] = roots[ph];
        }
    }
    return k;
}

std::vector<std::uint32_t> digits_of(std::uint64_t idx, std::uint32_t q, int len) {
    std::vector<std::uint32_t> d(len);
    for (int t = 0; t < len; ++t) {
        d[t] = static_cast<std::uint32_t>(idx % q);
        idx /= q;
    }
    return d;
}

void check_sign(int sign) {
    if (sign != 1 && sign != -1) throw ParameterError("transform sign must be +1 or -1");
}

}  // namespace

std::vector<cplx> dual_values_naive(const Field& field, GridSpec in, std::span<const cplx> values, int sign,
                                    OpCounter* counter) {
    check_sign(sign);
    const auto dim = grid_dim(field, in);
    if (values.size() != dim) throw WindowError("value count does not match grid dimension");
    const auto q = field.q();
    const int len = in.digits();
    const int p = field.p();
    const auto roots = roots_of_unity(p);
    std::vector<int> trace(static_cast<std::size_t>(q) * q);
    for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b) trace[a * q + b] = field.trace_mul(a, b);

    std::vector<std::vector<std::uint32_t>> digs(dim);
    for (std::uint64_t i = 0; i < dim; ++i) digs[i] = digits_of(i, q, len);

    const double weight = std::pow(static_cast<double>(q), -in.m);
    std::vector<cplx> out(dim);
    for (std::uint64_t y = 0; y < dim; ++y) {
        const auto& yd = digs[y];
        cplx sum{};
        for (std::uint64_t c = 0; c < dim; ++c) {
            const auto& cd = digs[c];
            int ph = 0;
            // input position t pairs with output position len-1-t
            for (int t = 0; t < len; ++t) ph += trace[cd[t] * q + yd[len - 1 - t]];
            ph = ((sign * ph) % p + p) % p;
            sum += values[c] * roots[ph];
        }
        out[y] = sum * weight;
    }
    if (counter) counter->multiplies += dim * dim + dim;
    return out;
}

std::vector<cplx> dual_values_fast(const Field& field, GridSpec in, std::span<const cplx> values, int sign,
                                   OpCounter* counter) {
    check_sign(sign);
    const auto dim = grid_dim(field, in);
    if (values.size() != dim) throw WindowError("value count does not match grid dimension");
    const auto q = field.q();
    const int len = in.digits();
    const auto kernel = pairing_kernel(field, sign);

    std::vector<cplx> cur(values.begin(), values.end());
    std::vector<cplx> tmp(q);
    std::uint64_t stride = 1;
    for (int t = 0; t < len; ++t) {
        const std::uint64_t block = stride * q;
        for (std::uint64_t base = 0; base < dim; base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                const std::uint64_t first = base + off;
                for (std::uint32_t b = 0; b < q; ++b) {
                    cplx acc{};
                    for (std::uint32_t a = 0; a < q; ++a) acc += kernel[a * q + b] * cur[first + a * stride];
                    tmp[b] = acc;
                }
                for (std::uint32_t b = 0; b < q; ++b) cur[first + b * stride] = tmp[b];
            }
        }
        stride = block;
    }

    // digit reversal, then the Haar weight
    const double weight = std::pow(static_cast<double>(q), -in.m);
    std::vector<cplx> out(dim);
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        std::uint64_t rev = 0;
        std::uint64_t rest = idx;
        for (int t = 0; t < len; ++t) {
            rev = rev * q + rest % q;
            rest /= q;
        }
        out[rev] = cur[idx] * weight;
    }
    if (counter) counter->multiplies += dim * q * static_cast<std::uint64_t>(len) + dim;
    return out;
}

FreqFn transform_naive(const TimeFn& f, OpCounter* counter) {
    const GridSpec g = f.grid();
    return FreqFn(f.field(), {g.m, g.s}, dual_values_naive(*f.field(), g, f.values(), -1, counter));
}

FreqFn transform_fast(const TimeFn& f, OpCounter* counter) {
    const GridSpec g = f.grid();
    return FreqFn(f.field(), {g.m, g.s}, dual_values_fast(*f.field(), g, f.values(), -1, counter));
}

TimeFn inverse_naive(const FreqFn& f, OpCounter* counter) {
    const GridSpec g = f.grid();
    return TimeFn(f.field(), {g.m, g.s}, dual_values_naive(*f.field(), g, f.values(), 1, counter));
}

TimeFn inverse_fast(const FreqFn& f, OpCounter* counter) {
    const GridSpec g = f.grid();
    return TimeFn(f.field(), {g.m, g.s}, dual_values_fast(*f.field(), g, f.values(), 1, counter));
}

}  // namespace umf
