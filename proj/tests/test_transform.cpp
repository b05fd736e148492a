#include "doctest.h"

#include "oracle.hpp"
#include "umf/random.hpp"
#include "umf/transform.hpp"

using namespace umf;

namespace {

std::vector<cplx> random_values(std::size_t n, SplitMix64& rng) {
    std::vector<cplx> v(n);
    for (auto& x : v) x = rng.complex_normal();
    return v;
}

// Unit L2 norm on grid g: q^{-m} sum |v|^2 = 1.
std::vector<cplx> unit_values(const Field& f, GridSpec g, SplitMix64& rng) {
    auto v = random_values(grid_dim(f, g), rng);
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    const double scale = 1.0 / std::sqrt(s * std::pow(static_cast<double>(f.q()), -g.m));
    for (auto& x : v) x *= scale;
    return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Every split of the digit count into (s, m) for dims q, q^2, ... up to cap.
std::vector<GridSpec> grids_up_to(std::uint32_t q, std::uint64_t cap) {
    std::vector<GridSpec> out;
    std::uint64_t dim = q;
    for (int L = 1; dim <= cap; ++L, dim *= q) {
        if (dim >= 1024) {
            for (int s : {-1, L / 2, L + 1}) out.push_back({s, L - s});
        } else {
            for (int s = -1; s <= L + 1; ++s) out.push_back({s, L - s});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("naive kernel matches the character oracle") {
    SplitMix64 rng(1);
    for (const auto& f : {Field::prime(2), Field::prime(3), Field::gf4()}) {
        for (const GridSpec g : {GridSpec{1, 1}, GridSpec{2, 0}, GridSpec{0, 2}, GridSpec{2, 1}, GridSpec{-1, 3}}) {
            const auto v = random_values(grid_dim(*f, g), rng);
            for (int sign : {-1, 1}) {
                CHECK(max_diff(dual_values_naive(*f, g, v, sign), oracle::character_sum(f, g, v, sign)) < 1e-12);
            }
        }
    }
}

TEST_CASE("fast transform equals naive on every grid up to 4096 cells") {
    SplitMix64 rng(2);
    for (const auto& f : {Field::prime(2), Field::prime(3), Field::gf4(), Field::prime(5)}) {
        for (const GridSpec g : grids_up_to(f->q(), 4096)) {
            const auto v = unit_values(*f, g, rng);
            for (int sign : {-1, 1}) {
                CHECK(max_diff(dual_values_fast(*f, g, v, sign), dual_values_naive(*f, g, v, sign)) < 1e-12);
            }
        }
    }
}

TEST_CASE("Plancherel and inversion") {
    SplitMix64 rng(3);
    const auto f = Field::prime(3);
    const GridSpec g{2, 2};
    double worst = 0.0, worst_inv = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const TimeFn x(f, g, random_values(grid_dim(*f, g), rng));
        const auto xh = transform_fast(x);
        CHECK(xh.grid() == GridSpec{2, 2});
        worst = std::max(worst, std::abs(norm_sq(xh) - norm_sq(x)) / norm_sq(x));
        worst_inv = std::max(worst_inv, max_diff(inverse_fast(xh).values(), x.values()));
    }
    CHECK(worst <= 1e-12);
    CHECK(worst_inv <= 1e-12);
    const TimeFn y(f, {1, 3}, random_values(81, rng));
    CHECK(max_diff(inverse_naive(transform_naive(y)).values(), y.values()) < 1e-12);
    CHECK(transform_naive(y).grid() == GridSpec{3, 1});
}

TEST_CASE("indicator of D is self-dual; a unit mass at 0 maps to 1") {
    for (const auto& f : {Field::prime(2), Field::gf4()}) {
        const auto d = indicator(f, {1, 1}, 0);
        const TimeFn x(f, {1, 1}, d.values());
        CHECK(max_diff(transform_fast(x).values(), d.values()) < 1e-15);
        CHECK(max_diff(transform_naive(x).values(), d.values()) < 1e-15);

        const GridSpec g{1, 2};
        std::vector<cplx> delta(grid_dim(*f, g));
        delta[0] = std::pow(static_cast<double>(f->q()), 2);
        const auto ones = transform_fast(TimeFn(f, g, delta));
        for (const auto& v : ones.values()) CHECK(std::abs(v - 1.0) < 1e-15);
    }
}

TEST_CASE("sign convention: forward kernel is chi(-xi x)") {
    const auto f = Field::prime(3);
    const GridSpec g{1, 1};
    std::vector<cplx> delta(9);
    const std::uint64_t cell = 4;  // x = 1 + p^{-1}
    delta[cell] = 3.0;
    const auto xh = transform_naive(TimeFn(f, g, delta));
    const auto x = cell_rep(f, g, cell);
    for (std::uint64_t i = 0; i < 9; ++i) {
        const auto xi = cell_rep(f, {1, 1}, i);
        CHECK(std::abs(xh[i] - pair_character(-xi, x).value()) < 1e-15);
    }
}

TEST_CASE("multiply counts") {
    const auto f = Field::prime(2);
    SplitMix64 rng(4);
    for (int L = 1; L <= 12; ++L) {
        const GridSpec g{L / 2, L - L / 2};
        const auto dim = grid_dim(*f, g);
        const TimeFn x(f, g, random_values(dim, rng));
        OpCounter naive, fast;
        transform_naive(x, &naive);
        transform_fast(x, &fast);
        CHECK(naive.multiplies == dim * dim + dim);
        CHECK(fast.multiplies == 2 * dim * L + dim);
        CHECK(fast.multiplies <= 4 * dim * L * 2);
    }
    OpCounter c3;
    transform_fast(TimeFn(Field::prime(3), {1, 0}, {1.0, 2.0, 3.0}), &c3);
    CHECK(c3.multiplies == 3 * 3 + 3);
}
