#include "doctest.h"

#include "umf/grid_fn.hpp"
#include "umf/random.hpp"

using namespace umf;

namespace {

std::vector<std::uint64_t> all_cells(const Field& f, GridSpec g) {
    std::vector<std::uint64_t> cells(grid_dim(f, g));
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = i;
    return cells;
}

bool close(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("cell addressing round-trips") {
    const auto f = Field::make({3, 2, find_irreducible(3, 2)});
    const GridSpec g{2, 1};
    for (std::uint64_t i = 0; i < grid_dim(*f, g); ++i) {
        const auto rep = cell_rep(f, g, i);
        CHECK(cell_index(*f, g, rep) == i);
        const auto ne = cell_norm_exponent(*f, g, i);
        if (i == 0) CHECK_FALSE(ne.has_value());
        else CHECK(*ne == *rep.norm_exponent());
    }
    CHECK_FALSE(cell_index(*f, g, KElem::monomial(f, 1, -3)).has_value());
    CHECK_THROWS_AS(grid_dim(*f, {0, 0}), WindowError);
    CHECK_THROWS_AS(grid_dim(*Field::prime(2), {20, 20}), WindowError);
}

TEST_CASE("indicator integrals") {
    const auto f2 = Field::prime(2);
    CHECK(haar_integral(indicator(f2, {1, 1}, 0)) == cplx(1.0));
    CHECK(haar_integral(indicator(f2, {2, 0}, -1)) == cplx(2.0));
    CHECK(haar_integral(indicator(f2, {2, 3}, 3)) == cplx(0.125));
    CHECK_THROWS_AS(indicator(f2, {2, 3}, 4), WindowError);
    CHECK_THROWS_AS(indicator(f2, {2, 3}, -3), WindowError);
    const auto one = indicator(f2, {1, 1}, 0);
    CHECK(inner(one, one) == cplx(1.0));
}

TEST_CASE("character orthogonality through modulate") {
    const auto f2 = Field::prime(2);
    const auto d = indicator(f2, {1, 2}, 0);
    const auto a = modulate(d, coset_rep(f2, 1));
    const auto b = modulate(d, coset_rep(f2, 2));
    CHECK(std::abs(inner(a, b)) < 1e-15);
    CHECK(inner(a, a) == cplx(1.0));
}

TEST_CASE("refine preserves integrals and norms") {
    const auto f = Field::gf4();
    SplitMix64 rng(5);
    for (int t = 0; t < 1000; ++t) {
        const GridSpec g{1, 1};
        const auto x = random_test_function(f, g, all_cells(*f, g), rng);
        const auto y = refine(x, {2, 2});
        CHECK(close(haar_integral(x), haar_integral(y)));
        CHECK(std::abs(norm_sq(x) - norm_sq(y)) < 1e-12);
    }
    const auto x = indicator(f, {1, 1}, 0);
    CHECK(refine(x, x.grid()) == x);
    CHECK_THROWS_AS(refine(x, {0, 1}), WindowError);
    CHECK_THROWS_AS(refine(x, {1, 0}), WindowError);
}

TEST_CASE("rewindow") {
    const auto f2 = Field::prime(2);
    const auto x = indicator(f2, {3, 2}, -1);
    const auto y = rewindow(x, {1, 3});
    CHECK(y.grid() == GridSpec{1, 3});
    CHECK(haar_integral(y) == cplx(2.0));
    const auto z = rewindow(indicator(f2, {1, 1}, 0), {3, 1});
    CHECK(haar_integral(z) == cplx(1.0));
}

TEST_CASE("modulate") {
    const auto f2 = Field::prime(2);
    const auto x = indicator(f2, {1, 1}, -1);
    const auto y = modulate(x, coset_rep(f2, 1));
    CHECK(evaluate(y, KElem::one(f2)) == cplx(-1.0));
    CHECK(evaluate(y, KElem(f2)) == cplx(1.0));
    CHECK(modulate(x, KElem(f2)) == x);
    CHECK(std::abs(norm_sq(y) - norm_sq(x)) < 1e-15);
    CHECK_THROWS_AS(modulate(x, KElem::monomial(f2, 1, -2)), WindowError);
}

TEST_CASE("frequency dilation") {
    const auto f2 = Field::prime(2);
    const auto x = indicator(f2, {1, 1}, -1);
    const auto y = freq_dilate(x, 1, 1);
    CHECK(y.grid() == GridSpec{3, -1});
    CHECK(haar_integral(y) == cplx(4.0));  // twice the original integral
    CHECK(std::abs(norm_sq(y) - norm_sq(x)) < 1e-15);
    const auto w = compact(y);
    CHECK(support_extent(w).hi == 3);
    CHECK(freq_dilate(x, 0, 1) == x);

    const auto f = Field::make({3, 1, {}});
    SplitMix64 rng(9);
    const GridSpec g{2, 2};
    for (int t = 0; t < 50; ++t) {
        const auto h = random_test_function(f, g, all_cells(*f, g), rng);
        const int j1 = static_cast<int>(rng.below(3)) - 1, j2 = static_cast<int>(rng.below(3)) - 1;
        const auto a = freq_dilate(freq_dilate(h, j1, 0), j2, 0);
        const auto b = freq_dilate(h, j1 + j2, 0);
        CHECK(max_abs_diff(a, b) < 1e-12);
        CHECK(std::abs(norm_sq(a) - 1.0) < 1e-12);
    }
}

TEST_CASE("dilation and modulation commute up to rescaling the frequency") {
    // freq_dilate(modulate(f, lam), j) = modulate(freq_dilate(f, j), p^{d j} lam)
    const auto f = Field::prime(2);
    SplitMix64 rng(21);
    for (int nu = 0; nu <= 1; ++nu) {
        const int d = 1 + nu;
        const GridSpec g{2, 3};
        for (int t = 0; t < 100; ++t) {
            const auto h = random_test_function(f, g, all_cells(*f, g), rng);
            const auto lam = coset_rep(f, rng.below(8));
            const int j = static_cast<int>(rng.below(3)) - 1;
            const auto lhs = freq_dilate(modulate(h, lam), j, nu);
            const auto rhs = modulate(freq_dilate(h, j, nu), k_shift(lam, d * j));
            CHECK(lhs.grid() == rhs.grid());
            CHECK(lhs.values() == rhs.values());
        }
    }
}

TEST_CASE("periodization") {
    const auto f2 = Field::prime(2);
    const auto x = indicator(f2, {3, 1}, -3);
    const auto p = periodize(x, 1);
    CHECK(p.grid() == GridSpec{1, 1});
    for (const auto& v : p.values()) CHECK(v == cplx(4.0));

    SplitMix64 rng(2);
    const GridSpec g{3, 2};
    for (int t = 0; t < 100; ++t) {
        const auto h = random_test_function(f2, g, all_cells(*f2, g), rng);
        for (int nu = 0; nu <= 2; ++nu) CHECK(close(haar_integral(periodize(h, nu)), haar_integral(h)));
    }
}

TEST_CASE("ball Fourier coefficients") {
    const auto f2 = Field::prime(2);
    const auto d = indicator(f2, {1, 3}, 0);
    const auto e5 = modulate(d, coset_rep(f2, 5));
    for (std::uint64_t n = 0; n < 8; ++n) CHECK(close(ball_fourier_coeff(e5, 0, n), n == 5 ? 1.0 : 0.0));

    // Parseval on B^k
    const auto f = Field::make({3, 1, {}});
    SplitMix64 rng(4);
    const GridSpec g{1, 2};
    std::vector<std::uint64_t> inside;
    for (std::uint64_t i = 0; i < grid_dim(*f, g); ++i)
        if (i % 9 == 0 || (cell_norm_exponent(*f, g, i).value_or(-9) <= 1)) inside.push_back(i);
    for (int t = 0; t < 20; ++t) {
        const auto h = random_test_function(f, g, inside, rng);
        double s = 0.0;
        for (std::uint64_t n = 0; n < 27; ++n) s += std::norm(ball_fourier_coeff(h, -1, n));
        CHECK(std::abs(s - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(ball_fourier_coeff(d, 0, 8), WindowError);
    CHECK_THROWS_AS(ball_fourier_coeff(indicator(f2, {1, 3}, -1), 0, 0), AssumptionError);
}

TEST_CASE("pointwise algebra and compact") {
    const auto f2 = Field::prime(2);
    const auto a = indicator(f2, {2, 2}, -1), b = indicator(f2, {1, 1}, 0);
    CHECK(haar_integral(multiply(a, b)) == cplx(1.0));
    CHECK(haar_integral(subtract(a, b)) == cplx(1.0));
    CHECK(haar_integral(add(a, scale(b, 2.0))) == cplx(4.0));
    CHECK(conj(scale(a, cplx(0, 1)))[0] == cplx(0, -1));
    CHECK(max_abs_diff(a, rewindow(a, {3, 3})) == 0.0);
    const auto c = compact(a);
    CHECK(c.grid() == GridSpec{2, -1});
    CHECK(c.size() == 2);
    CHECK(max_abs_diff(c, a) == 0.0);
    const auto ext = support_extent(subtract(a, b));
    CHECK_FALSE(ext.empty);
    CHECK_FALSE(ext.touches_zero);
    CHECK(ext.lo == 1);
    CHECK(ext.hi == 1);
    CHECK(support_extent(FreqFn::zeros(f2, {1, 1})).empty);
    CHECK_THROWS_AS(add(a, indicator(Field::gf4(), {1, 1}, 0)), ParameterError);
}
