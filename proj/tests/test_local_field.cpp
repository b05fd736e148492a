#include "doctest.h"

#include <set>

#include "umf/grid_fn.hpp"
#include "umf/local_field.hpp"
#include "umf/random.hpp"

using namespace umf;

namespace {

KElem mono(const FieldPtr& f, int e, std::uint32_t d = 1) { return KElem::monomial(f, d, e); }

KElem random_elem(const FieldPtr& f, SplitMix64& rng, int lo, int hi) {
    std::vector<KElem::Term> terms;
    for (int e = lo; e <= hi; ++e) {
        const auto d = static_cast<std::uint32_t>(rng.below(f->q()));
        if (d != 0) terms.emplace_back(e, d);
    }
    return KElem(f, terms);
}

}  // namespace

TEST_CASE("addition and multiplication examples") {
    const auto f2 = Field::prime(2);
    CHECK((mono(f2, -1) + mono(f2, -1)).is_zero());
    const auto s = mono(f2, -2) + mono(f2, -1);
    CHECK(s.terms() == std::vector<KElem::Term>{{-2, 1}, {-1, 1}});
    CHECK(mono(f2, -1) * mono(f2, 2) == mono(f2, 1));
    const auto x = mono(f2, -1) + KElem::one(f2);
    CHECK(x * x == mono(f2, -2) + KElem::one(f2));
    CHECK_THROWS_AS(mono(f2, 0) + mono(Field::gf4(), 0), ParameterError);
    CHECK(KElem(f2).valuation() == std::nullopt);
    CHECK(KElem(f2).norm() == 0.0);
    CHECK(mono(f2, -3).norm() == 8.0);
}

TEST_CASE("coset representatives") {
    const auto f2 = Field::prime(2);
    CHECK(coset_rep(f2, 0).is_zero());
    CHECK(coset_rep(f2, 1) == mono(f2, -1));
    CHECK(coset_rep(f2, 3) == mono(f2, -1) + mono(f2, -2));
    CHECK(coset_rep(f2, 5) == mono(f2, -1) + mono(f2, -3));
    for (std::uint64_t n = 0; n < 300; ++n) CHECK(coset_index(coset_rep(f2, n)) == n);
}

TEST_CASE("character examples") {
    const auto f2 = Field::prime(2);
    CHECK(character(mono(f2, -1)).value() == std::complex<double>(-1.0, 0.0));
    CHECK(character(mono(f2, -2)).value() == std::complex<double>(1.0, 0.0));
    CHECK(pair_character(coset_rep(f2, 1), coset_rep(f2, 1)).phase == 0);
    CHECK(pair_character(KElem(f2), coset_rep(f2, 7)).phase == 0);
    CHECK(pair_character(KElem::one(f2), coset_rep(f2, 1)).phase == 1);

    SplitMix64 rng(3);
    const auto f9 = Field::make({3, 2, find_irreducible(3, 2)});
    for (int t = 0; t < 1000; ++t) {
        CHECK(character(random_elem(f9, rng, 0, 6)).phase == 0);
        const auto v = character(random_elem(f9, rng, -4, 4)).value();
        CHECK(std::abs(std::pow(v, 3) - 1.0) < 1e-12);
    }
}

TEST_CASE("period embedding and lattice offset") {
    const auto f2 = Field::prime(2);
    CHECK(embed_period(f2, 0) == KElem::one(f2));
    CHECK(embed_period(f2, 2) == mono(f2, -2));
    CHECK(lattice_offset(f2, 0, 1) == coset_rep(f2, 1));
    CHECK(lattice_offset(f2, 1, 1) == KElem::one(f2));
    CHECK(lattice_offset(f2, 1, 3) == KElem::one(f2) + mono(f2, -1));
    CHECK(lattice_offset(f2, 2, 7).norm() <= 2.0);
    CHECK_THROWS_AS(lattice_offset(f2, 1, 2), ParameterError);
    CHECK_THROWS_AS(lattice_offset(f2, 1, 4), ParameterError);
    CHECK_THROWS_AS(lattice_offset(f2, 1, 0), ParameterError);
    CHECK_THROWS_AS(lattice_offset(Field::prime(3), 1, 3), ParameterError);  // gcd(3, 3) = 3
    CHECK(period_exponent(f2, 8) == 3);
    CHECK_THROWS_AS(period_exponent(f2, 6), UnsupportedParameter);
    CHECK_THROWS_AS(period_exponent(Field::prime(3), 2), UnsupportedParameter);
}

TEST_CASE("algebraic laws on random pairs") {
    SplitMix64 rng(17);
    for (const auto& f : {Field::prime(2), Field::gf4(), Field::prime(5)}) {
        int bad = 0;
        for (int t = 0; t < 10000; ++t) {
            const auto x = random_elem(f, rng, -5, 5), y = random_elem(f, rng, -5, 5);
            bad += !((x + y).norm() <= std::max(x.norm(), y.norm()));
            bad += !((x * y).norm() == x.norm() * y.norm());
            bad += !(character(x + y) == character(x) * character(y));
            bad += !(x - y + y == x);
            const auto r = rng.below(50), s = rng.below(f->q());
            const int k = 1 + static_cast<int>(rng.below(3));
            std::uint64_t qk = 1;
            for (int i = 0; i < k; ++i) qk *= f->q();
            if (s < qk) bad += !(coset_rep(f, r * qk + s) == k_shift(coset_rep(f, r), -k) + coset_rep(f, s));
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("translates permute the coset representatives") {
    const auto f = Field::gf4();
    const std::uint64_t count = 64;
    for (std::uint64_t l = 0; l < count; ++l) {
        std::set<std::uint64_t> seen;
        for (std::uint64_t k = 0; k < count; ++k) seen.insert(coset_index(coset_rep(f, l) + coset_rep(f, k)));
        CHECK(seen.size() == count);
        CHECK(*seen.rbegin() < count);
    }
}

TEST_CASE("character orthogonality on D") {
    // integral over D of chi_{u(n)} conj(chi_{u(n')}) as an exact grid sum on (0, m)
    const auto f = Field::prime(3);
    const GridSpec g{0, 2};
    const auto dim = grid_dim(*f, g);
    for (std::uint64_t n = 0; n < 9; ++n) {
        for (std::uint64_t n2 = 0; n2 < 9; ++n2) {
            std::complex<double> s{};
            for (std::uint64_t c = 0; c < dim; ++c) {
                const auto x = cell_rep(f, g, c);
                s += pair_character(coset_rep(f, n), x).value() * std::conj(pair_character(coset_rep(f, n2), x).value());
            }
            s /= static_cast<double>(dim);
            CHECK(std::abs(s - (n == n2 ? 1.0 : 0.0)) < 1e-12);
        }
    }
}
