#include "doctest.h"

#include "umf/extension.hpp"
#include "umf/random.hpp"
#include "umf/verify.hpp"

using namespace umf;

namespace {

const CheckEntry* entry(const FrameReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

Setup perturbed(Setup s, std::size_t mask, std::uint64_t cell, double by) {
    auto v = s.masks[mask].values();
    v[cell] += by;
    s.masks[mask] = FreqFn(s.field, s.masks[mask].grid(), std::move(v));
    return s;
}

}  // namespace

TEST_CASE("validate_setup") {
    const auto f2 = Field::prime(2);
    for (int nu = 0; nu <= 2; ++nu) CHECK(validate_setup(builtin("shannon", f2, nu, 1)).pass());

    auto s = builtin("shannon", f2, 0, 1);
    auto too_wide = s;
    too_wide.psi0_hat = indicator(f2, {3, s.psi0_hat.grid().m}, -3);
    const auto diag = validate_setup(too_wide);
    CHECK_FALSE(diag.pass());
    REQUIRE(diag.find("support") != nullptr);
    CHECK_FALSE(diag.find("support")->pass);
    CHECK_FALSE(diag.find("support")->cells.empty());
    CHECK(diag.structural());

    auto short_masks = s;
    short_masks.masks.pop_back();
    CHECK_FALSE(validate_setup(short_masks).find("arity")->pass);
    CHECK_FALSE(validate_setup(short_masks).structural());

    auto bad_ref = s;
    bad_ref.masks[0] = scale(bad_ref.masks[0], 0.5);
    CHECK_FALSE(validate_setup(bad_ref).find("refinement")->pass);

    auto bad_limit = s;
    bad_limit.psi0_hat = scale(s.psi0_hat, 0.5);
    CHECK_FALSE(validate_setup(bad_limit).find("small-ball")->pass);
}

TEST_CASE("uep_check") {
    const auto f2 = Field::prime(2);
    const auto ex = uep_check(builtin("paper-example-3.1", f2, 1, 1));
    CHECK_FALSE(ex.pass);
    CHECK(ex.max_residual == 2.0);
    for (const auto& [cell, res] : ex.cellwise) CHECK(res == 2.0);

    for (int nu = 0; nu <= 1; ++nu) {
        const auto sh = uep_check(builtin("shannon", f2, nu, 1));
        CHECK(sh.pass);
        CHECK(sh.max_residual < 1e-15);
    }
    const auto gf4 = Field::gf4();
    CHECK(uep_check(builtin("shannon", gf4, 0, 3)).pass);
    const auto corrected = uep_check(builtin("shannon-corrected-3.1", f2, 1, 3));
    CHECK(corrected.pass);
    CHECK(corrected.max_residual == 0.0);
    CHECK(uep_check(builtin("shannon-corrected-3.1", gf4, 0, 1)).pass);

    // |m_0| = 1 with the rest zero
    auto single = builtin("shannon", f2, 0, 1);
    single.masks[0] = FreqFn(f2, single.masks[0].grid(), std::vector<cplx>(single.masks[0].size(), 1.0));
    single.masks[1] = scale(single.masks[1], 0.0);
    CHECK(uep_check(single).pass);

    // strict mode looks at cells where psi0^ vanishes too
    const auto shannon = builtin("shannon", f2, 0, 1);
    CHECK(uep_check(shannon).cellwise.size() < uep_check(shannon, true).cellwise.size());

    auto short_masks = shannon;
    short_masks.masks.pop_back();
    CHECK_THROWS_AS(uep_check(short_masks), ParameterError);
}

TEST_CASE("synthesize") {
    const auto f2 = Field::prime(2);
    for (int nu = 0; nu <= 1; ++nu) {
        const auto s = builtin("shannon", f2, nu, 1);
        const auto sys = synthesize(s, -1, 2);
        CHECK(sys.j_min == -1);
        CHECK(sys.j_max == 2);
        REQUIRE(sys.wavelets.size() == s.arity() - 1);
        const double qn = static_cast<double>(s.arity());
        for (std::size_t l = 1; l < s.arity(); ++l) {
            const double direct = norm_sq(multiply(s.masks[l], s.psi0_hat));
            CHECK(std::abs(norm_sq(sys.wavelets[l - 1]) - qn * direct) < 1e-12);
            const auto ext = support_extent(sys.wavelets[l - 1]);
            CHECK_FALSE(ext.touches_zero);
            CHECK(ext.hi == 0);
            CHECK(ext.lo == 1 - s.lattice.d());
        }
    }
    auto zero = builtin("shannon", f2, 0, 1);
    zero.masks[1] = scale(zero.masks[1], 0.0);
    CHECK(support_extent(synthesize(zero, 0, 0).wavelets[0]).empty);
}

TEST_CASE("oep chain") {
    const auto f2 = Field::prime(2);
    for (const auto& f : {f2, Field::prime(3)}) {
        for (int nu = 0; nu <= 1; ++nu) {
            const auto [s, phi] = builtin_oep_instance(f, nu, 1);
            const auto chk = oep_check(s, phi);
            CHECK(chk.pass);
            CHECK(chk.max_residual <= 1e-12);
            CHECK_FALSE(uep_check(s).pass);

            const auto t = oep_normalize(s, phi);
            const auto u = uep_check(t);
            CHECK(u.pass);
            CHECK(u.max_residual <= 1e-12);
            const auto a = synthesize(s, 0, 0), b = synthesize(t, 0, 0);
            for (std::size_t l = 0; l < a.wavelets.size(); ++l) CHECK(max_abs_diff(a.wavelets[l], b.wavelets[l]) <= 1e-12);
            CHECK(std::abs(norm_sq(t.psi0_hat) - haar_integral(multiply(rewindow(phi, s.psi0_hat.grid()),
                                                                         multiply(s.psi0_hat, conj(s.psi0_hat))))
                                                     .real()) < 1e-12);
        }
    }
}

TEST_CASE("oep with phi = 1 is uep") {
    const auto f2 = Field::prime(2);
    const auto s = builtin("shannon", f2, 1, 1);
    const int d = s.lattice.d();
    const GridSpec g{s.masks[0].grid().s + d, s.masks[0].grid().m};
    const FreqFn one(f2, g, std::vector<cplx>(grid_dim(*f2, g), 1.0));
    CHECK(oep_check(s, one).pass);
    const auto t = oep_normalize(s, one);
    CHECK(t.psi0_hat == s.psi0_hat);
    for (std::size_t l = 0; l < s.masks.size(); ++l) CHECK(max_abs_diff(t.masks[l], s.masks[l]) == 0.0);

    const auto ex = builtin("paper-example-3.1", f2, 1, 1);
    const GridSpec ge{ex.masks[0].grid().s + d, ex.masks[0].grid().m};
    const FreqFn one_e(f2, ge, std::vector<cplx>(grid_dim(*f2, ge), 1.0));
    CHECK(oep_check(ex, one_e).max_residual == uep_check(ex).max_residual);
    CHECK_THROWS(oep_normalize(ex, one_e));
}

TEST_CASE("oep rejects bad weights and detects perturbations") {
    const auto f2 = Field::prime(2);
    const auto [s, phi] = builtin_oep_instance(f2, 0, 1);
    auto v = phi.values();
    v[3] = 0.0;
    CHECK_THROWS_AS(oep_check(s, FreqFn(f2, phi.grid(), v)), ParameterError);
    v[3] = cplx(1.0, 0.5);
    CHECK_THROWS_AS(oep_check(s, FreqFn(f2, phi.grid(), v)), ParameterError);
    CHECK_THROWS_AS(oep_check(s, rewindow(phi, {phi.grid().s - 1, phi.grid().m})), WindowError);

    // one mask cell moved by e changes the residual there by |2 m e + e^2|
    std::uint64_t cell = 0;
    while (s.psi0_hat[cell] == cplx{} || s.masks[1][cell] == cplx{}) ++cell;
    const double e = 1e-3;
    const double m = s.masks[1][cell].real();
    const auto bumped = oep_check(perturbed(s, 1, cell, e), phi);
    CHECK_FALSE(bumped.pass);
    CHECK(std::abs(bumped.max_residual - std::abs(2 * m * e + e * e)) < 1e-12);
}

TEST_CASE("builtins") {
    const auto f2 = Field::prime(2);
    CHECK(builtin_names().size() == 4);
    CHECK_THROWS_AS(builtin("nope", f2, 0, 1), InputError);
    CHECK_THROWS_AS(builtin("paper-example-3.1", f2, 0, 1), UnsupportedParameter);
    const auto ex = builtin("paper-example-3.1", f2, 1, 1);
    CHECK(ex.arity() == 4);
    CHECK(support_extent(ex.psi0_hat).hi == 3);
    const auto sh = builtin("shannon", f2, 0, 1);
    for (const auto& v : sh.psi0_hat.values()) CHECK((v == cplx(0.0) || v == cplx(1.0)));
}

TEST_CASE("verify: uniform Shannon certifies, wide Shannon does not") {
    const auto f2 = Field::prime(2);
    VerifyOptions opt;
    opt.trials = 10;
    opt.j_min = -1;
    opt.j_max = 1;
    const auto good = run_verify(builtin("shannon", f2, 0, 1), opt);
    CHECK(good.pass);
    for (const auto& c : good.checks) CHECK_MESSAGE(c.status == "pass", c.name);
    REQUIRE(good.parseval_residual.has_value());
    CHECK(*good.parseval_residual <= 1e-9);
    for (const auto& [j, r] : good.telescoping_residuals) CHECK(r <= 1e-10);
    CHECK(*good.bessel_max <= 1.0 + 1e-12);

    const auto wide = run_verify(builtin("shannon-wide", f2, 0, 1), opt);
    CHECK_FALSE(wide.pass);
    CHECK(entry(wide, "uep")->status == "pass");
    CHECK(entry(wide, "parseval")->status == "fail");
    CHECK(entry(wide, "closed-form")->status == "reported");

    const auto ex = run_verify(builtin("paper-example-3.1", f2, 1, 1), opt);
    CHECK_FALSE(ex.pass);
    CHECK(ex.uep_residual == 2.0);

    opt.trials = 0;
    const auto none = run_verify(builtin("shannon", f2, 0, 1), opt);
    CHECK(none.checks.empty());
    CHECK_FALSE(none.A.has_value());
}

TEST_CASE("verify: nonuniform Shannon reports without asserting Parseval") {
    const auto f2 = Field::prime(2);
    VerifyOptions opt;
    opt.trials = 5;
    opt.j_min = -1;
    opt.j_max = 1;
    for (std::int64_t r : {1, 3}) {
        const auto rep = run_verify(builtin("shannon", f2, 1, r), opt);
        CHECK(rep.pass);
        REQUIRE(rep.A.has_value());
        CHECK(std::abs(*rep.A - 2.0) < 1e-9);
        CHECK(std::abs(*rep.B - 2.0) < 1e-9);
        CHECK(entry(rep, "parseval")->status == "reported");
        CHECK(entry(rep, "coefficient-routes")->status == "pass");
        for (const auto& [j, res] : rep.telescoping_residuals) CHECK(res <= 1e-10);
        CHECK(report_to_json(rep).dump() == report_to_json(run_verify(builtin("shannon", f2, 1, r), opt)).dump());
    }
}
