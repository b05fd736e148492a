#include "umf/extension.hpp"

#include <algorithm>
#include <cmath>

namespace umf {

namespace {

std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

GridSpec setup_grid(const Setup& s) {
    GridSpec g = s.psi0_hat.grid();
    for (const auto& m : s.masks) g = common_grid(g, m.grid());
    return g;
}

std::vector<double> mask_energy(const Setup& s, GridSpec grid, std::size_t first) {
    std::vector<double> out(grid_dim(*s.field, grid), 0.0);
    for (std::size_t l = first; l < s.masks.size(); ++l) {
        const auto v = refine_values(*s.field, s.masks[l].grid(), s.masks[l].values(), grid);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += std::norm(v[i]);
    }
    return out;
}

void require_structure(const Setup& s) {
    const auto diag = validate_setup(s);
    if (!diag.structural()) {
        for (const auto& c : diag.checks) {
            if (!c.pass && (c.name == "field" || c.name == "arity")) throw ParameterError("invalid setup: " + c.detail);
        }
    }
}

// Back onto the original window when the values allow it.
FreqFn restore_window(const FreqFn& f, GridSpec original) {
    if (f.grid() == original) return f;
    const FreqFn c = compact(f);
    if (c.grid().m <= original.m && c.grid().s <= original.s) return rewindow(c, original);
    return f;
}

// phi must be real and strictly positive on its whole window.
void check_weight(const FreqFn& phi, double tol) {
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (std::abs(phi[i].imag()) > tol || phi[i].real() <= 0.0) {
            throw ParameterError("OEP weight must be strictly positive (cell " + std::to_string(i) + ")");
        }
    }
}

}  // namespace

std::uint64_t Setup::arity() const { return ipow(field->q(), lattice.d()); }

bool SetupDiagnostics::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

bool SetupDiagnostics::structural() const {
    for (const auto& c : checks) {
        if ((c.name == "field" || c.name == "arity") && !c.pass) return false;
    }
    return true;
}

const CheckResult* SetupDiagnostics::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

SetupDiagnostics validate_setup(const Setup& s, double tol) {
    SetupDiagnostics diag;

    CheckResult field{"field", true, "", s.psi0_hat.grid(), {}};
    if (!s.psi0_hat.field()->same_as(*s.field) || !s.lattice.sigma.field()->same_as(*s.field)) field.pass = false;
    for (std::size_t l = 0; l < s.masks.size(); ++l) {
        if (!s.masks[l].field()->same_as(*s.field)) {
            field.pass = false;
            field.cells.push_back(l);
        }
    }
    if (!field.pass) field.detail = "functions over different fields";
    diag.checks.push_back(field);

    CheckResult arity{"arity", s.masks.size() == s.arity(), "", s.psi0_hat.grid(), {}};
    if (!arity.pass) {
        arity.detail = "expected " + std::to_string(s.arity()) + " masks, got " + std::to_string(s.masks.size());
    }
    diag.checks.push_back(arity);
    if (!field.pass) return diag;

    // supp psi0^ within B^{-(2+nu)}
    const int bound = 2 + s.lattice.nu;
    CheckResult support{"support", true, "", s.psi0_hat.grid(), {}};
    for (std::uint64_t idx = 0; idx < s.psi0_hat.size(); ++idx) {
        if (std::abs(s.psi0_hat[idx]) <= tol) continue;
        const auto e = cell_norm_exponent(*s.field, s.psi0_hat.grid(), idx);
        if (e && *e > bound) support.cells.push_back(idx);
    }
    support.pass = support.cells.empty();
    if (!support.pass) support.detail = "psi0_hat reaches beyond |xi| <= q^" + std::to_string(bound);
    diag.checks.push_back(support);

    // psi0^(p^-d xi) = m_0(xi) psi0^(xi)
    CheckResult refinement{"refinement", true, "", s.psi0_hat.grid(), {}};
    if (!s.masks.empty()) {
        const FreqFn lhs = compose_dilation(s.psi0_hat, -s.lattice.d());
        const FreqFn rhs = multiply(s.masks[0], s.psi0_hat);
        const GridSpec g = common_grid(lhs.grid(), rhs.grid());
        const auto a = refine_values(*s.field, lhs.grid(), lhs.values(), g);
        const auto b = refine_values(*s.field, rhs.grid(), rhs.values(), g);
        refinement.grid = g;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (std::abs(a[i] - b[i]) > tol) refinement.cells.push_back(i);
        }
        refinement.pass = refinement.cells.empty();
        if (!refinement.pass) refinement.detail = "refinement law fails on " + std::to_string(refinement.cells.size()) + " cells";
    } else {
        refinement.pass = false;
        refinement.detail = "no low-pass mask";
    }
    diag.checks.push_back(refinement);

    CheckResult small{"small-ball", std::abs(s.psi0_hat[0] - cplx(1.0)) <= tol, "", s.psi0_hat.grid(), {}};
    if (!small.pass) {
        small.cells.push_back(0);
        small.detail = "psi0_hat is not 1 on the finest ball around 0";
    }
    diag.checks.push_back(small);
    return diag;
}

ResidualReport uep_check(const Setup& s, bool strict, double tol) {
    require_structure(s);
    ResidualReport rep;
    rep.strict = strict;
    rep.grid = setup_grid(s);
    const auto energy = mask_energy(s, rep.grid, 0);
    const auto psi0 = refine_values(*s.field, s.psi0_hat.grid(), s.psi0_hat.values(), rep.grid);
    for (std::size_t i = 0; i < energy.size(); ++i) {
        if (!strict && psi0[i] == cplx{}) continue;
        const double r = std::abs(energy[i] - 1.0);
        rep.cellwise.emplace_back(i, r);
        rep.max_residual = std::max(rep.max_residual, r);
    }
    rep.pass = rep.max_residual <= tol;
    return rep;
}

WaveletSystem synthesize(const Setup& s, int j_min, int j_max) {
    require_structure(s);
    std::vector<FreqFn> wavelets;
    for (std::size_t l = 1; l < s.masks.size(); ++l) {
        wavelets.push_back(compact(compose_dilation(multiply(s.masks[l], s.psi0_hat), s.lattice.d())));
    }
    return WaveletSystem{s.field, s.lattice, s.psi0_hat, std::move(wavelets), j_min, j_max};
}

ResidualReport oep_check(const Setup& s, const FreqFn& phi, bool strict, double tol) {
    require_structure(s);
    if (!phi.field()->same_as(*s.field)) throw ParameterError("weight over a different field");
    check_weight(phi, tol);
    const int d = s.lattice.d();
    const GridSpec masks = setup_grid(s);
    if (phi.grid().s < masks.s + d) {
        throw WindowError("weight window must reach |xi| <= q^" + std::to_string(masks.s + d));
    }
    const FreqFn phi_up = compact(compose_dilation(phi, -d));  // xi -> phi(p^-d xi)
    ResidualReport rep;
    rep.strict = strict;
    rep.grid = {masks.s, std::max({masks.m, phi.grid().m, phi_up.grid().m})};
    const auto m0 = refine_values(*s.field, s.masks[0].grid(), s.masks[0].values(), rep.grid);
    const auto high = mask_energy(s, rep.grid, 1);
    const auto w = rewindow_values(*s.field, phi.grid(), phi.values(), rep.grid);
    const auto w_up = rewindow_values(*s.field, phi_up.grid(), phi_up.values(), rep.grid);
    const auto psi0 = refine_values(*s.field, s.psi0_hat.grid(), s.psi0_hat.values(), rep.grid);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!strict && psi0[i] == cplx{}) continue;
        const double r = std::abs(w_up[i].real() * std::norm(m0[i]) + high[i] - w[i].real());
        rep.cellwise.emplace_back(i, r);
        rep.max_residual = std::max(rep.max_residual, r);
    }
    rep.pass = rep.max_residual <= tol;
    return rep;
}

Setup oep_normalize(const Setup& s, const FreqFn& phi, double tol) {
    const auto check = oep_check(s, phi, false, tol);
    if (!check.pass) throw AssumptionError("OEP identity fails, residual " + std::to_string(check.max_residual));
    const int d = s.lattice.d();
    const FieldPtr& field = s.field;

    auto pointwise = [&](const FreqFn& f, const FreqFn& weight, auto op) {
        const GridSpec g = common_grid(f.grid(), {f.grid().s, weight.grid().m});
        const auto a = refine_values(*field, f.grid(), f.values(), g);
        const auto w = rewindow_values(*field, weight.grid(), weight.values(), g);
        std::vector<cplx> out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * op(w[i].real());
        return restore_window(FreqFn(field, g, std::move(out)), f.grid());
    };

    Setup out{field, s.lattice, pointwise(s.psi0_hat, phi, [](double w) { return std::sqrt(w); }), {}};

    // m~_0 = sqrt(phi(p^-d xi) / phi(xi)) m_0
    const FreqFn phi_up = compact(compose_dilation(phi, -d));
    const GridSpec g0 = {s.masks[0].grid().s, std::max({s.masks[0].grid().m, phi.grid().m, phi_up.grid().m})};
    const auto w = rewindow_values(*field, phi.grid(), phi.values(), g0);
    const auto w_up = rewindow_values(*field, phi_up.grid(), phi_up.values(), g0);
    auto m0 = refine_values(*field, s.masks[0].grid(), s.masks[0].values(), g0);
    for (std::size_t i = 0; i < m0.size(); ++i) m0[i] *= std::sqrt(w_up[i].real() / w[i].real());
    out.masks.push_back(restore_window(FreqFn(field, g0, std::move(m0)), s.masks[0].grid()));
    for (std::size_t l = 1; l < s.masks.size(); ++l) {
        out.masks.push_back(pointwise(s.masks[l], phi, [](double v) { return 1.0 / std::sqrt(v); }));
    }

    // postconditions
    const auto uep = uep_check(out, false, tol);
    if (!uep.pass) throw AssumptionError("normalized masks violate the UEP identity");
    const auto before = support_extent(s.psi0_hat);
    const auto after = support_extent(out.psi0_hat);
    if (before.empty != after.empty || before.hi != after.hi || before.touches_zero != after.touches_zero) {
        throw AssumptionError("normalization changed the support of psi0_hat");
    }
    const auto diag = validate_setup(out, tol);
    const auto orig = validate_setup(s, tol);
    if (orig.find("refinement")->pass && !diag.find("refinement")->pass) {
        throw AssumptionError("normalized setup breaks the refinement law");
    }
    if (orig.find("small-ball")->pass && !diag.find("small-ball")->pass) {
        throw AssumptionError("normalized psi0_hat is not 1 near 0");
    }
    const auto a = synthesize(s, 0, -1);
    const auto b = synthesize(out, 0, -1);
    for (std::size_t l = 0; l < a.wavelets.size(); ++l) {
        if (max_abs_diff(a.wavelets[l], b.wavelets[l]) > tol) {
            throw AssumptionError("re-synthesized wavelet " + std::to_string(l + 1) + " differs");
        }
    }
    return out;
}

std::vector<std::string> builtin_names() {
    return {"paper-example-3.1", "shannon", "shannon-corrected-3.1", "shannon-wide"};
}

namespace {

FreqFn ball(const FieldPtr& field, GridSpec grid, int k) { return indicator(field, grid, k); }

FreqFn constant(const FieldPtr& field, GridSpec grid, cplx v) {
    return FreqFn(field, grid, std::vector<cplx>(grid_dim(*field, grid), v));
}

// psi0^ = 1_{B^inner}, m_0 = 1_{B^{inner+d}}, high-pass masks share the shell.
Setup shannon_type(const FieldPtr& field, const LatticeParams& lat, GridSpec grid, int inner) {
    const int d = lat.d();
    const FreqFn psi0 = ball(field, grid, inner);
    const FreqFn m0 = ball(field, grid, inner + d);
    const FreqFn shell = subtract(psi0, m0);
    const std::uint64_t qn = ipow(field->q(), d);
    Setup s{field, lat, psi0, {m0}};
    const double amp = 1.0 / std::sqrt(static_cast<double>(qn - 1));
    for (std::uint64_t l = 1; l < qn; ++l) s.masks.push_back(scale(shell, amp));
    return s;
}

Setup printed_masks(const FieldPtr& field, const LatticeParams& lat, bool corrected) {
    const int nu = lat.nu;
    if (ipow(field->q(), lat.d()) != 4) throw UnsupportedParameter("the printed-mask setups need qN = 4");
    // psi0^ = 1_{q^2 N D}, m_0 = 1_{q^3 N^2 D}, m_1 = its complement, m_2 = 1, m_3 = i
    const GridSpec grid{3 + 2 * nu, 2 * lat.d()};
    const FreqFn psi0 = ball(field, grid, -(2 + nu));
    const FreqFn m0 = ball(field, grid, -(3 + 2 * nu));
    const FreqFn m1 = subtract(constant(field, grid, 1.0), m0);
    const FreqFn m2 = constant(field, grid, corrected ? 0.0 : 1.0);
    const FreqFn m3 = constant(field, grid, corrected ? cplx{} : cplx(0.0, 1.0));
    return Setup{field, lat, psi0, {m0, m1, m2, m3}};
}

}  // namespace

Setup builtin(const std::string& name, const FieldPtr& field, int nu, std::int64_t r) {
    const LatticeParams lat = make_lattice(field, nu, r);
    const int d = lat.d();
    if (name == "paper-example-3.1") return printed_masks(field, lat, false);
    if (name == "shannon-corrected-3.1") return printed_masks(field, lat, true);
    if (name == "shannon") return shannon_type(field, lat, {2 + nu, 2 * d}, d);
    if (name == "shannon-wide") return shannon_type(field, lat, {2 + nu, 2 * d}, -(2 + nu));
    throw InputError("unknown builtin '" + name + "'");
}

std::pair<Setup, FreqFn> builtin_oep_instance(const FieldPtr& field, int nu, std::int64_t r) {
    const LatticeParams lat = make_lattice(field, nu, r);
    const int d = lat.d();
    const GridSpec grid{2 + nu, 3 * d};
    const GridSpec phi_grid{2 + nu + d, 3 * d};
    const FreqFn psi0 = ball(field, grid, d);
    const FreqFn m0 = ball(field, grid, 2 * d);
    const FreqFn phi = add(constant(field, phi_grid, 0.5), scale(ball(field, phi_grid, 2 * d), 0.5));

    // sum_{l>=1} |m_l|^2 = phi(xi) - phi(p^-d xi)|m_0(xi)|^2, split evenly
    const FreqFn phi_up = compact(compose_dilation(phi, -d));
    const auto w = rewindow_values(*field, phi_grid, phi.values(), grid);
    const auto w_up = rewindow_values(*field, phi_up.grid(), phi_up.values(), grid);
    const std::uint64_t qn = ipow(field->q(), d);
    std::vector<cplx> high(grid_dim(*field, grid));
    for (std::size_t i = 0; i < high.size(); ++i) {
        if (psi0[i] == cplx{}) continue;
        const double rest = w[i].real() - w_up[i].real() * std::norm(m0[i]);
        if (rest < 0.0) throw AssumptionError("OEP instance needs a negative mask energy at cell " + std::to_string(i));
        high[i] = std::sqrt(rest / static_cast<double>(qn - 1));
    }
    Setup s{field, lat, psi0, {m0}};
    const FreqFn h(field, grid, std::move(high));
    for (std::uint64_t l = 1; l < qn; ++l) s.masks.push_back(h);
    return {std::move(s), phi};
}

}  // namespace umf
