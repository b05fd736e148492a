#include "umf/grid_fn.hpp"

#include <algorithm>
#include <string>

namespace umf {

namespace {

std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void require_same(const FreqFn& f, const FreqFn& g) {
    if (!f.field()->same_as(*g.field())) throw ParameterError("functions over different fields");
}

}  // namespace

std::uint64_t grid_dim(const Field& field, GridSpec grid) {
    if (grid.digits() < 1) throw WindowError("grid needs s + m >= 1");
    std::uint64_t n = 1;
    for (int i = 0; i < grid.digits(); ++i) {
        n *= field.q();
        if (n > kMaxCells) {
            throw WindowError("grid (" + std::to_string(grid.s) + ", " + std::to_string(grid.m) +
                              ") exceeds the cell cap");
        }
    }
    return n;
}

GridSpec common_grid(GridSpec a, GridSpec b) {
    return {std::max(a.s, b.s), std::max(a.m, b.m)};
}

KElem cell_rep(const FieldPtr& field, GridSpec grid, std::uint64_t idx) {
    std::vector<KElem::Term> terms;
    const std::uint32_t q = field->q();
    for (int t = 0; t < grid.digits() && idx > 0; ++t) {
        const auto d = static_cast<std::uint32_t>(idx % q);
        if (d != 0) terms.emplace_back(-grid.s + t, d);
        idx /= q;
    }
    return KElem(field, std::move(terms));
}

std::optional<std::uint64_t> cell_index(const Field& field, GridSpec grid, const KElem& xi) {
    if (!xi.field()->same_as(field)) throw ParameterError("point from a different field");
    const auto v = xi.valuation();
    if (v && *v < -grid.s) return std::nullopt;
    std::uint64_t idx = 0;
    for (int t = grid.digits() - 1; t >= 0; --t) idx = idx * field.q() + xi.digit(-grid.s + t);
    return idx;
}

std::optional<int> cell_norm_exponent(const Field& field, GridSpec grid, std::uint64_t idx) {
    if (idx == 0) return std::nullopt;
    int t = 0;
    while (idx % field.q() == 0) {
        idx /= field.q();
        ++t;
    }
    return grid.s - t;
}

std::vector<int> pairing_phases(const KElem& lam, GridSpec grid) {
    const Field& field = *lam.field();
    const auto q = field.q();
    const int p = field.p();
    const int digits = grid.digits();
    const auto dim = grid_dim(field, grid);
    if (const auto v = lam.valuation(); v && *v < -grid.m) {
        throw WindowError("resolution too coarse: |lambda| exceeds q^m");
    }
    // lam digit at exponent a pairs with the xi digit at exponent -1-a,
    // i.e. grid position -1-a+s.
    std::vector<std::pair<int, std::uint32_t>> pairs;
    for (const auto& [a, d] : lam.terms()) {
        const int pos = -1 - a + grid.s;
        if (pos >= 0 && pos < digits) pairs.emplace_back(pos, d);
    }
    std::vector<std::uint64_t> stride(static_cast<std::size_t>(std::max(digits, 1)));
    stride[0] = 1;
    for (int t = 1; t < digits; ++t) stride[t] = stride[t - 1] * q;

    std::vector<int> phases(dim, 0);
    for (const auto& [pos, d] : pairs) {
        std::vector<int> table(q);
        for (std::uint32_t x = 0; x < q; ++x) table[x] = field.trace_mul(d, x);
        for (std::uint64_t idx = 0; idx < dim; ++idx) {
            const auto x = static_cast<std::uint32_t>((idx / stride[pos]) % q);
            phases[idx] += table[x];
        }
    }
    for (auto& ph : phases) ph %= p;
    return phases;
}

std::vector<cplx> refine_values(const Field& field, GridSpec from, std::span<const cplx> values, GridSpec to) {
    if (to.s < from.s || to.m < from.m) throw WindowError("refine target does not contain the source grid");
    const auto q = field.q();
    const auto dim_to = grid_dim(field, to);
    const auto dim_from = grid_dim(field, from);
    if (values.size() != dim_from) throw WindowError("value count does not match grid dimension");
    if (to == from) return {values.begin(), values.end()};
    const std::uint64_t low = ipow(q, to.s - from.s);
    std::vector<cplx> out(dim_to);
    for (std::uint64_t idx = 0; idx < dim_to; ++idx) {
        if (idx % low != 0) continue;
        out[idx] = values[(idx / low) % dim_from];
    }
    return out;
}

std::vector<cplx> rewindow_values(const Field& field, GridSpec from, std::span<const cplx> values, GridSpec to) {
    if (to.m < from.m) throw WindowError("rewindow target coarser than the source");
    if (to.s >= from.s) return refine_values(field, from, values, to);
    const auto dim_to = grid_dim(field, to);
    if (values.size() != grid_dim(field, from)) throw WindowError("value count does not match grid dimension");
    const auto q = field.q();
    // to.s < from.s: every target cell sits inside the source window
    const std::uint64_t shift = ipow(q, from.s - to.s);
    const std::uint64_t keep = ipow(q, to.s + from.m);
    std::vector<cplx> out(dim_to);
    for (std::uint64_t idx = 0; idx < dim_to; ++idx) out[idx] = values[(idx % keep) * shift];
    return out;
}

FreqFn indicator(const FieldPtr& field, GridSpec grid, int k) {
    if (k < -grid.s || k > grid.m) throw WindowError("ball B^k outside the grid window");
    const auto dim = grid_dim(*field, grid);
    // Cells inside B^k have zero digits at positions below k + s.
    const std::uint64_t low = ipow(field->q(), k + grid.s);
    std::vector<cplx> values(dim);
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        if (idx % low == 0) values[idx] = 1.0;
    }
    return FreqFn(field, grid, std::move(values));
}

cplx evaluate(const FreqFn& f, const KElem& xi) {
    const auto idx = cell_index(*f.field(), f.grid(), xi);
    return idx ? f[*idx] : cplx{};
}

FreqFn modulate(const FreqFn& f, const KElem& lam) {
    const auto phases = pairing_phases(lam, f.grid());
    const auto roots = roots_of_unity(f.field()->p());
    std::vector<cplx> out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] * roots[phases[i]];
    return FreqFn(f.field(), f.grid(), std::move(out));
}

FreqFn compose_dilation(const FreqFn& f, int k) {
    return FreqFn(f.field(), {f.grid().s + k, f.grid().m - k}, f.values());
}

FreqFn freq_dilate(const FreqFn& f, int j, int nu) {
    if (nu < 0) throw RangeError("period exponent must be >= 0");
    const int d = 1 + nu;
    const double factor = std::pow(static_cast<double>(f.field()->q()), -0.5 * d * j);
    auto moved = compose_dilation(f, d * j);
    std::vector<cplx> values = moved.values();
    for (auto& v : values) v *= factor;
    return FreqFn(f.field(), moved.grid(), std::move(values));
}

FreqFn periodize(const FreqFn& f, int nu) {
    if (nu < 0) throw RangeError("period exponent must be >= 0");
    const GridSpec out_grid{nu, f.grid().m};
    grid_dim(*f.field(), out_grid);
    if (f.grid().s <= nu) return refine(f, out_grid);
    const std::uint64_t drop = ipow(f.field()->q(), f.grid().s - nu);
    std::vector<cplx> out(grid_dim(*f.field(), out_grid));
    for (std::uint64_t idx = 0; idx < f.size(); ++idx) out[idx / drop] += f[idx];
    return FreqFn(f.field(), out_grid, std::move(out));
}

cplx ball_fourier_coeff(const FreqFn& f, int k, std::uint64_t n) {
    const GridSpec grid = f.grid();
    if (k > grid.m) throw WindowError("ball B^k finer than the grid resolution");
    const FreqFn g = k < -grid.s ? refine(f, {-k, grid.m}) : f;
    const auto q = f.field()->q();
    const std::uint64_t low = ipow(q, k + g.grid().s);
    for (std::uint64_t idx = 0; idx < g.size(); ++idx) {
        if (idx % low != 0 && g[idx] != cplx{}) throw AssumptionError("function not supported in B^k");
    }
    if (n >= ipow(q, g.grid().m - k)) throw WindowError("coefficient index beyond the grid resolution");
    const KElem freq = k_shift(coset_rep(f.field(), n), -k);
    const auto phases = pairing_phases(freq, g.grid());
    const auto roots = roots_of_unity(f.field()->p());
    cplx sum{};
    for (std::uint64_t idx = 0; idx < g.size(); idx += low) sum += g[idx] * std::conj(roots[phases[idx]]);
    return sum * std::pow(static_cast<double>(q), 0.5 * k - g.grid().m);
}

namespace {

template <class Op>
FreqFn combine(const FreqFn& f, const FreqFn& g, Op op) {
    require_same(f, g);
    const GridSpec grid = common_grid(f.grid(), g.grid());
    auto a = refine_values(*f.field(), f.grid(), f.values(), grid);
    const auto b = refine_values(*g.field(), g.grid(), g.values(), grid);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = op(a[i], b[i]);
    return FreqFn(f.field(), grid, std::move(a));
}

}  // namespace

FreqFn multiply(const FreqFn& f, const FreqFn& g) {
    return combine(f, g, [](cplx a, cplx b) { return a * b; });
}

FreqFn add(const FreqFn& f, const FreqFn& g) {
    return combine(f, g, [](cplx a, cplx b) { return a + b; });
}

FreqFn subtract(const FreqFn& f, const FreqFn& g) {
    return combine(f, g, [](cplx a, cplx b) { return a - b; });
}

FreqFn conj(const FreqFn& f) {
    std::vector<cplx> out(f.values());
    for (auto& v : out) v = std::conj(v);
    return FreqFn(f.field(), f.grid(), std::move(out));
}

FreqFn scale(const FreqFn& f, cplx factor) {
    std::vector<cplx> out(f.values());
    for (auto& v : out) v *= factor;
    return FreqFn(f.field(), f.grid(), std::move(out));
}

double max_abs_diff(const FreqFn& f, const FreqFn& g) {
    const auto d = subtract(f, g);
    double worst = 0.0;
    for (const auto& v : d.values()) worst = std::max(worst, std::abs(v));
    return worst;
}

SupportExtent support_extent(const FreqFn& f, double tol) {
    SupportExtent ext;
    bool seen = false;
    for (std::uint64_t idx = 0; idx < f.size(); ++idx) {
        if (std::abs(f[idx]) <= tol) continue;
        ext.empty = false;
        const auto e = cell_norm_exponent(*f.field(), f.grid(), idx);
        if (!e) {
            ext.touches_zero = true;
            continue;
        }
        if (!seen) {
            ext.lo = ext.hi = *e;
            seen = true;
        } else {
            ext.lo = std::min(ext.lo, *e);
            ext.hi = std::max(ext.hi, *e);
        }
    }
    if (ext.touches_zero && !seen) ext.lo = ext.hi = -f.grid().m;
    if (ext.touches_zero) ext.lo = -f.grid().m;
    return ext;
}

FreqFn compact(const FreqFn& f) {
    const auto q = f.field()->q();
    const GridSpec grid = f.grid();
    // Coarsen: drop the top position while values agree across it.
    int m = grid.m;
    while (grid.s + m > 1) {
        const std::uint64_t block = ipow(q, grid.s + m - 1);
        bool constant = true;
        for (std::uint64_t idx = 0; idx < ipow(q, grid.s + m) && constant; ++idx) {
            if (f[idx] != f[idx % block]) constant = false;
        }
        if (!constant) break;
        --m;
    }
    const auto ext = support_extent(f);
    int s = grid.s;
    if (ext.empty) {
        s = std::max(1 - m, std::min(grid.s, 1 - m));
    } else {
        s = ext.touches_zero && ext.lo == ext.hi && ext.lo == -grid.m ? -grid.m : ext.hi;
        s = std::max(s, 1 - m);
    }
    s = std::min(s, grid.s);
    const GridSpec out_grid{s, m};
    const std::uint64_t shift = ipow(q, grid.s - s);
    std::vector<cplx> out(grid_dim(*f.field(), out_grid));
    for (std::uint64_t idx = 0; idx < out.size(); ++idx) out[idx] = f[idx * shift];
    return FreqFn(f.field(), out_grid, std::move(out));
}

}  // namespace umf
