#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "umf/gf.hpp"
#include "umf/local_field.hpp"

namespace umf {

using cplx = std::complex<double>;

/// Quotient grid B^{-s} / B^{m}: functions supported in |xi| <= q^s and
/// constant on cosets of B^m. There are q^{s+m} cells; the cell of
/// xi = sum_{l=-s}^{m-1} c_l p^l has index sum_t digit(c_{-s+t}) q^t.
struct GridSpec {
    int s = 0;
    int m = 1;

    int digits() const { return s + m; }
    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Hard cap on the number of cells any grid may have.
inline constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 24;

/// q^{s+m}; throws WindowError past kMaxCells or when s + m < 1.
std::uint64_t grid_dim(const Field& field, GridSpec grid);

/// Smallest grid containing both windows.
GridSpec common_grid(GridSpec a, GridSpec b);

struct FreqSide {};
struct TimeSide {};

/// Piecewise-constant, compactly supported function on a quotient grid.
/// `Side` separates the frequency and time domains at the type level.
template <class Side>
class GridFn {
public:
    GridFn(FieldPtr field, GridSpec grid, std::vector<cplx> values)
        : field_(std::move(field)), grid_(grid), values_(std::move(values)) {
        if (!field_) throw ParameterError("null field");
        if (values_.size() != grid_dim(*field_, grid_)) throw WindowError("value count does not match grid dimension");
    }

    static GridFn zeros(FieldPtr field, GridSpec grid) {
        const auto n = grid_dim(*field, grid);
        return GridFn(std::move(field), grid, std::vector<cplx>(n));
    }

    const FieldPtr& field() const { return field_; }
    GridSpec grid() const { return grid_; }
    const std::vector<cplx>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    const cplx& operator[](std::size_t i) const { return values_[i]; }

    /// Haar measure of one cell, q^{-m}.
    double cell_measure() const { return std::pow(static_cast<double>(field_->q()), -grid_.m); }

    friend bool operator==(const GridFn& a, const GridFn& b) {
        return a.grid_ == b.grid_ && a.field_->same_as(*b.field_) && a.values_ == b.values_;
    }

private:
    FieldPtr field_;
    GridSpec grid_;
    std::vector<cplx> values_;
};

using FreqFn = GridFn<FreqSide>;
using TimeFn = GridFn<TimeSide>;

// ---------------------------------------------------------------------------
// Cell addressing

/// Representative of cell `idx`: its digits at exponents [-s, m).
KElem cell_rep(const FieldPtr& field, GridSpec grid, std::uint64_t idx);

/// Index of the cell containing xi, or nullopt when |xi| > q^s.
std::optional<std::uint64_t> cell_index(const Field& field, GridSpec grid, const KElem& xi);

/// Norm exponent log_q|xi| shared by every point of cell `idx`, or nullopt
/// for the cell B^m around 0 (whose points have norm <= q^{-m}).
std::optional<int> cell_norm_exponent(const Field& field, GridSpec grid, std::uint64_t idx);

/// Phases a_c with chi(lam * xi_c) = exp(2 pi i a_c / p) for every cell.
/// Requires |lam| <= q^m so the character is constant on cells.
std::vector<int> pairing_phases(const KElem& lam, GridSpec grid);

// ---------------------------------------------------------------------------
// Value-level helpers shared by both sides

std::vector<cplx> refine_values(const Field& field, GridSpec from, std::span<const cplx> values, GridSpec to);

template <class Side>
GridFn<Side> refine(const GridFn<Side>& f, GridSpec to) {
    return GridFn<Side>(f.field(), to, refine_values(*f.field(), f.grid(), f.values(), to));
}

/// Values of f on another window of at least its resolution; cells
/// outside the source support window read 0.
std::vector<cplx> rewindow_values(const Field& field, GridSpec from, std::span<const cplx> values, GridSpec to);

template <class Side>
GridFn<Side> rewindow(const GridFn<Side>& f, GridSpec to) {
    return GridFn<Side>(f.field(), to, rewindow_values(*f.field(), f.grid(), f.values(), to));
}

template <class Side>
cplx haar_integral(const GridFn<Side>& f) {
    cplx sum{};
    for (const auto& v : f.values()) sum += v;
    return sum * f.cell_measure();
}

template <class Side>
double norm_sq(const GridFn<Side>& f) {
    double sum = 0.0;
    for (const auto& v : f.values()) sum += std::norm(v);
    return sum * f.cell_measure();
}

/// <f, g> = integral of f * conj(g); both are refined to a common grid.
template <class Side>
cplx inner(const GridFn<Side>& f, const GridFn<Side>& g) {
    if (!f.field()->same_as(*g.field())) throw ParameterError("functions over different fields");
    const GridSpec grid = common_grid(f.grid(), g.grid());
    const auto a = refine_values(*f.field(), f.grid(), f.values(), grid);
    const auto b = refine_values(*g.field(), g.grid(), g.values(), grid);
    cplx sum{};
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * std::conj(b[i]);
    return sum * std::pow(static_cast<double>(f.field()->q()), -grid.m);
}

// ---------------------------------------------------------------------------
// Frequency-side operators

/// 1 on cells inside B^k, 0 elsewhere. Requires -s <= k <= m.
FreqFn indicator(const FieldPtr& field, GridSpec grid, int k);

/// f(xi); zero outside the support window.
cplx evaluate(const FreqFn& f, const KElem& xi);

/// Pointwise chi(lam * xi) f(xi). Requires |lam| <= q^m.
FreqFn modulate(const FreqFn& f, const KElem& lam);

/// xi -> f(p^k xi), on grid (s + k, m - k). Values are untouched; only the
/// window moves.
FreqFn compose_dilation(const FreqFn& f, int k);

/// xi -> (qN)^{-j/2} f(p^{(1+nu) j} xi), the frequency-side image of the
/// dilation D_{p^{-j}}. Unitary.
FreqFn freq_dilate(const FreqFn& f, int j, int nu);

/// Sum of f over translates by N u(k) = p^{-nu} u(k), on grid (nu, m).
FreqFn periodize(const FreqFn& f, int nu);

/// <f, e_n> with e_n = q^{k/2} chi(p^{-k} u(n) .) on B^k. Requires
/// supp f within B^k, k <= m, and n < q^{m-k}.
cplx ball_fourier_coeff(const FreqFn& f, int k, std::uint64_t n);

FreqFn multiply(const FreqFn& f, const FreqFn& g);
FreqFn conj(const FreqFn& f);
FreqFn scale(const FreqFn& f, cplx factor);
FreqFn add(const FreqFn& f, const FreqFn& g);
FreqFn subtract(const FreqFn& f, const FreqFn& g);

/// Largest |f - g| over the cells of the common grid.
double max_abs_diff(const FreqFn& f, const FreqFn& g);

/// Norm-exponent extent of the support of f.
struct SupportExtent {
    bool empty = true;
    /// True when the cell around 0 is in the support.
    bool touches_zero = false;
    /// Smallest / largest log_q|xi| among support cells away from 0.
    int lo = 0;
    int hi = 0;
};
SupportExtent support_extent(const FreqFn& f, double tol = 0.0);

/// Smallest window representing f exactly: support trimmed and resolution
/// coarsened as far as f stays cellwise constant.
FreqFn compact(const FreqFn& f);

}  // namespace umf
