#include "umf/frames.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "umf/parallel.hpp"
#include "umf/transform.hpp"

namespace umf {

namespace {

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int ceil_div(int a, int b) { return -floor_div(-a, b); }

std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

double sum_norms(const std::vector<cplx>& coeffs) {
    double s = 0.0;
    for (const auto& c : coeffs) s += std::norm(c);
    return s;
}

}  // namespace

LatticeParams make_lattice(const FieldPtr& field, int nu, std::int64_t r) {
    return LatticeParams{nu, r, lattice_offset(field, nu, r)};
}

std::vector<KElem> lambda_enumerate(const LatticeParams& lat, int m) {
    if (m < 1) throw RangeError("lambda enumeration needs m >= 1");
    const FieldPtr& field = lat.sigma.field();
    const auto count = ipow(field->q(), m);
    if (count > kMaxCells) throw WindowError("lambda enumeration exceeds the cell cap");
    std::vector<KElem> out;
    out.reserve(lat.nu >= 1 ? 2 * count : count);
    for (std::uint64_t n = 0; n < count; ++n) out.push_back(coset_rep(field, n));
    if (lat.nu >= 1) {
        for (std::uint64_t n = 0; n < count; ++n) out.push_back(lat.sigma + out[n]);
    }
    return out;
}

FreqFn level_integrand(const FreqFn& f_hat, const FreqFn& psi_hat, int j, int nu) {
    if (!f_hat.field()->same_as(*psi_hat.field())) throw ParameterError("functions over different fields");
    const FreqFn dil = freq_dilate(f_hat, -j, nu);
    const GridSpec a = dil.grid();
    const GridSpec b = psi_hat.grid();
    // the product lives on the smaller support window
    GridSpec grid{std::min(a.s, b.s), std::max({a.m, b.m, 1})};
    if (grid.digits() < 1) grid.s = 1 - grid.m;
    const auto x = rewindow_values(*dil.field(), a, dil.values(), grid);
    const auto y = rewindow_values(*psi_hat.field(), b, psi_hat.values(), grid);
    std::vector<cplx> h(x.size());
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = x[i] * std::conj(y[i]);
    return FreqFn(f_hat.field(), grid, std::move(h));
}

namespace {

cplx coeff_of_integrand(const FreqFn& h, const KElem& lam) {
    // chi(lam .) is nonconstant on B^M when |lam| > q^M: the sum vanishes
    if (const auto v = lam.valuation(); v && *v < -h.grid().m) return {};
    const auto phases = pairing_phases(lam, h.grid());
    const auto roots = roots_of_unity(h.field()->p());
    cplx sum{};
    for (std::size_t i = 0; i < h.size(); ++i) sum += h[i] * roots[phases[i]];
    return sum * h.cell_measure();
}

void check_generator(const FreqFn& psi_hat, int nu, GeneratorKind kind) {
    const auto ext = support_extent(psi_hat);
    if (ext.empty) return;
    const int bound = 2 + nu + (kind == GeneratorKind::high_pass ? 1 + nu : 0);
    if (ext.hi > bound) {
        throw AssumptionError("generator support reaches |xi| = q^" + std::to_string(ext.hi) + ", beyond q^" +
                              std::to_string(bound));
    }
}

}  // namespace

cplx analysis_coeff(const FreqFn& f_hat, const FreqFn& psi_hat, int j, const KElem& lam, const LatticeParams& lat) {
    return coeff_of_integrand(level_integrand(f_hat, psi_hat, j, lat.nu), lam);
}

double level_energy(const FreqFn& f_hat, const FreqFn& psi_hat, int j, const LatticeParams& lat,
                    GeneratorKind kind) {
    check_generator(psi_hat, lat.nu, kind);
    const FreqFn h = level_integrand(f_hat, psi_hat, j, lat.nu);
    const auto lams = lambda_enumerate(lat, h.grid().m);
    std::vector<cplx> coeffs(lams.size());
    parallel_for(lams.size(), [&](std::size_t i) { coeffs[i] = coeff_of_integrand(h, lams[i]); });
    return sum_norms(coeffs);
}

std::vector<cplx> level_coefficients_fast(const FreqFn& f_hat, const FreqFn& psi_hat, int j,
                                          const LatticeParams& lat) {
    const FreqFn h = level_integrand(f_hat, psi_hat, j, lat.nu);
    const GridSpec g = h.grid();
    const GridSpec dual{g.m, g.s};
    const Field& field = *h.field();
    const auto count = ipow(field.q(), g.m);

    std::vector<std::uint64_t> cells(count);
    for (std::uint64_t n = 0; n < count; ++n) {
        cells[n] = *cell_index(field, dual, coset_rep(h.field(), n));
    }
    std::vector<cplx> out;
    out.reserve(lat.nu >= 1 ? 2 * count : count);
    const auto plain = dual_values_fast(field, g, h.values(), 1);
    for (std::uint64_t n = 0; n < count; ++n) out.push_back(plain[cells[n]]);
    if (lat.nu >= 1) {
        const FreqFn shifted = modulate(h, lat.sigma);
        const auto moved = dual_values_fast(field, g, shifted.values(), 1);
        for (std::uint64_t n = 0; n < count; ++n) out.push_back(moved[cells[n]]);
    }
    return out;
}

double level_energy_fast(const FreqFn& f_hat, const FreqFn& psi_hat, int j, const LatticeParams& lat) {
    return sum_norms(level_coefficients_fast(f_hat, psi_hat, j, lat));
}

double level_energy_closed(const FreqFn& f_hat, const FreqFn& psi_hat, int j, int nu) {
    return norm_sq(level_integrand(f_hat, psi_hat, j, nu));
}

double total_energy(const FreqFn& f_hat, const WaveletSystem& sys) {
    if (sys.empty_range()) return 0.0;
    const std::size_t levels = static_cast<std::size_t>(sys.j_max - sys.j_min + 1);
    const std::size_t jobs = levels * sys.wavelets.size();
    std::vector<double> parts(jobs);
    parallel_for(jobs, [&](std::size_t i) {
        const auto& psi = sys.wavelets[i / levels];
        const int j = sys.j_min + static_cast<int>(i % levels);
        parts[i] = level_energy_fast(f_hat, psi, j, sys.lattice);
    });
    double total = 0.0;
    for (double v : parts) total += v;
    return total;
}

std::pair<int, int> covering_j_range(const std::vector<FreqFn>& wavelets, int nu, int a, int b) {
    const int d = 1 + nu;
    std::optional<int> lo_j;
    std::optional<int> hi_j;
    for (const auto& psi : wavelets) {
        const auto ext = support_extent(psi);
        if (ext.empty) continue;
        const int first = ceil_div(a - ext.hi, d);
        lo_j = lo_j ? std::min(*lo_j, first) : first;
        if (!ext.touches_zero) {
            const int last = floor_div(b - ext.lo, d);
            hi_j = hi_j ? std::max(*hi_j, last) : last;
        }
    }
    if (!lo_j) return {0, -1};
    if (!hi_j) hi_j = *lo_j;
    return {*lo_j, *hi_j};
}

std::vector<std::uint64_t> covered_cells(const WaveletSystem& sys, GridSpec grid) {
    const auto dim = grid_dim(*sys.field, grid);
    const int d = sys.lattice.d();
    std::vector<std::uint64_t> out;
    for (std::uint64_t idx = 1; idx < dim; ++idx) {
        const KElem rep = cell_rep(sys.field, grid, idx);
        bool hit = false;
        for (int j = sys.j_min; j <= sys.j_max && !hit; ++j) {
            const KElem moved = k_shift(rep, d * j);
            for (const auto& psi : sys.wavelets) {
                if (evaluate(psi, moved) != cplx{}) {
                    hit = true;
                    break;
                }
            }
        }
        if (hit) out.push_back(idx);
    }
    return out;
}

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Power iteration for the top eigenvalue of a PSD matrix.
std::pair<double, double> power_top(const Mat& s, double tol) {
    const auto n = s.rows();
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(1.0 + 0.01 * static_cast<double>(i % 7), 0.001 * static_cast<double>(i % 3));
    v.normalize();
    double lam = 0.0;
    for (int it = 0; it < 20000; ++it) {
        Vec w = s * v;
        const double nw = w.norm();
        if (nw == 0.0) return {0.0, 0.0};
        const double next = std::real(v.dot(w));
        v = w / nw;
        const double res = (s * v - next * v).norm();
        if (std::abs(next - lam) <= tol * std::max(1.0, std::abs(next)) && res <= 1e-9) return {next, res};
        lam = next;
    }
    const Vec w = s * v;
    const double lam_final = std::real(v.dot(w));
    return {lam_final, (w - lam_final * v).norm()};
}

}  // namespace

FrameBounds frame_bounds(const WaveletSystem& sys, GridSpec grid, BoundsMethod method, double tol) {
    FrameBounds out;
    out.method = method;
    const auto cells = covered_cells(sys, grid);
    out.dimension = cells.size();
    if (cells.empty()) return out;
    if (cells.size() > kMaxGramDim) throw WindowError("frame operator dimension exceeds 4096");

    const double amp = std::pow(static_cast<double>(sys.field->q()), 0.5 * grid.m);
    const auto dim = grid_dim(*sys.field, grid);
    const auto n = static_cast<Eigen::Index>(cells.size());
    Mat s = Mat::Zero(n, n);

    // One block per (wavelet, level); a cell enters a block only when its
    // integrand is nonzero there, which keeps the blocks narrow.
    std::vector<std::pair<std::size_t, int>> blocks;
    for (std::size_t l = 0; l < sys.wavelets.size(); ++l) {
        for (int j = sys.j_min; j <= sys.j_max; ++j) blocks.emplace_back(l, j);
    }
    for (const auto& [l, j] : blocks) {
        const FreqFn& psi = sys.wavelets[l];
        std::vector<std::vector<cplx>> columns(cells.size());
        parallel_for(cells.size(), [&](std::size_t c) {
            std::vector<cplx> values(dim);
            values[cells[c]] = amp;
            const FreqFn e(sys.field, grid, std::move(values));
            const FreqFn h = level_integrand(e, psi, j, sys.lattice.nu);
            if (std::all_of(h.values().begin(), h.values().end(), [](cplx v) { return v == cplx{}; })) return;
            columns[c] = level_coefficients_fast(e, psi, j, sys.lattice);
        });
        std::vector<Eigen::Index> active;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (!columns[c].empty()) active.push_back(static_cast<Eigen::Index>(c));
        }
        if (active.empty()) continue;
        const auto rows = static_cast<Eigen::Index>(columns[static_cast<std::size_t>(active.front())].size());
        const auto k = static_cast<Eigen::Index>(active.size());
        Mat t(rows, k);
        for (Eigen::Index a = 0; a < k; ++a) {
            const auto& col = columns[static_cast<std::size_t>(active[a])];
            if (static_cast<Eigen::Index>(col.size()) != rows) throw WindowError("inconsistent coefficient counts");
            for (Eigen::Index r = 0; r < rows; ++r) t(r, a) = col[static_cast<std::size_t>(r)];
        }
        Mat block = Mat::Zero(k, k);
        block.selfadjointView<Eigen::Lower>().rankUpdate(t.adjoint());
        for (Eigen::Index b = 0; b < k; ++b) {
            for (Eigen::Index a = b; a < k; ++a) {
                s(active[a], active[b]) += block(a, b);
                if (a != b) s(active[b], active[a]) += std::conj(block(a, b));
            }
        }
    }

    if (method == BoundsMethod::exact_gram) {
        Eigen::SelfAdjointEigenSolver<Mat> solver(s);
        if (solver.info() != Eigen::Success) throw Error("eigen decomposition failed");
        const auto& ev = solver.eigenvalues();
        out.A = std::max(0.0, ev(0));
        out.B = std::max(out.A, ev(n - 1));
        const Vec va = solver.eigenvectors().col(0);
        const Vec vb = solver.eigenvectors().col(n - 1);
        out.residual = std::max((s * va - ev(0) * va).norm(), (s * vb - ev(n - 1) * vb).norm());
        return out;
    }

    const auto [top, res_top] = power_top(s, tol);
    const Mat shifted = top * Mat::Identity(n, n) - s;
    const auto [gap, res_gap] = power_top(shifted, tol);
    out.B = top;
    out.A = std::clamp(top - gap, 0.0, top);
    out.residual = std::max(res_top, res_gap);
    return out;
}

std::vector<std::pair<int, double>> low_pass_decay(const FreqFn& f_hat, const FreqFn& psi0_hat,
                                                   const LatticeParams& lat, int j_lo, int j_hi) {
    std::vector<std::pair<int, double>> out;
    for (int j = j_hi; j >= j_lo; --j) out.emplace_back(j, level_energy_fast(f_hat, psi0_hat, j, lat));
    return out;
}

std::optional<int> low_pass_cutoff(const FreqFn& f_hat, const FreqFn& psi0_hat, int nu) {
    const auto ef = support_extent(f_hat);
    const auto ep = support_extent(psi0_hat);
    if (ef.empty || ep.empty || ef.touches_zero) return std::nullopt;
    return ceil_div(ef.lo - ep.hi, 1 + nu) - 1;
}

}  // namespace umf
