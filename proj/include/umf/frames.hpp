#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "umf/grid_fn.hpp"
#include "umf/local_field.hpp"

namespace umf {

/// Lambda = {0, sigma} + Z with N = q^nu and sigma = p^nu u(r).
struct LatticeParams {
    int nu = 0;
    std::int64_t r = 1;
    KElem sigma;

    int d() const { return 1 + nu; }
};

LatticeParams make_lattice(const FieldPtr& field, int nu, std::int64_t r);

/// Every lambda in Lambda with |lambda| <= q^m. Z first, then sigma + Z
/// (the second branch only for nu >= 1, where the cosets are disjoint).
std::vector<KElem> lambda_enumerate(const LatticeParams& lat, int m);

/// Integrand (D_{p^-j} f^) conj(psi^) on the smallest window holding it,
/// with resolution at least 1.
FreqFn level_integrand(const FreqFn& f_hat, const FreqFn& psi_hat, int j, int nu);

/// <f, D_{p^j} T_lambda psi> as a direct cell sum.
cplx analysis_coeff(const FreqFn& f_hat, const FreqFn& psi_hat, int j, const KElem& lam, const LatticeParams& lat);

enum class GeneratorKind { low_pass, high_pass };

/// sum over Lambda of |analysis_coeff|^2, one direct sum per lambda.
/// Throws AssumptionError when psi^ leaves the admissible ball.
double level_energy(const FreqFn& f_hat, const FreqFn& psi_hat, int j, const LatticeParams& lat,
                    GeneratorKind kind = GeneratorKind::low_pass);

/// Same coefficients through two inverse transforms, in lambda_enumerate order.
std::vector<cplx> level_coefficients_fast(const FreqFn& f_hat, const FreqFn& psi_hat, int j,
                                          const LatticeParams& lat);

double level_energy_fast(const FreqFn& f_hat, const FreqFn& psi_hat, int j, const LatticeParams& lat);

/// integral |(D_{p^-j} f^) psi^|^2.
double level_energy_closed(const FreqFn& f_hat, const FreqFn& psi_hat, int j, int nu);

struct WaveletSystem {
    FieldPtr field;
    LatticeParams lattice;
    FreqFn low_pass;
    std::vector<FreqFn> wavelets;
    int j_min = 0;
    int j_max = -1;

    bool empty_range() const { return j_max < j_min; }
};

/// sum over l >= 1, j in range, lambda of |<f, D T psi_l>|^2.
double total_energy(const FreqFn& f_hat, const WaveletSystem& sys);

/// Levels whose dilated wavelets meet the annulus q^a <= |xi| <= q^b.
std::pair<int, int> covering_j_range(const std::vector<FreqFn>& wavelets, int nu, int a, int b);

/// Cells of `grid` (away from 0) reached by some dilated wavelet in range.
std::vector<std::uint64_t> covered_cells(const WaveletSystem& sys, GridSpec grid);

enum class BoundsMethod { exact_gram, iterative };

struct FrameBounds {
    double A = 0.0;
    double B = 0.0;
    BoundsMethod method = BoundsMethod::exact_gram;
    double residual = 0.0;
    std::size_t dimension = 0;
};

inline constexpr std::size_t kMaxGramDim = 4096;

/// Extreme eigenvalues of the frame operator compressed to functions on
/// `grid` supported in the covered annulus.
FrameBounds frame_bounds(const WaveletSystem& sys, GridSpec grid, BoundsMethod method = BoundsMethod::exact_gram,
                         double tol = 1e-12);

/// (j, level energy of the low-pass generator) for j from j_hi down to j_lo.
std::vector<std::pair<int, double>> low_pass_decay(const FreqFn& f_hat, const FreqFn& psi0_hat,
                                                   const LatticeParams& lat, int j_lo, int j_hi);

/// Largest j whose low-pass energy vanishes for support reasons; nullopt
/// when f^ or psi0^ is empty or f^ reaches 0.
std::optional<int> low_pass_cutoff(const FreqFn& f_hat, const FreqFn& psi0_hat, int nu);

}  // namespace umf
