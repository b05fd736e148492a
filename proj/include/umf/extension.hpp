#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "umf/frames.hpp"
#include "umf/grid_fn.hpp"

namespace umf {

/// psi0^ with its qN masks m_0 .. m_{qN-1}.
struct Setup {
    FieldPtr field;
    LatticeParams lattice;
    FreqFn psi0_hat;
    std::vector<FreqFn> masks;

    std::uint64_t arity() const;  // qN
};

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
    GridSpec grid;
    std::vector<std::uint64_t> cells;  // offending cells on `grid`
};

struct SetupDiagnostics {
    std::vector<CheckResult> checks;

    bool pass() const;
    /// Arity and field agreement; needed before any residual is computed.
    bool structural() const;
    const CheckResult* find(const std::string& name) const;
};

inline constexpr double kDefaultTol = 1e-12;

/// Checks: "field", "arity", "support", "refinement", "small-ball".
SetupDiagnostics validate_setup(const Setup& s, double tol = kDefaultTol);

struct ResidualReport {
    bool pass = false;
    double max_residual = 0.0;
    bool strict = false;
    GridSpec grid;
    std::vector<std::pair<std::uint64_t, double>> cellwise;  // every checked cell
};

/// |sum_l |m_l|^2 - 1| on cells with psi0^ != 0 (all cells when strict).
ResidualReport uep_check(const Setup& s, bool strict = false, double tol = kDefaultTol);

/// psi_l^(xi) = m_l(p^d xi) psi0^(p^d xi) for l >= 1, on compact windows.
WaveletSystem synthesize(const Setup& s, int j_min, int j_max);

/// |phi(p^-d xi)|m_0|^2 + sum_{l>=1}|m_l|^2 - phi(xi)|. phi must be real,
/// strictly positive and cover the window p^d * (mask window).
ResidualReport oep_check(const Setup& s, const FreqFn& phi, bool strict = false, double tol = kDefaultTol);

/// The equivalent UEP setup built from an OEP weight. Throws when
/// oep_check fails or an internal postcondition does not hold.
Setup oep_normalize(const Setup& s, const FreqFn& phi, double tol = kDefaultTol);

std::vector<std::string> builtin_names();

/// Named constructions: "paper-example-3.1", "shannon",
/// "shannon-corrected-3.1", "shannon-wide".
Setup builtin(const std::string& name, const FieldPtr& field, int nu, std::int64_t r);

/// Shannon masks with weight phi = 1/2 + 1/2 * 1_{B^{2d}}.
std::pair<Setup, FreqFn> builtin_oep_instance(const FieldPtr& field, int nu, std::int64_t r);

}  // namespace umf
