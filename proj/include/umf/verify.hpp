#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "umf/extension.hpp"
#include "umf/io.hpp"

namespace umf {

struct VerifyOptions {
    std::uint64_t trials = 100;
    std::uint64_t seed = 1;
    std::optional<int> j_min;
    std::optional<int> j_max;
    double tol = 1e-9;            // Parseval and frame bounds
    double identity_tol = 1e-10;  // telescoping, closed form, coefficient routes
    bool strict_uep = false;
    bool unsafe_large = false;
    std::uint64_t direct_trials = 4;  // trials that also run the direct lambda sum
};

/// status: "pass" / "fail" for asserted checks, "reported" otherwise.
struct CheckEntry {
    std::string name;
    std::string status;
    double value = 0.0;
    std::string note;
};

struct ClosedFormSummary {
    bool comparable = false;
    double max_abs_diff = 0.0;  // |direct lambda sum - integral|
    double ratio_min = 0.0;
    double ratio_max = 0.0;
    double route_diff = 0.0;  // |direct - transform route|
};

struct FrameReport {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    int nu = 0;
    std::int64_t r = 1;
    int j_min = 0;
    int j_max = -1;
    GridSpec grid;
    std::size_t test_cells = 0;
    std::optional<double> A, B;
    std::optional<double> parseval_residual;
    double energy_ratio_min = 0.0;
    double energy_ratio_max = 0.0;
    double uep_residual = 0.0;
    std::vector<std::pair<int, double>> telescoping_residuals;
    std::vector<std::pair<int, double>> levels;
    std::vector<std::pair<int, double>> low_pass;
    std::optional<int> low_pass_cutoff;
    std::optional<double> bessel_max;
    ClosedFormSummary closed_form;
    std::vector<CheckEntry> checks;
    bool pass = true;
};

/// Test window for a synthesized system: holds every dilated wavelet in range.
GridSpec test_grid(const WaveletSystem& sys);

FrameReport run_verify(const Setup& setup, const VerifyOptions& opt);

Json report_to_json(const FrameReport& r);

struct BenchRow {
    std::uint64_t dim = 0;
    std::uint64_t naive_mults = 0;
    std::uint64_t fast_mults = 0;
    std::uint64_t naive_ns = 0;
    std::uint64_t fast_ns = 0;
};

/// Times both transforms on a seeded random function of each dimension
/// (each a power of q, at most 4096 unless unsafe).
std::vector<BenchRow> bench_transforms(const FieldPtr& field, const std::vector<std::uint64_t>& dims,
                                       std::uint64_t seed, bool unsafe_large = false);

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace umf
