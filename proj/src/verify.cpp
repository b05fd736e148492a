#include "umf/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "umf/random.hpp"
#include "umf/transform.hpp"

namespace umf {

namespace {

void upsert_max(std::vector<std::pair<int, double>>& rows, int j, double v) {
    for (auto& [k, x] : rows) {
        if (k == j) {
            x = std::max(x, v);
            return;
        }
    }
    rows.emplace_back(j, v);
}

CheckEntry asserted(const std::string& name, bool ok, double value, const std::string& note = "") {
    return {name, ok ? "pass" : "fail", value, note};
}

CheckEntry reported(const std::string& name, double value, const std::string& note) {
    return {name, "reported", value, note};
}

}  // namespace

GridSpec test_grid(const WaveletSystem& sys) {
    const int d = sys.lattice.d();
    std::optional<int> top;
    std::optional<int> fine;
    for (const auto& psi : sys.wavelets) {
        const auto ext = support_extent(psi);
        if (ext.empty) continue;
        const int t = ext.hi + d * sys.j_max;
        const int m = psi.grid().m - d * sys.j_min;
        top = top ? std::max(*top, t) : t;
        fine = fine ? std::max(*fine, m) : m;
    }
    if (!top) {
        const auto ext = support_extent(sys.low_pass);
        top = ext.empty ? 0 : ext.hi + d * sys.j_max;
        fine = sys.low_pass.grid().m - d * sys.j_min;
    }
    GridSpec g{*top, *fine};
    if (g.digits() < 1) g.m = 1 - g.s;
    return g;
}

FrameReport run_verify(const Setup& setup, const VerifyOptions& opt) {
    const auto diag = validate_setup(setup);
    if (!diag.structural()) throw ParameterError("setup fails structural validation");

    FrameReport rep;
    rep.trials = opt.trials;
    rep.seed = opt.seed;
    rep.nu = setup.lattice.nu;
    rep.r = setup.lattice.r;
    rep.j_min = opt.j_min.value_or(-2);
    rep.j_max = opt.j_max.value_or(2);
    if (rep.j_max < rep.j_min) throw RangeError("empty j range");

    const WaveletSystem sys = synthesize(setup, rep.j_min, rep.j_max);
    rep.grid = test_grid(sys);
    const auto dim = grid_dim(*setup.field, rep.grid);
    if (dim > kMaxGramDim && !opt.unsafe_large) {
        throw WindowError("test grid has " + std::to_string(dim) + " cells; pass --unsafe-large to allow more than 4096");
    }
    const auto cells = covered_cells(sys, rep.grid);
    rep.test_cells = cells.size();
    if (opt.trials == 0) return rep;

    const bool uniform = setup.lattice.nu == 0;
    const auto uep = uep_check(setup, opt.strict_uep);
    rep.uep_residual = uep.max_residual;
    const bool refinable = diag.find("refinement")->pass;

    std::vector<FreqFn> generators{setup.psi0_hat};
    for (const auto& w : sys.wavelets) generators.push_back(w);

    bool comparable = uniform;
    for (const auto& g : generators) {
        const auto ext = support_extent(g);
        if (!ext.empty && ext.hi > 0) comparable = false;
    }
    rep.closed_form.comparable = comparable;

    SplitMix64 rng(opt.seed);
    double parseval = 0.0;
    double bessel = 0.0;
    rep.energy_ratio_min = std::numeric_limits<double>::infinity();
    rep.energy_ratio_max = 0.0;
    rep.closed_form.ratio_min = std::numeric_limits<double>::infinity();
    bool decay_zero = true;
    std::vector<double> level_sum(static_cast<std::size_t>(rep.j_max - rep.j_min + 1), 0.0);

    for (std::uint64_t t = 0; t < opt.trials; ++t) {
        const FreqFn f = random_test_function(setup.field, rep.grid, cells, rng);
        const double norm = norm_sq(f);
        if (norm == 0.0) continue;

        const double total = total_energy(f, sys);
        parseval = std::max(parseval, std::abs(total - norm));
        rep.energy_ratio_min = std::min(rep.energy_ratio_min, total / norm);
        rep.energy_ratio_max = std::max(rep.energy_ratio_max, total / norm);

        for (int j = rep.j_min; j <= rep.j_max; ++j) {
            double level = 0.0;
            for (const auto& w : sys.wavelets) level += level_energy_fast(f, w, j, sys.lattice);
            level_sum[static_cast<std::size_t>(j - rep.j_min)] += level;

            // all qN generators at j-1 against the low-pass at j
            double lhs = level_energy_fast(f, setup.psi0_hat, j - 1, sys.lattice);
            for (const auto& w : sys.wavelets) lhs += level_energy_fast(f, w, j - 1, sys.lattice);
            const double rhs = level_energy_fast(f, setup.psi0_hat, j, sys.lattice);
            upsert_max(rep.telescoping_residuals, j, std::abs(lhs - rhs));
        }

        bessel = std::max(bessel, level_energy_fast(f, setup.psi0_hat, 0, sys.lattice) / norm);

        if (const auto cut = low_pass_cutoff(f, setup.psi0_hat, setup.lattice.nu)) {
            rep.low_pass_cutoff = cut;
            for (const auto& [j, e] : low_pass_decay(f, setup.psi0_hat, sys.lattice, *cut - 2, *cut + 1)) {
                upsert_max(rep.low_pass, j, e);
                if (j <= *cut && e != 0.0) decay_zero = false;
            }
        }

        if (t < opt.direct_trials) {
            for (std::size_t g = 0; g < generators.size(); ++g) {
                const auto kind = g == 0 ? GeneratorKind::low_pass : GeneratorKind::high_pass;
                for (int j = rep.j_min; j <= rep.j_max; ++j) {
                    const double direct = level_energy(f, generators[g], j, sys.lattice, kind);
                    const double fast = level_energy_fast(f, generators[g], j, sys.lattice);
                    const double closed = level_energy_closed(f, generators[g], j, setup.lattice.nu);
                    auto& cf = rep.closed_form;
                    cf.route_diff = std::max(cf.route_diff, std::abs(direct - fast));
                    cf.max_abs_diff = std::max(cf.max_abs_diff, std::abs(direct - closed));
                    if (closed > 1e-14) {
                        cf.ratio_min = std::min(cf.ratio_min, direct / closed);
                        cf.ratio_max = std::max(cf.ratio_max, direct / closed);
                    }
                }
            }
        }
    }
    if (!std::isfinite(rep.closed_form.ratio_min)) rep.closed_form.ratio_min = 0.0;
    if (!std::isfinite(rep.energy_ratio_min)) rep.energy_ratio_min = 0.0;
    rep.parseval_residual = parseval;
    rep.bessel_max = bessel;
    for (std::size_t i = 0; i < level_sum.size(); ++i) {
        rep.levels.emplace_back(rep.j_min + static_cast<int>(i), level_sum[i] / static_cast<double>(opt.trials));
    }
    std::sort(rep.low_pass.begin(), rep.low_pass.end());

    const FrameBounds fb = frame_bounds(sys, rep.grid);
    rep.A = fb.A;
    rep.B = fb.B;

    // Which identities are asserted depends on what is provable for the setup.
    const bool parseval_claim = uniform && uep.pass;
    double tele = 0.0;
    for (const auto& [j, v] : rep.telescoping_residuals) tele = std::max(tele, v);

    rep.checks.push_back(asserted("uep", uep.pass, uep.max_residual));
    rep.checks.push_back(asserted("coefficient-routes", rep.closed_form.route_diff <= opt.identity_tol,
                                  rep.closed_form.route_diff, "direct lambda sum vs transform route"));
    if (parseval_claim) {
        rep.checks.push_back(asserted("parseval", parseval <= opt.tol, parseval));
        rep.checks.push_back(asserted("bessel", bessel <= 1.0 + opt.tol, bessel));
        const double fb_err = std::max(std::abs(fb.A - 1.0), std::abs(fb.B - 1.0));
        rep.checks.push_back(asserted("frame-bounds", fb_err <= opt.tol, fb_err, "|A-1|, |B-1|"));
    } else {
        rep.checks.push_back(reported("parseval", parseval, "energy ratio in [" + std::to_string(rep.energy_ratio_min) +
                                                                ", " + std::to_string(rep.energy_ratio_max) + "]"));
        rep.checks.push_back(reported("bessel", bessel, "max level-0 low-pass energy / norm"));
        rep.checks.push_back(reported("frame-bounds", fb.B - fb.A, "B - A"));
    }
    if (parseval_claim && refinable) {
        rep.checks.push_back(asserted("telescoping", tele <= opt.identity_tol, tele));
    } else {
        rep.checks.push_back(reported("telescoping", tele, "not asserted for this setup"));
    }
    if (comparable) {
        rep.checks.push_back(asserted("closed-form", rep.closed_form.max_abs_diff <= opt.identity_tol,
                                      rep.closed_form.max_abs_diff));
    } else {
        rep.checks.push_back(reported("closed-form", rep.closed_form.max_abs_diff,
                                      "lambda sum / integral in [" + std::to_string(rep.closed_form.ratio_min) + ", " +
                                          std::to_string(rep.closed_form.ratio_max) + "]"));
    }
    if (rep.low_pass_cutoff) {
        rep.checks.push_back(asserted("low-pass-decay", decay_zero, static_cast<double>(*rep.low_pass_cutoff),
                                      "energies vanish at and below the cutoff"));
    }
    rep.pass = std::none_of(rep.checks.begin(), rep.checks.end(), [](const CheckEntry& c) { return c.status == "fail"; });
    return rep;
}

namespace {

Json pairs_json(const std::vector<std::pair<int, double>>& rows) {
    Json out = Json::array();
    for (const auto& [j, v] : rows) out.push_back(Json::array({j, v}));
    return out;
}

template <class T>
Json opt_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json report_to_json(const FrameReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        checks.push_back(Json{{"name", c.name}, {"status", c.status}, {"value", c.value}, {"note", c.note}});
    }
    return Json{{"schema", 1},
                {"nu", r.nu},
                {"r", r.r},
                {"trials", r.trials},
                {"seed", r.seed},
                {"j_range", Json::array({r.j_min, r.j_max})},
                {"grid", {{"s", r.grid.s}, {"m", r.grid.m}}},
                {"test_cells", r.test_cells},
                {"A", opt_json(r.A)},
                {"B", opt_json(r.B)},
                {"parseval_residual", opt_json(r.parseval_residual)},
                {"energy_ratio", Json::array({r.energy_ratio_min, r.energy_ratio_max})},
                {"uep_residual", r.uep_residual},
                {"telescoping_residuals", pairs_json(r.telescoping_residuals)},
                {"levels", pairs_json(r.levels)},
                {"low_pass", pairs_json(r.low_pass)},
                {"low_pass_cutoff", opt_json(r.low_pass_cutoff)},
                {"bessel_max", opt_json(r.bessel_max)},
                {"closed_form",
                 {{"comparable", r.closed_form.comparable},
                  {"max_abs_diff", r.closed_form.max_abs_diff},
                  {"ratio", Json::array({r.closed_form.ratio_min, r.closed_form.ratio_max})},
                  {"route_diff", r.closed_form.route_diff}}},
                {"checks", std::move(checks)},
                {"pass", r.pass}};
}

std::vector<BenchRow> bench_transforms(const FieldPtr& field, const std::vector<std::uint64_t>& dims,
                                       std::uint64_t seed, bool unsafe_large) {
    using clock = std::chrono::steady_clock;
    std::vector<BenchRow> rows;
    SplitMix64 rng(seed);
    for (const auto dim : dims) {
        if (dim > kMaxGramDim && !unsafe_large) throw WindowError("bench dimension above 4096");
        int len = 0;
        std::uint64_t n = 1;
        while (n < dim) {
            n *= field->q();
            ++len;
        }
        if (n != dim || len == 0) throw RangeError("bench dimension " + std::to_string(dim) + " is not a power of q");
        const GridSpec grid{len / 2, len - len / 2};
        std::vector<cplx> values(dim);
        for (auto& v : values) v = rng.complex_normal();
        const TimeFn f(field, grid, std::move(values));

        BenchRow row;
        row.dim = dim;
        const int naive_reps = dim <= 256 ? 5 : 1;
        const int fast_reps = dim <= 256 ? 50 : 5;
        std::uint64_t best_naive = ~std::uint64_t{0};
        for (int i = 0; i < naive_reps; ++i) {
            OpCounter c;
            const auto t0 = clock::now();
            const auto out = transform_naive(f, &c);
            const auto t1 = clock::now();
            row.naive_mults = c.multiplies;
            best_naive = std::min<std::uint64_t>(best_naive, std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
            (void)out;
        }
        std::uint64_t best_fast = ~std::uint64_t{0};
        for (int i = 0; i < fast_reps; ++i) {
            OpCounter c;
            const auto t0 = clock::now();
            const auto out = transform_fast(f, &c);
            const auto t1 = clock::now();
            row.fast_mults = c.multiplies;
            best_fast = std::min<std::uint64_t>(best_fast, std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
            (void)out;
        }
        row.naive_ns = best_naive;
        row.fast_ns = best_fast;
        rows.push_back(row);
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "dim,naive_mults,fast_mults,naive_ns,fast_ns\n";
    for (const auto& r : rows) {
        out << r.dim << ',' << r.naive_mults << ',' << r.fast_mults << ',' << r.naive_ns << ',' << r.fast_ns << '\n';
    }
    return out.str();
}

}  // namespace umf
