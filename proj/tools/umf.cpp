// umf: command-line front end.
// Exit codes: 0 pass, 1 input error, 2 mathematical failure.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "umf/transform.hpp"
#include "umf/verify.hpp"

using namespace umf;

namespace {

constexpr int kPass = 0;
constexpr int kInput = 1;
constexpr int kMath = 2;

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
        std::cout.flush();
    } else {
        write_text_file(out, text);
    }
}

Setup load_setup(const std::string& path) {
    return setup_from_json(parse_json(read_text_file(path), path));
}

Json checks_json(const SetupDiagnostics& diag) {
    Json out = Json::array();
    for (const auto& c : diag.checks) {
        out.push_back(Json{{"name", c.name},
                           {"pass", c.pass},
                           {"detail", c.detail},
                           {"grid", {{"s", c.grid.s}, {"m", c.grid.m}}},
                           {"cells", c.cells}});
    }
    return out;
}

Json residual_json(const std::string& command, const ResidualReport& r, const SetupDiagnostics& diag) {
    Json cells = Json::array();
    for (const auto& [idx, v] : r.cellwise) cells.push_back(Json::array({idx, v}));
    return Json{{"schema", 1},
                {"command", command},
                {"pass", r.pass},
                {"max_residual", r.max_residual},
                {"strict", r.strict},
                {"grid", {{"s", r.grid.s}, {"m", r.grid.m}}},
                {"diagnostics", checks_json(diag)},
                {"cellwise", std::move(cells)}};
}

FieldPtr field_from_flags(int p, int c) {
    if (c == 1) return Field::prime(p);
    return Field::make(FieldParams{p, c, find_irreducible(p, c)});
}

std::string csv_rows(const FreqFn& f, const std::string& label) {
    std::ostringstream out;
    out.precision(17);
    for (std::size_t i = 0; i < f.size(); ++i) out << label << ',' << i << ',' << f[i].real() << ',' << f[i].imag() << '\n';
    return out.str();
}

std::string csv_rows(const TimeFn& f, const std::string& label) {
    return csv_rows(FreqFn(f.field(), f.grid(), f.values()), label);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic wavelet frames on GF(q)((p))"};
    app.require_subcommand(1);

    std::string setup_path;
    std::string out;
    double tol = 0.0;
    bool strict = false;

    auto* uep = app.add_subcommand("uep-check", "check the unitary extension identity of a setup");
    uep->add_option("setup", setup_path, "setup JSON")->required();
    uep->add_option("--tol", tol, "residual tolerance (default 1e-12)");
    uep->add_flag("--strict-uep", strict, "check every cell, not only supp psi0_hat");
    uep->add_option("--out", out, "report path (default stdout)");

    VerifyOptions vopt;
    int j_min = 0;
    int j_max = 0;
    auto* verify = app.add_subcommand("verify", "run the verification suites on random test functions");
    verify->add_option("setup", setup_path, "setup JSON")->required();
    verify->add_option("--trials", vopt.trials, "number of test functions");
    verify->add_option("--seed", vopt.seed, "seed for the test functions");
    auto* jmin_opt = verify->add_option("--j-min", j_min, "lowest level");
    auto* jmax_opt = verify->add_option("--j-max", j_max, "highest level");
    verify->add_option("--tol", tol, "Parseval / frame-bound tolerance (default 1e-9)");
    verify->add_flag("--strict-uep", strict, "strict UEP residual domain");
    verify->add_flag("--unsafe-large", vopt.unsafe_large, "allow test grids above 4096 cells");
    verify->add_option("--out", out, "report path (default stdout)");

    int p = 2;
    int c = 1;
    std::vector<std::uint64_t> dims;
    std::uint64_t bench_seed = 1;
    bool bench_unsafe = false;
    auto* bench = app.add_subcommand("bench", "count and time naive vs fast transforms");
    bench->add_option("--p", p, "characteristic");
    bench->add_option("--c", c, "extension degree");
    bench->add_option("--dims", dims, "dimensions (powers of q)")->delimiter(',');
    bench->add_option("--seed", bench_seed, "seed for the input values");
    bench->add_flag("--unsafe-large", bench_unsafe, "allow dimensions above 4096");
    bench->add_option("--out", out, "CSV path (default stdout)");

    std::string what = "psi0";
    std::string format = "json";
    auto* exp = app.add_subcommand("export", "dump generators or time samples");
    exp->add_option("setup", setup_path, "setup JSON")->required();
    exp->add_option("--what", what, "psi | psi0 | masks | time-samples")
        ->check(CLI::IsMember({"psi", "psi0", "masks", "time-samples"}));
    exp->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    exp->add_option("--out", out, "output path (default stdout)");

    std::string name;
    int nu = 0;
    std::int64_t r = 1;
    std::string phi_out;
    auto* bi = app.add_subcommand("builtin", "write a built-in setup");
    bi->add_option("name", name, "paper-example-3.1 | shannon | shannon-corrected-3.1 | shannon-wide | oep-instance")
        ->required();
    bi->add_option("--p", p, "characteristic");
    bi->add_option("--c", c, "extension degree");
    bi->add_option("--nu", nu, "N = q^nu");
    bi->add_option("--r", r, "lattice offset parameter");
    bi->add_option("--phi-out", phi_out, "weight path (oep-instance only)");
    bi->add_option("--out", out, "setup path (default stdout)");

    std::string phi_path;
    std::string normalized_out;
    auto* oep = app.add_subcommand("oep-check", "check the oblique extension identity");
    oep->add_option("setup", setup_path, "setup JSON")->required();
    oep->add_option("--phi", phi_path, "weight function JSON")->required();
    oep->add_option("--tol", tol, "residual tolerance (default 1e-12)");
    oep->add_flag("--strict-uep", strict, "check every cell");
    oep->add_option("--normalized-out", normalized_out, "write the normalized setup here on success");
    oep->add_option("--out", out, "report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kInput;
    }

    try {
        if (tol < 0.0) throw InputError("--tol must be positive");
        if (*uep) {
            const Setup s = load_setup(setup_path);
            const auto diag = validate_setup(s);
            const auto rep = uep_check(s, strict, tol > 0.0 ? tol : kDefaultTol);
            emit(out, residual_json("uep-check", rep, diag).dump(2) + "\n");
            return rep.pass ? kPass : kMath;
        }
        if (*verify) {
            const Setup s = load_setup(setup_path);
            if (*jmin_opt) vopt.j_min = j_min;
            if (*jmax_opt) vopt.j_max = j_max;
            if (tol > 0.0) vopt.tol = tol;
            vopt.strict_uep = strict;
            const auto rep = run_verify(s, vopt);
            emit(out, report_to_json(rep).dump(2) + "\n");
            return rep.pass ? kPass : kMath;
        }
        if (*bench) {
            const auto rows = bench_transforms(field_from_flags(p, c), dims, bench_seed, bench_unsafe);
            emit(out, bench_csv(rows));
            return kPass;
        }
        if (*exp) {
            const Setup s = load_setup(setup_path);
            std::vector<std::pair<std::string, FreqFn>> freq;
            if (what == "psi0") freq.emplace_back("psi0", s.psi0_hat);
            if (what == "masks") {
                for (std::size_t l = 0; l < s.masks.size(); ++l) freq.emplace_back("m" + std::to_string(l), s.masks[l]);
            }
            if (what == "psi") {
                const auto sys = synthesize(s, 0, 0);
                for (std::size_t l = 0; l < sys.wavelets.size(); ++l) {
                    freq.emplace_back("psi" + std::to_string(l + 1), sys.wavelets[l]);
                }
            }
            if (what == "time-samples") {
                const TimeFn t = inverse_fast(s.psi0_hat);
                if (format == "csv") {
                    emit(out, "label,idx,re,im\n" + csv_rows(t, "psi0"));
                } else {
                    Json j = freq_to_json(FreqFn(t.field(), t.grid(), t.values()));
                    j["domain"] = "time";
                    emit(out, j.dump(2) + "\n");
                }
                return kPass;
            }
            if (format == "csv") {
                std::string text = "label,idx,re,im\n";
                for (const auto& [label, f] : freq) text += csv_rows(f, label);
                emit(out, text);
            } else if (freq.size() == 1) {
                emit(out, freq_to_json(freq.front().second).dump(2) + "\n");
            } else {
                Json arr = Json::array();
                for (const auto& [label, f] : freq) arr.push_back(freq_to_json(f));
                emit(out, arr.dump(2) + "\n");
            }
            return kPass;
        }
        if (*bi) {
            const FieldPtr field = field_from_flags(p, c);
            if (name == "oep-instance") {
                const auto [s, phi] = builtin_oep_instance(field, nu, r);
                if (!phi_out.empty()) write_text_file(phi_out, freq_to_json(phi).dump(2) + "\n");
                emit(out, setup_to_json(s).dump(2) + "\n");
                return kPass;
            }
            if (!phi_out.empty()) throw InputError("--phi-out only applies to oep-instance");
            emit(out, setup_to_json(builtin(name, field, nu, r)).dump(2) + "\n");
            return kPass;
        }
        if (*oep) {
            const Setup s = load_setup(setup_path);
            const FreqFn phi = freq_from_json(s.field, parse_json(read_text_file(phi_path), phi_path));
            const auto diag = validate_setup(s);
            const double t = tol > 0.0 ? tol : kDefaultTol;
            const auto rep = oep_check(s, phi, strict, t);
            emit(out, residual_json("oep-check", rep, diag).dump(2) + "\n");
            if (rep.pass && !normalized_out.empty()) {
                write_text_file(normalized_out, setup_to_json(oep_normalize(s, phi, t)).dump(2) + "\n");
            }
            return rep.pass ? kPass : kMath;
        }
    } catch (const AssumptionError& e) {
        std::cerr << "umf: " << e.what() << "\n";
        return kMath;
    } catch (const std::exception& e) {
        std::cerr << "umf: " << e.what() << "\n";
        return kInput;
    }
    return kInput;
}
