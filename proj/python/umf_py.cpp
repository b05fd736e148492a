#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "umf/transform.hpp"
#include "umf/verify.hpp"

namespace py = pybind11;
using namespace umf;

namespace {

// pybind11 holders cannot be shared_ptr<const T>
using PyField = std::shared_ptr<Field>;

FieldPtr cref(const PyField& f) { return f; }
PyField mref(const FieldPtr& f) { return std::const_pointer_cast<Field>(f); }

py::object loads(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

PyField make_field(int p, int c, std::optional<std::vector<int>> f) {
    if (c == 1 && !f) return mref(Field::prime(p));
    return mref(Field::make(FieldParams{p, c, f ? *f : find_irreducible(p, c)}));
}

template <class Fn>
void bind_grid_fn(py::module_& m, const char* name) {
    py::class_<Fn>(m, name)
        .def(py::init([](const PyField& field, int s, int mm, std::vector<cplx> values) {
                 return Fn(cref(field), GridSpec{s, mm}, std::move(values));
             }),
             py::arg("field"), py::arg("s"), py::arg("m"), py::arg("values"))
        .def_property_readonly("s", [](const Fn& f) { return f.grid().s; })
        .def_property_readonly("m", [](const Fn& f) { return f.grid().m; })
        .def_property_readonly("values", [](const Fn& f) { return f.values(); })
        .def("norm_sq", [](const Fn& f) { return norm_sq(f); })
        .def("__len__", &Fn::size);
}

}  // namespace

PYBIND11_MODULE(umf, m) {
    m.doc() = "Exact-arithmetic wavelet frames on GF(q)((p))";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<WindowError>(m, "WindowError", PyExc_ValueError);
    py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
    py::register_exception<AssumptionError>(m, "AssumptionError", PyExc_ArithmeticError);
    py::register_exception<DivisionByZero>(m, "DivisionByZero", PyExc_ZeroDivisionError);

    py::class_<Field, PyField>(m, "Field")
        .def(py::init([](int p, int c, std::optional<std::vector<int>> f) { return make_field(p, c, std::move(f)); }),
             py::arg("p"), py::arg("c") = 1, py::arg("f") = py::none())
        .def_static("gf4", [] { return mref(Field::gf4()); })
        .def_property_readonly("p", &Field::p)
        .def_property_readonly("c", &Field::c)
        .def_property_readonly("q", &Field::q)
        .def("add", &Field::add)
        .def("mul", &Field::mul)
        .def("inv", &Field::inv);

    py::class_<KElem>(m, "KElem")
        .def(py::init([](const PyField& field, std::vector<std::pair<int, std::uint32_t>> terms) {
                 std::sort(terms.begin(), terms.end());
                 return KElem(cref(field), std::move(terms));
             }),
             py::arg("field"), py::arg("terms"))
        .def_property_readonly("terms", &KElem::terms)
        .def_property_readonly("valuation", &KElem::valuation)
        .def_property_readonly("norm", &KElem::norm)
        .def("digit", &KElem::digit)
        .def("__add__", [](const KElem& a, const KElem& b) { return a + b; })
        .def("__sub__", [](const KElem& a, const KElem& b) { return a - b; })
        .def("__mul__", [](const KElem& a, const KElem& b) { return a * b; })
        .def("__neg__", [](const KElem& a) { return -a; })
        .def("__eq__", [](const KElem& a, const KElem& b) { return a == b; })
        .def("__repr__", [](const KElem& a) { return "KElem(" + kelem_to_json(a).dump() + ")"; });

    m.def("u", [](const PyField& field, std::uint64_t n) { return coset_rep(cref(field), n); },
          "coset representative u(n)");
    m.def("chi", [](const KElem& x) { return character(x).value(); });
    m.def("chi_pair", [](const KElem& xi, const KElem& x) { return pair_character(xi, x).value(); });
    m.def("embed_N", [](const PyField& field, std::int64_t n) {
        return embed_period(cref(field), period_exponent(cref(field), n));
    });
    m.def("sigma", [](const PyField& field, int nu, std::int64_t r) { return lattice_offset(cref(field), nu, r); });

    bind_grid_fn<FreqFn>(m, "FreqFn");
    bind_grid_fn<TimeFn>(m, "TimeFn");
    m.def("transform_naive", [](const TimeFn& f) { return transform_naive(f); });
    m.def("transform_fast", [](const TimeFn& f) { return transform_fast(f); });
    m.def("inverse_naive", [](const FreqFn& f) { return inverse_naive(f); });
    m.def("inverse_fast", [](const FreqFn& f) { return inverse_fast(f); });

    py::class_<Setup>(m, "Setup")
        .def_static("from_json", [](const std::string& text) { return setup_from_json(parse_json(text)); })
        .def("to_json", [](const Setup& s) { return setup_to_json(s).dump(); })
        .def_property_readonly("psi0_hat", [](const Setup& s) { return s.psi0_hat; })
        .def_property_readonly("masks", [](const Setup& s) { return s.masks; })
        .def_property_readonly("nu", [](const Setup& s) { return s.lattice.nu; });

    m.def(
        "builtin",
        [](const std::string& name, const PyField& field, int nu, std::int64_t r) {
            return builtin(name, cref(field), nu, r);
        },
        py::arg("name"), py::arg("field"), py::arg("nu") = 0, py::arg("r") = 1);
    m.def("builtin_names", &builtin_names);
    m.def(
        "uep_check",
        [](const Setup& s, bool strict) {
            const auto r = uep_check(s, strict);
            return py::dict(py::arg("pass") = r.pass, py::arg("max_residual") = r.max_residual);
        },
        py::arg("setup"), py::arg("strict") = false);
    m.def(
        "verify",
        [](const Setup& s, std::uint64_t trials, std::uint64_t seed, std::optional<int> j_min,
           std::optional<int> j_max) {
            VerifyOptions opt;
            opt.trials = trials;
            opt.seed = seed;
            opt.j_min = j_min;
            opt.j_max = j_max;
            py::gil_scoped_release release;
            const auto rep = report_to_json(run_verify(s, opt));
            py::gil_scoped_acquire acquire;
            return loads(rep);
        },
        py::arg("setup"), py::arg("trials") = 10, py::arg("seed") = 1, py::arg("j_min") = py::none(),
        py::arg("j_max") = py::none());
    m.def(
        "frame_bounds",
        [](const Setup& s, int j_min, int j_max) {
            const auto sys = synthesize(s, j_min, j_max);
            const auto fb = frame_bounds(sys, test_grid(sys));
            return py::make_tuple(fb.A, fb.B);
        },
        py::arg("setup"), py::arg("j_min"), py::arg("j_max"));
    m.def("bench", [](const PyField& field, std::vector<std::uint64_t> dims) {
        py::list out;
        for (const auto& r : bench_transforms(cref(field), dims, 1)) {
            out.append(py::dict(py::arg("dim") = r.dim, py::arg("naive_mults") = r.naive_mults,
                                py::arg("fast_mults") = r.fast_mults, py::arg("naive_ns") = r.naive_ns,
                                py::arg("fast_ns") = r.fast_ns));
        }
        return out;
    });
}
