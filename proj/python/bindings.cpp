#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdlib>

#include "resolvent/error.hpp"
#include "resolvent/json_io.hpp"

namespace py = pybind11;
using namespace resolvent;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Coefficients coeff_from(const std::optional<FpModule>& b) {
    return b ? Coefficients::tensor_with(*b) : Coefficients::identity();
}

Method method_from(const std::string& s) {
    auto m = parse_method(s);
    if (!m) throw InputError("unknown method " + s);
    return *m;
}

}  // namespace

PYBIND11_MODULE(resolvent, mod) {
    mod.doc() = "Comonadic homology of finite modules over Z/m";

    static py::exception<EnumerationTooLarge> too_large(mod, "EnumerationTooLarge", PyExc_RuntimeError);
    static py::exception<VerificationError> verification(mod, "VerificationError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const EnumerationTooLarge& e) {
            py::set_error(too_large, e.what());
        } catch (const InputError& e) {
            py::set_error(PyExc_ValueError, e.what());
        } catch (const VerificationError& e) {
            py::set_error(verification, e.what());
        }
    });

    py::class_<FpModule>(mod, "Module")
        .def(py::init([](Residue m, std::vector<Residue> orders) {
                 if (m < 2) throw InputError("modulus must be at least 2");
                 for (auto d : orders)
                     if (d == 0 || m % d != 0) throw InputError("orders must divide the modulus");
                 return canonical_module(Modulus(m), std::move(orders));
             }),
             py::arg("modulus"), py::arg("orders") = std::vector<Residue>{})
        .def_property_readonly("modulus", [](const FpModule& x) { return x.modulus().value(); })
        .def_property_readonly("factors", &FpModule::factors)
        .def_property_readonly("rank", &FpModule::rank)
        .def("__eq__", [](const FpModule& a, const FpModule& b) { return a == b; })
        .def("__str__", &FpModule::to_string)
        .def("__repr__", [](const FpModule& x) {
            return "Module(" + std::to_string(x.modulus().value()) + ", " + x.to_string() + ")";
        });

    mod.def("tor", &tor_oracle, py::arg("b"), py::arg("x"), py::arg("n"), "Tor_n(b, x) from a free resolution of x");

    mod.def(
        "homology",
        [](const FpModule& x, int n, const std::string& method, const std::optional<FpModule>& coeff) {
            return homology({x, coeff_from(coeff), method_from(method), n});
        },
        py::arg("x"), py::arg("n"), py::arg("method") = "pointed-free", py::arg("coeff") = py::none(),
        "H_n(x, E) with E = identity, or coeff (x) - when coeff is given");

    mod.def(
        "compare",
        [](const FpModule& x, const std::vector<std::string>& methods, int n_max, const std::optional<FpModule>& coeff,
           bool explicit_maps) {
            std::vector<Method> ms;
            for (const auto& s : methods) ms.push_back(method_from(s));
            return to_py(report_json(compare_methods(x, coeff_from(coeff), ms, n_max, explicit_maps), false));
        },
        py::arg("x"), py::arg("methods"), py::arg("n_max"), py::arg("coeff") = py::none(),
        py::arg("explicit_maps") = true);

    mod.def(
        "resolve",
        [](const FpModule& x, const std::string& method, int depth) {
            return to_py(to_json(resolve(x, method_from(method), depth).object));
        },
        py::arg("x"), py::arg("method"), py::arg("depth"));

    mod.def(
        "run_suites",
        [](std::uint64_t seed, int scale) { return to_py(suites_json(run_property_suites(seed, scale), false)); },
        py::arg("seed") = 42, py::arg("scale") = 1);

    mod.def(
        "set_max_enumeration",
        [](std::uint64_t n) {
            if (n == 0) throw InputError("guard must be positive");
            setenv("RESOLVENT_MAX_ENUM", std::to_string(n).c_str(), 1);
        },
        py::arg("n"));
    mod.def("max_enumeration", &default_enumeration_guard);
}
