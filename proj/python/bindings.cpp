#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "legzeros/error.hpp"
#include "legzeros/legendre.hpp"
#include "legzeros/spectral.hpp"
#include "legzeros/trajectory.hpp"
#include "legzeros/verify.hpp"

namespace py = pybind11;
using namespace legzeros;

namespace {

Method method_from(const std::string& name) {
  const auto m = parse_method(name);
  if (!m) throw py::value_error("method must be one of spectral, newton, ode");
  return *m;
}

py::list anchored(const ZeroSet& zs) {
  py::list out;
  for (const auto& z : zs.zeros) out.append(py::make_tuple(z.anchor, z.offset));
  return out;
}

}  // namespace

PYBIND11_MODULE(_legzeros, m) {
  m.doc() = "Zeros of Gamma(1-z) P_n^z(tanh x) in the order z";

  // legzeros.Error carries the failure category in `kind`.
  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result(
      [&m] { return py::exception<Error>(m, "Error", PyExc_RuntimeError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const auto& type = error_type.get_stored();
      py::object inst = type(e.what());
      inst.attr("kind") = std::string(to_string(e.kind()));
      py::set_error(type, inst);
    }
  });

  m.attr("MAX_DEGREE") = kMaxDegree;

  m.def("psi", [](int n, double x, double z) { return eval_psi({n, x, z}); }, py::arg("n"),
        py::arg("x"), py::arg("z"), "Gamma(1-z) P_n^z(tanh x) by the terminating series.");
  m.def("psi_at_zero", &eval_psi_at_zero, py::arg("n"), py::arg("z"));
  m.def("charpoly", [](int n, double x) { return charpoly_at(n, x).coeffs; }, py::arg("n"),
        py::arg("x"), "det(zI - Z(x)) coefficients, ascending powers of z.");
  m.def("norm_constants",
        [](int n) {
          std::vector<double> out;
          const auto nu = norm_constants(n);
          for (int j = 1; j <= n; ++j) out.push_back(nu.value(j));
          return out;
        },
        py::arg("n"));
  m.def("zeros",
        [](int n, double x, const std::string& method, double tol) {
          return zeros_by(method_from(method), n, x, tol).values();
        },
        py::arg("n"), py::arg("x"), py::arg("method") = "spectral", py::arg("tol") = 1e-10,
        "The n zeros at x, largest first.");
  m.def("zeros_anchored",
        [](int n, double x, const std::string& method, double tol) {
          return anchored(zeros_by(method_from(method), n, x, tol));
        },
        py::arg("n"), py::arg("x"), py::arg("method") = "spectral", py::arg("tol") = 1e-10,
        "Zeros as (nearest integer, remainder) pairs.");
  m.def("trace",
        [](int n, double x_min, double x_max, int samples, const std::string& method,
           double tol) {
          const auto t = sample(n, x_min, x_max, samples, method_from(method), tol);
          std::vector<double> xs, ys;
          std::vector<std::vector<double>> zs;
          for (const auto& s : t.samples) {
            xs.push_back(s.x);
            ys.push_back(s.y);
            zs.push_back(s.zeros.values());
          }
          return py::make_tuple(xs, ys, zs);
        },
        py::arg("n"), py::arg("x_min"), py::arg("x_max"), py::arg("samples") = 201,
        py::arg("method") = "spectral", py::arg("tol") = 1e-10,
        "Uniform-grid trajectories as (x, tanh x, zeros per sample).");
  m.def("verify",
        [](int n_max) {
          py::list out;
          for (const auto& c : run_verification(n_max).checks)
            out.append(py::make_tuple(c.suite, c.name, c.passed, c.detail));
          return out;
        },
        py::arg("n_max") = 8, "Invariant suite as (suite, name, passed, detail) tuples.");
}
