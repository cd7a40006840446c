#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mpade/harness.hpp"
#include "mpade/single_interval.hpp"
#include "mpade/verify.hpp"

namespace py = pybind11;
using namespace mpade;

namespace {

std::function<double(double)> density_from(const py::object& mu) {
  if (py::isinstance<py::str>(mu)) {
    const DensityExpr e = DensityExpr::parse(mu.cast<std::string>());
    return [e](double x) { return e(x); };
  }
  if (py::isinstance<py::float_>(mu) || py::isinstance<py::int_>(mu)) {
    const double c = mu.cast<double>();
    return [c](double) { return c; };
  }
  auto fn = mu.cast<py::function>();
  return [fn](double x) {
    py::gil_scoped_acquire gil;
    return fn(x).cast<double>();
  };
}

InterpolationScheme scheme_from(int n, const std::vector<std::pair<cplx, int>>& finite) {
  InterpolationScheme s;
  s.n = n;
  int used = 0;
  for (const auto& [z, k] : finite) {
    s.points.push_back({z, false, k});
    used += k;
  }
  if (2 * n > used) s.points.push_back({{0.0, 0.0}, true, 2 * n - used});
  return s;
}

}  // namespace

PYBIND11_MODULE(_mpade, m) {
  m.doc() = "Multipoint Pade approximants and L2 critical points of Markov functions on several intervals";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<RationalApproximant>(m, "RationalApproximant")
      .def_readonly("n", &RationalApproximant::n)
      .def_readonly("q_zeros", &RationalApproximant::q_zeros)
      .def_readonly("kappa", &RationalApproximant::kappa)
      .def_readonly("ortho_residual", &RationalApproximant::ortho_residual)
      .def_readonly("iterations", &RationalApproximant::iterations)
      .def("q", &RationalApproximant::q);

  py::class_<Bases, std::unique_ptr<Bases>>(m, "Model")
      .def(py::init([](const std::vector<double>& endpoints, const py::object& mu_dot, const std::vector<double>& m_zeros,
                       int order) {
             return std::make_unique<Bases>(endpoints, Density{density_from(mu_dot), m_zeros}, order);
           }),
           py::arg("endpoints"), py::arg("mu_dot") = 1.0, py::arg("m_zeros") = std::vector<double>{},
           py::arg("order") = 256)
      .def_property_readonly("genus", [](const Bases& b) { return b.system().genus; })
      .def_property_readonly("period_matrix", [](const Bases& b) { return Eigen::MatrixXcd(b.pm.B); })
      .def_property_readonly("riemann_constants", [](const Bases& b) { return Eigen::VectorXcd(b.ctx.K_std); })
      .def_property_readonly("rho", [](const Bases& b) { return b.rho_c; })
      .def_property_readonly("szego_constants", [](const Bases& b) { return b.S->constants(); })
      .def_property_readonly("mass", [](const Bases& b) { return b.f->mass(); })
      .def("markov", [](const Bases& b, cplx z) { return (*b.f)(z); }, py::arg("z"))
      .def("szego", [](const Bases& b, cplx z) { return (*b.S)(z); }, py::arg("z"))
      .def(
          "phi",
          [](const Bases& b, cplx z) {
            if (!b.cb) throw ValidationError("phi needs Delta inside (-1, 1)");
            return phi_map(*b.quad, *b.cb, z);
          },
          py::arg("z"))
      .def(
          "psi_n",
          [](const Bases& b, int n, cplx z, const std::vector<std::pair<cplx, int>>& pts) {
            return psi_n(*b.quad, b.gb, scheme_from(n, pts), z);
          },
          py::arg("n"), py::arg("z"), py::arg("points") = std::vector<std::pair<cplx, int>>{})
      .def(
          "pade",
          [](const Bases& b, int n, const std::vector<std::pair<cplx, int>>& pts) {
            return pade(*b.f, scheme_from(n, pts));
          },
          py::arg("n"), py::arg("points") = std::vector<std::pair<cplx, int>>{},
          "Finite interpolation points as (z, multiplicity); the rest sit at infinity.")
      .def(
          "critical_point", [](const Bases& b, int n) { return critical_point(*b.f, n); }, py::arg("n"))
      .def(
          "critical_points",
          [](const Bases& b, int n, int restarts) { return critical_points(*b.f, n, restarts); }, py::arg("n"),
          py::arg("restarts") = 2, "Default fixed point first, then distinct ones found from spread-out starts.")
      .def(
          "error", [](const Bases& b, const RationalApproximant& r, cplx z) { return pade_error(*b.f, r, z); },
          py::arg("r"), py::arg("z"))
      .def(
          "l2_error",
          [](const Bases& b, const RationalApproximant& r, int nodes) { return l2_error(*b.f, r, nodes); },
          py::arg("r"), py::arg("circle_nodes") = 1024)
      .def(
          "rhs_pade",
          [](const Bases& b, int n, cplx z, const std::vector<std::pair<cplx, int>>& pts) {
            return rhs_pade(b, scheme_from(n, pts), z);
          },
          py::arg("n"), py::arg("z"), py::arg("points") = std::vector<std::pair<cplx, int>>{})
      .def(
          "rhs_critical", [](const Bases& b, const RationalApproximant& r, cplx z) { return rhs_critical(b, r, z); },
          py::arg("r"), py::arg("z"));

  m.def(
      "theta",
      [](const Eigen::MatrixXcd& B, const Eigen::VectorXcd& u) { return theta_eval(B, theta_radius(B), u); },
      py::arg("B"), py::arg("u"));

  m.def(
      "run_scenario",
      [](const std::string& path, const std::string& out) {
        const RatioReport rep = run_scenario(load_scenario(path));
        py::dict d;
        d["csv"] = out.empty() ? std::string() : write_report(rep, out);
        d["body"] = report_csv(rep);
        py::list checks;
        for (const auto& c : rep.checks) checks.append(py::make_tuple(c.name, c.value, c.threshold, c.pass));
        d["checks"] = checks;
        d["passed"] = rep.all_pass();
        return d;
      },
      py::arg("path"), py::arg("out") = "");

  m.def(
      "verify",
      [](int order) {
        py::list out;
        for (const auto& g : verify_all(order))
          for (const auto& c : g.checks) out.append(py::make_tuple(g.name, c.name, c.value, c.threshold, c.pass));
        return out;
      },
      py::arg("order") = 256);
}
