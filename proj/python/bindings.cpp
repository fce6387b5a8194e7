#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "finverify/catalog.hpp"
#include "finverify/cli.hpp"
#include "finverify/fd_solver.hpp"
#include "finverify/numerics.hpp"
#include "finverify/reductions.hpp"
#include "finverify/residual.hpp"
#include "finverify/symmetry.hpp"

namespace py = pybind11;
namespace fv = finverify;
using fv::catalog::FamilySpec;

namespace {

fv::Box make_box(double t0, double t1, double x0, double x1, int nt, int nx) { return {t0, t1, x0, x1, nt, nx}; }

py::dict jet_dict(const fv::Jet& j) {
  py::dict d;
  d["u"] = j.u;
  d["u_t"] = j.u_t;
  d["u_x"] = j.u_x;
  d["u_xx"] = j.u_xx;
  return d;
}

fv::symmetry::Generator generator_from(const std::string& name) {
  using G = fv::symmetry::Generator;
  for (G g : {G::Dt, G::D, G::DHat, G::PiHat, G::Q6, G::Q5}) {
    if (fv::symmetry::to_string(g) == name) return g;
  }
  throw fv::UnsupportedPair("unknown generator " + name);
}

}  // namespace

PYBIND11_MODULE(_finverify, m) {
  m.doc() = "Exact solutions, reductions and symmetries of u_t = (u^{-3/2} u_x)_x + u/x";

  auto base = py::register_exception<fv::Error>(m, "FinverifyError", PyExc_RuntimeError);
  py::register_exception<fv::DomainError>(m, "DomainError", base.ptr());
  py::register_exception<fv::SingularPoint>(m, "SingularPoint", base.ptr());
  py::register_exception<fv::RootFailure>(m, "RootFailure", base.ptr());
  py::register_exception<fv::OutOfRange>(m, "OutOfRange", base.ptr());
  py::register_exception<fv::NoBracket>(m, "NoBracket", base.ptr());
  py::register_exception<fv::QuadFailure>(m, "QuadFailure", base.ptr());
  py::register_exception<fv::EmptyGrid>(m, "EmptyGrid", base.ptr());
  py::register_exception<fv::UnsupportedPair>(m, "UnsupportedPair", base.ptr());
  py::register_exception<fv::BlowUp>(m, "BlowUp", base.ptr());
  py::register_exception<fv::StabilityViolation>(m, "StabilityViolation", base.ptr());
  py::register_exception<fv::DomainBreach>(m, "DomainBreach", base.ptr());

  py::class_<FamilySpec>(m, "FamilySpec")
      .def_static("family1", &FamilySpec::family1, py::arg("epsilon"))
      .def_static("cubic", &FamilySpec::cubic, py::arg("family_id"))
      .def_static(
          "family6", [](double c0, int sign) { return FamilySpec::family6(c0, sign); }, py::arg("c0") = 0.0,
          py::arg("sign") = 1)
      .def_static(
          "family7", [](double c0, int sign) { return FamilySpec::family7(c0, sign); }, py::arg("c0") = 0.0,
          py::arg("sign") = -1)
      .def_readonly("family_id", &FamilySpec::family_id)
      .def_readonly("epsilon", &FamilySpec::epsilon)
      .def_readonly("c0", &FamilySpec::c0)
      .def_readonly("branch_sign", &FamilySpec::branch_sign)
      .def("params_tag", &FamilySpec::params_tag)
      .def("__repr__", [](const FamilySpec& s) { return "FamilySpec(" + fv::cli::family_label(s) + ")"; });

  // catalog
  m.def("eval_u", [](const FamilySpec& s, double t, double x) { return fv::catalog::eval_u(s, {t, x}); },
        py::arg("spec"), py::arg("t"), py::arg("x"));
  m.def("eval_v", [](const FamilySpec& s, double t, double x) { return fv::catalog::eval_v(s, {t, x}); },
        py::arg("spec"), py::arg("t"), py::arg("x"));
  m.def("validity", [](const FamilySpec& s, double t, double x) { return fv::catalog::validity(s, {t, x}); },
        py::arg("spec"), py::arg("t"), py::arg("x"));

  // residual
  m.def("jet", [](const FamilySpec& s, double t, double x) { return jet_dict(fv::residual::jet_of_family(s, {t, x})); },
        py::arg("spec"), py::arg("t"), py::arg("x"));
  m.def(
      "scan",
      [](const FamilySpec& s, double t0, double t1, double x0, double x1, int nt, int nx, const std::string& form) {
        const auto r = fv::residual::scan(s, make_box(t0, t1, x0, x1, nt, nx), fv::residual::form_from_string(form));
        py::dict d;
        d["max_abs"] = r.max_abs;
        d["argmax"] = py::make_tuple(r.argmax.t, r.argmax.x);
        d["samples"] = r.samples;
        d["skipped"] = r.skipped;
        return d;
      },
      py::arg("spec"), py::arg("t0"), py::arg("t1"), py::arg("x0"), py::arg("x1"), py::arg("nt") = 20,
      py::arg("nx") = 20, py::arg("form") = "u");

  // reductions
  m.def("antiderivative", &fv::reductions::antiderivative, py::arg("c1"), py::arg("psi"));
  m.def("integrand", &fv::reductions::integrand, py::arg("c1"), py::arg("psi"));
  m.def("antiderivative_quadrature", &fv::reductions::antiderivative_quadrature, py::arg("c1"), py::arg("a"),
        py::arg("b"), py::arg("tol") = 1e-12);
  m.def(
      "psi_from_x",
      [](int c1, double c0, int sign, double x) {
        fv::reductions::StationaryProfile p;
        p.c1 = c1;
        p.c0 = c0;
        p.sign = sign;
        p.psi_interval = fv::reductions::admissible_interval(c1);
        return fv::reductions::psi_from_x(p, x);
      },
      py::arg("c1"), py::arg("c0"), py::arg("sign"), py::arg("x"));
  m.def("ansatz_coeffs", [](int case_id, double t, double eps) {
    return fv::reductions::ansatz_coeffs({case_id, eps}, t);
  }, py::arg("case_id"), py::arg("t"), py::arg("epsilon") = 0.0);
  m.def(
      "integrate_ansatz",
      [](double phi1, double phi2_0, double t0, double t1, double step) {
        const auto tr = fv::reductions::integrate_ansatz(phi1, phi2_0, t0, t1, step);
        return py::make_tuple(tr.t, tr.phi2);
      },
      py::arg("phi1"), py::arg("phi2_0"), py::arg("t0"), py::arg("t1"), py::arg("step"));

  // numerics
  m.def(
      "solve_root",
      [](const std::function<double(double)>& f, double lo, double hi, double tol) {
        return fv::numerics::solve_root(f, lo, hi, tol);
      },
      py::arg("f"), py::arg("lo"), py::arg("hi"), py::arg("tol") = 1e-14);
  m.def(
      "quad",
      [](const std::function<double(double)>& f, double a, double b, double tol) {
        return fv::numerics::quad(f, a, b, tol);
      },
      py::arg("f"), py::arg("a"), py::arg("b"), py::arg("tol") = 1e-12);
  m.def(
      "fd_solve",
      [](const FamilySpec& s, double x_lo, double x_hi, int n, double t0, double t1) {
        fv::numerics::GridRun run;
        run.x_lo = x_lo;
        run.x_hi = x_hi;
        run.n = n;
        run.t0 = t0;
        run.t1 = t1;
        run.family = s;
        const auto r = fv::numerics::fd_solve(run);
        py::dict d;
        d["x"] = r.x;
        d["u_numeric"] = r.final_field();
        d["u_exact"] = r.snapshots.back().u_exact;
        d["max_error"] = r.max_error;
        d["drift"] = r.drift;
        d["min_u"] = r.min_u;
        d["steps"] = r.steps;
        return d;
      },
      py::arg("spec"), py::arg("x_lo"), py::arg("x_hi"), py::arg("n"), py::arg("t0"), py::arg("t1"));
  m.def(
      "convergence_study",
      [](const FamilySpec& s, double x_lo, double x_hi, double t0, double t1, const std::vector<int>& sizes) {
        fv::numerics::GridRun run;
        run.x_lo = x_lo;
        run.x_hi = x_hi;
        run.t0 = t0;
        run.t1 = t1;
        run.family = s;
        const auto r = fv::numerics::convergence_study(run, sizes);
        py::dict d;
        d["sizes"] = r.sizes;
        d["errors"] = r.errors;
        d["orders"] = r.orders;
        return d;
      },
      py::arg("spec"), py::arg("x_lo"), py::arg("x_hi"), py::arg("t0"), py::arg("t1"),
      py::arg("sizes") = std::vector<int>{51, 101, 201});

  // symmetry
  m.def(
      "bracket",
      [](const std::string& a, const std::string& b) -> py::object {
        const auto r = fv::symmetry::bracket({generator_from(a)}, {generator_from(b)});
        if (!r) return py::none();
        return py::make_tuple(r->coefficient.num(), r->coefficient.den(), fv::symmetry::to_string(r->generator));
      },
      py::arg("x"), py::arg("y"));
  m.def(
      "act",
      [](double delta0, double delta1, const FamilySpec& s, double t, double x) {
        const auto image = fv::symmetry::act({delta0, delta1}, fv::residual::family_field(s));
        return jet_dict(image.jet({t, x}));
      },
      py::arg("delta0"), py::arg("delta1"), py::arg("spec"), py::arg("t"), py::arg("x"));
  m.def(
      "check_gcs",
      [](const FamilySpec& s, double t0, double t1, double x0, double x1, int nt, int nx) {
        const auto r = fv::symmetry::check_gcs(s, make_box(t0, t1, x0, x1, nt, nx));
        return py::make_tuple(r.characteristic, r.constraint);
      },
      py::arg("spec"), py::arg("t0"), py::arg("t1"), py::arg("x0"), py::arg("x1"), py::arg("nt") = 20,
      py::arg("nx") = 20);
  m.def(
      "check_conditional",
      [](const FamilySpec& s, const std::string& op, double c1, int branch, double t0, double t1, double x0, double x1,
         int nt, int nx) {
        return fv::symmetry::check_conditional(s, {generator_from(op), c1, branch},
                                               make_box(t0, t1, x0, x1, nt, nx));
      },
      py::arg("spec"), py::arg("op"), py::arg("c1"), py::arg("branch"), py::arg("t0"), py::arg("t1"), py::arg("x0"),
      py::arg("x1"), py::arg("nt") = 20, py::arg("nx") = 20);
  m.def(
      "flow_pi_residual",
      [](double eps, const FamilySpec& s, double omega_image) {
        const auto image = fv::symmetry::flow_pi(eps, fv::symmetry::stationary_field(s));
        return fv::symmetry::stationary_residual(image, omega_image);
      },
      py::arg("eps"), py::arg("spec"), py::arg("omega"));

  // cli
  m.def(
      "verify",
      [](const FamilySpec& s) {
        fv::cli::RunConfig cfg;
        py::list out;
        for (const auto& c : fv::cli::verify_family(s, cfg)) {
          py::dict d;
          d["check"] = c.check;
          d["family"] = c.family;
          d["max_defect"] = c.max_defect;
          d["tolerance"] = c.tolerance;
          d["pass"] = c.pass;
          out.append(d);
        }
        return out;
      },
      py::arg("spec"));
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full{"finverify"};
        full.insert(full.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : full) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = fv::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
