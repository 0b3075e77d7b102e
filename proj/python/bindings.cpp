#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lowlying/density.hpp"
#include "lowlying/errors.hpp"
#include "lowlying/gauss_sums.hpp"
#include "lowlying/verify.hpp"

namespace py = pybind11;
using namespace lowlying;

namespace {

std::string report_text(const DensityReport& r, const std::string& format) {
  std::ostringstream os;
  emit_report(os, r, report_format_from_string(format));
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_lowlying, m) {
  m.doc() = "Character families, zeros of their L-functions and one-level densities.";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);

  py::class_<DirichletChar>(m, "DirichletChar")
      .def_readonly("modulus", &DirichletChar::modulus)
      .def_readonly("order", &DirichletChar::order)
      .def_readonly("parity", &DirichletChar::parity)
      .def_readonly("primitive", &DirichletChar::primitive)
      .def_readonly("label", &DirichletChar::label)
      .def("__call__", &DirichletChar::value, py::arg("m"))
      .def("conj", &DirichletChar::conj)
      .def("__repr__", [](const DirichletChar& c) { return "<DirichletChar " + c.label + ">"; });

  m.def("quadratic_character", &quadratic_character, py::arg("d"));
  m.def("family", [](const std::string& kind, i64 X) {
    switch (family_kind_from_string(kind)) {
      case FamilyKind::kQuadratic: return enumerate_quadratic_family(X);
      case FamilyKind::kCubic: return enumerate_cubic_family(X);
      case FamilyKind::kQuartic: return enumerate_quartic_family(X);
      default: throw DomainError("family '" + kind + "' has no Dirichlet character list");
    }
  }, py::arg("kind"), py::arg("X"));

  m.def("tau_m_bruteforce", &tau_m_bruteforce, py::arg("m"), py::arg("k"));
  m.def("G_m_closed_form", &G_m_closed_form, py::arg("m"), py::arg("k"));
  m.def("gauss_factor", &gauss_factor, py::arg("k"));
  m.def("gauss_sum", &gauss_sum_chi, py::arg("chi"));
  m.def("mobius_split", [](i64 d, double Z) {
    const auto s = mobius_split(d, Z);
    return py::make_tuple(s.M, s.R);
  }, py::arg("d"), py::arg("Z"));

  m.def("find_zeros", [](const DirichletChar& chi, double T) {
    ZeroList z;
    {
      py::gil_scoped_release release;
      z = find_zeros_dirichlet(chi, T);
    }
    py::dict out;
    out["gammas"] = z.gammas;
    out["complete"] = z.complete;
    out["main_term"] = z.main_term;
    out["expected_count"] = z.expected_count;
    return out;
  }, py::arg("chi"), py::arg("T"));
  m.def("zero_count_expected", &zero_count_expected, py::arg("q"), py::arg("T"), py::arg("degree") = 1);

  py::enum_<TestShape>(m, "TestShape").value("fejer", TestShape::kFejer).value("cosine_bump", TestShape::kCosineBump);
  py::enum_<Kernel>(m, "Kernel")
      .value("U", Kernel::kU)
      .value("USp", Kernel::kUSp)
      .value("SO_plus", Kernel::kSOPlus)
      .value("SO_minus", Kernel::kSOMinus)
      .value("O", Kernel::kO);
  py::class_<TestFunction>(m, "TestFunction")
      .def(py::init<TestShape, double>(), py::arg("shape"), py::arg("sigma"))
      .def_static("fejer", &TestFunction::fejer, py::arg("sigma"))
      .def_static("cosine_bump", &TestFunction::cosine_bump, py::arg("sigma"))
      .def_property_readonly("sigma", &TestFunction::sigma)
      .def_property_readonly("shape", &TestFunction::shape)
      .def("phi", &TestFunction::phi, py::arg("x"))
      .def("phi_hat", &TestFunction::phi_hat, py::arg("u"));
  m.def("predicted_integral", &predicted_integral, py::arg("phi"), py::arg("kernel"));
  m.def("kernel_density", &kernel_density, py::arg("kernel"), py::arg("x"));

  m.def("density", [](const std::string& kind, i64 X, double sigma, double T, const std::string& shape,
                      const std::string& cache_dir, bool use_cache, int workers, const std::string& format) {
    ExperimentConfig cfg;
    cfg.X = X;
    cfg.sigma = sigma;
    cfg.T = T;
    cfg.shape = test_shape_from_string(shape);
    DensityOptions opts;
    opts.cache_dir = cache_dir;
    opts.use_cache = use_cache;
    opts.workers = workers;
    DensityReport r;
    {
      py::gil_scoped_release release;
      r = run_density_experiment(cfg, FamilySpec{family_kind_from_string(kind), X}, cfg.test_function(), opts);
    }
    return report_text(r, format);
  }, py::arg("kind"), py::arg("X"), py::arg("sigma") = 0.8, py::arg("T") = 30.0, py::arg("shape") = "fejer",
     py::arg("cache_dir") = "", py::arg("use_cache") = true, py::arg("workers") = 1, py::arg("format") = "json",
     "Runs a density experiment and returns the report in the requested format.");

  m.def("verify", [](const std::string& suite) {
    SuiteResult r;
    {
      py::gil_scoped_release release;
      r = run_suite(suite, VerifySettings{});
    }
    py::list rows;
    for (const auto& row : r.rows) {
      py::dict d;
      d["check"] = row.check;
      d["params"] = row.params;
      d["lhs"] = row.lhs;
      d["rhs"] = row.rhs;
      d["residual"] = row.residual;
      d["tolerance"] = row.tolerance;
      d["pass"] = row.pass;
      rows.append(d);
    }
    return rows;
  }, py::arg("suite"));
  m.attr("suites") = suite_names();
}
