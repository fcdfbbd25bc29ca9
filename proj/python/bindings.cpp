#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sonine/acceptance.hpp"
#include "sonine/copoisson.hpp"
#include "sonine/errors.hpp"
#include "sonine/mellin.hpp"
#include "sonine/moebius.hpp"
#include "sonine/sonine_lab.hpp"
#include "sonine/specfun.hpp"
#include "sonine/zero_series.hpp"
#include "sonine/zeta.hpp"

namespace py = pybind11;
using namespace sonine;

namespace {

py::object to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::dict zero_dict(const ZetaZero& z) {
  py::dict d;
  d["index"] = z.index;
  d["gamma"] = z.gamma;
  d["multiplicity"] = z.multiplicity;
  d["zeta_prime"] = z.zeta_prime;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = "0.1.0";

  auto error = py::register_exception<Error>(m, "SonineError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", error.ptr());
  py::register_exception<TruncationError>(m, "TruncationError", error.ptr());
  py::register_exception<MultipleZeroError>(m, "MultipleZeroError", error.ptr());
  py::register_exception<DegenerateError>(m, "DegenerateError", error.ptr());
  py::register_exception<BudgetError>(m, "BudgetError", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());

  m.def("log_gamma", &log_gamma, py::arg("s"));
  m.def("chi", &chi, py::arg("s"));
  m.def("completed_factor", &completed_factor, py::arg("s"));
  m.def("rs_theta", &rs_theta, py::arg("t"));
  m.def("zeta", &zeta, py::arg("s"));
  m.def("xi", &xi, py::arg("s"));
  m.def("completed_zeta", &completed_zeta, py::arg("s"));
  m.def("hardy_z", &hardy_z, py::arg("t"));

  py::class_<ZeroTable>(m, "ZeroTable")
      .def("__len__", &ZeroTable::size)
      .def_readonly("height_limit", &ZeroTable::height_limit)
      .def_readonly("sign_changes", &ZeroTable::sign_changes)
      .def_readonly("argument_count", &ZeroTable::argument_count)
      .def_readonly("block_bounds", &ZeroTable::block_bounds)
      .def_property_readonly("gammas",
                             [](const ZeroTable& t) {
                               std::vector<double> g;
                               for (const auto& z : t.zeros) g.push_back(z.gamma);
                               return g;
                             })
      .def("zero", [](const ZeroTable& t, std::size_t i) { return zero_dict(t.zeros.at(i)); })
      .def("prefix", &ZeroTable::prefix, py::arg("n"))
      .def("save", [](const ZeroTable& t, const std::string& p) { save_zero_table(t, p); });

  m.def(
      "find_zeros",
      [](double t_max, int jobs) {
        FindZerosOptions o;
        o.jobs = jobs;
        py::gil_scoped_release release;
        return find_zeros(t_max, o);
      },
      py::arg("t_max"), py::arg("jobs") = 1);
  m.def("load_zero_table", &load_zero_table, py::arg("path"));

  py::class_<TestFunction>(m, "TestFunction")
      .def("__call__", &TestFunction::value)
      .def_property_readonly("a", &TestFunction::a)
      .def_property_readonly("b", &TestFunction::b)
      .def("dilated", &TestFunction::dilated, py::arg("d"))
      .def("reflected", &TestFunction::reflected, py::arg("c") = 1.0)
      .def("__add__", &TestFunction::operator+)
      .def("__sub__", &TestFunction::operator-)
      .def("__mul__", &TestFunction::operator*)
      .def("__repr__", &TestFunction::describe);

  m.def(
      "make_bump",
      [](double a, double A, double tilt) { return make_bump(a, A, {tilt}); },
      py::arg("a"), py::arg("A"), py::arg("tilt") = 0.0);
  m.def("make_gaussian", &make_gaussian, py::arg("c") = 1.0, py::arg("lam") = 1.0);
  m.def("make_hermite", &make_hermite, py::arg("coeffs"));
  m.def("mellin_right", &mellin_right, py::arg("g"), py::arg("s"));
  m.def(
      "cosine_transform", [](const TestFunction& g, double u) { return cosine_transform(g, u); },
      py::arg("g"), py::arg("u"));
  m.def(
      "kernel_series",
      [](double a, Complex s, double u, int J) {
        const KernelSeries k = kernel_series(a, s, u, J);
        return py::make_tuple(k.value, k.truncation_bound);
      },
      py::arg("a"), py::arg("s"), py::arg("u"), py::arg("J"));

  m.def(
      "poisson_residual",
      [](const TestFunction& phi, double u) { return poisson_residual(phi, u); },
      py::arg("phi"), py::arg("u"));
  m.def("modified_poisson_sum", &modified_poisson_sum, py::arg("phi"), py::arg("t"));
  m.def(
      "muntz_check",
      [](const TestFunction& phi, const std::vector<Complex>& s) {
        return to_py(muntz_check(phi, s).to_json());
      },
      py::arg("phi"), py::arg("s_grid"));
  m.def(
      "copoisson_sum", [](const TestFunction& g, double t) { return copoisson_sum(g, t); },
      py::arg("g"), py::arg("t"));
  m.def(
      "copoisson_identity_check",
      [](const TestFunction& g, std::vector<double> u) {
        if (u.empty()) u = default_u_grid(g.a(), g.b());
        return to_py(copoisson_identity_check(g, u).to_json());
      },
      py::arg("g"), py::arg("u_grid") = std::vector<double>{});
  m.def(
      "copoisson_mellin_check",
      [](const TestFunction& g, const std::vector<Complex>& s) {
        return to_py(copoisson_mellin_check(g, s).to_json());
      },
      py::arg("g"), py::arg("s_grid"));

  py::class_<CoPoissonElement>(m, "CoPoissonElement")
      .def(py::init<TestFunction, bool>(), py::arg("g"), py::arg("rescale") = true)
      .def("value", &CoPoissonElement::value)
      .def("dual", &CoPoissonElement::dual)
      .def("mellin", &CoPoissonElement::mellin)
      .def_property_readonly("g0", &CoPoissonElement::g0)
      .def_property_readonly("g1", &CoPoissonElement::g1)
      .def_property_readonly("a", &CoPoissonElement::a)
      .def_property_readonly("A", &CoPoissonElement::A)
      .def("norm", &CoPoissonElement::norm);

  m.def(
      "normalize_moments",
      [](const TestFunction& g) {
        const MomentNormalization n = normalize_moments(g);
        return py::make_tuple(n.g_star, to_py(n.to_json()));
      },
      py::arg("g"));
  m.def("symmetric_seed", &symmetric_seed, py::arg("a"));

  py::class_<SonineElement>(m, "SonineElement")
      .def_static("from_copoisson", &SonineElement::from_copoisson, py::arg("g"),
                  py::arg("rescale") = true)
      .def_static("from_hermite", &SonineElement::from_hermite, py::arg("coeffs"))
      .def("value", &SonineElement::value)
      .def("transform", &SonineElement::transform)
      .def("mellin", &SonineElement::mellin)
      .def("dilated", &SonineElement::dilated, py::arg("c"))
      .def("norm", &SonineElement::norm)
      .def("vanishing", &SonineElement::vanishing, py::arg("a"), py::arg("eps") = 1e-3)
      .def_readonly("vanish_tol", &SonineElement::vanish_tol)
      .def_readonly("parity", &SonineElement::parity)
      .def_property_readonly("coefficients", &SonineElement::coefficients)
      .def("sidecar", [](const SonineElement& e) { return to_py(e.sidecar()); });

  m.def("chebyshev_points", &chebyshev_points, py::arg("k"));
  m.def(
      "build_k1_hermite",
      [](int M, const std::vector<double>& points) {
        py::gil_scoped_release release;
        return build_k1_hermite(M, points);
      },
      py::arg("M"), py::arg("points"));
  m.def(
      "support_profile",
      [](const SonineElement& f, double threshold) {
        return to_py(support_profile(f, threshold).to_json());
      },
      py::arg("f"), py::arg("threshold"));
  m.def(
      "zero_density_report",
      [](const TestFunction& g_star, double T, const ZeroTable& table) {
        return to_py(zero_density_report(g_star, T, table).to_json());
      },
      py::arg("g_star"), py::arg("T"), py::arg("table"));

  py::class_<MoebiusTable>(m, "MoebiusTable")
      .def_readonly("N", &MoebiusTable::N)
      .def("__getitem__", &MoebiusTable::operator())
      .def("squarefree_count", &MoebiusTable::squarefree_count);
  m.def(
      "moebius_sieve",
      [](long N, int jobs) {
        SieveOptions o;
        o.jobs = jobs;
        py::gil_scoped_release release;
        return moebius_sieve(N, o);
      },
      py::arg("N"), py::arg("jobs") = 1);
  m.def(
      "ramanujan_lhs",
      [](double a, long N, const MoebiusTable& t) {
        const RamanujanLhs r = ramanujan_lhs(a, N, t);
        return py::make_tuple(r.value, r.tail_estimate);
      },
      py::arg("a"), py::arg("N"), py::arg("table"));
  m.def(
      "ramanujan_rhs",
      [](double b, const ZeroTable& zeros) {
        const RamanujanRhs r = ramanujan_rhs(b, zeros);
        return py::make_tuple(r.value, r.tail_bound);
      },
      py::arg("b"), py::arg("zeros"));
  m.def(
      "residue_series",
      [](const std::vector<Complex>& g, Complex Z, const ZeroTable& zeros) {
        return to_py(residue_series(g, Z, zeros).to_json());
      },
      py::arg("g_at_zeros"), py::arg("Z"), py::arg("zeros"));
  m.def(
      "sum_over_zeros",
      [](const std::vector<Complex>& g, const ZeroTable& zeros) {
        return to_py(sum_over_zeros(g, zeros).to_json());
      },
      py::arg("g_at_zeros"), py::arg("zeros"));
  m.def(
      "biorthogonality_matrix",
      [](const ZeroTable& zeros, std::size_t n) {
        return to_py(biorthogonality_matrix(zeros, n).to_json());
      },
      py::arg("zeros"), py::arg("n"));

  m.def(
      "run_acceptance",
      [](const std::map<std::string, std::string>& overrides) {
        RunConfig cfg;
        for (const auto& [k, v] : overrides) cfg.set(k, v);
        SuiteResult s;
        {
          py::gil_scoped_release release;
          s = run_acceptance(cfg);
        }
        return to_py(s.to_json());
      },
      py::arg("overrides") = std::map<std::string, std::string>{});
}
