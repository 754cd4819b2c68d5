#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "iglp/corpus.hpp"
#include "iglp/gfunctions.hpp"
#include "iglp/kernels.hpp"
#include "iglp/multiindex.hpp"
#include "iglp/quadrature.hpp"
#include "iglp/regions_bounds.hpp"
#include "iglp/special_functions.hpp"
#include "iglp/spectral.hpp"

namespace py = pybind11;
using namespace iglp;

namespace {

HermiteExpansion expansion_from_terms(
    int n, const std::vector<std::pair<MultiIndex, double>>& terms) {
  HermiteExpansion f;
  f.n = n;
  f.vdim = 1;
  for (const auto& [k, c] : terms) f.terms[k] = {c};
  return f;
}

std::vector<std::pair<MultiIndex, double>> expansion_terms(const HermiteExpansion& f) {
  std::vector<std::pair<MultiIndex, double>> out;
  for (const auto& [k, c] : f.terms) out.emplace_back(k, c[0]);
  return out;
}

}  // namespace

PYBIND11_MODULE(_iglp, mod) {
  mod.doc() = "inverse Gaussian heat/Poisson kernels and Littlewood-Paley g-functions";

  mod.def("hermite", &hermite, py::arg("k"), py::arg("u"));
  mod.def("hermite_tilde", &hermite_tilde, py::arg("k"), py::arg("x"));
  mod.def("hermite_tilde_l2_norm", &hermite_tilde_l2_norm, py::arg("k"));
  mod.def("stirling2", &stirling2, py::arg("n"), py::arg("l"));

  mod.def("mehler_ou", &mehler_ou, py::arg("x"), py::arg("y"), py::arg("t"));
  mod.def("invgauss_heat", &invgauss_heat, py::arg("x"), py::arg("y"), py::arg("t"));
  mod.def("dt_m_ou", &dt_m_ou, py::arg("x"), py::arg("y"), py::arg("t"), py::arg("m"));
  mod.def("dxk_dtm_invgauss", &dxk_dtm_invgauss, py::arg("x"), py::arg("y"),
          py::arg("t"), py::arg("m"), py::arg("k"));
  mod.def(
      "poisson_kernel",
      [](const std::vector<double>& x, const std::vector<double>& y, double t,
         bool shifted) {
        return poisson_kernel(x, y, t, shifted ? OperatorTag::A_minus_I : OperatorTag::A);
      },
      py::arg("x"), py::arg("y"), py::arg("t"), py::arg("shifted") = false);

  py::class_<HermiteExpansion>(mod, "HermiteExpansion")
      .def(py::init(&expansion_from_terms), py::arg("n"), py::arg("terms"))
      .def_readonly("n", &HermiteExpansion::n)
      .def("terms", &expansion_terms)
      .def("evaluate", &HermiteExpansion::evaluate_scalar, py::arg("x"))
      .def("max_degree", &HermiteExpansion::max_degree)
      .def("to_json", &expansion_to_json)
      .def_static("from_json", &expansion_from_json, py::arg("doc"));

  mod.def("heat_action", &heat_action, py::arg("f"), py::arg("t"));
  mod.def(
      "poisson_action",
      [](const HermiteExpansion& f, double t, bool shifted) {
        return poisson_action(f, t, shifted ? OperatorTag::A_minus_I : OperatorTag::A);
      },
      py::arg("f"), py::arg("t"), py::arg("shifted") = false);
  mod.def("riesz_transform", &riesz_transform, py::arg("f"), py::arg("i"));

  mod.def(
      "g_value",
      [](const HermiteExpansion& f, const std::vector<double>& x, double beta,
         const MultiIndex& k, double q, const std::string& semigroup, double t_min,
         double t_max, int time_points) {
        GFunctionSpec spec;
        spec.beta = beta;
        spec.k = k.empty() ? MultiIndex(f.n, 0) : k;
        spec.q = q;
        if (semigroup == "heat") spec.semigroup_tag = SemigroupTag::heat_A;
        else if (semigroup == "poisson") spec.semigroup_tag = SemigroupTag::poisson_A;
        else if (semigroup == "poisson_shift")
          spec.semigroup_tag = SemigroupTag::poisson_A_minus_I;
        else throw std::invalid_argument("semigroup must be heat, poisson, or poisson_shift");
        TimeGrid tgrid = make_time_grid(t_min, t_max, time_points);
        return g_value(spec, f, x, tgrid);
      },
      py::arg("f"), py::arg("x"), py::arg("beta") = 1.0, py::arg("k") = MultiIndex(),
      py::arg("q") = 2.0, py::arg("semigroup") = "heat", py::arg("t_min") = 1e-10,
      py::arg("t_max") = 64.0, py::arg("time_points") = 8192);

  mod.def("m_admissibility", &m_admissibility, py::arg("x"));
  mod.def("in_local_region", &in_local_region, py::arg("x"), py::arg("y"),
          py::arg("nu"));
  mod.def(
      "j_region_log_measure",
      [](double eta, int n) {
        JRegion region;
        region.eta = eta;
        region.n = n;
        return region.log_measure();
      },
      py::arg("eta"), py::arg("n") = 1);

  mod.def("make_corpus", &make_corpus, py::arg("selector"), py::arg("n"),
          py::arg("seed") = 1);
  mod.def("corpus_to_json", &corpus_to_json, py::arg("corpus"));
}
