#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ybmaps/errors.hpp"
#include "ybmaps/lattice.hpp"
#include "ybmaps/maps.hpp"
#include "ybmaps/maps_3x3.hpp"
#include "ybmaps/refactor.hpp"
#include "ybmaps/verify.hpp"

namespace py = pybind11;
using namespace ybmaps;

namespace {

py::dict refactor_dict(const RefactorResult& r) {
  py::dict d;
  d["U"] = r.U;
  d["V"] = r.V;
  d["lax_residual"] = r.lax_residual;
  d["casimir_drift"] = r.casimir_drift;
  return d;
}

CVector coeffs(const CharPolyCoeffs& c) {
  CVector v(static_cast<Eigen::Index>(c.coeffs.size()));
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) v(static_cast<Eigen::Index>(i)) = c.coeffs[i];
  return v;
}

}  // namespace

PYBIND11_MODULE(_ybmaps, m) {
  m.doc() = "Parametric Yang-Baxter maps from binomial Lax matrices";

  static py::exception<Error> yb_error(m, "YBError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(yb_error.ptr())(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(yb_error.ptr(), exc.ptr());
    }
  });

  m.def("map_ids", &map_ids);

  m.def(
      "apply",
      [](const std::string& id, const CVector& x, const CVector& a, const CVector& y,
         const CVector& b) { return make_map(id)->apply(x, a, y, b); },
      py::arg("map_id"), py::arg("x"), py::arg("a"), py::arg("y"), py::arg("b"));

  m.def(
      "lax",
      [](const std::string& id, const CVector& x, const CVector& a, Complex zeta) {
        return pencil_eval(make_map(id)->lax(x, a), zeta);
      },
      py::arg("map_id"), py::arg("x"), py::arg("a"), py::arg("zeta"));

  m.def(
      "char_poly_coeffs",
      [](const CMatrix& x, const CMatrix& a) { return coeffs(char_poly_coeffs(x, a)); },
      py::arg("point"), py::arg("leading"));

  m.def(
      "refactor_2x2",
      [](const CMatrix& x, const CMatrix& y, const CMatrix& a, const CMatrix& b) {
        return refactor_dict(refactor_2x2(x, y, a, b));
      },
      py::arg("X"), py::arg("Y"), py::arg("A"), py::arg("B"));

  m.def(
      "refactor_nxn",
      [](const CMatrix& x, const CMatrix& y, const CMatrix& ka, const CMatrix& kb) {
        return refactor_dict(refactor_nxn(x, y, ka, kb));
      },
      py::arg("X"), py::arg("Y"), py::arg("K_alpha"), py::arg("K_beta"));

  m.def("discriminant_surface", &discriminant_surface, py::arg("f0"), py::arg("f1"),
        py::arg("f2"));
  m.def("leaf_casimirs", &leaf_casimirs, py::arg("c1"), py::arg("c2"));
  m.def("gv_transform", &gv_transform, py::arg("vec"), py::arg("lam"));

  m.def(
      "integrals_ay",
      [](const CVector& x, const CVector& y, const CVector& a, const CVector& b) {
        return integrals_ay(x, y, a, b);
      },
      py::arg("x"), py::arg("y"), py::arg("a"), py::arg("b"));

  m.def(
      "verify_json",
      [](const std::string& id, std::uint64_t seed, std::size_t samples,
         std::size_t poisson_samples) {
        VerifyConfig cfg;
        cfg.map_id = id;
        cfg.seed = seed;
        cfg.samples = samples;
        cfg.poisson_samples = poisson_samples;
        py::gil_scoped_release release;
        return report_to_json(verify_map(cfg)).dump();
      },
      py::arg("map_id"), py::arg("seed") = 42, py::arg("samples") = 1000,
      py::arg("poisson_samples") = 100);

  m.def(
      "lattice_json",
      [](const std::string& id, std::uint64_t seed, std::size_t steps) {
        const auto map = make_map(id);
        Rng rng = make_rng(seed);
        const StaircaseState s = random_staircase(*map, rng);
        return drift_report_json(transfer_evolve(*map, s, {steps, 0})).dump();
      },
      py::arg("map_id"), py::arg("seed") = 42, py::arg("steps") = 100);
}
