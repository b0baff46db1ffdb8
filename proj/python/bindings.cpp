#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "jchm/analytic.hpp"
#include "jchm/classify.hpp"
#include "jchm/eigensolver.hpp"
#include "jchm/error.hpp"
#include "jchm/groundstate.hpp"
#include "jchm/output.hpp"
#include "jchm/sweep.hpp"

namespace py = pybind11;
using namespace jchm;

namespace {

py::array_t<double> to_numpy(const SymmetricMatrix& m) {
  const auto n = static_cast<py::ssize_t>(m.dim());
  py::array_t<double> out({n, n});
  const auto dense = m.to_dense();
  std::copy(dense.begin(), dense.end(), out.mutable_data());
  return out;
}

SymmetricMatrix from_numpy(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw InvalidParameter("matrix", "must be square");
  const auto n = static_cast<std::size_t>(a.shape(0));
  const double* p = a.data();
  std::size_t kd = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (p[i * n + j] != p[j * n + i]) throw InvalidParameter("matrix", "must be symmetric");
      if (p[i * n + j] != 0.0) kd = std::max(kd, i > j ? i - j : j - i);
    }
  SymmetricMatrix m(n, kd);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (p[i * n + j] != 0.0) m.set(i, j, p[i * n + j]);
  return m;
}

py::array_t<double> vec(const std::vector<double>& v) {
  py::array_t<double> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

ClassifyOptions make_options(int base_n_max, std::optional<double> psi_max, std::optional<double> psi_eps,
                             double tol, double tol_conv, double pin_fraction) {
  ClassifyOptions o;
  o.base_n_max = base_n_max;
  o.psi_max = psi_max;
  o.psi_zero_eps = psi_eps;
  o.eig_tol = tol;
  o.probe.tol_conv = tol_conv;
  o.probe.pin_fraction = pin_fraction;
  return o;
}

#define JCHM_OPTION_ARGS                                                                                   \
  py::arg("base_n_max") = 0, py::arg("psi_max") = py::none(), py::arg("psi_eps") = py::none(),            \
      py::arg("tol") = kDefaultEigTol, py::arg("tol_conv") = 1e-8, py::arg("pin_fraction") = 0.8

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mean-field solver for the multiphoton Jaynes-Cummings-Hubbard lattice";

  auto base_error = py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
  py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_RuntimeError);
  py::register_exception<BracketError>(m, "BracketError", PyExc_RuntimeError);
  py::register_exception<IndeterminateError>(m, "IndeterminateError", PyExc_RuntimeError);
  (void)base_error;

  py::class_<HilbertSpace>(m, "HilbertSpace")
      .def(py::init<int, int>(), py::arg("l"), py::arg("n_max"))
      .def_property_readonly("l", &HilbertSpace::l)
      .def_property_readonly("n_max", &HilbertSpace::n_max)
      .def_property_readonly("dim", &HilbertSpace::dim)
      .def("l_of", &HilbertSpace::l_of)
      .def("__repr__", [](const HilbertSpace& s) {
        return "HilbertSpace(l=" + std::to_string(s.l()) + ", n_max=" + std::to_string(s.n_max()) + ")";
      });
  m.def("build_space", &build_space, py::arg("l"), py::arg("n_max"));

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](int l, double omega, double Omega, double mu, double kappa, int z) {
             return ModelParams{l, omega, Omega, mu, kappa, z};
           }),
           py::arg("l") = 1, py::arg("omega") = 1.0, py::arg("Omega") = 1.0, py::arg("mu") = 1.0,
           py::arg("kappa") = 0.0, py::arg("z") = 2)
      .def_readwrite("l", &ModelParams::l)
      .def_readwrite("omega", &ModelParams::omega)
      .def_readwrite("Omega", &ModelParams::Omega)
      .def_readwrite("mu", &ModelParams::mu)
      .def_readwrite("kappa", &ModelParams::kappa)
      .def_readwrite("z", &ModelParams::z)
      .def("validate", &ModelParams::validate)
      .def_static("from_axes", &ModelParams::from_axes, py::arg("l"), py::arg("z"), py::arg("mu"), py::arg("delta"),
                  py::arg("x"), py::arg("y"));

  m.def(
      "build_mean_field",
      [](const ModelParams& p, double psi, const HilbertSpace& s) { return to_numpy(build_mean_field(p, psi, s)); },
      py::arg("params"), py::arg("psi"), py::arg("space"), "Dense copy of the mean-field Hamiltonian.");
  m.def("build_l_diag", [](const HilbertSpace& s) { return vec(build_l_diag(s)); }, py::arg("space"));

  m.def(
      "smallest_eigpair",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a, double tol) {
        const EigPair pair = smallest_eigpair(from_numpy(a), tol);
        return py::make_tuple(pair.value, vec(pair.vector));
      },
      py::arg("matrix"), py::arg("tol") = kDefaultEigTol);

  m.def("energy_at_psi", &energy_at_psi, py::arg("params"), py::arg("psi"), py::arg("space"),
        py::arg("tol") = kDefaultEigTol);

  py::class_<MeanFieldSolution>(m, "MeanFieldSolution")
      .def_readonly("psi_star", &MeanFieldSolution::psi_star)
      .def_readonly("energy", &MeanFieldSolution::energy)
      .def_readonly("l_expect", &MeanFieldSolution::l_expect)
      .def_readonly("n_max_used", &MeanFieldSolution::n_max_used)
      .def_readonly("bracket_exhausted", &MeanFieldSolution::bracket_exhausted)
      .def_property_readonly("ground_vector", [](const MeanFieldSolution& s) { return vec(s.ground_vector); });
  m.def(
      "minimize_over_psi",
      [](const ModelParams& p, const HilbertSpace& s, std::optional<double> psi_max) {
        PsiSearchSpec spec = PsiSearchSpec::defaults_for(s.n_max());
        if (psi_max) spec.psi_max = *psi_max;
        return minimize_over_psi(p, s, spec);
      },
      py::arg("params"), py::arg("space"), py::arg("psi_max") = py::none());

  py::class_<PhasePoint>(m, "PhasePoint")
      .def_readonly("x", &PhasePoint::x)
      .def_readonly("y", &PhasePoint::y)
      .def_readonly("psi_star", &PhasePoint::psi_star)
      .def_readonly("energy", &PhasePoint::energy)
      .def_readonly("l_expect", &PhasePoint::l_expect)
      .def_readonly("n_max_used", &PhasePoint::n_max_used)
      .def_readonly("converged", &PhasePoint::converged)
      .def_property_readonly("phase", [](const PhasePoint& p) { return to_token(p.label); })
      .def_property_readonly("L", [](const PhasePoint& p) { return p.label.L; })
      .def("__repr__", [](const PhasePoint& p) { return "PhasePoint(" + to_token(p.label) + ")"; });
  m.def(
      "classify_point",
      [](const ModelParams& p, int base_n_max, std::optional<double> psi_max, std::optional<double> psi_eps,
         double tol, double tol_conv, double pin_fraction) {
        return classify_point(p, make_options(base_n_max, psi_max, psi_eps, tol, tol_conv, pin_fraction));
      },
      py::arg("params"), JCHM_OPTION_ARGS);

  py::enum_<Branch>(m, "Branch").value("Plus", Branch::Plus).value("Minus", Branch::Minus);
  py::enum_<Side>(m, "Side").value("Upper", Side::Upper).value("Lower", Side::Lower);
  m.def(
      "sector_energy",
      [](int l, int L, double omega, double Omega, double mu, Branch b) {
        return sector_energy({l, L, omega, Omega, mu}, b);
      },
      py::arg("l"), py::arg("L"), py::arg("omega"), py::arg("Omega"), py::arg("mu") = 1.0,
      py::arg("branch") = Branch::Minus);
  m.def("sector_ground_energy", &sector_ground_energy, py::arg("l"), py::arg("L"), py::arg("omega"),
        py::arg("Omega"), py::arg("mu") = 1.0);
  m.def("lowest_sector", &lowest_sector, py::arg("l"), py::arg("omega"), py::arg("Omega"), py::arg("mu"),
        py::arg("L_max"));
  m.def("solve_sector_zero", &solve_sector_zero, py::arg("l"), py::arg("L"));
  m.def("solve_sector_crossing", &solve_sector_crossing, py::arg("l"), py::arg("L1"), py::arg("L2"));
  m.def(
      "asymptotic_slope",
      [](int l, double omega) {
        const AsymptoticSlope a = asymptotic_slope(l, omega);
        py::dict d;
        d["unbounded"] = a.unbounded;
        d["slope"] = a.slope;
        d["exponent"] = a.exponent;
        d["normalized_limit"] = a.normalized_limit;
        return d;
      },
      py::arg("l"), py::arg("omega"));
  m.def("strong_coupling_boundary", &strong_coupling_boundary, py::arg("L"), py::arg("side"), py::arg("kappa"));

  m.def(
      "run_grid",
      [](int l, std::pair<double, double> x_range, int nx, std::pair<double, double> y_range, int ny, int z, double mu,
         double delta, int jobs, int base_n_max, std::optional<double> psi_max, std::optional<double> psi_eps,
         double tol, double tol_conv, double pin_fraction) {
        GridSpec spec;
        spec.model = {l, z, mu, delta};
        spec.x_lo = x_range.first;
        spec.x_hi = x_range.second;
        spec.nx = nx;
        spec.y_lo = y_range.first;
        spec.y_hi = y_range.second;
        spec.ny = ny;
        PhaseGrid grid;
        {
          py::gil_scoped_release release;
          grid = run_grid(spec, make_options(base_n_max, psi_max, psi_eps, tol, tol_conv, pin_fraction), jobs);
        }
        return py::module_::import("json").attr("loads")(grid_to_json(grid, to_json(spec)).dump());
      },
      py::arg("l"), py::arg("x_range") = std::pair{-4.0, -0.2}, py::arg("nx") = 81,
      py::arg("y_range") = std::pair{-2.0, 0.5}, py::arg("ny") = 101, py::arg("z") = 2, py::arg("mu") = 1.0,
      py::arg("delta") = 0.0, py::arg("jobs") = 1, JCHM_OPTION_ARGS,
      "Classify a grid; returns {'spec': ..., 'columns': {name: list}}.");

  m.def(
      "refine_boundary",
      [](int l, const std::string& axis, double fixed, std::pair<double, double> bracket, const std::string& phase,
         double resolution, int z, double mu, double delta, int base_n_max, std::optional<double> psi_max,
         std::optional<double> psi_eps, double tol, double tol_conv, double pin_fraction) {
        if (axis != "x" && axis != "y") throw InvalidParameter("axis", "must be 'x' or 'y'");
        return refine_boundary({l, z, mu, delta}, axis == "x" ? Axis::X : Axis::Y, fixed, bracket, token_is(phase),
                               make_options(base_n_max, psi_max, psi_eps, tol, tol_conv, pin_fraction), resolution);
      },
      py::arg("l"), py::arg("axis"), py::arg("fixed"), py::arg("bracket"), py::arg("phase"),
      py::arg("resolution") = 1e-3, py::arg("z") = 2, py::arg("mu") = 1.0, py::arg("delta") = 0.0, JCHM_OPTION_ARGS,
      "Bisect along `axis` for the edge of the region whose token is `phase`.");

  m.def(
      "energy_scan",
      [](int l, double y, const std::vector<double>& xs, int z, double mu, double delta, int jobs, int base_n_max) {
        ClassifyOptions o;
        o.base_n_max = base_n_max;
        const auto scan = energy_scan({l, z, mu, delta}, y, xs, o, jobs);
        const auto slopes = scan_slopes(scan);
        py::dict out;
        std::vector<double> x, e, psi, L;
        for (const auto& p : scan) {
          x.push_back(p.x);
          e.push_back(p.energy);
          psi.push_back(p.psi_star);
          L.push_back(p.l_expect);
        }
        out["x"] = vec(x);
        out["energy"] = vec(e);
        out["psi"] = vec(psi);
        out["L_expect"] = vec(L);
        out["dE_dx"] = vec(slopes);
        return out;
      },
      py::arg("l"), py::arg("y"), py::arg("xs"), py::arg("z") = 2, py::arg("mu") = 1.0, py::arg("delta") = 0.0,
      py::arg("jobs") = 1, py::arg("base_n_max") = 0);
}
