#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nearcrit/arms.hpp"
#include "nearcrit/estimators.hpp"
#include "nearcrit/experiments.hpp"
#include "nearcrit/svg.hpp"
#include "nearcrit/table.hpp"

namespace py = pybind11;
using namespace nearcrit;

namespace {

py::dict path_dict(const TriangleDomain& d, const InterfacePath& path) {
  py::list steps;
  for (const Step& s : path.steps) {
    const SiteCoord c = d.coord(s.left);
    steps.append(py::make_tuple(c.q, c.r, static_cast<int>(s.direction)));
  }
  const Asymmetry a = asymmetry(path);
  py::dict out;
  out["steps"] = steps;
  out["lplus"] = a.black;
  out["lminus"] = a.white;
  out["length"] = a.length;
  out["side"] = to_string(side_outcome(path));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Triangular-lattice percolation interfaces";

  py::class_<Estimate>(m, "Estimate")
      .def_readonly("mean", &Estimate::mean)
      .def_readonly("std_error", &Estimate::std_error)
      .def_readonly("n_samples", &Estimate::n_samples)
      .def("__repr__", [](const Estimate& e) {
        return "Estimate(mean=" + format_real(e.mean) + ", std_error=" + format_real(e.std_error) +
               ", n_samples=" + std::to_string(e.n_samples) + ")";
      });

  m.def("site_count", &triangle_site_count, py::arg("n"));

  m.def(
      "explore",
      [](int n, double p, std::uint64_t seed, std::uint64_t stream) {
        const TriangleDomain d(n);
        const CouplingField f(d, seed, stream);
        return path_dict(d, explore(d, Coloring::lazy(f, p)));
      },
      py::arg("n"), py::arg("p"), py::arg("seed") = 1, py::arg("stream") = 0,
      "Interface of field (seed, stream) at parameter p.");

  m.def("estimate_R", &estimate_R, py::arg("p"), py::arg("n"), py::arg("samples"), py::arg("seed") = 1,
        py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());

  m.def(
      "enumerate_exact",
      [](int n, double p) {
        const ExactResult r = enumerate_exact(n, p);
        return py::make_tuple(r.R, r.expected_length);
      },
      py::arg("n"), py::arg("p"), "Exact (R, E[length]) for N <= 6.");

  m.def(
      "estimate_pstar",
      [](int n, double eps, std::size_t samples, std::size_t max_samples, double tolerance,
         std::uint64_t seed, int workers) {
        PstarResult r;
        {
          py::gil_scoped_release release;
          r = estimate_pstar(n, eps, {samples, max_samples, 3.0}, tolerance, seed, workers);
        }
        py::dict out;
        out["p"] = r.p;
        out["lo"] = r.lo;
        out["hi"] = r.hi;
        out["resolved"] = r.resolved;
        return out;
      },
      py::arg("n"), py::arg("eps") = 0.1, py::arg("samples") = 1000, py::arg("max_samples") = 16000,
      py::arg("tolerance") = 0.005, py::arg("seed") = 1, py::arg("workers") = 1);

  m.def(
      "estimate_L",
      [](double p, double eps, std::size_t samples, std::size_t max_samples, int n_max,
         std::uint64_t seed, int workers) -> py::object {
        LResult r;
        {
          py::gil_scoped_release release;
          r = estimate_L(p, eps, {samples, max_samples, 3.0}, n_max, seed, workers);
        }
        if (!r.n) return py::none();
        return py::int_(*r.n);
      },
      py::arg("p"), py::arg("eps") = 0.1, py::arg("samples") = 2000, py::arg("max_samples") = 32000,
      py::arg("n_max") = 1024, py::arg("seed") = 1, py::arg("workers") = 1,
      "Correlation length, or None when unresolved below n_max.");

  m.def(
      "arm_probabilities",
      [](double p, const std::string& pattern, int n_inner, const std::vector<int>& radii,
         std::size_t samples, std::uint64_t seed, int workers) {
        const ArmPattern pat = parse_pattern(pattern);
        py::gil_scoped_release release;
        return sample_arm_profile(p, pat, n_inner, radii, samples, seed, workers);
      },
      py::arg("p"), py::arg("pattern"), py::arg("n_inner"), py::arg("radii"), py::arg("samples"),
      py::arg("seed") = 1, py::arg("workers") = 1);

  m.def(
      "fit_exponent",
      [](const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& err) {
        if (x.size() != y.size() || (!err.empty() && err.size() != x.size()))
          throw std::invalid_argument("x, y and err must have the same length");
        std::vector<PowerPoint> pts;
        for (std::size_t i = 0; i < x.size(); ++i) pts.push_back({x[i], y[i], err.empty() ? 0.0 : err[i]});
        const PowerFit f = fit_exponent(pts);
        return py::make_tuple(f.slope, f.slope_stderr, f.intercept, f.r_squared);
      },
      py::arg("x"), py::arg("y"), py::arg("err") = std::vector<double>{},
      "Log-log fit: (slope, slope_stderr, intercept, r_squared).");

  m.def(
      "render_svg",
      [](int n, double p, std::uint64_t seed, std::uint64_t stream) {
        const TriangleDomain d(n);
        const CouplingField f(d, seed, stream);
        const auto black = coloring_at(f, p).to_dense_flags();
        const InterfacePath path = explore(d, Coloring::dense(d, black));
        SvgScene scene;
        scene.black = &black;
        scene.path = &path;
        return render_svg(d, scene);
      },
      py::arg("n"), py::arg("p"), py::arg("seed") = 1, py::arg("stream") = 0);

  m.def("experiments", [] {
    std::vector<std::string> names;
    for (const auto& s : experiment_specs()) names.push_back(s.name);
    return names;
  });

  m.def(
      "run_experiment",
      [](const std::string& name, const std::map<std::string, std::string>& params, std::uint64_t seed,
         int workers) {
        ExperimentConfig c;
        c.experiment = name;
        c.params = params;
        c.seed = seed;
        c.workers = workers;
        ExperimentResult r;
        {
          py::gil_scoped_release release;
          r = run_experiment(c);
        }
        py::dict out;
        out["summary"] = r.summary;
        out["csv"] = to_csv(r.table);
        out["svg"] = r.svg;
        out["path_dump"] = r.path_dump;
        return out;
      },
      py::arg("name"), py::arg("params"), py::arg("seed") = 1, py::arg("workers") = 1,
      "Runs an experiment; returns summary, CSV text and optional SVG / path dump.");
}
