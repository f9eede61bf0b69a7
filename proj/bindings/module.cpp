// Python bindings for the rank-based diffusion toolkit.  The module mirrors
// the C++ surface: panels of positive observations, per-rank parameter
// families, simulators, rate estimators, the Zipf classifier, and the
// Monte Carlo expectation estimates.  Matrices cross the boundary as numpy
// arrays (copies, never views into C++ storage).

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ranksde/classify.hpp"
#include "ranksde/errors.hpp"
#include "ranksde/estimators.hpp"
#include "ranksde/expectations.hpp"
#include "ranksde/family.hpp"
#include "ranksde/io.hpp"
#include "ranksde/panel.hpp"
#include "ranksde/simulate.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace ranksde;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array(const Matrix& m) {
  py::array_t<double> out({static_cast<py::ssize_t>(m.rows),
                           static_cast<py::ssize_t>(m.cols)});
  std::copy(m.data.begin(), m.data.end(), out.mutable_data());
  return out;
}

SimulationConfig make_config(std::size_t n, double dt, std::size_t num_steps,
                             std::uint64_t seed,
                             std::optional<std::size_t> burn_in) {
  SimulationConfig cfg;
  cfg.n = n;
  cfg.dt = dt;
  cfg.num_steps = num_steps;
  cfg.seed = seed;
  cfg.burn_in = burn_in;
  return cfg;
}

McConfig make_mc(std::size_t samples, std::uint64_t seed, unsigned workers) {
  McConfig mc;
  mc.samples = samples;
  mc.seed = seed;
  mc.workers = workers;
  return mc;
}

py::tuple estimate_to_tuple(const ExpectationEstimate& est) {
  return py::make_tuple(est.value, est.std_error);
}

py::list violations_to_list(const ValidationReport& report) {
  py::list out;
  for (const auto& v : report.violations)
    out.append(py::make_tuple(v.k, v.what));
  return out;
}

PanelSeries panel_from_values(
    py::array_t<double, py::array::c_style | py::array::forcecast> values,
    double delta_tau, std::optional<std::vector<std::string>> entities,
    std::optional<std::vector<long long>> times) {
  if (values.ndim() != 2)
    throw std::invalid_argument("values must be a 2-d array (times x entities)");
  if (!(delta_tau > 0))
    throw std::invalid_argument("delta_tau must be positive");
  auto T = static_cast<std::size_t>(values.shape(0));
  auto E = static_cast<std::size_t>(values.shape(1));
  if (T == 0 || E == 0)
    throw std::invalid_argument("values must be non-empty");

  PanelSeries panel;
  panel.delta_tau = delta_tau;
  if (entities) {
    if (entities->size() != E)
      throw std::invalid_argument("entities length must match values columns");
    panel.entities = *entities;
  } else {
    for (std::size_t j = 0; j < E; ++j)
      panel.entities.push_back("e" + std::to_string(j + 1));
  }
  if (times) {
    if (times->size() != T)
      throw std::invalid_argument("times length must match values rows");
    for (std::size_t t = 1; t < times->size(); ++t)
      if ((*times)[t] <= (*times)[t - 1])
        throw std::invalid_argument("times must be strictly increasing");
    panel.times = *times;
  } else {
    for (std::size_t t = 0; t < T; ++t)
      panel.times.push_back(static_cast<long long>(t + 1));
  }
  panel.values = Matrix(T, E);
  auto view = values.unchecked<2>();
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t j = 0; j < E; ++j) {
      double v = view(static_cast<py::ssize_t>(t), static_cast<py::ssize_t>(j));
      if (std::isfinite(v) && v <= 0)
        throw std::invalid_argument(
            "finite panel values must be positive (NaN marks absence)");
      panel.values.at(t, j) = v;
    }
  return panel;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Rank-based interacting diffusions: simulation, rank-gap estimation, "
      "first-order families, Zipf classification, and stationary expectation "
      "estimates.";

  py::register_exception<estimation_error>(m, "EstimationError",
                                           PyExc_RuntimeError);

  py::class_<PanelSeries>(m, "Panel",
                          "Positive observations over time; a (T, E) value "
                          "matrix with NaN marking an absent entity.")
      .def(py::init(&panel_from_values), py::arg("values"),
           py::arg("delta_tau") = 1.0, py::arg("entities") = std::nullopt,
           py::arg("times") = std::nullopt)
      .def_property_readonly(
          "values", [](const PanelSeries& p) { return to_array(p.values); })
      .def_property_readonly(
          "entities", [](const PanelSeries& p) { return p.entities; })
      .def_property_readonly("times",
                             [](const PanelSeries& p) { return p.times; })
      .def_readonly("delta_tau", &PanelSeries::delta_tau)
      .def_property_readonly("T", &PanelSeries::T)
      .def_property_readonly("E", &PanelSeries::E)
      .def("common_depth",
           [](const PanelSeries& p) { return common_depth(p); },
           "Smallest number of entities present in any time slice.")
      .def("detrend", [](const PanelSeries& p) { return detrend(p); },
           "Rescale every slice to the first slice's total.")
      .def("__repr__", [](const PanelSeries& p) {
        return "Panel(T=" + std::to_string(p.T()) +
               ", E=" + std::to_string(p.E()) +
               ", delta_tau=" + std::to_string(p.delta_tau) + ")";
      });

  py::class_<FirstOrderFamily>(
      m, "Family",
      "Per-rank growth rates g_k and variance rates sigma2_k, explicit for "
      "k = 1..K; deeper ranks use the constant tail (mean g, last sigma2).")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("g"),
           py::arg("sigma2"))
      .def_property_readonly(
          "g", [](const FirstOrderFamily& f) { return to_array(f.g()); })
      .def_property_readonly(
          "sigma2",
          [](const FirstOrderFamily& f) { return to_array(f.sigma2()); })
      .def_property_readonly("K", &FirstOrderFamily::K_explicit)
      .def("g_at", &FirstOrderFamily::g_at, py::arg("k"))
      .def("sigma2_at", &FirstOrderFamily::sigma2_at, py::arg("k"))
      .def("slope",
           [](const FirstOrderFamily& f, std::size_t k) {
             return slope_parameter(f, k);
           },
           py::arg("k"),
           "Local slope parameter s_k = k * (sigma2_k + sigma2_{k+1}) / "
           "(-4 * (g_1 + ... + g_k)).")
      .def("violations",
           [](const FirstOrderFamily& f) {
             return violations_to_list(validate_family(f));
           },
           "List of (rank, constraint) pairs; empty when the family is "
           "admissible.")
      .def("is_simple",
           [](const FirstOrderFamily& f) {
             auto check = is_simple(f);
             return py::make_tuple(check.simple, check.first_violation);
           })
      .def("__repr__", [](const FirstOrderFamily& f) {
        return "Family(K=" + std::to_string(f.K_explicit()) + ")";
      });

  m.def("atlas_family",
        [](double g, double sigma2) {
          return make_atlas_family({g, sigma2});
        },
        py::arg("g"), py::arg("sigma2"),
        "Family of the bottom-push system: g_k = -g with rank-independent "
        "variance.");
  m.def("alternating_family", &make_e1_family, py::arg("g"), py::arg("sigma2"),
        py::arg("rho2"), py::arg("K") = 64,
        "g_k = -g with variances alternating rho2, 2*sigma2 - rho2; K even.");
  m.def("slope_bracket", &slope_bracket, py::arg("s"), py::arg("k"),
        "(lower, upper) bounds on the asymptotic log-log tangent slope.");

  m.def(
      "simulate_atlas",
      [](double g, double sigma2, std::size_t n, double dt,
         std::size_t num_steps, std::uint64_t seed,
         std::optional<std::size_t> burn_in) {
        return ensemble_to_panel(simulate_atlas(
            {g, sigma2}, make_config(n, dt, num_steps, seed, burn_in)));
      },
      py::arg("g"), py::arg("sigma2"), py::arg("n") = 100,
      py::arg("dt") = 0.01, py::arg("num_steps") = 100000, py::arg("seed") = 0,
      py::arg("burn_in") = std::nullopt,
      "Euler scheme for the bottom-push system; returns a Panel of the "
      "post-burn-in values.");
  m.def(
      "simulate_family",
      [](const FirstOrderFamily& family, std::size_t n, double dt,
         std::size_t num_steps, std::uint64_t seed,
         std::optional<std::size_t> burn_in) {
        return ensemble_to_panel(simulate_first_order(
            family, make_config(n, dt, num_steps, seed, burn_in)));
      },
      py::arg("family"), py::arg("n") = 100, py::arg("dt") = 0.01,
      py::arg("num_steps") = 100000, py::arg("seed") = 0,
      py::arg("burn_in") = std::nullopt,
      "Euler scheme for a rank-dependent first-order system.");

  m.def(
      "rank_gap_stats",
      [](const PanelSeries& panel) {
        auto stats = compute_rank_gap_stats(panel);
        py::dict out;
        out["lambda_hat"] = to_array(stats.lambda_hat);
        out["sigma2_hat"] = to_array(stats.sigma2_hat);
        out["mean_gap"] = to_array(stats.mean_gap);
        out["lambda_dropped"] = stats.lambda_dropped;
        out["sigma2_dropped"] = stats.sigma2_dropped;
        out["depth"] = stats.N;
        out["delta_tau"] = stats.delta_tau;
        return out;
      },
      py::arg("panel"),
      "Collision rates, gap variance rates (per unit time), and mean log "
      "gaps for ranks 1..N-1.");
  m.def("estimate_lambda", &estimate_lambda, py::arg("panel"), py::arg("k"));
  m.def("estimate_gap_variance", &estimate_gap_variance, py::arg("panel"),
        py::arg("k"));
  m.def("mean_gap", &mean_gap, py::arg("panel"), py::arg("k"));
  m.def(
      "gaussian_smooth",
      [](const std::vector<double>& series, std::size_t window) {
        return to_array(gaussian_smooth(series, window));
      },
      py::arg("series"), py::arg("window"),
      "Gaussian kernel over `window` points with reflection padding; "
      "window 0 or 1 returns the input.");

  m.def(
      "fit_family",
      [](const PanelSeries& panel, std::size_t smooth_window) {
        auto fit = first_order_approx(panel);
        std::size_t dropped = fit.dropped_intervals;
        if (smooth_window > 0) fit = smooth_family(fit.family, smooth_window);
        py::dict out;
        out["family"] = fit.family;
        out["ok"] = fit.validation.ok();
        out["violations"] = violations_to_list(fit.validation);
        out["dropped_intervals"] = dropped;
        return out;
      },
      py::arg("panel"), py::arg("smooth_window") = 0,
      "First-order family fitted from rank-gap statistics, optionally "
      "smoothed across ranks; returns the family plus admissibility info.");

  m.def(
      "classify_family",
      [](const FirstOrderFamily& family, std::size_t depth, double tol_zipf,
         double tol_mono) {
        auto res = classify(family, depth, {tol_zipf, tol_mono});
        py::dict out;
        out["verdict"] = std::string(to_string(res.verdict));
        out["s_curve"] = to_array(res.s_curve);
        out["s1"] = res.s1;
        out["tail_estimate"] = res.tail_estimate;
        out["max_mono_violation"] = res.max_mono_violation;
        return out;
      },
      py::arg("family"), py::arg("depth"), py::arg("tol_zipf") = 0.05,
      py::arg("tol_mono") = 0.01,
      "Zipfian / QuasiZipfian / NonZipfian verdict from the per-rank slope "
      "curve.");

  m.def(
      "completeness",
      [](const FirstOrderFamily& family, std::size_t n, std::size_t samples,
         std::uint64_t seed, unsigned workers) {
        return estimate_to_tuple(
            completeness_estimate(family, n, make_mc(samples, seed, workers)));
      },
      py::arg("family"), py::arg("n"), py::arg("samples") = 100000,
      py::arg("seed") = 0, py::arg("workers") = 1,
      "(value, std_error) of the bottom replacement mass under the exact "
      "stationary gap law.");
  m.def(
      "conservation",
      [](const FirstOrderFamily& family, std::size_t n, std::size_t samples,
         std::uint64_t seed, unsigned workers) {
        return estimate_to_tuple(
            conservation_estimate(family, n, make_mc(samples, seed, workers)));
      },
      py::arg("family"), py::arg("n"), py::arg("samples") = 100000,
      py::arg("seed") = 0, py::arg("workers") = 1,
      "(value, std_error) of the expected relative drift of the total.");
  m.def(
      "top_weight",
      [](const FirstOrderFamily& family, std::size_t n, std::size_t samples,
         std::uint64_t seed, unsigned workers) {
        return estimate_to_tuple(
            top_weight(family, n, make_mc(samples, seed, workers)));
      },
      py::arg("family"), py::arg("n"), py::arg("samples") = 100000,
      py::arg("seed") = 0, py::arg("workers") = 1,
      "(value, std_error) of the largest entity's share of the total.");

  m.def(
      "tune_alternating_split",
      [](double g, double sigma2, std::size_t n, std::size_t samples,
         std::uint64_t seed, unsigned workers) {
        auto res = tune_e1_rho(g, sigma2, n, make_mc(samples, seed, workers));
        py::dict out;
        out["rho2"] = res.rho2;
        out["residual"] = res.residual;
        out["residual_se"] = res.residual_se;
        out["f_lower"] = res.f_lower;
        out["f_upper"] = res.f_upper;
        out["monotone"] = res.monotone;
        out["linearity_residual"] = res.linearity_residual;
        out["iterations"] = res.iterations;
        out["truncation_bound"] = res.truncation_bound;
        return out;
      },
      py::arg("g"), py::arg("sigma2"), py::arg("n"),
      py::arg("samples") = 100000, py::arg("seed") = 0, py::arg("workers") = 1,
      "Bisect the variance split of the alternating family for zero expected "
      "total drift; raises EstimationError if no admissible split nulls it.");

  m.def(
      "distribution_curve",
      [](const PanelSeries& panel, std::size_t depth) {
        auto curve = distribution_curve(panel, depth);
        return py::make_tuple(to_array(curve.log_rank),
                              to_array(curve.mean_log_value));
      },
      py::arg("panel"), py::arg("depth"),
      "(log_rank, mean_log_value) arrays of the time-averaged ranked "
      "log-values.");
  m.def(
      "predicted_curve",
      [](const FirstOrderFamily& family, std::size_t depth, double anchor) {
        auto curve = predicted_curve(family, depth, anchor);
        return py::make_tuple(to_array(curve.log_rank),
                              to_array(curve.mean_log_value));
      },
      py::arg("family"), py::arg("depth"), py::arg("anchor"),
      "Theoretical stationary curve anchored at the rank-1 mean log value.");

  m.def("load_panel", &load_panel_csv, py::arg("path"));
  m.def("save_panel", &save_panel_csv, py::arg("panel"), py::arg("path"));
  m.def("load_family", &load_family, py::arg("path"));
  m.def("save_family", &save_family, py::arg("family"), py::arg("path"));

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
