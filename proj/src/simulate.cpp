#include "ranksde/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "ranksde/errors.hpp"
#include "ranksde/rng.hpp"

namespace ranksde {
namespace {

void check_config(const SimulationConfig& config) {
  if (config.n < 2) throw std::invalid_argument("need at least two processes");
  if (!(config.dt > 0)) throw std::invalid_argument("time step must be positive");
  if (config.num_steps == 0) throw std::invalid_argument("num_steps must be positive");
  if (config.resolved_burn_in() >= config.num_steps)
    throw std::invalid_argument("burn-in must leave at least one step");
  if (!config.initial_log_values.empty()) {
    if (config.initial_log_values.size() != config.n)
      throw std::invalid_argument("initial log-values must match the process count");
    for (double v : config.initial_log_values)
      if (!std::isfinite(v))
        throw std::invalid_argument("initial log-values must be finite");
  }
}

// Indices sorted by value descending, ties toward the lower index.
void order_desc(const std::vector<double>& values, std::vector<std::size_t>& idx) {
  idx.resize(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
}

// Generic Euler loop on log-scale; `advance` mutates the state by one step
// using the provided normal draws.
template <class Advance>
PathEnsemble run_euler(const SimulationConfig& config, Advance advance) {
  check_config(config);
  const std::size_t n = config.n;
  const std::size_t burn = config.resolved_burn_in();
  std::vector<double> x = config.initial_log_values.empty()
                              ? std::vector<double>(n, 0.0)
                              : config.initial_log_values;

  PathEnsemble out;
  out.config = config;
  out.log_values = Matrix(config.num_steps - burn + 1, n);

  CounterRng rng(config.seed);
  std::vector<double> xi(n);
  std::size_t row = 0;
  for (std::size_t step = 0; step <= config.num_steps; ++step) {
    if (step >= burn) {
      double* dst = out.log_values.row(row++);
      std::copy(x.begin(), x.end(), dst);
    }
    if (step == config.num_steps) break;
    for (std::size_t i = 0; i < n; ++i) xi[i] = rng.normal();
    advance(x, xi);
    for (double v : x)
      if (!std::isfinite(v))
        throw estimation_error("simulation produced a non-finite log-value");
  }
  return out;
}

}  // namespace

std::vector<std::size_t> rank_permutation(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("cannot rank an empty sequence");
  for (double v : values)
    if (!(v > 0)) throw std::domain_error("ranked values must be positive");
  std::vector<std::size_t> idx;
  order_desc(values, idx);
  std::vector<std::size_t> rank(values.size());
  for (std::size_t p = 0; p < idx.size(); ++p) rank[idx[p]] = p + 1;
  return rank;
}

PathEnsemble simulate_first_order(const FirstOrderFamily& family,
                                  const SimulationConfig& config) {
  require_valid(family);
  check_config(config);
  const std::size_t n = config.n;

  std::vector<double> drift(n), vol(n);
  for (std::size_t r = 0; r < n; ++r) {
    drift[r] = family.g_at(r + 1) * config.dt;
    vol[r] = std::sqrt(family.sigma2_at(r + 1) * config.dt);
  }
  drift[n - 1] += family.bottom_drift(n) * config.dt;

  std::vector<std::size_t> idx, rank_of(n);
  return run_euler(config, [&](std::vector<double>& x, const std::vector<double>& xi) {
    order_desc(x, idx);
    for (std::size_t p = 0; p < n; ++p) rank_of[idx[p]] = p;
    for (std::size_t i = 0; i < n; ++i)
      x[i] += drift[rank_of[i]] + vol[rank_of[i]] * xi[i];
  });
}

PathEnsemble simulate_atlas(const AtlasParams& params,
                            const SimulationConfig& config) {
  return simulate_first_order(make_atlas_family(params), config);
}

Matrix ranked_paths(const PathEnsemble& ensemble) {
  Matrix out = ensemble.log_values;
  for (std::size_t t = 0; t < out.rows; ++t)
    std::sort(out.row(t), out.row(t) + out.cols, std::greater<>());
  return out;
}

double PiecewiseLinear::operator()(double log_level) const {
  if (x.empty() || x.size() != y.size())
    throw std::invalid_argument("table needs matching nonempty node sequences");
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (!(x[i] < x[i + 1]))
      throw std::invalid_argument("table nodes must be strictly increasing");
  if (log_level <= x.front()) return y.front();
  if (log_level >= x.back()) return y.back();
  auto it = std::upper_bound(x.begin(), x.end(), log_level);
  std::size_t hi = std::size_t(it - x.begin());
  double w = (log_level - x[hi - 1]) / (x[hi] - x[hi - 1]);
  return y[hi - 1] + w * (y[hi] - y[hi - 1]);
}

PathEnsemble simulate_random_growth(const RandomGrowthSpec& spec, std::size_t n,
                                    const SimulationConfig& config) {
  SimulationConfig cfg = config;
  cfg.n = n;
  check_config(cfg);
  for (double s : spec.sigma.y)
    if (!(s > 0)) throw std::domain_error("volatility table must be positive");

  const double dt = cfg.dt, sqdt = std::sqrt(dt);
  return run_euler(cfg, [&](std::vector<double>& x, const std::vector<double>& xi) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = spec.sigma(x[i]);
      double m = spec.mu(x[i]);
      x[i] += (m - s * s / 2) * dt + s * sqdt * xi[i];
    }
  });
}

namespace {

RankAverages averages_from(const RandomGrowthSpec& spec,
                           const PathEnsemble& ensemble) {
  const std::size_t n = ensemble.log_values.cols;
  const std::size_t T = ensemble.log_values.rows;
  RankAverages avg;
  avg.g.assign(n, 0.0);
  avg.sigma2.assign(n, 0.0);
  std::vector<double> row(n);
  std::vector<std::size_t> idx;
  for (std::size_t t = 0; t < T; ++t) {
    const double* src = ensemble.log_values.row(t);
    row.assign(src, src + n);
    order_desc(row, idx);
    for (std::size_t p = 0; p < n; ++p) {
      double level = row[idx[p]];
      double s = spec.sigma(level);
      avg.g[p] += spec.mu(level) - s * s / 2;
      avg.sigma2[p] += s * s;
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    avg.g[p] /= double(T);
    avg.sigma2[p] /= double(T);
  }
  return avg;
}

}  // namespace

RankAverages random_growth_rank_averages(const RandomGrowthSpec& spec,
                                         std::size_t n,
                                         const SimulationConfig& config) {
  return averages_from(spec, simulate_random_growth(spec, n, config));
}

FirstOrderFamily random_growth_to_family(const RandomGrowthSpec& spec,
                                         std::size_t n,
                                         const SimulationConfig& config) {
  auto ensemble = simulate_random_growth(spec, n, config);
  double drifted = stationarity_distance(ensemble);
  if (drifted > 0.25)
    throw estimation_error("ranked profile still drifting; extend the horizon");

  RankAverages avg = averages_from(spec, ensemble);
  double mean = std::accumulate(avg.g.begin(), avg.g.end(), 0.0) / double(n);
  std::vector<double> g(n), s2 = avg.sigma2;
  double partial = 0;
  for (std::size_t k = 0; k < n; ++k) {
    g[k] = avg.g[k] - mean;
    partial += g[k];
    if (k + 1 < n && !(partial < 0))
      throw estimation_error("recentred growth rates are not rank-stable");
  }
  g.resize(n - 1);
  s2.resize(n - 1);
  FirstOrderFamily family(std::move(g), std::move(s2));
  if (!validate_family(family).ok())
    throw estimation_error("averaged rates do not form a valid family");
  return family;
}

double stationarity_distance(const PathEnsemble& ensemble) {
  const std::size_t T = ensemble.log_values.rows;
  const std::size_t n = ensemble.log_values.cols;
  if (T < 2) throw std::invalid_argument("need at least two recorded rows");

  auto half_profile = [&](std::size_t lo, std::size_t hi) {
    std::vector<double> prof(n, 0.0), row(n);
    for (std::size_t t = lo; t < hi; ++t) {
      const double* src = ensemble.log_values.row(t);
      row.assign(src, src + n);
      std::sort(row.begin(), row.end(), std::greater<>());
      for (std::size_t j = 0; j < n; ++j) prof[j] += row[j];
    }
    double mean = 0;
    for (double& v : prof) {
      v /= double(hi - lo);
      mean += v;
    }
    mean /= double(n);
    for (double& v : prof) v -= mean;
    return prof;
  };

  auto first = half_profile(0, T / 2);
  auto second = half_profile(T / 2, T);
  // extreme order statistics are noisy; compare the interior of the profile
  std::size_t trim = n / 10;
  double dist = 0;
  for (std::size_t j = trim; j < n - trim; ++j)
    dist = std::max(dist, std::abs(first[j] - second[j]));
  return dist;
}

}  // namespace ranksde
