#include "ranksde/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "ranksde/errors.hpp"

namespace ranksde {
namespace {

struct RankedSlice {
  std::vector<double> values;      // descending
  std::vector<double> logs;
  std::vector<std::size_t> ents;   // entity column per ranked position
  std::vector<double> prefix;      // prefix[k-1] = top-k sum
};

RankedSlice rank_slice(const PanelSeries& panel, std::size_t t) {
  RankedSlice s;
  std::vector<std::pair<double, std::size_t>> items;
  items.reserve(panel.E());
  for (std::size_t j = 0; j < panel.E(); ++j) {
    double v = panel.values.at(t, j);
    if (std::isnan(v)) continue;
    if (!(v > 0)) throw std::domain_error("panel values must be positive");
    items.emplace_back(v, j);
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  s.values.reserve(items.size());
  s.logs.reserve(items.size());
  s.ents.reserve(items.size());
  s.prefix.reserve(items.size());
  double acc = 0;
  for (auto& [v, j] : items) {
    s.values.push_back(v);
    s.logs.push_back(std::log(v));
    s.ents.push_back(j);
    acc += v;
    s.prefix.push_back(acc);
  }
  return s;
}

}  // namespace

RankGapStats compute_rank_gap_stats(const PanelSeries& panel) {
  const std::size_t N = common_depth(panel);
  const std::size_t T = panel.T();
  RankGapStats stats;
  stats.N = N;
  stats.delta_tau = panel.delta_tau;
  if (N < 2) return stats;
  const std::size_t K = N - 1;
  stats.lambda_hat.assign(K, 0.0);
  stats.sigma2_hat.assign(K, 0.0);
  stats.mean_gap.assign(K, 0.0);
  stats.lambda_dropped.assign(K, 0);
  stats.sigma2_dropped.assign(K, 0);
  std::vector<std::size_t> lambda_used(K, 0), sigma2_used(K, 0);

  RankedSlice cur = rank_slice(panel, 0);
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t k = 1; k <= K; ++k)
      stats.mean_gap[k - 1] += cur.logs[k - 1] - cur.logs[k];

    if (t + 1 == T) break;
    RankedSlice next = rank_slice(panel, t + 1);

    // held[k-1]: next-slice total of the entities ranked 1..k now;
    // first_missing marks where that portfolio loses an entity
    double held = 0;
    std::size_t first_missing = K + 1;
    for (std::size_t k = 1; k <= K; ++k) {
      double v = panel.values.at(t + 1, cur.ents[k - 1]);
      if (std::isnan(v)) {
        first_missing = k;
        break;
      }
      held += v;
      stats.lambda_hat[k - 1] += (next.prefix[k - 1] - held) / cur.values[k - 1];
      ++lambda_used[k - 1];
    }
    for (std::size_t k = first_missing; k <= K; ++k) ++stats.lambda_dropped[k - 1];

    for (std::size_t k = 1; k <= K; ++k) {
      double va = panel.values.at(t + 1, cur.ents[k - 1]);
      double vb = panel.values.at(t + 1, cur.ents[k]);
      if (std::isnan(va) || std::isnan(vb)) {
        ++stats.sigma2_dropped[k - 1];
        continue;
      }
      double d = (std::log(va) - std::log(vb)) - (cur.logs[k - 1] - cur.logs[k]);
      stats.sigma2_hat[k - 1] += d * d;
      ++sigma2_used[k - 1];
    }
    cur = std::move(next);
  }

  const double unusable = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 1; k <= K; ++k) {
    if (lambda_used[k - 1] == 0)
      stats.lambda_hat[k - 1] = unusable;
    else
      stats.lambda_hat[k - 1] *=
          2.0 / double(lambda_used[k - 1]) / panel.delta_tau;
    if (sigma2_used[k - 1] == 0)
      stats.sigma2_hat[k - 1] = unusable;
    else
      stats.sigma2_hat[k - 1] /= double(sigma2_used[k - 1]) * panel.delta_tau;
    stats.mean_gap[k - 1] /= double(T);
  }
  return stats;
}

namespace {

const RankGapStats& check_rank(const RankGapStats& stats, std::size_t k) {
  if (k < 1 || k + 1 > stats.N)
    throw std::domain_error("rank must lie in 1..N-1");
  return stats;
}

}  // namespace

double estimate_lambda(const PanelSeries& panel, std::size_t k) {
  auto stats = compute_rank_gap_stats(panel);
  double value = check_rank(stats, k).lambda_hat[k - 1];
  if (std::isnan(value))
    throw estimation_error("no usable intervals for the turnover estimate at rank " +
                           std::to_string(k));
  return value;
}

double estimate_gap_variance(const PanelSeries& panel, std::size_t k) {
  auto stats = compute_rank_gap_stats(panel);
  double value = check_rank(stats, k).sigma2_hat[k - 1];
  if (std::isnan(value))
    throw estimation_error("no usable intervals for the gap variance at rank " +
                           std::to_string(k));
  return value;
}

double mean_gap(const PanelSeries& panel, std::size_t k) {
  auto stats = compute_rank_gap_stats(panel);
  return check_rank(stats, k).mean_gap[k - 1];
}

std::vector<double> gaussian_smooth(const std::vector<double>& series,
                                    std::size_t window) {
  if (window < 1) throw std::invalid_argument("window must be at least one point");
  if (window > series.size())
    throw std::invalid_argument("window cannot exceed the series length");
  const std::size_t len = series.size();
  const std::size_t h = (window - 1) / 2;
  if (h == 0) return series;

  const double sd = (double(window) - 1.0) / 2.0 / 3.16;
  std::vector<double> weight(2 * h + 1);
  double total = 0;
  for (std::size_t i = 0; i < weight.size(); ++i) {
    double j = double(i) - double(h);
    weight[i] = std::exp(-0.5 * (j / sd) * (j / sd));
    total += weight[i];
  }
  for (double& w : weight) w /= total;

  // reflect across the ends, repeating the edge point
  auto padded = [&](long long idx) {
    if (idx < 0) idx = -idx - 1;
    if (idx >= (long long)len) idx = 2 * (long long)len - idx - 1;
    return series[std::size_t(idx)];
  };
  std::vector<double> out(len, 0.0);
  for (std::size_t i = 0; i < len; ++i) {
    double acc = 0;
    for (std::size_t w = 0; w < weight.size(); ++w)
      acc += weight[w] * padded((long long)i + (long long)w - (long long)h);
    out[i] = acc;
  }
  return out;
}

ApproxResult first_order_approx(const RankGapStats& stats) {
  if (stats.N < 3)
    throw std::domain_error("first-order approximation needs common depth >= 3");
  const std::size_t K = stats.N - 1;
  for (std::size_t k = 1; k <= K; ++k)
    if (std::isnan(stats.lambda_hat[k - 1]) || std::isnan(stats.sigma2_hat[k - 1]))
      throw estimation_error("rank " + std::to_string(k) +
                             " has no usable intervals; cannot form the family");
  std::vector<double> g(K), s2(K);
  for (std::size_t k = 1; k <= K; ++k) {
    double lam_prev = k == 1 ? 0.0 : stats.lambda_hat[k - 2];
    double sig_prev = k == 1 ? stats.sigma2_hat[0] : stats.sigma2_hat[k - 2];
    g[k - 1] = 0.5 * lam_prev - 0.5 * stats.lambda_hat[k - 1];
    s2[k - 1] = 0.25 * (sig_prev + stats.sigma2_hat[k - 1]);
  }
  ApproxResult out;
  out.family = FirstOrderFamily(std::move(g), std::move(s2));
  out.validation = validate_family(out.family);
  out.dropped_intervals =
      std::accumulate(stats.lambda_dropped.begin(), stats.lambda_dropped.end(),
                      std::size_t{0}) +
      std::accumulate(stats.sigma2_dropped.begin(), stats.sigma2_dropped.end(),
                      std::size_t{0});
  return out;
}

ApproxResult first_order_approx(const PanelSeries& panel) {
  return first_order_approx(compute_rank_gap_stats(panel));
}

ApproxResult smooth_family(const FirstOrderFamily& family, std::size_t window) {
  ApproxResult out;
  if (window == 0) {
    out.family = family;
  } else {
    std::size_t w = std::min(window, family.K_explicit());
    out.family = FirstOrderFamily(gaussian_smooth(family.g(), w),
                                  gaussian_smooth(family.sigma2(), w));
  }
  out.validation = validate_family(out.family);
  return out;
}

RankDiagnostic rank_based_diagnostic(const PanelSeries& panel) {
  auto stats = compute_rank_gap_stats(panel);
  RankDiagnostic diag;
  const std::size_t K = stats.N >= 2 ? stats.N - 1 : 0;
  diag.rel_error.assign(K, std::numeric_limits<double>::quiet_NaN());
  std::vector<double> usable;
  for (std::size_t k = 1; k <= K; ++k) {
    if (!(stats.lambda_hat[k - 1] > 0) || std::isnan(stats.sigma2_hat[k - 1])) {
      diag.flagged.push_back(k);
      continue;
    }
    double implied = stats.sigma2_hat[k - 1] / (2.0 * stats.lambda_hat[k - 1]);
    double rel =
        std::abs(stats.mean_gap[k - 1] - implied) / stats.mean_gap[k - 1];
    diag.rel_error[k - 1] = rel;
    usable.push_back(rel);
  }
  if (usable.empty()) {
    diag.median_score = std::numeric_limits<double>::quiet_NaN();
  } else {
    std::sort(usable.begin(), usable.end());
    std::size_t m = usable.size();
    diag.median_score = m % 2 == 1 ? usable[m / 2]
                                   : 0.5 * (usable[m / 2 - 1] + usable[m / 2]);
  }
  return diag;
}

DistributionCurve distribution_curve(const PanelSeries& panel,
                                     std::size_t depth) {
  const std::size_t N = common_depth(panel);
  if (depth < 1 || depth > N)
    throw std::invalid_argument("depth must lie in 1..N");
  DistributionCurve curve;
  curve.log_rank.resize(depth);
  curve.mean_log_value.assign(depth, 0.0);
  for (std::size_t k = 1; k <= depth; ++k)
    curve.log_rank[k - 1] = std::log(double(k));
  for (std::size_t t = 0; t < panel.T(); ++t) {
    auto slice = rank_slice(panel, t);
    for (std::size_t k = 0; k < depth; ++k)
      curve.mean_log_value[k] += slice.logs[k];
  }
  for (double& v : curve.mean_log_value) v /= double(panel.T());
  return curve;
}

DistributionCurve predicted_curve(const FirstOrderFamily& family,
                                  std::size_t depth, double anchor) {
  require_valid(family);
  if (depth < 1) throw std::invalid_argument("depth must be at least one");
  DistributionCurve curve;
  curve.log_rank.resize(depth);
  curve.mean_log_value.resize(depth);
  double level = anchor;
  for (std::size_t k = 1; k <= depth; ++k) {
    curve.log_rank[k - 1] = std::log(double(k));
    curve.mean_log_value[k - 1] = level;
    level -= (family.sigma2_at(k) + family.sigma2_at(k + 1)) /
             (-4.0 * family.partial_g_sum(k));
  }
  return curve;
}

}  // namespace ranksde
