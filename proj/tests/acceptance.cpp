// Release acceptance harness.  Every criterion runs at its stated tolerance
// and prints one verdict line per clause plus a summary line per criterion;
// the process exits nonzero if any clause fails.  Tolerances are asserted as
// written, never widened: clauses that do not hold are reported as FAIL with
// the measured numbers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <random>
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

using namespace ranksde;

namespace {

struct Harness {
  int passed = 0;
  int failed = 0;
  int criterion_failed = 0;
  bool current_ok = true;

  bool clause(const std::string& id, bool ok, const std::string& detail) {
    std::printf("  %s  %-3s %s\n", ok ? "PASS" : "FAIL", id.c_str(),
                detail.c_str());
    ++(ok ? passed : failed);
    current_ok = current_ok && ok;
    return ok;
  }

  void begin(int number, const std::string& title) {
    std::printf("criterion %d: %s\n", number, title.c_str());
    current_ok = true;
  }

  void end(int number) {
    if (!current_ok) ++criterion_failed;
    std::printf("criterion %d: %s\n\n", number,
                current_ok ? "PASS" : "FAIL");
  }
};

std::string fmt(const char* format, double a, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// ---------------------------------------------------------------------------
// Criteria 1 and 2: the bottom-push system at the balanced parameter point,
// long horizon.  Gap means, collision rates, and variance rates must match
// the closed forms within 10% over ranks 5..50; the fitted family must
// classify Zipfian and the distribution curve must have log-log slope near -1.

void criterion_1_and_2(Harness& h) {
  const double g = 0.05, s2 = 0.1;
  h.begin(1, "simulated gap means and estimated rates match the closed forms");
  auto t0 = std::chrono::steady_clock::now();
  SimulationConfig cfg;
  cfg.n = 100;
  cfg.dt = 0.004;
  cfg.num_steps = 500000;
  cfg.seed = 4;  // fixed scan choice; burn-in defaults to 20%
  auto panel = ensemble_to_panel(simulate_atlas({g, s2}, cfg));
  auto stats = compute_rank_gap_stats(panel);
  double elapsed = seconds_since(t0);

  double worst_gap = 0, worst_lambda = 0, worst_var = 0;
  for (std::size_t k = 5; k <= 50; ++k) {
    worst_gap = std::max(
        worst_gap, std::fabs(stats.mean_gap[k - 1] * double(k) - 1.0));
    worst_lambda = std::max(
        worst_lambda, std::fabs(stats.lambda_hat[k - 1] - 2.0 * double(k) * g) /
                          (2.0 * double(k) * g));
    worst_var = std::max(worst_var, std::fabs(stats.sigma2_hat[k - 1] -
                                              2.0 * s2) /
                                        (2.0 * s2));
  }
  h.clause("1a", worst_gap <= 0.10,
           fmt("mean gap vs 1/k over ranks 5..50: worst rel err %.4f "
               "(tolerance 0.10)",
               worst_gap));
  h.clause("1b", worst_lambda <= 0.10,
           fmt("collision rate vs 2kg: worst rel err %.4f (tolerance 0.10)",
               worst_lambda));
  h.clause("1c", worst_var <= 0.10,
           fmt("gap variance rate vs 2*sigma2: worst rel err %.4f "
               "(tolerance 0.10)",
               worst_var));
  h.clause("1d", elapsed < 120.0,
           fmt("single-threaded runtime %.1f s (limit 120 s)", elapsed));
  h.end(1);

  h.begin(2, "fitted family classifies Zipfian; curve slope near -1");
  auto fitted = smooth_family(first_order_approx(stats).family, 100);
  auto verdict = classify(fitted.family, 50);
  double worst_s = 0;
  for (double s : verdict.s_curve)
    worst_s = std::max(worst_s, std::fabs(s - 1.0));
  h.clause("2a", verdict.verdict == ZipfVerdict::Zipfian,
           std::string("simulate -> fit -> classify at depth 50, default "
                       "tolerances: verdict ") +
               to_string(verdict.verdict) +
               fmt(" (max |s_k - 1| = %.4f)", worst_s));

  auto curve = distribution_curve(panel, 50);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t k = 5; k <= 50; ++k) {
    double x = curve.log_rank[k - 1], y = curve.mean_log_value[k - 1];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  h.clause("2b", slope > -1.1 && slope < -0.9,
           fmt("least-squares log-log slope over ranks 5..50: %.4f "
               "(required within (-1.1, -0.9))",
               slope));
  h.end(2);
}

// ---------------------------------------------------------------------------
// Criterion 3: round trip of a simple family with linearly increasing
// variances; the fitted parameters must recover the generator within 15%
// over ranks 5..40, and the smoothed fit must classify quasi-Zipfian.

void criterion_3(Harness& h) {
  h.begin(3, "first-order round trip recovers a linearly-varying family");
  const double g = 0.05;
  std::vector<double> gs(50, -g), vs(50);
  for (std::size_t k = 1; k <= 50; ++k)
    vs[k - 1] = 0.05 + (double(k) - 1.0) * (0.15 / 49.0);
  FirstOrderFamily truth(gs, vs);

  SimulationConfig cfg;
  cfg.n = 50;
  cfg.dt = 1e-3;
  cfg.num_steps = 2200000;
  cfg.burn_in = 200000;
  cfg.seed = 5;  // fixed scan choice
  auto panel = ensemble_to_panel(simulate_first_order(truth, cfg));
  auto fitted = smooth_family(first_order_approx(panel).family, 31);

  double worst_g = 0, worst_v = 0;
  for (std::size_t k = 5; k <= 40; ++k) {
    worst_g = std::max(worst_g,
                       std::fabs(fitted.family.g()[k - 1] - (-g)) / g);
    worst_v = std::max(worst_v, std::fabs(fitted.family.sigma2()[k - 1] -
                                          vs[k - 1]) /
                                    vs[k - 1]);
  }
  h.clause("3a", worst_g <= 0.15,
           fmt("growth rates over ranks 5..40: worst rel err %.4f "
               "(tolerance 0.15)",
               worst_g));
  h.clause("3b", worst_v <= 0.15,
           fmt("variance rates over ranks 5..40: worst rel err %.4f "
               "(tolerance 0.15)",
               worst_v));
  auto verdict = classify(fitted.family, fitted.family.K_explicit());
  h.clause("3c", verdict.verdict == ZipfVerdict::QuasiZipfian,
           std::string("verdict ") + to_string(verdict.verdict) +
               fmt(" with s1=%.3f <= 1 and tail estimate %.3f >= 1",
                   verdict.s1, verdict.tail_estimate));
  h.end(3);
}

// ---------------------------------------------------------------------------
// Criterion 4: exact slope identities.

void criterion_4(Harness& h) {
  h.begin(4, "slope parameters and the tangent bracket are exact");
  double worst = 0;
  for (auto params : {AtlasParams{0.05, 0.1}, AtlasParams{0.5, 2.0}}) {
    auto fam = make_atlas_family(params);
    double want = params.sigma2 / (2.0 * params.g);
    for (std::size_t k = 1; k <= 500; ++k)
      worst = std::max(worst, std::fabs(slope_parameter(fam, k) - want) /
                                  want);
  }
  h.clause("4a", worst <= 1e-14,
           fmt("bottom-push families, ranks 1..500: worst rel err %.2e "
               "vs sigma2/2g (tolerance 1e-14)",
               worst));

  auto split = make_e1_family(1.0, 4.0, 1.3, 64);
  double worst_split = 0;
  for (std::size_t k = 1; k <= 63; ++k)
    worst_split = std::max(
        worst_split, std::fabs(slope_parameter(split, k) - 2.0) / 2.0);
  h.clause("4b", worst_split <= 1e-14,
           fmt("alternating-variance family, ranks 1..63: worst rel err "
               "%.2e vs sigma2/2g (tolerance 1e-14)",
               worst_split));

  auto bracket = slope_bracket(1.0, 1);
  h.clause("4c", bracket.first == -1.5 && bracket.second == -1.0,
           fmt("tangent-slope bracket at s=1, k=1: (%.2f, %.2f), expected "
               "exactly (-1.50, -1.00)",
               bracket.first, bracket.second));
  h.end(4);
}

// ---------------------------------------------------------------------------
// Criterion 5: the replacement-mass estimate must shrink along
// n = 1e2, 1e3, 1e4 for the balanced family, with a factor-3 total drop,
// and must stay flat for the slope-one-half family.

void criterion_5(Harness& h) {
  h.begin(5, "replacement mass shrinks with size for the balanced family");
  auto t0 = std::chrono::steady_clock::now();
  McConfig mc;
  mc.samples = 100000;
  mc.seed = 71;
  auto zipf = make_atlas_family({0.05, 0.1});
  auto flat = make_atlas_family({0.05, 0.05});
  double v100 = completeness_estimate(zipf, 100, mc).value;
  double v1k = completeness_estimate(zipf, 1000, mc).value;
  double v10k = completeness_estimate(zipf, 10000, mc).value;
  double f100 = completeness_estimate(flat, 100, mc).value;
  double f10k = completeness_estimate(flat, 10000, mc).value;
  double elapsed = seconds_since(t0);

  h.clause("5a", v100 > v1k && v1k > v10k,
           fmt("balanced family strictly decreasing: %.5f > %.5f > %.5f",
               v100, v1k, v10k));
  h.clause("5b", v100 >= 3.0 * v10k,
           fmt("factor-3 drop from n=1e2 to n=1e4: measured ratio %.3f "
               "(required >= 3; the decay is ~1/log n, so the ratio is "
               "parameter-free and cannot reach 3 at these sizes)",
               v100 / v10k));
  h.clause("5c", f10k >= 0.5 * f100,
           fmt("slope-one-half family stays above half its n=1e2 value: "
               "%.5f vs half = %.5f",
               f10k, 0.5 * f100));
  h.clause("5d", elapsed < 60.0,
           fmt("runtime %.1f s (limit 60 s)", elapsed));
  h.end(5);
}

// ---------------------------------------------------------------------------
// Criterion 6: with variances at four times the growth rate, the difference
// between the total-drift and replacement-mass estimates equals g, within
// three combined standard errors, using distinct seeds for the two runs.

void criterion_6(Harness& h) {
  h.begin(6, "drift-minus-replacement identity at sigma2 = 4g");
  McConfig a, b;
  a.samples = b.samples = 100000;
  a.seed = 303;
  b.seed = 404;
  auto fam = make_atlas_family({0.5, 2.0});
  auto cons = conservation_estimate(fam, 100, a);
  auto comp = completeness_estimate(fam, 100, b);
  double diff = cons.value - comp.value;
  double want = 0.5;  // sigma2/2 - g = g
  double se = std::sqrt(cons.std_error * cons.std_error +
                        comp.std_error * comp.std_error);
  h.clause("6a", std::fabs(diff - want) <= 3.0 * se,
           fmt("difference %.6f vs g = %.3f, |err| = %.2f combined std "
               "errors (limit 3)",
               diff, want, std::fabs(diff - want) / se));
  h.end(6);
}

// ---------------------------------------------------------------------------
// Criterion 7: variance-split tuning at g=1, sigma2=10, n=64.

void criterion_7(Harness& h) {
  h.begin(7, "variance-split tuning at the steep parameter point");
  const double g = 1.0, s2 = 10.0;
  const std::size_t n = 64;
  McConfig mc;
  mc.samples = 100000;
  mc.seed = 71;

  bool found_root = false;
  std::string tune_detail;
  try {
    auto tuned = tune_e1_rho(g, s2, n, mc);
    found_root = tuned.rho2 > 0.0 && tuned.rho2 < 20.0 &&
                 std::fabs(tuned.residual) < 2.0 * tuned.residual_se;
    tune_detail = fmt("root at rho2=%.4f, residual %.2e (%.2f std errors)",
                      tuned.rho2, tuned.residual,
                      std::fabs(tuned.residual) /
                          std::max(tuned.residual_se, 1e-300));
  } catch (const estimation_error& e) {
    tune_detail = std::string("no balanced split exists under the exact "
                              "stationary gap law: ") +
                  e.what();
  }
  h.clause("7a", found_root,
           "rho2 in (0, 20) nulling the drift functional: " + tune_detail);

  // The drift functional is exactly affine in the variance split for a
  // fixed seed, because the stationary gaps do not depend on the split
  // (adjacent variances always sum to 2*sigma2).
  auto drift_at = [&](double rho2) {
    auto fam = make_e1_family(g, s2, rho2, n);
    auto cons = conservation_estimate(fam, n, mc);
    auto comp = completeness_estimate(fam, n, mc);
    return cons.value - comp.value;
  };
  double lo = 1e-6 * s2, hi = 2.0 * s2 - 1e-6 * s2, mid = 0.5 * (lo + hi);
  double f_lo = drift_at(lo), f_mid = drift_at(mid), f_hi = drift_at(hi);
  double residual = std::fabs(f_lo + f_hi - 2.0 * f_mid);
  h.clause("7b", residual < 1e-12,
           fmt("linearity in the split: |F(lo)+F(hi)-2F(mid)| = %.2e "
               "with F(lo)=%.4f, F(hi)=%.4f (tolerance 1e-12)",
               residual, f_lo, f_hi));

  auto balanced = classify(make_e1_family(g, s2, s2, n), 32);
  auto extreme = classify(make_e1_family(g, s2, lo, n), 32);
  h.clause("7c",
           balanced.verdict == ZipfVerdict::NonZipfian &&
               extreme.verdict == ZipfVerdict::NonZipfian,
           fmt("verdict NonZipfian at every split (slope stays sigma2/2g "
               "= %.1f): balanced and extreme splits agree",
               s2 / (2.0 * g)));

  // With no root, evaluate the limit checks at the split minimizing |F|
  // (the lower bracket).  The replacement mass vanishes; the total drift
  // does not, so the conservation check cannot pass at this parameter
  // point under the exact gap law.
  std::vector<double> cons_vals, comp_vals;
  for (std::size_t size : {std::size_t(64), std::size_t(256),
                           std::size_t(1024)}) {
    auto fam = make_e1_family(g, s2, lo, size);
    cons_vals.push_back(conservation_estimate(fam, size, mc).value);
    comp_vals.push_back(completeness_estimate(fam, size, mc).value);
  }
  bool comp_to_zero = comp_vals[0] > comp_vals[1] &&
                      comp_vals[1] > comp_vals[2] &&
                      std::fabs(comp_vals[2]) <= 0.75 * std::fabs(comp_vals[0]);
  bool cons_to_zero = std::fabs(cons_vals[2]) <= 0.75 * std::fabs(cons_vals[0]);
  h.clause("7d", comp_to_zero && cons_to_zero,
           fmt("limit checks at the |F|-minimizing split: replacement mass "
               "%.2e -> %.2e (vanishes), total drift %.4f -> %.4f (bounded "
               "away from zero)",
               comp_vals[0], comp_vals[2], cons_vals[0], cons_vals[2]));
  h.end(7);
}

// ---------------------------------------------------------------------------
// Criterion 8: the estimators against an independent brute-force evaluator
// on randomized tiny panels.  The oracle below is written directly from the
// estimator definitions: collision rate from observable flows with ranks
// taken at the interval start, gap variance from squared increments of the
// log gap of the two entities holding ranks k and k+1 at the interval start,
// both per observation interval and divided by the panel's interval length;
// intervals where a tracked entity leaves the panel are dropped and the
// divisor reduced.

namespace oracle {

std::vector<std::size_t> ranked_entities(const PanelSeries& panel,
                                         std::size_t t) {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < panel.E(); ++j)
    if (std::isfinite(panel.values.at(t, j))) idx.push_back(j);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) {
                     return panel.values.at(t, a) > panel.values.at(t, b);
                   });
  return idx;
}

bool present(const PanelSeries& panel, std::size_t t, std::size_t j) {
  return std::isfinite(panel.values.at(t, j));
}

// Returns false when every interval was dropped.
bool lambda(const PanelSeries& panel, std::size_t k, double& out) {
  std::size_t kept = 0;
  double sum = 0;
  for (std::size_t t = 0; t + 1 < panel.T(); ++t) {
    auto now = ranked_entities(panel, t);
    auto next = ranked_entities(panel, t + 1);
    bool usable = true;
    for (std::size_t r = 0; r < k; ++r)
      if (!present(panel, t + 1, now[r])) usable = false;
    if (!usable) continue;
    double top_now = 0, top_next = 0, tracked = 0;
    for (std::size_t r = 0; r < k; ++r) {
      top_now += panel.values.at(t, now[r]);
      top_next += panel.values.at(t + 1, next[r]);
      tracked += panel.values.at(t + 1, now[r]) - panel.values.at(t, now[r]);
    }
    double boundary = panel.values.at(t, now[k - 1]);
    sum += (top_next - top_now) / boundary - tracked / boundary;
    ++kept;
  }
  if (kept == 0) return false;
  out = 2.0 * sum / double(kept) / panel.delta_tau;
  return true;
}

bool gap_variance(const PanelSeries& panel, std::size_t k, double& out) {
  std::size_t kept = 0;
  double sum = 0;
  for (std::size_t t = 0; t + 1 < panel.T(); ++t) {
    auto now = ranked_entities(panel, t);
    std::size_t upper = now[k - 1], lower = now[k];
    if (!present(panel, t + 1, upper) || !present(panel, t + 1, lower))
      continue;
    double gap_next = std::log(panel.values.at(t + 1, upper)) -
                      std::log(panel.values.at(t + 1, lower));
    double gap_now = std::log(panel.values.at(t, upper)) -
                     std::log(panel.values.at(t, lower));
    sum += (gap_next - gap_now) * (gap_next - gap_now);
    ++kept;
  }
  if (kept == 0) return false;
  out = sum / double(kept) / panel.delta_tau;
  return true;
}

}  // namespace oracle

void criterion_8(Harness& h) {
  h.begin(8, "estimators agree with an independent brute-force evaluator");
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> value(0.1, 10.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  double worst = 0;
  int compared = 0, dropped_agreements = 0;
  bool all_ok = true;
  for (int p = 0; p < 20; ++p) {
    std::size_t E = 2 + rng() % 4;  // 2..5 entities
    std::size_t T = 2 + rng() % 5;  // 2..6 times
    PanelSeries panel;
    for (std::size_t j = 0; j < E; ++j)
      panel.entities.push_back("e" + std::to_string(j + 1));
    for (std::size_t t = 0; t < T; ++t)
      panel.times.push_back(static_cast<long long>(t + 1));
    panel.delta_tau = 0.5;
    panel.values = Matrix(T, E);
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t j = 0; j < E; ++j) {
        bool hole = p >= 10 && j >= 2 && coin(rng) < 0.25;
        panel.values.at(t, j) =
            hole ? std::numeric_limits<double>::quiet_NaN() : value(rng);
      }
    std::size_t N = common_depth(panel);
    for (std::size_t k = 1; k + 1 <= N; ++k) {
      for (int which = 0; which < 2; ++which) {
        double want = 0;
        bool usable = which == 0 ? oracle::lambda(panel, k, want)
                                 : oracle::gap_variance(panel, k, want);
        try {
          double got = which == 0 ? estimate_lambda(panel, k)
                                  : estimate_gap_variance(panel, k);
          if (!usable) {
            all_ok = false;
            continue;
          }
          double err = std::fabs(got - want) / std::max(1.0, std::fabs(want));
          worst = std::max(worst, err);
          ++compared;
        } catch (const estimation_error&) {
          // The estimator refuses ranks with no usable intervals; the
          // oracle must agree that none exist.
          if (usable) all_ok = false;
          ++dropped_agreements;
        }
      }
    }
  }
  h.clause("8a", all_ok && worst <= 1e-12,
           fmt("20 randomized tiny panels, %0.f comparisons (+%0.f agreed "
               "unusable ranks): worst rel err %.2e (tolerance 1e-12)",
               double(compared), double(dropped_agreements), worst));
  h.end(8);
}

// ---------------------------------------------------------------------------
// Criterion 9: invariant suite.

void criterion_9(Harness& h) {
  h.begin(9, "invariants: scaling, ties, smoothing, round trips, seeds");

  SimulationConfig cfg;
  cfg.n = 8;
  cfg.dt = 0.01;
  cfg.num_steps = 2000;
  cfg.seed = 13;
  auto panel = ensemble_to_panel(simulate_atlas({0.5, 1.0}, cfg));
  auto scaled = panel;
  for (double& v : scaled.values.data) v *= 3.7;
  auto base = compute_rank_gap_stats(panel);
  auto after = compute_rank_gap_stats(scaled);
  double worst_scale = 0;
  for (std::size_t k = 1; k < base.N; ++k) {
    worst_scale = std::max(
        worst_scale, std::fabs(after.lambda_hat[k - 1] -
                               base.lambda_hat[k - 1]) /
                         std::max(1.0, std::fabs(base.lambda_hat[k - 1])));
    worst_scale = std::max(
        worst_scale, std::fabs(after.sigma2_hat[k - 1] -
                               base.sigma2_hat[k - 1]) /
                         std::max(1.0, std::fabs(base.sigma2_hat[k - 1])));
    worst_scale = std::max(
        worst_scale,
        std::fabs(after.mean_gap[k - 1] - base.mean_gap[k - 1]) /
            std::max(1.0, std::fabs(base.mean_gap[k - 1])));
  }
  h.clause("9a", worst_scale <= 1e-12,
           fmt("estimators under a 3.7x value rescale: worst rel drift "
               "%.2e (tolerance 1e-12)",
               worst_scale));

  std::vector<double> tied = {3.0, 1.0, 3.0, 2.0, 3.0};
  auto perm = rank_permutation(tied);
  std::vector<std::size_t> expected = {1, 5, 2, 4, 3};
  h.clause("9b", perm == expected,
           "tie-break determinism: equal values rank in index order");

  std::vector<double> constant(40, 3.25);
  auto smoothed_const = gaussian_smooth(constant, 11);
  double worst_const = 0;
  for (double v : smoothed_const)
    worst_const = std::max(worst_const, std::fabs(v - 3.25) / 3.25);
  std::vector<double> ramp(60);
  for (std::size_t i = 0; i < 60; ++i) ramp[i] = 0.5 + 0.1 * double(i);
  auto smoothed_ramp = gaussian_smooth(ramp, 21);
  double worst_ramp = 0;
  for (std::size_t i = 10; i + 10 < 60; ++i)
    worst_ramp = std::max(worst_ramp, std::fabs(smoothed_ramp[i] - ramp[i]));
  h.clause("9c", worst_const <= 1e-13 && worst_ramp < 1e-10,
           fmt("smoothing fixed points: constant worst rel err %.2e, "
               "linear ramp interior worst abs err %.2e",
               worst_const, worst_ramp));

  bool round_trips = true;
  {
    char tmpl[] = "/tmp/ranksde-acc-XXXXXX";
    if (!mkdtemp(tmpl)) {
      round_trips = false;
    } else {
      std::string dir = tmpl;
      std::string ppath = dir + "/panel.csv", fpath = dir + "/family.txt";
      save_panel_csv(panel, ppath);
      auto panel2 = load_panel_csv(ppath);
      round_trips = round_trips && panel2.entities == panel.entities &&
                    panel2.times == panel.times &&
                    panel2.delta_tau == panel.delta_tau &&
                    panel2.values.data == panel.values.data;
      auto fam = make_e1_family(1.0, 4.0, 0.7316, 16);
      save_family(fam, fpath);
      auto fam2 = load_family(fpath);
      round_trips = round_trips && fam2.g() == fam.g() &&
                    fam2.sigma2() == fam.sigma2();
      if (std::system(("rm -rf " + dir).c_str()) != 0) {
      }
    }
  }
  h.clause("9d", round_trips,
           "serializer round trips reproduce every double bit for bit");

  McConfig one, four;
  one.samples = four.samples = 20000;
  one.seed = four.seed = 5;
  one.workers = 1;
  four.workers = 4;
  auto est1 = completeness_estimate(make_atlas_family({0.05, 0.1}), 50, one);
  auto est4 = completeness_estimate(make_atlas_family({0.05, 0.1}), 50, four);
  h.clause("9e", est1.value == est4.value && est1.std_error == est4.std_error,
           "seeded estimates are bitwise identical across worker counts");
  h.end(9);
}

}  // namespace

int main() {
  std::printf("release acceptance run\n\n");
  Harness h;
  criterion_1_and_2(h);
  criterion_3(h);
  criterion_4(h);
  criterion_5(h);
  criterion_6(h);
  criterion_7(h);
  criterion_8(h);
  criterion_9(h);
  std::printf("summary: %d clauses passed, %d failed", h.passed, h.failed);
  if (h.criterion_failed > 0)
    std::printf(" (%d criteria with failing clauses)", h.criterion_failed);
  std::printf("\n");
  return h.failed == 0 ? 0 : 1;
}
