#include "ranksde/expectations.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ranksde/errors.hpp"
#include "ranksde/rng.hpp"

namespace ranksde {

namespace {

constexpr std::size_t kBlock = 1024;

// Mean of the exponential gap at each boundary, written exactly as the
// stable-law sampler computes it so draws here reproduce its values.
std::vector<double> gap_means(const FirstOrderFamily& family, std::size_t n) {
  std::vector<double> means(n - 1);
  for (std::size_t k = 1; k < n; ++k)
    means[k - 1] = (family.sigma2_at(k) + family.sigma2_at(k + 1)) /
                   (-4.0 * family.partial_g_sum(k));
  return means;
}

struct Moments {
  double sum = 0, sum2 = 0;
  void add(double v) {
    sum += v;
    sum2 += v * v;
  }
  Moments operator+(const Moments& o) const { return {sum + o.sum, sum2 + o.sum2}; }
};

// Runs `samples` independent draws split into fixed blocks, each block
// accumulated in sample order, then reduces the block partials pairwise in
// index order; the result never depends on the worker count.
template <class Acc, class PerDraw>
Acc run_blocks(std::size_t samples, unsigned workers, PerDraw&& draw) {
  const std::size_t nblocks = (samples + kBlock - 1) / kBlock;
  std::vector<Acc> partials(nblocks);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      std::size_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      Acc acc;
      const std::size_t hi = std::min(samples, (b + 1) * kBlock);
      for (std::size_t i = b * kBlock; i < hi; ++i) draw(i, acc);
      partials[b] = acc;
    }
  };
  unsigned w = std::max(1u, workers);
  if (w == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < w; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  while (partials.size() > 1) {
    std::vector<Acc> up((partials.size() + 1) / 2);
    for (std::size_t i = 0; i < up.size(); ++i) {
      up[i] = partials[2 * i];
      if (2 * i + 1 < partials.size()) up[i] = up[i] + partials[2 * i + 1];
    }
    partials = std::move(up);
  }
  return partials.empty() ? Acc{} : partials.front();
}

// Walks one stable draw top-down, feeding each weight exp(log X_(k)) to the
// sink, and returns the weight total.
template <class Sink>
double walk_weights(const std::vector<double>& means, std::uint64_t seed,
                    std::uint64_t stream, Sink&& sink) {
  CounterRng rng(seed, stream);
  double level = 0;
  double w = 1.0;
  double total = w;
  sink(1, w);
  for (std::size_t k = 0; k < means.size(); ++k) {
    level = level - rng.exponential(means[k]);
    w = std::exp(level);
    total += w;
    sink(k + 2, w);
  }
  return total;
}

void check_inputs(const FirstOrderFamily& family, std::size_t n,
                  const McConfig& mc) {
  require_valid(family);
  if (n < 2) throw std::invalid_argument("expectation needs at least two ranks");
  if (mc.samples < 1)
    throw std::invalid_argument("sample count must be positive");
}

ExpectationEstimate finish(std::size_t n, std::size_t samples,
                           const Moments& m) {
  ExpectationEstimate est;
  est.n = n;
  est.samples = samples;
  est.value = m.sum / double(samples);
  if (samples > 1) {
    double var = (m.sum2 - m.sum * m.sum / double(samples)) /
                 double(samples - 1);
    est.std_error = std::sqrt(std::max(0.0, var) / double(samples));
  }
  return est;
}

}  // namespace

ExpectationEstimate completeness_estimate(const FirstOrderFamily& family,
                                          std::size_t n, const McConfig& mc) {
  check_inputs(family, n, mc);
  const auto means = gap_means(family, n);
  const double Gn = family.bottom_drift(n);
  auto m = run_blocks<Moments>(mc.samples, mc.workers,
                               [&](std::uint64_t i, Moments& acc) {
                                 double bottom = 0;
                                 double S = walk_weights(
                                     means, mc.seed, i,
                                     [&](std::size_t k, double w) {
                                       if (k == n) bottom = w;
                                     });
                                 acc.add(Gn * (bottom / S));
                               });
  return finish(n, mc.samples, m);
}

ExpectationEstimate conservation_estimate(const FirstOrderFamily& family,
                                          std::size_t n, const McConfig& mc) {
  check_inputs(family, n, mc);
  const auto means = gap_means(family, n);
  const double Gn = family.bottom_drift(n);
  std::vector<double> coeff(n);
  for (std::size_t k = 1; k <= n; ++k)
    coeff[k - 1] = family.g_at(k) + family.sigma2_at(k) / 2.0;
  auto m = run_blocks<Moments>(
      mc.samples, mc.workers, [&](std::uint64_t i, Moments& acc) {
        double drift = 0, bottom = 0;
        double S = walk_weights(means, mc.seed, i,
                                [&](std::size_t k, double w) {
                                  drift += coeff[k - 1] * w;
                                  if (k == n) bottom = w;
                                });
        acc.add(drift / S + Gn * (bottom / S));
      });
  return finish(n, mc.samples, m);
}

ExpectationEstimate top_weight(const FirstOrderFamily& family, std::size_t n,
                               const McConfig& mc) {
  check_inputs(family, n, mc);
  const auto means = gap_means(family, n);
  auto m = run_blocks<Moments>(mc.samples, mc.workers,
                               [&](std::uint64_t i, Moments& acc) {
                                 double top = 0;
                                 double S = walk_weights(
                                     means, mc.seed, i,
                                     [&](std::size_t k, double w) {
                                       if (k == 1) top = w;
                                     });
                                 acc.add(top / S);
                               });
  return finish(n, mc.samples, m);
}

namespace {

// F(rho2) = sum_k E_n[w_k] sigma2_k(rho2)/2 - g for the alternating layout,
// evaluated by a full pass at a fixed rho2.
Moments e1_pass(double g, double sigma2, double rho2, std::size_t n,
                const McConfig& mc, const std::vector<double>& means) {
  return run_blocks<Moments>(
      mc.samples, mc.workers, [&](std::uint64_t i, Moments& acc) {
        double odd = 0, even = 0;
        double S = walk_weights(means, mc.seed, i,
                                [&](std::size_t k, double w) {
                                  if (k % 2 == 1)
                                    odd += w;
                                  else
                                    even += w;
                                });
        double v = (rho2 * (odd / S) + (2.0 * sigma2 - rho2) * (even / S)) /
                       2.0 -
                   g;
        acc.add(v);
      });
}

}  // namespace

E1TuneResult tune_e1_rho(double g, double sigma2, std::size_t n,
                         const McConfig& mc) {
  if (g <= 0) throw std::invalid_argument("growth magnitude must be positive");
  if (sigma2 <= 2.0 * g)
    throw std::invalid_argument(
        "variance rate must exceed twice the growth magnitude");
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("rank count must be even and at least two");
  if (mc.samples < 2)
    throw std::invalid_argument("tuning needs at least two samples");

  // The gap law only sees sigma2_k + sigma2_{k+1} = 2*sigma2, so one draw
  // set serves every rho2; any valid split yields the same means.
  const auto family = make_e1_family(g, sigma2, sigma2, n);
  const auto means = gap_means(family, n);

  E1TuneResult res;
  const double lo = 1e-6 * sigma2;
  const double hi = 2.0 * sigma2 - 1e-6 * sigma2;
  auto f_lo = finish(n, mc.samples, e1_pass(g, sigma2, lo, n, mc, means));
  auto f_hi = finish(n, mc.samples, e1_pass(g, sigma2, hi, n, mc, means));
  res.f_lower = f_lo.value;
  res.f_upper = f_hi.value;
  const double slope = (f_hi.value - f_lo.value) / (hi - lo);
  res.monotone = slope != 0.0;
  if (!(f_lo.value < 0.0) == !(f_hi.value < 0.0))
    throw estimation_error(
        "drift functional has no sign change over the variance split: F(" +
        std::to_string(lo) + ")=" + std::to_string(f_lo.value) + ", F(" +
        std::to_string(hi) + ")=" + std::to_string(f_hi.value));

  auto mid_pass =
      finish(n, mc.samples,
             e1_pass(g, sigma2, (lo + hi) / 2.0, n, mc, means));
  res.linearity_residual =
      std::abs(mid_pass.value - (f_lo.value + f_hi.value) / 2.0);

  double a = lo, b = hi;
  double fa = f_lo.value;
  auto affine = [&](double rho2) {
    return f_lo.value + slope * (rho2 - lo);
  };
  while (b - a > 1e-12 * sigma2 && res.iterations < 200) {
    double m = 0.5 * (a + b);
    double fm = affine(m);
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
    ++res.iterations;
  }
  res.rho2 = 0.5 * (a + b);
  auto at_root =
      finish(n, mc.samples, e1_pass(g, sigma2, res.rho2, n, mc, means));
  res.residual = at_root.value;
  res.residual_se = at_root.std_error;

  const double s = sigma2 / (2.0 * g);
  res.truncation_bound = std::pow(double(n), 1.0 - s) / (s - 1.0);
  return res;
}

SufficiencyReport sufficiency_check(const FirstOrderFamily& family,
                               const std::vector<std::size_t>& n_schedule,
                               const McConfig& mc) {
  auto simple = is_simple(family);
  if (!simple.simple)
    throw std::invalid_argument(
        "trend harness requires constant growth and nondecreasing variances "
        "(violated at rank " +
        std::to_string(simple.first_violation) + ")");
  if (n_schedule.size() < 2)
    throw std::invalid_argument("schedule needs at least two sizes");
  for (std::size_t i = 0; i < n_schedule.size(); ++i) {
    if (n_schedule[i] < 2)
      throw std::invalid_argument("schedule sizes must be at least two");
    if (i > 0 && n_schedule[i] <= n_schedule[i - 1])
      throw std::invalid_argument("schedule sizes must be increasing");
  }

  SufficiencyReport rep;
  for (std::size_t n : n_schedule) {
    auto cons = conservation_estimate(family, n, mc);
    auto comp = completeness_estimate(family, n, mc);
    auto top = top_weight(family, n, mc);
    rep.conservation.push_back({n, cons.value, cons.std_error});
    rep.completeness.push_back({n, comp.value, comp.std_error});
    rep.top.push_back({n, top.value, top.std_error});
  }

  auto to_zero = [](const std::vector<TrendRow>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (!(std::abs(rows[i].value) < std::abs(rows[i - 1].value)))
        return false;
    return std::abs(rows.back().value) <= 0.75 * std::abs(rows.front().value);
  };
  rep.conservation_to_zero = to_zero(rep.conservation);
  rep.completeness_to_zero = to_zero(rep.completeness);
  rep.top_weight_bounded =
      rep.top.back().value <= 0.5 + 3.0 * rep.top.back().std_error;
  rep.hypotheses_pass = rep.conservation_to_zero && rep.completeness_to_zero &&
                        rep.top_weight_bounded;
  rep.verdict =
      classify(family, std::max<std::size_t>(2, family.K_explicit())).verdict;
  rep.consistent =
      !rep.hypotheses_pass || rep.verdict != ZipfVerdict::NonZipfian;
  return rep;
}

}  // namespace ranksde
