#include "ranksde/stable_law.hpp"

#include <stdexcept>

#include "ranksde/rng.hpp"

namespace ranksde {

StableGapSample sample_stable(const FirstOrderFamily& family, std::size_t n,
                              std::uint64_t seed, std::uint64_t stream) {
  if (n < 2) throw std::invalid_argument("stable sample needs at least two ranks");
  require_valid(family);

  StableGapSample out;
  out.log_values.resize(n);
  out.gaps.resize(n - 1);
  out.scale = 0;

  CounterRng rng(seed, stream);
  out.log_values[0] = 0;
  for (std::size_t k = 1; k < n; ++k) {
    double mean = (family.sigma2_at(k) + family.sigma2_at(k + 1)) /
                  (-4.0 * family.partial_g_sum(k));
    out.log_values[k] = out.log_values[k - 1] - rng.exponential(mean);
    out.gaps[k - 1] = out.log_values[k - 1] - out.log_values[k];
  }
  return out;
}

}  // namespace ranksde
