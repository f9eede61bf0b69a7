#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ranksde/family.hpp"

namespace ranksde {

struct StableGapSample {
  std::vector<double> log_values;  // nonincreasing, rank 1 fixed at 0
  std::vector<double> gaps;        // n-1 nonnegative log-gaps
  double scale = 0;                // log-value of rank 1
};

// Draws the exact stable law: independent exponential gaps with mean
// theoretical_mean_gap(family, k).
StableGapSample sample_stable(const FirstOrderFamily& family, std::size_t n,
                              std::uint64_t seed, std::uint64_t stream = 0);

}  // namespace ranksde
