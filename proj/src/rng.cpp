#include "ranksde/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ranksde {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : base_(mix(mix(seed + kGolden) ^ (stream + kGolden))) {}

std::uint64_t CounterRng::word(std::uint64_t c) const {
  return mix(base_ + c * kGolden);
}

double CounterRng::uniform() {
  return double((word(counter_++) >> 11) + 1) * 0x1p-53;
}

double CounterRng::normal() {
  double u1 = uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double CounterRng::exponential(double mean) {
  if (mean <= 0.0) throw std::invalid_argument("exponential mean must be positive");
  return -mean * std::log(uniform());
}

}  // namespace ranksde
