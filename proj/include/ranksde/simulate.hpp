#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ranksde/family.hpp"
#include "ranksde/matrix.hpp"

namespace ranksde {

struct SimulationConfig {
  std::size_t n = 2;
  double dt = 0.01;
  std::size_t num_steps = 0;
  std::optional<std::size_t> burn_in;      // default: 20% of num_steps
  std::uint64_t seed = 0;
  std::vector<double> initial_log_values;  // empty = all zero

  std::size_t resolved_burn_in() const {
    return burn_in ? *burn_in : num_steps / 5;
  }
};

struct PathEnsemble {
  Matrix log_values;  // (num_steps - burn_in + 1) x n
  SimulationConfig config;
};

// 1-based ranks: r[i] < r[j] iff values[i] > values[j], ties toward the
// lower index.
std::vector<std::size_t> rank_permutation(const std::vector<double>& values);

PathEnsemble simulate_first_order(const FirstOrderFamily& family,
                                  const SimulationConfig& config);
PathEnsemble simulate_atlas(const AtlasParams& params,
                            const SimulationConfig& config);

// Row t is the nonincreasing sort of row t of log_values.
Matrix ranked_paths(const PathEnsemble& ensemble);

// Piecewise-linear table over log-level; constant extrapolation outside.
struct PiecewiseLinear {
  std::vector<double> x;  // strictly increasing log-levels
  std::vector<double> y;
  double operator()(double log_level) const;
};

struct RandomGrowthSpec {
  PiecewiseLinear mu;     // growth rate as a function of log-level
  PiecewiseLinear sigma;  // volatility, must be positive over its table
};

PathEnsemble simulate_random_growth(const RandomGrowthSpec& spec,
                                    std::size_t n,
                                    const SimulationConfig& config);

struct RankAverages {
  std::vector<double> g;       // time-average of mu - sigma^2/2 at each rank
  std::vector<double> sigma2;  // time-average of sigma^2 at each rank
};

RankAverages random_growth_rank_averages(const RandomGrowthSpec& spec,
                                         std::size_t n,
                                         const SimulationConfig& config);

// Recentres the ranked growth averages to zero total drift and returns the
// first n-1 ranks as an explicit family; throws estimation_error when the
// recentred partial sums are not strictly negative or the profile is not
// stationary over the sampled window.
FirstOrderFamily random_growth_to_family(const RandomGrowthSpec& spec,
                                         std::size_t n,
                                         const SimulationConfig& config);

// Max absolute difference between centered mean ranked profiles of the two
// halves of the ensemble (stationarity diagnostic).
double stationarity_distance(const PathEnsemble& ensemble);

}  // namespace ranksde
