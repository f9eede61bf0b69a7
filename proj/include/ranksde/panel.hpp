#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ranksde/matrix.hpp"
#include "ranksde/simulate.hpp"

namespace ranksde {

// Time-dependent positive observations keyed by stable entity identifiers.
// values is T x E with NaN marking an entity absent from a time slice.
// delta_tau is the observation interval in model time units; rate
// estimators report per unit time by dividing by it.
struct PanelSeries {
  std::vector<std::string> entities;  // first-appearance order
  std::vector<long long> times;       // strictly increasing
  Matrix values;
  double delta_tau = 1.0;

  std::size_t T() const { return times.size(); }
  std::size_t E() const { return entities.size(); }
};

// Entities present (finite value) at time index t.
std::size_t count_at(const PanelSeries& panel, std::size_t t);

// N = min over tau of N_tau; requires T >= 2.
std::size_t common_depth(const PanelSeries& panel);

// Rescales each slice so its total matches the first slice's total.
PanelSeries detrend(const PanelSeries& panel);

PanelSeries ensemble_to_panel(const PathEnsemble& ensemble);
PanelSeries ensemble_to_panel(PathEnsemble&& ensemble);

}  // namespace ranksde
