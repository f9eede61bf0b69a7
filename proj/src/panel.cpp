#include "ranksde/panel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ranksde {

std::size_t count_at(const PanelSeries& panel, std::size_t t) {
  std::size_t n = 0;
  for (std::size_t j = 0; j < panel.E(); ++j)
    if (std::isfinite(panel.values.at(t, j))) ++n;
  return n;
}

std::size_t common_depth(const PanelSeries& panel) {
  if (panel.T() < 2)
    throw std::domain_error("panel needs at least two time slices");
  std::size_t depth = panel.E();
  for (std::size_t t = 0; t < panel.T(); ++t)
    depth = std::min(depth, count_at(panel, t));
  return depth;
}

PanelSeries detrend(const PanelSeries& panel) {
  PanelSeries out = panel;
  if (panel.T() == 0) return out;
  double base = 0;
  for (std::size_t j = 0; j < panel.E(); ++j) {
    double v = panel.values.at(0, j);
    if (std::isfinite(v)) base += v;
  }
  for (std::size_t t = 1; t < panel.T(); ++t) {
    double total = 0;
    for (std::size_t j = 0; j < panel.E(); ++j) {
      double v = panel.values.at(t, j);
      if (std::isfinite(v)) total += v;
    }
    if (total == base) continue;
    double scale = base / total;
    for (std::size_t j = 0; j < panel.E(); ++j) out.values.at(t, j) *= scale;
  }
  return out;
}

namespace {

PanelSeries panel_shell(const PathEnsemble& ensemble) {
  PanelSeries out;
  const std::size_t n = ensemble.log_values.cols;
  out.entities.reserve(n);
  for (std::size_t j = 0; j < n; ++j)
    out.entities.push_back("e" + std::to_string(j + 1));
  out.times.reserve(ensemble.log_values.rows);
  for (std::size_t t = 0; t < ensemble.log_values.rows; ++t)
    out.times.push_back(static_cast<long long>(t + 1));
  out.delta_tau = ensemble.config.dt;
  return out;
}

}  // namespace

PanelSeries ensemble_to_panel(const PathEnsemble& ensemble) {
  PanelSeries out = panel_shell(ensemble);
  out.values = Matrix(ensemble.log_values.rows, ensemble.log_values.cols);
  for (std::size_t i = 0; i < out.values.data.size(); ++i)
    out.values.data[i] = std::exp(ensemble.log_values.data[i]);
  return out;
}

PanelSeries ensemble_to_panel(PathEnsemble&& ensemble) {
  PanelSeries out = panel_shell(ensemble);
  out.values = std::move(ensemble.log_values);
  for (double& v : out.values.data) v = std::exp(v);
  return out;
}

}  // namespace ranksde
