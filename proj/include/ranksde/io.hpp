#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ranksde/estimators.hpp"
#include "ranksde/family.hpp"
#include "ranksde/panel.hpp"

namespace ranksde {

// Long-format CSV with header entity,time,value.  Lines starting with '#'
// are comments; "# delta_tau=<v>" round-trips the observation interval.
PanelSeries load_panel_csv(const std::string& path);
void save_panel_csv(const PanelSeries& panel, const std::string& path);

// Header "#first-order-family K=<int>", then "k g_k sigma2_k" per rank.
void save_family(const FirstOrderFamily& family, const std::string& path);
FirstOrderFamily load_family(const std::string& path);

void save_stats_csv(const RankGapStats& stats, const std::string& path);

void emit_curve_csv(const DistributionCurve& curve, const std::string& path);

// Log-log polyline with base-10 tick labels, optional overlay curve, and a
// dot at the first point whose centered finite-difference slope reaches -1.
void emit_curve_svg(const DistributionCurve& curve,
                    const DistributionCurve* overlay, const std::string& path);

// key=value lines.
void save_report(const std::vector<std::pair<std::string, std::string>>& kv,
                 const std::string& path);

}  // namespace ranksde
