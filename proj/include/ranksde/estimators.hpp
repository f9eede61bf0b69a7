#pragma once

#include <cstddef>
#include <vector>

#include "ranksde/family.hpp"
#include "ranksde/panel.hpp"

namespace ranksde {

// Estimated collision rates, gap variance rates (both per unit time) and
// time-averaged log-gaps, for k = 1..N-1.  dropped counts record intervals
// skipped because a tracked entity left the panel before the next slice.
struct RankGapStats {
  std::vector<double> lambda_hat;
  std::vector<double> sigma2_hat;
  std::vector<double> mean_gap;
  std::vector<std::size_t> lambda_dropped;
  std::vector<std::size_t> sigma2_dropped;
  std::size_t N = 0;
  double delta_tau = 1.0;
};

RankGapStats compute_rank_gap_stats(const PanelSeries& panel);

double estimate_lambda(const PanelSeries& panel, std::size_t k);
double estimate_gap_variance(const PanelSeries& panel, std::size_t k);
double mean_gap(const PanelSeries& panel, std::size_t k);

// Gaussian kernel spanning `window` points, truncated at +-3.16 standard
// deviations, reflection padding; output length equals input length.
std::vector<double> gaussian_smooth(const std::vector<double>& series,
                                    std::size_t window);

struct ApproxResult {
  FirstOrderFamily family;
  ValidationReport validation;   // empirical families may fail; reported
  std::size_t dropped_intervals = 0;
};

ApproxResult first_order_approx(const RankGapStats& stats);
ApproxResult first_order_approx(const PanelSeries& panel);

// Smooths the explicit g and sigma2 sequences; window is clamped to the
// sequence length, window 0 means no smoothing.
ApproxResult smooth_family(const FirstOrderFamily& family, std::size_t window);

struct RankDiagnostic {
  std::vector<double> rel_error;       // per k; NaN at flagged ranks
  std::vector<std::size_t> flagged;    // 1-based ranks with lambda_hat <= 0
  double median_score = 0;             // median rel_error over usable ranks
};

RankDiagnostic rank_based_diagnostic(const PanelSeries& panel);

struct DistributionCurve {
  std::vector<double> log_rank;
  std::vector<double> mean_log_value;
};

DistributionCurve distribution_curve(const PanelSeries& panel,
                                     std::size_t depth);

// Point k: anchor minus the summed theoretical mean gaps above rank k.
DistributionCurve predicted_curve(const FirstOrderFamily& family,
                                  std::size_t depth, double anchor);

}  // namespace ranksde
