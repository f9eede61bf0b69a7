"""Rank-based interacting diffusions.

Simulation of bottom-push and rank-dependent first-order systems, rank-gap
parameter estimation from panel data, first-order family fitting, Zipf
classification, and Monte Carlo estimates of stationary expectations.
"""

from ._core import (
    EstimationError,
    Family,
    Panel,
    __version__,
    alternating_family,
    atlas_family,
    classify_family,
    completeness,
    conservation,
    distribution_curve,
    estimate_gap_variance,
    estimate_lambda,
    fit_family,
    gaussian_smooth,
    load_family,
    load_panel,
    mean_gap,
    predicted_curve,
    rank_gap_stats,
    save_family,
    save_panel,
    simulate_atlas,
    simulate_family,
    slope_bracket,
    top_weight,
    tune_alternating_split,
)

__all__ = [
    "EstimationError",
    "Family",
    "Panel",
    "__version__",
    "alternating_family",
    "atlas_family",
    "classify_family",
    "completeness",
    "conservation",
    "distribution_curve",
    "estimate_gap_variance",
    "estimate_lambda",
    "fit_family",
    "gaussian_smooth",
    "load_family",
    "load_panel",
    "mean_gap",
    "predicted_curve",
    "rank_gap_stats",
    "save_family",
    "save_panel",
    "simulate_atlas",
    "simulate_family",
    "slope_bracket",
    "top_weight",
    "tune_alternating_split",
]
