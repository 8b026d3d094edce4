"""Baselines module.

This module provides reference estimators to compare against UAMP:
alternating least squares on the trilinear model, and a two-stage
least squares plus rank-1 estimator.
"""

from .als import (
    AlsEstimator,
    als_estimator,
    als_objective,
    ridge_solve,
    solve_g,
    solve_h,
    trilinear_model,
)
from .config import BaselineConfig, InvalidBaselineConfigError
from .ls_rank1 import (
    LsRank1Estimator,
    UnderdeterminedSystemError,
    least_squares_signal,
    ls_rank1_estimator,
    rank1_factors,
)


__all__ = [
    "AlsEstimator",
    "als_estimator",
    "als_objective",
    "ridge_solve",
    "solve_g",
    "solve_h",
    "trilinear_model",
    "BaselineConfig",
    "InvalidBaselineConfigError",
    "LsRank1Estimator",
    "UnderdeterminedSystemError",
    "least_squares_signal",
    "ls_rank1_estimator",
    "rank1_factors",
]
