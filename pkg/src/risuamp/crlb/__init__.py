"""CRLB module.

This module computes the Fisher information matrix of the cascaded channel
and the Cramér-Rao lower bounds of `H` and `G`.
"""

from .bounds import (
    PINV_RTOL,
    CrlbReport,
    compute_crlb,
    crlb_bounds,
    crlb_for_instance,
    hermitian_pinv,
)
from .fisher import (
    FimBlocks,
    build_fim,
    log_likelihood,
    monte_carlo_fim,
    observation_residual,
    score_gradients,
)


__all__ = [
    "PINV_RTOL",
    "CrlbReport",
    "compute_crlb",
    "crlb_bounds",
    "crlb_for_instance",
    "hermitian_pinv",
    "FimBlocks",
    "build_fim",
    "log_likelihood",
    "monte_carlo_fim",
    "observation_residual",
    "score_gradients",
]
