"""Estimation module.

This module provides the UAMP-based message passing estimator of the
cascaded RIS channel, its message state, and the protocol shared by every
channel estimator in the package.
"""

from .config import EstimatorConfig, InvalidEstimatorConfigError
from .estimate import ChannelEstimate, IterationTrace
from .gaussian import apply_prior, gaussian_extrinsic, gaussian_product, product_message
from .protocol import ChannelEstimator
from .state import EstimatorState, initialize_state
from .steps import (
    backward_channel_messages,
    backward_s_combine,
    noise_precision,
    uamp_forward_step,
    unpack_to_columns,
    update_g_beliefs,
    update_h_beliefs,
    update_noise_precision,
    update_z_beliefs,
)
from .uamp import (
    EstimatorDivergedError,
    UampEstimator,
    relative_change,
    run_estimator,
    run_iteration,
)


__all__ = [
    "EstimatorConfig",
    "InvalidEstimatorConfigError",
    "ChannelEstimate",
    "IterationTrace",
    "apply_prior",
    "gaussian_extrinsic",
    "gaussian_product",
    "product_message",
    "ChannelEstimator",
    "EstimatorState",
    "initialize_state",
    "backward_channel_messages",
    "backward_s_combine",
    "noise_precision",
    "uamp_forward_step",
    "unpack_to_columns",
    "update_g_beliefs",
    "update_h_beliefs",
    "update_noise_precision",
    "update_z_beliefs",
    "EstimatorDivergedError",
    "UampEstimator",
    "relative_change",
    "run_estimator",
    "run_iteration",
]
