"""Model module.

This module generates channels, RIS phase matrices, and noisy observations,
and builds the structured signal matrix and the unitary-transformed model
consumed by every estimator. It also scores estimates up to the scaling
ambiguity.
"""

from .dims import (
    ChannelPair,
    InvalidDimensionsError,
    SystemDims,
    complex_gaussian,
    generate_channels,
)
from .khatri_rao import build_signal_matrix, khatri_rao_column, vectorized_model_oracle
from .metrics import (
    AmbiguityFreeError,
    ZeroNormTruthError,
    nmse_with_ambiguity_removal,
    optimal_scalars,
    scaled_nmse,
    to_db,
)
from .observations import (
    InvalidNoisePrecisionError,
    expected_phase_energy,
    noise_precision_from_snr,
    simulate_observations,
    snr_to_noise_variance,
)
from .phase import (
    InvalidPhaseMatrixError,
    PhaseMatrixKind,
    RisPhaseMatrix,
    generate_phase_matrix,
    partial_dft,
)
from .transform import TransformedModel, UnitaryTransformError, unitary_transform


__all__ = [
    "ChannelPair",
    "InvalidDimensionsError",
    "SystemDims",
    "complex_gaussian",
    "generate_channels",
    "build_signal_matrix",
    "khatri_rao_column",
    "vectorized_model_oracle",
    "AmbiguityFreeError",
    "ZeroNormTruthError",
    "nmse_with_ambiguity_removal",
    "optimal_scalars",
    "scaled_nmse",
    "to_db",
    "InvalidNoisePrecisionError",
    "expected_phase_energy",
    "noise_precision_from_snr",
    "simulate_observations",
    "snr_to_noise_variance",
    "InvalidPhaseMatrixError",
    "PhaseMatrixKind",
    "RisPhaseMatrix",
    "generate_phase_matrix",
    "partial_dft",
    "TransformedModel",
    "UnitaryTransformError",
    "unitary_transform",
]
