from dataclasses import replace
from typing import Any

import numpy as np
import pytest
from risuamp.estimation import EstimatorConfig, EstimatorState, initialize_state
from risuamp.model import (
    PhaseMatrixKind,
    RisPhaseMatrix,
    SystemDims,
    TransformedModel,
    generate_channels,
    generate_phase_matrix,
    simulate_observations,
    snr_to_noise_variance,
    unitary_transform,
)


def identity_model(
    dims: SystemDims,
    R: np.ndarray | None = None,
) -> TransformedModel:
    """Model with `Ψ = I`, so every step can be evaluated by hand."""
    eye = np.eye(dims.L, dims.N, dtype=complex)

    if R is None:
        R = np.zeros((dims.L, dims.J), dtype=complex)

    return TransformedModel(
        phase=RisPhaseMatrix(phi=eye, kind=PhaseMatrixKind.PARTIAL_DFT),
        U=np.eye(dims.L, dtype=complex),
        singular_values=np.ones(min(dims.L, dims.N)),
        Psi=eye,
        R=np.asarray(R, dtype=complex),
        psi=np.sum(np.abs(eye) ** 2, axis=1),
    )


def make_state(
    dims: SystemDims,
    model: TransformedModel | None = None,
    cfg: EstimatorConfig = EstimatorConfig(),
    **fields: Any,
) -> EstimatorState:
    """Initial state with some fields overridden."""
    model = model or identity_model(dims)
    state = initialize_state(model, dims, cfg, rng_seed=0)

    overrides = {
        name: np.asarray(value, dtype=complex)
        if name in ("q_t", "h_hat", "g_hat", "fwd_h", "fwd_g", "bwd_h", "bwd_g")
        else value
        for name, value in fields.items()
    }

    return replace(state, **overrides)


@pytest.fixture(scope="package")
def noiseless_instance():
    dims = SystemDims(M=8, K=8, N=8, L=8)

    instances = []
    for seed in range(50):
        channels = generate_channels(dims, rng_seed=seed)
        phase = generate_phase_matrix(dims, PhaseMatrixKind.PARTIAL_DFT, rng_seed=seed)
        beta = 1 / snr_to_noise_variance(phase, 80.0, dims)
        Y = simulate_observations(channels, phase, beta, rng_seed=100 + seed)

        instances.append((channels, phase, Y))

    return dims, instances


@pytest.fixture(scope="package")
def small_model():
    dims = SystemDims(M=3, K=2, N=4, L=4)
    channels = generate_channels(dims, rng_seed=4)
    phase = generate_phase_matrix(dims, PhaseMatrixKind.PARTIAL_DFT, rng_seed=4)
    beta = 1 / snr_to_noise_variance(phase, 20.0, dims)
    Y = simulate_observations(channels, phase, beta, rng_seed=5)

    return dims, channels, phase, Y, unitary_transform(phase, Y)
