import numpy as np
import pytest
from risuamp.model import (
    PhaseMatrixKind,
    SystemDims,
    generate_channels,
    generate_phase_matrix,
    simulate_observations,
)


def noiseless(dims: SystemDims, kind: PhaseMatrixKind, seed: int):
    """Channels, phase matrix and noiseless observations of one instance."""
    channels = generate_channels(dims, rng_seed=seed)
    phase = generate_phase_matrix(dims, kind, rng_seed=seed)
    Y = simulate_observations(channels, phase, np.inf, rng_seed=seed)

    return channels, phase, Y


@pytest.fixture
def square_dft_instance():
    dims = SystemDims(M=4, K=3, N=4, L=4)

    return dims, *noiseless(dims, PhaseMatrixKind.PARTIAL_DFT, seed=6)
