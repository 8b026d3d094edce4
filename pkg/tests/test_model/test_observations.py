import math

import numpy as np
import pytest
from risuamp.model import (
    ChannelPair,
    InvalidNoisePrecisionError,
    PhaseMatrixKind,
    SystemDims,
    build_signal_matrix,
    generate_channels,
    generate_phase_matrix,
    noise_precision_from_snr,
    simulate_observations,
    snr_to_noise_variance,
)


@pytest.fixture(scope="module")
def instance():
    dims = SystemDims(M=2, K=3, N=4, L=4)
    channels = generate_channels(dims, rng_seed=1)
    phase = generate_phase_matrix(dims, PhaseMatrixKind.PARTIAL_DFT, rng_seed=1)

    return dims, channels, phase


def test_simulate_observations_should_be_noiseless_when_beta_is_inf(instance):
    _, channels, phase = instance

    Y = simulate_observations(channels, phase, math.inf, rng_seed=0)

    assert np.array_equal(Y, phase.phi @ build_signal_matrix(channels))


def test_simulate_observations_should_be_deterministic_given_the_seed(instance):
    _, channels, phase = instance

    first = simulate_observations(channels, phase, 10.0, rng_seed=4)
    second = simulate_observations(channels, phase, 10.0, rng_seed=4)

    assert np.array_equal(first, second)


def test_simulate_observations_should_add_noise_with_variance_one_over_beta():
    dims = SystemDims(M=8, K=8, N=8, L=64)
    channels = ChannelPair(
        H=np.zeros((dims.N, dims.K), dtype=complex),
        G=np.zeros((dims.M, dims.N), dtype=complex),
    )
    phase = generate_phase_matrix(dims, PhaseMatrixKind.BINARY_RANDOM, rng_seed=0)

    Y = simulate_observations(channels, phase, 1.0, rng_seed=9)

    assert Y.shape == (64, 64)
    assert np.mean(np.abs(Y) ** 2) == pytest.approx(1.0, rel=0.1)


@pytest.mark.parametrize("beta", [0.0, -1.0, math.nan])
def test_simulate_observations_should_reject_non_positive_beta(instance, beta: float):
    _, channels, phase = instance

    with pytest.raises(InvalidNoisePrecisionError):
        simulate_observations(channels, phase, beta, rng_seed=0)


def test_snr_to_noise_variance_should_be_n_squared_at_0_db_for_partial_dft():
    dims = SystemDims(M=1, K=1, N=16, L=8)

    assert snr_to_noise_variance("partial_dft", 0.0, dims) == pytest.approx(256.0)


def test_snr_to_noise_variance_should_be_40_96_at_20_db_for_n_64():
    dims = SystemDims(M=64, K=64, N=64, L=64)

    assert snr_to_noise_variance(
        PhaseMatrixKind.PARTIAL_DFT, 20.0, dims
    ) == pytest.approx(40.96)


def test_snr_to_noise_variance_should_halve_the_energy_for_binary_matrices():
    dims = SystemDims(M=64, K=64, N=64, L=64)

    assert snr_to_noise_variance("binary_random", 0.0, dims) == pytest.approx(2048.0)


def test_snr_to_noise_variance_should_accept_a_phase_matrix():
    dims = SystemDims(M=1, K=1, N=4, L=4)
    phase = generate_phase_matrix(dims, PhaseMatrixKind.PARTIAL_DFT, rng_seed=0)

    assert snr_to_noise_variance(phase, 10.0, dims) == pytest.approx(1.6)


def test_snr_to_noise_variance_should_vanish_at_infinite_snr():
    dims = SystemDims(M=1, K=1, N=4, L=4)

    assert snr_to_noise_variance("partial_dft", math.inf, dims) == 0.0
    assert noise_precision_from_snr("partial_dft", math.inf, dims) == math.inf


def test_noise_precision_from_snr_should_invert_the_variance():
    dims = SystemDims(M=1, K=1, N=8, L=4)

    assert noise_precision_from_snr("partial_dft", 30.0, dims) == pytest.approx(
        1 / snr_to_noise_variance("partial_dft", 30.0, dims)
    )
