import numpy as np
import pytest
from risuamp.model import (
    ChannelPair,
    InvalidDimensionsError,
    SystemDims,
    generate_channels,
)


def test_system_dims_should_derive_j_as_k_times_m():
    dims = SystemDims(M=3, K=5, N=2, L=1)

    assert dims.J == 15


@pytest.mark.parametrize(
    "kwargs",
    [
        {"M": 0, "K": 1, "N": 1, "L": 1},
        {"M": 1, "K": -2, "N": 1, "L": 1},
        {"M": 1, "K": 1, "N": 1.5, "L": 1},
        {"M": 1, "K": 1, "N": 1, "L": True},
    ],
)
def test_system_dims_should_reject_non_positive_or_non_integer_sizes(kwargs):
    with pytest.raises(InvalidDimensionsError):
        SystemDims(**kwargs)


def test_channel_pair_should_reject_inconsistent_shapes():
    with pytest.raises(InvalidDimensionsError):
        ChannelPair(H=np.ones((3, 2)), G=np.ones((2, 4)))


def test_channel_pair_should_reject_non_finite_entries():
    H = np.ones((2, 2), dtype=complex)
    H[0, 1] = np.nan

    with pytest.raises(InvalidDimensionsError):
        ChannelPair(H=H, G=np.ones((2, 2)))


def test_check_dims_should_raise_when_channels_do_not_match():
    channels = generate_channels(SystemDims(M=2, K=3, N=4, L=1), rng_seed=0)

    with pytest.raises(InvalidDimensionsError):
        channels.check_dims(SystemDims(M=3, K=2, N=4, L=1))


def test_generate_channels_should_be_deterministic_given_the_seed():
    dims = SystemDims(M=2, K=2, N=4, L=1)

    first = generate_channels(dims, rng_seed=7)
    second = generate_channels(dims, rng_seed=7)

    assert np.array_equal(first.H, second.H)
    assert np.array_equal(first.G, second.G)


def test_generate_channels_should_differ_across_seeds():
    dims = SystemDims(M=2, K=2, N=4, L=1)

    first = generate_channels(dims, rng_seed=7)
    second = generate_channels(dims, rng_seed=8)

    assert not np.array_equal(first.H, second.H)


def test_generate_channels_should_have_unit_average_power():
    channels = generate_channels(SystemDims(M=64, K=64, N=64, L=1), rng_seed=3)

    entries = np.concatenate([channels.H.ravel(), channels.G.ravel()])
    power = np.mean(np.abs(entries) ** 2)

    assert power == pytest.approx(1.0, rel=0.05)


def test_generate_channels_should_support_the_minimal_shape():
    channels = generate_channels(SystemDims(M=1, K=1, N=1, L=1), rng_seed=0)

    assert channels.H.shape == (1, 1)
    assert channels.G.shape == (1, 1)
