import numpy as np
import pytest
from risuamp.model import (
    AmbiguityFreeError,
    ChannelPair,
    SystemDims,
    ZeroNormTruthError,
    generate_channels,
    nmse_with_ambiguity_removal,
    scaled_nmse,
    to_db,
)


def test_scaled_nmse_should_be_zero_for_rescaled_rows():
    truth = np.array([[1.0, 2.0j], [3.0, -1.0]])
    scales = np.array([[2.0 - 1.0j], [-0.5]])

    assert scaled_nmse(truth, scales * truth) == pytest.approx(0.0, abs=1e-15)


def test_scaled_nmse_should_be_one_for_orthogonal_rows():
    truth = np.array([[1.0, 0.0]])
    estimate = np.array([[0.0, 5.0]])

    assert scaled_nmse(truth, estimate) == 1.0


def test_scaled_nmse_should_be_one_for_a_zero_estimate():
    assert scaled_nmse(np.array([[1.0, 1.0]]), np.zeros((1, 2))) == 1.0


def test_scaled_nmse_should_reject_an_all_zero_truth():
    with pytest.raises(ZeroNormTruthError):
        scaled_nmse(np.zeros((2, 2)), np.ones((2, 2)))


def test_nmse_with_ambiguity_removal_should_ignore_the_per_unit_scaling():
    dims = SystemDims(M=3, K=2, N=4, L=1)
    channels = generate_channels(dims, rng_seed=0)
    c = np.array([1.0, -2.0, 0.5j, 3.0 + 1.0j])
    rescaled = ChannelPair(H=channels.H * c[:, None], G=channels.G / c[None, :])

    nmse_h, nmse_g = nmse_with_ambiguity_removal(channels, rescaled)

    assert nmse_h == pytest.approx(0.0, abs=1e-12)
    assert nmse_g == pytest.approx(0.0, abs=1e-12)


def test_ambiguity_free_error_should_reject_mismatched_shapes():
    truth = ChannelPair(H=np.ones((2, 2)), G=np.ones((3, 2)))
    estimate = ChannelPair(H=np.ones((2, 2)), G=np.ones((2, 2)))

    with pytest.raises(ValueError):
        AmbiguityFreeError(truth=truth, estimate=estimate)


def test_ambiguity_free_error_should_report_db_values():
    truth = ChannelPair(H=np.array([[1.0, 0.0]]), G=np.array([[1.0], [0.0]]))
    estimate = ChannelPair(H=np.array([[1.0, 0.0]]), G=np.array([[1.0], [1.0]]))

    error = AmbiguityFreeError(truth=truth, estimate=estimate)

    assert error.nmse_h_db == -np.inf
    assert error.nmse_g_db == pytest.approx(to_db(0.5))
