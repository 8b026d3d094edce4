import numpy as np
import pytest
from risuamp.crlb import (
    build_fim,
    log_likelihood,
    monte_carlo_fim,
    score_gradients,
)
from risuamp.model import ChannelPair, complex_gaussian, simulate_observations

from .test_fixtures import tiny_instance


def test_build_fim_should_be_hermitian(tiny_instance):
    _, channels, phase = tiny_instance

    P = build_fim(channels, phase, 0.5).full

    assert P.shape == (8, 8)
    assert np.allclose(P, P.conj().T)
    assert np.all(np.linalg.eigvalsh(P) > -1e-10)


def test_build_fim_should_vanish_along_the_scaling_direction(tiny_instance):
    _, channels, phase = tiny_instance
    direction = np.concatenate([channels.H.ravel(), -channels.G.T.ravel()])

    P = build_fim(channels, phase, 1.0).full

    assert np.linalg.norm(P @ direction) < 1e-10 * np.linalg.norm(P)


def test_build_fim_should_index_the_blocks_like_the_parameter_vector(tiny_instance):
    _, channels, phase = tiny_instance

    fim = build_fim(channels, phase, 1.0)

    assert fim.h_index(k=1, n=1) == 3
    assert fim.g_index(m=0, n=1) == 6
    assert fim.full[fim.h_index(0, 0), fim.g_index(1, 1)] == fim.P_HG[0, 3]


def test_build_fim_should_reject_a_non_positive_noise_variance(tiny_instance):
    _, channels, phase = tiny_instance

    with pytest.raises(ValueError):
        build_fim(channels, phase, 0.0)


def test_build_fim_should_match_the_monte_carlo_average_of_the_scores(
    tiny_instance,
):
    _, channels, phase = tiny_instance

    P = build_fim(channels, phase, 0.5).full
    P_mc = monte_carlo_fim(channels, phase, 0.5, n_draws=20_000, rng_seed=0)

    assert np.max(np.abs(P_mc - P)) < 0.05 * np.max(np.abs(P))


def test_score_gradients_should_match_finite_differences(tiny_instance):
    dims, channels, phase = tiny_instance
    Y_tilde = simulate_observations(channels, phase, 2.0, rng_seed=1).T
    rng = np.random.default_rng(5)
    point = ChannelPair(
        H=complex_gaussian((dims.N, dims.K), rng),
        G=complex_gaussian((dims.M, dims.N), rng),
    )
    eps = 1e-6

    def f(H, G):
        return log_likelihood(ChannelPair(H=H, G=G), phase, 0.5, Y_tilde)

    def wirtinger(perturb):
        d_real = (f(*perturb(eps)) - f(*perturb(-eps))) / (2 * eps)
        d_imag = (f(*perturb(1j * eps)) - f(*perturb(-1j * eps))) / (2 * eps)

        return (d_real - 1j * d_imag) / 2

    score = score_gradients(point, phase, 0.5, Y_tilde)

    for n in range(dims.N):
        for k in range(dims.K):
            unit = np.zeros_like(point.H)
            unit[n, k] = 1
            expected = wirtinger(lambda d, u=unit: (point.H + d * u, point.G))

            assert score[n * dims.K + k] == pytest.approx(expected, rel=1e-5, abs=1e-6)

        for m in range(dims.M):
            unit = np.zeros_like(point.G)
            unit[m, n] = 1
            expected = wirtinger(lambda d, u=unit: (point.H, point.G + d * u))
            index = dims.N * dims.K + n * dims.M + m

            assert score[index] == pytest.approx(expected, rel=1e-5, abs=1e-6)


def test_score_gradients_should_vanish_without_residual(tiny_instance):
    _, channels, phase = tiny_instance
    Y_tilde = simulate_observations(channels, phase, np.inf, rng_seed=0).T

    score = score_gradients(channels, phase, 1.0, Y_tilde)

    assert np.allclose(score, 0.0)
