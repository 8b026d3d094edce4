import numpy as np
import pytest
from risuamp.baselines import (
    BaselineConfig,
    LsRank1Estimator,
    UnderdeterminedSystemError,
    least_squares_signal,
    ls_rank1_estimator,
    rank1_factors,
)
from risuamp.baselines.als import BETA_CAP
from risuamp.experiments import nmse_with_ambiguity_removal
from risuamp.model import PhaseMatrixKind, SystemDims, build_signal_matrix

from .test_fixtures import noiseless


def test_rank1_factors_should_return_zero_factors_for_a_zero_block():
    g, h = rank1_factors(np.zeros((2, 3, 4)))

    assert g.shape == (2, 3)
    assert h.shape == (2, 4)
    assert np.allclose(g, 0.0)
    assert np.allclose(h, 0.0)


def test_least_squares_signal_should_solve_an_overdetermined_system():
    dims = SystemDims(M=2, K=2, N=3, L=16)
    channels, phase, Y = noiseless(dims, PhaseMatrixKind.BINARY_RANDOM, seed=2)

    S, underdetermined = least_squares_signal(Y, phase.phi, 0.0)

    assert not underdetermined
    assert np.allclose(S, build_signal_matrix(channels))


@pytest.mark.parametrize(
    ("L", "kind"),
    [(4, PhaseMatrixKind.PARTIAL_DFT), (16, PhaseMatrixKind.BINARY_RANDOM)],
)
def test_ls_rank1_estimator_should_recover_noiseless_channels(L, kind):
    dims = SystemDims(M=3, K=2, N=4, L=L)
    channels, phase, Y = noiseless(dims, kind, seed=L)

    estimate = LsRank1Estimator()(Y, phase, dims, rng_seed=0)
    nmse_h, nmse_g = nmse_with_ambiguity_removal(channels, estimate.channels)

    assert nmse_h < 1e-10
    assert nmse_g < 1e-10
    assert estimate.beta_hat == BETA_CAP
    assert estimate.iterations == 1


def test_ls_rank1_estimator_should_reject_an_underdetermined_system():
    dims = SystemDims(M=2, K=2, N=4, L=2)
    _, phase, Y = noiseless(dims, PhaseMatrixKind.PARTIAL_DFT, seed=0)

    with pytest.raises(UnderdeterminedSystemError):
        ls_rank1_estimator(Y, phase, dims, BaselineConfig())


def test_ls_rank1_estimator_should_use_the_ridge_when_underdetermined():
    dims = SystemDims(M=2, K=2, N=4, L=2)
    _, phase, Y = noiseless(dims, PhaseMatrixKind.PARTIAL_DFT, seed=0)

    estimate = ls_rank1_estimator(Y, phase, dims, BaselineConfig(ridge=1e-3))

    assert estimate.diagnostics == ("underdetermined_ridge",)
    assert np.all(np.isfinite(estimate.H))
    assert estimate.G.shape == (dims.M, dims.N)


def test_rank1_factors_should_give_the_best_rank_1_approximation():
    rng = np.random.default_rng(3)
    blocks = rng.standard_normal((5, 4, 3)) + 1j * rng.standard_normal((5, 4, 3))

    g, h = rank1_factors(blocks)

    for n, block in enumerate(blocks):
        U, s, Vh = np.linalg.svd(block)
        best = s[0] * np.outer(U[:, 0], Vh[0])
        fitted = np.outer(g[n], h[n])

        assert np.allclose(fitted, best)
        assert np.linalg.norm(block - fitted) == pytest.approx(
            np.sqrt(np.sum(s[1:] ** 2))
        )
