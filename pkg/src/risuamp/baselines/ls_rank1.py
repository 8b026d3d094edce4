"""Two-stage estimator: least squares on `Y = ΦS`, then a rank-1 fit per RIS unit."""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from risuamp.estimation import ChannelEstimate
from risuamp.model import RisPhaseMatrix, SystemDims

from .als import BETA_CAP, ridge_solve
from .config import BaselineConfig


logger = logging.getLogger(__name__)


class UnderdeterminedSystemError(ValueError):
    """Raised when `Y = ΦS` has fewer equations than unknowns and no ridge is set."""


def least_squares_signal(
    Y: np.ndarray,
    phi: np.ndarray,
    ridge: float,
) -> tuple[np.ndarray, bool]:
    """Solves `Y = ΦS` for the N×J matrix `S`.

    Args:
        Y (np.ndarray): Observations, L×J.
        phi (np.ndarray): Phase matrix, L×N.
        ridge (float): Tikhonov regularizer. Required when `L < N`.

    Returns:
        The estimate of `S`, and whether the system was underdetermined.

    Raises:
        UnderdeterminedSystemError: If `L < N` and `ridge == 0`.
    """
    L, N = phi.shape
    underdetermined = L < N

    if underdetermined and ridge == 0:
        raise UnderdeterminedSystemError(
            f"Φ is {L}×{N}: least squares needs L >= N or a positive ridge"
        )

    if ridge == 0:
        S, *_ = scipy.linalg.lstsq(phi, Y)
        return S, False

    S, _ = ridge_solve(phi.conj().T @ phi, phi.conj().T @ Y, ridge)

    return S, underdetermined


def rank1_factors(
    blocks: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Best rank-1 factorization `A_n ≈ g_n h_nᵀ` of a stack of M×K matrices.

    The singular value of the dominant triplet is split evenly between the
    two factors. A zero matrix gives zero factors.

    Args:
        blocks (np.ndarray): Array of shape (N, M, K).

    Returns:
        `g` with shape (N, M) and `h` with shape (N, K).

    Examples:
        >>> blocks = np.array([[[1.0, 2.0], [2.0, 4.0]]])
        >>> g, h = rank1_factors(blocks)
        >>> bool(np.allclose(g[0][:, None] * h[0][None, :], blocks[0]))
        True
    """
    U, s, Vh = np.linalg.svd(blocks)
    scale = np.sqrt(s[:, 0])[:, None]

    g = scale * U[:, :, 0]
    h = scale * Vh[:, 0, :]

    return g, h


def ls_rank1_estimator(
    Y: np.ndarray,
    phase: RisPhaseMatrix,
    dims: SystemDims,
    cfg: BaselineConfig,
) -> ChannelEstimate:
    """Estimates `S` by least squares and factors each of its rows.

    Row `n` of `Ŝ` is reshaped into the M×K matrix whose entry `(m, k)` is
    `Ŝ[n, k·M + m]`, so `m` runs along rows.

    Args:
        Y (np.ndarray): Observations, L×J.
        phase (RisPhaseMatrix): RIS phase matrix.
        dims (SystemDims): Sizes of the system.
        cfg (BaselineConfig): Baseline settings. Only `ridge` is used.

    Returns:
        The estimate, with the `underdetermined_ridge` diagnostic when `L < N`.

    Raises:
        UnderdeterminedSystemError: If `L < N` and `cfg.ridge == 0`.
    """
    S, underdetermined = least_squares_signal(Y, phase.phi, cfg.ridge)

    if underdetermined:
        logger.warning(
            "L=%d < N=%d: the least squares stage relies on ridge=%g",
            dims.L,
            dims.N,
            cfg.ridge,
        )

    blocks = S.reshape(dims.N, dims.K, dims.M).transpose(0, 2, 1)
    g, h = rank1_factors(blocks)

    H = h
    G = g.T

    fitted = np.einsum("nk,mn->nkm", H, G).reshape(dims.N, dims.J)
    residual = float(np.sum(np.abs(Y - phase.phi @ fitted) ** 2))

    if residual * BETA_CAP <= Y.size:
        beta_hat = BETA_CAP
    else:
        beta_hat = Y.size / residual

    return ChannelEstimate(
        H=H,
        G=G,
        beta_hat=float(beta_hat),
        iterations=1,
        converged=True,
        diagnostics=("underdetermined_ridge",) if underdetermined else (),
    )


@dataclass(frozen=True)
class LsRank1Estimator:
    """Adapter of [`ls_rank1_estimator`][risuamp.baselines.ls_rank1.ls_rank1_estimator] to the `ChannelEstimator` protocol."""  # noqa: E501

    cfg: BaselineConfig = BaselineConfig()

    def __call__(
        self,
        Y: np.ndarray,
        phase: RisPhaseMatrix,
        dims: SystemDims,
        rng_seed: int,
    ) -> ChannelEstimate:
        """Runs the two-stage estimator. The seed is unused."""
        return ls_rank1_estimator(Y, phase, dims, self.cfg)
