"""Cramér-Rao lower bounds from the blocks of the Fisher information.

The scaling ambiguity `(c·h_n, g_n/c)` leaves the Fisher information with
an N-dimensional null space, so every inverse here is a Hermitian
pseudo-inverse with a relative eigenvalue cutoff. The bounds are then
traces over the identifiable subspace.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from risuamp.model import ChannelPair, RisPhaseMatrix

from .fisher import FimBlocks, build_fim


logger = logging.getLogger(__name__)

# eigenvalues below this fraction of the largest one are treated as zero
PINV_RTOL = 1e-10


@dataclass(frozen=True)
class CrlbReport:
    """Cramér-Rao bounds with the diagnostics of both inversions.

    Attributes:
        crlb_h (float): `trace(Ω_H)/(KN)`.
        crlb_g (float): `trace(Ω_G)/(MN)`.
        rank_h (int): Numerical rank of the Schur complement of `P_GG`.
        rank_g (int): Numerical rank of the Schur complement of `P_HH`.
        condition_h (float): Ratio of extreme retained eigenvalues of the first complement.
        condition_g (float): Ratio of extreme retained eigenvalues of the second complement.
    """  # noqa: E501

    crlb_h: float
    crlb_g: float
    rank_h: int
    rank_g: int
    condition_h: float
    condition_g: float


def hermitian_pinv(
    matrix: np.ndarray,
) -> tuple[np.ndarray, int, float]:
    """Pseudo-inverse of a Hermitian matrix with the relative cutoff `PINV_RTOL`.

    Args:
        matrix (np.ndarray): Hermitian matrix.

    Returns:
        The pseudo-inverse, the numerical rank, and the condition number on the retained eigenvalues.

    Examples:
        >>> inverse, rank, condition = hermitian_pinv(np.diag([2.0, 0.0]))
        >>> bool(np.allclose(inverse, [[0.5, 0.0], [0.0, 0.0]])), rank, condition
        (True, 1, 1.0)
    """  # noqa: E501
    hermitian = (matrix + matrix.conj().T) / 2
    eigenvalues = scipy.linalg.eigvalsh(hermitian)
    largest = np.max(np.abs(eigenvalues)) if eigenvalues.size else 0.0

    retained = np.abs(eigenvalues) > PINV_RTOL * largest
    rank = int(np.count_nonzero(retained))

    if rank == 0:
        return np.zeros_like(hermitian), 0, float("inf")

    condition = float(largest / np.min(np.abs(eigenvalues[retained])))
    inverse = scipy.linalg.pinvh(hermitian, atol=0.0, rtol=PINV_RTOL)

    return inverse, rank, condition


def compute_crlb(
    fim: FimBlocks,
) -> CrlbReport:
    """Computes the bounds through the Schur complements of `P`.

    `Ω_H = (P_HH − P_HG·P_GG⁺·P_HGᴴ)⁺` and `Ω_G = (P_GG − P_HGᴴ·P_HH⁺·P_HG)⁺`.

    Args:
        fim (FimBlocks): Blocks of the Fisher information.

    Returns:
        The bounds and the numerical diagnostics.

    Examples:
        >>> fim = FimBlocks(
        ...     P_HH=np.diag([2.0, 4.0]), P_GG=np.eye(1), P_HG=np.zeros((2, 1)),
        ...     noise_variance=1.0, K=2, M=1, N=1,
        ... )
        >>> report = compute_crlb(fim)
        >>> report.crlb_h, report.crlb_g
        (0.375, 1.0)
    """
    P_HH, P_GG, P_HG = fim.P_HH, fim.P_GG, fim.P_HG

    P_GG_inv, _, _ = hermitian_pinv(P_GG)
    P_HH_inv, _, _ = hermitian_pinv(P_HH)

    omega_h, rank_h, condition_h = hermitian_pinv(
        P_HH - P_HG @ P_GG_inv @ P_HG.conj().T
    )
    omega_g, rank_g, condition_g = hermitian_pinv(
        P_GG - P_HG.conj().T @ P_HH_inv @ P_HG
    )

    # the scaling ambiguity alone removes one direction per RIS unit
    expected_h = P_HH.shape[0] - fim.N
    expected_g = P_GG.shape[0] - fim.N

    if rank_h < expected_h or rank_g < expected_g:
        logger.warning(
            "Schur complements have ranks %d and %d, below %d and %d, "
            "the instance is not identifiable beyond the scaling ambiguity",
            rank_h,
            rank_g,
            expected_h,
            expected_g,
        )
    else:
        logger.debug("Schur complement ranks %d and %d", rank_h, rank_g)

    return CrlbReport(
        crlb_h=float(np.trace(omega_h).real) / (fim.K * fim.N),
        crlb_g=float(np.trace(omega_g).real) / (fim.M * fim.N),
        rank_h=rank_h,
        rank_g=rank_g,
        condition_h=condition_h,
        condition_g=condition_g,
    )


def crlb_bounds(
    fim: FimBlocks,
) -> tuple[float, float]:
    """Returns `(CRLB_H, CRLB_G)` of [`compute_crlb`][risuamp.crlb.bounds.compute_crlb]."""  # noqa: E501
    report = compute_crlb(fim)

    return report.crlb_h, report.crlb_g


def crlb_for_instance(
    channels: ChannelPair,
    phase: RisPhaseMatrix | np.ndarray,
    noise_variance: float,
) -> CrlbReport:
    """Builds the Fisher information of one instance and computes its bounds.

    Args:
        channels (ChannelPair): True channels.
        phase (RisPhaseMatrix | np.ndarray): Phase matrix `Φ`, L×N.
        noise_variance (float): Noise variance `σ²`.

    Returns:
        The bounds and the numerical diagnostics.
    """
    return compute_crlb(build_fim(channels, phase, noise_variance))
