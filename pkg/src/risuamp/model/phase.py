"""RIS phase matrices used during training."""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .dims import SystemDims


class InvalidPhaseMatrixError(ValueError):
    """Raised when a phase matrix cannot be built for the requested sizes."""


class PhaseMatrixKind(str, Enum):
    """Kinds of RIS phase matrices.

    Examples:
        >>> PhaseMatrixKind("partial_dft") is PhaseMatrixKind.PARTIAL_DFT
        True
    """

    PARTIAL_DFT = "partial_dft"
    BINARY_RANDOM = "binary_random"


@dataclass(frozen=True)
class RisPhaseMatrix:
    """L×N matrix of RIS configurations, one row per training block.

    Attributes:
        phi (np.ndarray): Complex L×N matrix.
        kind (PhaseMatrixKind): How the matrix was generated.
    """

    phi: np.ndarray
    kind: PhaseMatrixKind

    @property
    def L(self) -> int:
        """Number of phase configurations."""
        return self.phi.shape[0]

    @property
    def N(self) -> int:
        """Number of RIS units."""
        return self.phi.shape[1]


def partial_dft(
    L: int,
    N: int,
) -> np.ndarray:
    """First `L` rows of the unnormalized N-point DFT matrix.

    Args:
        L (int): Number of rows.
        N (int): DFT size.

    Returns:
        Complex L×N matrix with entries `exp(-2πi·l·n/N)`, indices starting at 0.

    Raises:
        InvalidPhaseMatrixError: If `L > N`.

    Examples:
        >>> np.allclose(partial_dft(2, 4), [[1, 1, 1, 1], [1, -1j, -1, 1j]])
        True
    """  # noqa: E501
    if L > N:
        raise InvalidPhaseMatrixError(
            f"a partial DFT matrix needs L <= N, got L={L} and N={N}"
        )

    rows = np.arange(L)[:, None]
    cols = np.arange(N)[None, :]

    return np.exp(-2j * np.pi * rows * cols / N)


def generate_phase_matrix(
    dims: SystemDims,
    kind: PhaseMatrixKind | str,
    rng_seed: int,
) -> RisPhaseMatrix:
    """Builds the RIS phase matrix for the given dimensions.

    Partial DFT matrices are deterministic. Binary matrices have i.i.d.
    entries that are 1 or 0 with equal probability.

    Args:
        dims (SystemDims): Sizes of the system.
        kind (PhaseMatrixKind | str): Kind of matrix to build.
        rng_seed (int): Seed used for the binary matrix.

    Returns:
        The phase matrix.

    Raises:
        InvalidPhaseMatrixError: If the kind is unknown, or a partial DFT
            matrix is requested with `L > N`.

    Examples:
        >>> dims = SystemDims(M=1, K=1, N=2, L=2)
        >>> generate_phase_matrix(dims, "partial_dft", rng_seed=0).phi.real.round().tolist()
        [[1.0, 1.0], [1.0, -1.0]]
    """  # noqa: E501
    try:
        kind = PhaseMatrixKind(kind)
    except ValueError as e:
        raise InvalidPhaseMatrixError(f"unknown phase matrix kind: {kind!r}") from e

    if kind is PhaseMatrixKind.PARTIAL_DFT:
        phi = partial_dft(dims.L, dims.N)
    else:
        rng = np.random.default_rng(rng_seed)
        phi = rng.integers(0, 2, size=(dims.L, dims.N)).astype(np.complex128)

    return RisPhaseMatrix(phi=phi, kind=kind)
