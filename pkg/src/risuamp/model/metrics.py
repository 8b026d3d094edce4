"""NMSE of channel estimates after removing the scaling ambiguity.

`(c·h_n, g_n/c)` produces the same observations as `(h_n, g_n)`, so every
estimated vector is first rescaled by its best complex scalar. `H` and `G`
get independent scalars, so each NMSE measures how well the subspace of
that factor is recovered.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .dims import ChannelPair


class ZeroNormTruthError(ValueError):
    """Raised when the NMSE is requested against an all-zero truth."""


def optimal_scalars(
    truth: np.ndarray,
    estimate: np.ndarray,
) -> np.ndarray:
    """Per-row least squares scalars `α_n = (x̂_nᴴ x_n)/(x̂_nᴴ x̂_n)`.

    Rows of `estimate` that are all zero get `α_n = 0`.

    Args:
        truth (np.ndarray): True vectors, one per row.
        estimate (np.ndarray): Estimated vectors, one per row.

    Returns:
        One scalar per row.

    Examples:
        >>> optimal_scalars(np.array([[2.0, 4.0], [1.0, 1.0]]), np.array([[1.0, 2.0], [0.0, 0.0]])).tolist()
        [(2+0j), 0j]
    """  # noqa: E501
    numerator = np.sum(estimate.conj() * truth, axis=1)
    denominator = np.sum(np.abs(estimate) ** 2, axis=1)

    safe = np.where(denominator > 0, denominator, 1.0)

    return np.where(denominator > 0, numerator / safe, 0.0).astype(np.complex128)


def scaled_nmse(
    truth: np.ndarray,
    estimate: np.ndarray,
) -> float:
    """NMSE between row vectors after rescaling every estimated row.

    Raises:
        ZeroNormTruthError: If `truth` is all zeros.
    """
    energy = float(np.sum(np.abs(truth) ** 2))

    if energy == 0:
        raise ZeroNormTruthError("the true channel is all zeros")

    alpha = optimal_scalars(truth, estimate)
    error = np.sum(np.abs(alpha[:, None] * estimate - truth) ** 2)

    return float(error / energy)


@dataclass(frozen=True)
class AmbiguityFreeError:
    """Errors of a channel estimate with the scaling ambiguity removed.

    Examples:
        >>> truth = ChannelPair(H=np.array([[1.0, 0.0]]), G=np.array([[1.0], [1.0]]))
        >>> estimate = ChannelPair(H=np.array([[3.0, 0.0]]), G=np.array([[0.0], [1.0]]))
        >>> error = AmbiguityFreeError(truth=truth, estimate=estimate)
        >>> error.nmse_h, error.nmse_g
        (0.0, 0.5)
    """

    truth: ChannelPair
    estimate: ChannelPair

    def __post_init__(self) -> None:
        """Validates that both pairs have the same shapes."""
        if (
            self.truth.H.shape != self.estimate.H.shape
            or self.truth.G.shape != self.estimate.G.shape
        ):
            raise ValueError(
                f"truth has (M, K, N) = {self.truth.dims}, "
                f"estimate has {self.estimate.dims}"
            )

    @cached_property
    def nmse_h(self) -> float:
        """NMSE of `H`, rescaling every `ĥ_n`."""
        return scaled_nmse(self.truth.H, self.estimate.H)

    @cached_property
    def nmse_g(self) -> float:
        """NMSE of `G`, rescaling every `ĝ_n`."""
        return scaled_nmse(self.truth.G.T, self.estimate.G.T)

    @cached_property
    def nmse_h_db(self) -> float:
        """NMSE of `H` in dB."""
        return to_db(self.nmse_h)

    @cached_property
    def nmse_g_db(self) -> float:
        """NMSE of `G` in dB."""
        return to_db(self.nmse_g)


def to_db(value: float) -> float:
    """Converts a power ratio to dB, `-inf` for 0.

    Examples:
        >>> to_db(0.01)
        -20.0
    """
    if value == 0:
        return -math.inf

    return 10 * math.log10(value)


def nmse_with_ambiguity_removal(
    truth: ChannelPair,
    estimate: ChannelPair,
) -> tuple[float, float]:
    """Computes `(NMSE_H, NMSE_G)` with per-column scalars removed.

    Args:
        truth (ChannelPair): True channels.
        estimate (ChannelPair): Estimated channels with the same shapes.

    Returns:
        The NMSE of `H` and of `G`.

    Raises:
        ZeroNormTruthError: If either true matrix is all zeros.

    Examples:
        >>> H = np.array([[1.0, 2.0], [3.0, 4.0]])
        >>> G = np.array([[1.0, 1.0]])
        >>> nmse_with_ambiguity_removal(ChannelPair(H=H, G=G), ChannelPair(H=2 * H, G=G))
        (0.0, 0.0)
    """  # noqa: E501
    error = AmbiguityFreeError(truth=truth, estimate=estimate)

    return error.nmse_h, error.nmse_g
