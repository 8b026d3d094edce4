"""System dimensions and channel generation.

The cascaded channel of a RIS-aided uplink is described by two matrices:
`H` (N×K), between the RIS and the users, and `G` (M×N), between the
base station and the RIS. Both are drawn i.i.d. circularly-symmetric
complex Gaussian with unit variance.
"""

from dataclasses import dataclass

import numpy as np


class InvalidDimensionsError(ValueError):
    """Raised when system dimensions or channel shapes are inconsistent."""


@dataclass(frozen=True)
class SystemDims:
    """Sizes of the system.

    Attributes:
        M (int): Number of BS antennas.
        K (int): Number of single-antenna users.
        N (int): Number of RIS units.
        L (int): Number of RIS phase configurations.

    Examples:
        >>> dims = SystemDims(M=2, K=3, N=4, L=4)
        >>> dims.J
        6
        >>> SystemDims(M=0, K=1, N=1, L=1)
        Traceback (most recent call last):
        ...
        risuamp.model.dims.InvalidDimensionsError: M must be a positive integer, got 0
    """  # noqa: E501

    M: int
    K: int
    N: int
    L: int

    def __post_init__(self) -> None:
        """Validates that every size is a positive integer."""
        for name in ("M", "K", "N", "L"):
            value = getattr(self, name)

            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise InvalidDimensionsError(
                    f"{name} must be a positive integer, got {value!r}"
                )

            if value < 1:
                raise InvalidDimensionsError(
                    f"{name} must be a positive integer, got {value}"
                )

    @property
    def J(self) -> int:
        """Length of each Khatri-Rao column, `J = K·M`."""
        return self.K * self.M


@dataclass(frozen=True)
class ChannelPair:
    """Channel matrices of the cascaded link, either ground truth or estimated.

    Attributes:
        H (np.ndarray): Complex N×K matrix. Row `n` is `h_n`, the column `n` of `Hᵀ`.
        G (np.ndarray): Complex M×N matrix. Column `n` is `g_n`.
    """  # noqa: E501

    H: np.ndarray
    G: np.ndarray

    def __post_init__(self) -> None:
        """Validates shapes and finiteness."""
        if self.H.ndim != 2 or self.G.ndim != 2:
            raise InvalidDimensionsError("H and G must be matrices")

        if self.H.shape[0] != self.G.shape[1]:
            raise InvalidDimensionsError(
                f"H is {self.H.shape} and G is {self.G.shape}, "
                "but H must be N×K and G must be M×N"
            )

        if not (np.all(np.isfinite(self.H)) and np.all(np.isfinite(self.G))):
            raise InvalidDimensionsError("channel entries must be finite")

    @property
    def dims(self) -> tuple[int, int, int]:
        """The `(M, K, N)` sizes implied by the matrices."""
        n, k = self.H.shape
        m = self.G.shape[0]

        return m, k, n

    def check_dims(self, dims: SystemDims) -> None:
        """Raises if the matrices do not match the given dimensions.

        Args:
            dims (SystemDims): Expected dimensions.

        Raises:
            InvalidDimensionsError: If the shapes are not N×K and M×N.
        """
        if self.dims != (dims.M, dims.K, dims.N):
            raise InvalidDimensionsError(
                f"channels have (M, K, N) = {self.dims}, "
                f"expected {(dims.M, dims.K, dims.N)}"
            )


def complex_gaussian(
    shape: tuple[int, ...],
    rng: np.random.Generator,
) -> np.ndarray:
    """Draws i.i.d. circularly-symmetric complex Gaussian entries with unit variance.

    Real and imaginary parts are independent with variance 1/2 each.

    Args:
        shape (tuple[int, ...]): Shape of the output.
        rng (np.random.Generator): Source of randomness.

    Returns:
        A complex array with the given shape.

    Examples:
        >>> complex_gaussian((2, 3), np.random.default_rng(0)).shape
        (2, 3)
    """  # noqa: E501
    real = rng.standard_normal(shape)
    imag = rng.standard_normal(shape)

    return (real + 1j * imag) / np.sqrt(2)


def generate_channels(
    dims: SystemDims,
    rng_seed: int,
) -> ChannelPair:
    """Draws a ground-truth channel pair.

    Args:
        dims (SystemDims): Sizes of the system.
        rng_seed (int): Seed of the random generator.

    Returns:
        A ChannelPair with `H` of shape N×K and `G` of shape M×N.

    Examples:
        >>> channels = generate_channels(SystemDims(M=2, K=3, N=4, L=1), rng_seed=7)
        >>> channels.H.shape, channels.G.shape
        ((4, 3), (2, 4))
    """  # noqa: E501
    rng = np.random.default_rng(rng_seed)

    H = complex_gaussian((dims.N, dims.K), rng)
    G = complex_gaussian((dims.M, dims.N), rng)

    return ChannelPair(H=H, G=G)
