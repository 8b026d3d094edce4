"""Noisy observations `Y = ΦS + W` and the SNR convention.

Training is taken as already removed, i.e. the unitary pilot matrix is the
identity. Right-multiplying by a unitary matrix keeps the noise white with
the same variance, so nothing downstream depends on it.
"""

import math

import numpy as np

from .dims import ChannelPair, SystemDims, complex_gaussian
from .khatri_rao import build_signal_matrix
from .phase import PhaseMatrixKind, RisPhaseMatrix


class InvalidNoisePrecisionError(ValueError):
    """Raised when the noise precision is not positive."""


def simulate_observations(
    channels: ChannelPair,
    phase: RisPhaseMatrix,
    beta: float,
    rng_seed: int,
) -> np.ndarray:
    """Simulates the received L×J matrix.

    Args:
        channels (ChannelPair): Ground-truth channels.
        phase (RisPhaseMatrix): RIS phase matrix.
        beta (float): Noise precision. `math.inf` means noiseless.
        rng_seed (int): Seed of the noise generator.

    Returns:
        Complex L×J matrix `Y = ΦS + W`, where `W` has i.i.d. entries with
        variance `1/beta`.

    Raises:
        InvalidNoisePrecisionError: If `beta <= 0` or is NaN.
    """
    if not beta > 0:
        raise InvalidNoisePrecisionError(f"beta must be positive, got {beta}")

    y = phase.phi @ build_signal_matrix(channels)

    if math.isinf(beta):
        return y

    rng = np.random.default_rng(rng_seed)
    noise = complex_gaussian(y.shape, rng) / math.sqrt(beta)

    return y + noise


def expected_phase_energy(
    kind: PhaseMatrixKind | str,
    dims: SystemDims,
) -> float:
    """Expected squared Frobenius norm of a phase matrix of the given kind.

    Args:
        kind (PhaseMatrixKind | str): Kind of phase matrix.
        dims (SystemDims): Sizes of the system.

    Returns:
        `L·N` for unit-modulus (partial DFT) matrices, `L·N/2` for binary ones.

    Examples:
        >>> expected_phase_energy("binary_random", SystemDims(M=1, K=1, N=8, L=4))
        16.0
    """  # noqa: E501
    energy = float(dims.L * dims.N)

    if PhaseMatrixKind(kind) is PhaseMatrixKind.BINARY_RANDOM:
        return energy / 2

    return energy


def snr_to_noise_variance(
    phase: RisPhaseMatrix | PhaseMatrixKind | str,
    snr_db: float,
    dims: SystemDims,
) -> float:
    """Converts an SNR in dB into the noise variance `β⁻¹`.

    The SNR is `N·E{‖Φ‖_F²} / (L·β⁻¹)`.

    Args:
        phase (RisPhaseMatrix | PhaseMatrixKind | str): Phase matrix, or only its kind.
        snr_db (float): SNR in dB. `math.inf` gives a zero variance.
        dims (SystemDims): Sizes of the system.

    Returns:
        The noise variance.

    Examples:
        >>> dims = SystemDims(M=64, K=64, N=64, L=64)
        >>> snr_to_noise_variance("partial_dft", 20.0, dims)
        40.96
        >>> snr_to_noise_variance("partial_dft", 0.0, dims)
        4096.0
    """  # noqa: E501
    kind = phase.kind if isinstance(phase, RisPhaseMatrix) else phase

    if math.isinf(snr_db) and snr_db > 0:
        return 0.0

    energy = expected_phase_energy(kind, dims)

    return dims.N * energy / (dims.L * 10 ** (snr_db / 10))


def noise_precision_from_snr(
    phase: RisPhaseMatrix | PhaseMatrixKind | str,
    snr_db: float,
    dims: SystemDims,
) -> float:
    """Noise precision `β` for the given SNR, `math.inf` when the variance is 0.

    Examples:
        >>> noise_precision_from_snr("partial_dft", math.inf, SystemDims(1, 1, 1, 1))
        inf
    """  # noqa: E501
    variance = snr_to_noise_variance(phase, snr_db, dims)

    if variance == 0:
        return math.inf

    return 1 / variance
