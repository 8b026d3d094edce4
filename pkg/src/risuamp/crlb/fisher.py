"""Fisher information of the cascaded channel.

The observations are rewritten as `Ỹ = (Hᵀ ⊙ G)Φᵀ + W̃` (J×L), and the
unknowns are stacked as `θ = [h_1ᵀ, ..., h_Nᵀ, g_1ᵀ, ..., g_Nᵀ]ᵀ`, so the
h entry `(k, n)` sits at index `n·K + k` and the g entry `(m, n)` at
`N·K + n·M + m`.

Derivatives are Wirtinger derivatives `∂f/∂θ` with `θ*` held constant.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from risuamp.model import (
    ChannelPair,
    RisPhaseMatrix,
    build_signal_matrix,
    complex_gaussian,
)


def _phi(phase: RisPhaseMatrix | np.ndarray) -> np.ndarray:
    return phase.phi if isinstance(phase, RisPhaseMatrix) else np.asarray(phase)


@dataclass(frozen=True)
class FimBlocks:
    """Blocks of the Fisher information matrix `P`.

    Attributes:
        P_HH (np.ndarray): KN×KN block of the h parameters.
        P_GG (np.ndarray): MN×MN block of the g parameters.
        P_HG (np.ndarray): KN×MN cross block.
        noise_variance (float): Noise variance `σ²` the matrix was computed for.
        K (int): Number of users.
        M (int): Number of BS antennas.
        N (int): Number of RIS units.
    """

    P_HH: np.ndarray
    P_GG: np.ndarray
    P_HG: np.ndarray
    noise_variance: float
    K: int
    M: int
    N: int

    @cached_property
    def full(self) -> np.ndarray:
        """The assembled `N(K+M)`-square matrix `[[P_HH, P_HG], [P_HGᴴ, P_GG]]`."""
        return np.block(
            [
                [self.P_HH, self.P_HG],
                [self.P_HG.conj().T, self.P_GG],
            ]
        )

    def h_index(self, k: int, n: int) -> int:
        """Position of `h_{k,n}` in `θ`."""
        return n * self.K + k

    def g_index(self, m: int, n: int) -> int:
        """Position of `g_{m,n}` in `θ`."""
        return self.N * self.K + n * self.M + m


def observation_residual(
    channels: ChannelPair,
    phase: RisPhaseMatrix | np.ndarray,
    Y_tilde: np.ndarray,
) -> np.ndarray:
    """Residual `Ỹ − (Hᵀ ⊙ G)Φᵀ`, J×L."""
    phi = _phi(phase)

    return Y_tilde - build_signal_matrix(channels).T @ phi.T


def log_likelihood(
    channels: ChannelPair,
    phase: RisPhaseMatrix | np.ndarray,
    noise_variance: float,
    Y_tilde: np.ndarray,
) -> float:
    """Log-likelihood `−KML·ln(πσ²) − σ⁻²‖Ỹ − (Hᵀ ⊙ G)Φᵀ‖_F²`.

    Args:
        channels (ChannelPair): Point at which the likelihood is evaluated.
        phase (RisPhaseMatrix | np.ndarray): Phase matrix `Φ`, L×N.
        noise_variance (float): Noise variance `σ²`.
        Y_tilde (np.ndarray): Observations `Ỹ = Yᵀ`, J×L.

    Returns:
        The log-likelihood.

    Examples:
        >>> channels = ChannelPair(H=np.ones((1, 1)), G=np.ones((1, 1)))
        >>> round(log_likelihood(channels, np.ones((1, 1)), 1.0, np.ones((1, 1))), 6)
        -1.14473
    """
    residual = observation_residual(channels, phase, Y_tilde)

    return float(
        -Y_tilde.size * np.log(np.pi * noise_variance)
        - np.sum(np.abs(residual) ** 2) / noise_variance
    )


def score_gradients(
    channels: ChannelPair,
    phase: RisPhaseMatrix | np.ndarray,
    noise_variance: float,
    Y_tilde: np.ndarray,
) -> np.ndarray:
    """Gradient of the log-likelihood with respect to `θ`.

    `∂f/∂h_{k,n} = σ⁻² Σ_l φ_{l,n} Σ_m g_{m,n} e*_{l,k,m}` and
    `∂f/∂g_{m,n} = σ⁻² Σ_l φ_{l,n} Σ_k h_{k,n} e*_{l,k,m}`, where `e` is the
    residual of [`observation_residual`][risuamp.crlb.fisher.observation_residual].

    Args:
        channels (ChannelPair): Point at which the gradient is evaluated.
        phase (RisPhaseMatrix | np.ndarray): Phase matrix `Φ`, L×N.
        noise_variance (float): Noise variance `σ²`.
        Y_tilde (np.ndarray): Observations `Ỹ = Yᵀ`, J×L.

    Returns:
        Complex vector of length `N(K+M)` in the `θ` ordering.

    Examples:
        >>> channels = ChannelPair(H=np.ones((1, 1)), G=np.ones((1, 1)))
        >>> score_gradients(channels, np.ones((1, 1)), 1.0, np.full((1, 1), 2.0)).real.tolist()
        [1.0, 1.0]
    """  # noqa: E501
    phi = _phi(phase)
    H, G = channels.H, channels.G
    M, K = G.shape[0], H.shape[1]
    L = phi.shape[0]

    residual = observation_residual(channels, phi, Y_tilde).reshape(K, M, L).conj()

    d_h = np.einsum("ln,mn,kml->nk", phi, G, residual) / noise_variance
    d_g = np.einsum("ln,nk,kml->nm", phi, H, residual) / noise_variance

    return np.concatenate([d_h.ravel(), d_g.ravel()])


def build_fim(
    channels: ChannelPair,
    phase: RisPhaseMatrix | np.ndarray,
    noise_variance: float,
) -> FimBlocks:
    """Closed-form Fisher information `P = E{(∂f/∂θ)(∂f/∂θ)ᴴ}`.

    With `C = ΦᵀΦ*`, the noise second moments give
    `P_HH = σ⁻² (C ∘ GᵀG*) ⊗ I_K`, `P_GG = σ⁻² (C ∘ HHᴴ) ⊗ I_M` and
    `P_HG[(n,k), (n',m)] = σ⁻² C[n,n'] g_{m,n} h*_{k,n'}`.

    Args:
        channels (ChannelPair): True channels.
        phase (RisPhaseMatrix | np.ndarray): Phase matrix `Φ`, L×N.
        noise_variance (float): Noise variance `σ²`, positive.

    Returns:
        The blocks of `P`.

    Examples:
        >>> channels = ChannelPair(H=np.ones((1, 1)), G=np.ones((1, 1)))
        >>> build_fim(channels, np.ones((1, 1)), 1.0).full.real.tolist()
        [[1.0, 1.0], [1.0, 1.0]]
    """
    if not noise_variance > 0:
        raise ValueError(f"noise variance must be positive, got {noise_variance}")

    phi = _phi(phase)
    H, G = channels.H, channels.G
    M, K, N = G.shape[0], H.shape[1], H.shape[0]

    C = phi.T @ phi.conj()

    P_HH = np.kron(C * (G.T @ G.conj()), np.eye(K)) / noise_variance
    P_GG = np.kron(C * (H @ H.conj().T), np.eye(M)) / noise_variance
    P_HG = (
        np.einsum("ab,ma,bk->akbm", C, G, H.conj()).reshape(N * K, N * M)
        / noise_variance
    )

    return FimBlocks(
        P_HH=P_HH,
        P_GG=P_GG,
        P_HG=P_HG,
        noise_variance=noise_variance,
        K=K,
        M=M,
        N=N,
    )


def monte_carlo_fim(
    channels: ChannelPair,
    phase: RisPhaseMatrix | np.ndarray,
    noise_variance: float,
    n_draws: int,
    rng_seed: int,
) -> np.ndarray:
    """Estimates `P` by averaging score outer products over simulated noise.

    Args:
        channels (ChannelPair): True channels.
        phase (RisPhaseMatrix | np.ndarray): Phase matrix `Φ`, L×N.
        noise_variance (float): Noise variance `σ²`.
        n_draws (int): Number of noise realizations.
        rng_seed (int): Seed of the noise generator.

    Returns:
        The `N(K+M)`-square sample average.
    """
    phi = _phi(phase)
    rng = np.random.default_rng(rng_seed)
    clean = build_signal_matrix(channels).T @ phi.T

    n, k = channels.H.shape
    size = n * (k + channels.G.shape[0])

    total = np.zeros((size, size), dtype=np.complex128)
    for _ in range(n_draws):
        noise = complex_gaussian(clean.shape, rng) * np.sqrt(noise_variance)
        score = score_gradients(channels, phi, noise_variance, clean + noise)
        total += np.outer(score, score.conj())

    return total / n_draws
