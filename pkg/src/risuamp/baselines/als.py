"""Alternating least squares on the trilinear model.

Reshaping `Ỹ = Yᵀ` into a K×M×L tensor gives
`T[k, m, l] = Σ_n H[n, k]·G[m, n]·Φ[l, n]`, a rank-N CP model with a known
third factor. Each sweep solves for `H` with `G` fixed and then for `G`
with `H` fixed. The normal equations use the Khatri-Rao identity
`(A ⊙ B)ᴴ(A ⊙ B) = AᴴA ∘ BᴴB`, so `Hᵀ ⊗ G` is never formed.
"""

import logging
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from risuamp.estimation import ChannelEstimate, relative_change
from risuamp.model import RisPhaseMatrix, SystemDims, complex_gaussian

from .config import BaselineConfig


logger = logging.getLogger(__name__)

# fallback ridge, relative to the mean diagonal of the normal equations
FALLBACK_RIDGE = 1e-10
# largest noise precision reported
BETA_CAP = 1e12


def ridge_solve(
    gram: np.ndarray,
    rhs: np.ndarray,
    ridge: float,
) -> tuple[np.ndarray, bool]:
    """Solves `(gram + ridge·I) x = rhs` for a Hermitian positive semidefinite `gram`.

    When the system is singular or ill-conditioned, a small ridge relative
    to the mean diagonal of `gram` is added and the solve is retried.

    Args:
        gram (np.ndarray): Hermitian matrix.
        rhs (np.ndarray): Right-hand side.
        ridge (float): Tikhonov regularizer.

    Returns:
        The solution and whether the fallback ridge was used.

    Examples:
        >>> x, fallback = ridge_solve(np.diag([2.0, 4.0]), np.array([2.0, 2.0]), 0.0)
        >>> bool(np.allclose(x, [1.0, 0.5])), fallback
        (True, False)
    """  # noqa: E501
    size = gram.shape[0]
    regularized = gram + ridge * np.eye(size)

    try:
        with warnings.catch_warnings():
            warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
            return scipy.linalg.solve(regularized, rhs, assume_a="pos"), False
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgWarning):
        scale = max(float(np.trace(gram).real) / size, np.finfo(float).tiny)
        fallback = regularized + FALLBACK_RIDGE * scale * np.eye(size)

        return scipy.linalg.solve(fallback, rhs, assume_a="her"), True


def trilinear_model(
    H: np.ndarray,
    G: np.ndarray,
    phi: np.ndarray,
) -> np.ndarray:
    """Noiseless K×M×L tensor `Σ_n H[n, k]·G[m, n]·Φ[l, n]`."""
    return np.einsum("nk,mn,ln->kml", H, G, phi)


def als_objective(
    tensor: np.ndarray,
    H: np.ndarray,
    G: np.ndarray,
    phi: np.ndarray,
) -> float:
    """Squared Frobenius residual `‖Ỹ − (Hᵀ ⊙ G)Φᵀ‖_F²`."""
    return float(np.sum(np.abs(tensor - trilinear_model(H, G, phi)) ** 2))


def solve_h(
    tensor: np.ndarray,
    G: np.ndarray,
    phi: np.ndarray,
    ridge: float,
) -> tuple[np.ndarray, bool]:
    """Least squares update of the N×K matrix `H` with `G` fixed."""
    gram = (G.conj().T @ G) * (phi.conj().T @ phi)
    rhs = np.einsum("mn,ln,kml->nk", G.conj(), phi.conj(), tensor)

    return ridge_solve(gram, rhs, ridge)


def solve_g(
    tensor: np.ndarray,
    H: np.ndarray,
    phi: np.ndarray,
    ridge: float,
) -> tuple[np.ndarray, bool]:
    """Least squares update of the M×N matrix `G` with `H` fixed."""
    gram = (H.conj() @ H.T) * (phi.conj().T @ phi)
    rhs = np.einsum("nk,ln,kml->nm", H.conj(), phi.conj(), tensor)

    G_t, fallback = ridge_solve(gram, rhs, ridge)

    return G_t.T, fallback


def als_estimator(
    Y: np.ndarray,
    phase: RisPhaseMatrix,
    dims: SystemDims,
    cfg: BaselineConfig,
    rng_seed: int,
) -> ChannelEstimate:
    """Estimates `H` and `G` by alternating least squares.

    `G` starts from i.i.d. unit-variance complex Gaussian draws. A sweep
    updates `H`, then `G`. Sweeps stop when the relative change of both
    estimates falls below `cfg.tolerance`, or after `cfg.max_iterations`.

    Args:
        Y (np.ndarray): Observations, L×J.
        phase (RisPhaseMatrix): RIS phase matrix.
        dims (SystemDims): Sizes of the system.
        cfg (BaselineConfig): Baseline settings.
        rng_seed (int): Seed of the `G` initialization.

    Returns:
        The estimate. `objective_history` holds the residual after every sweep.
    """
    phi = phase.phi
    tensor = Y.T.reshape(dims.K, dims.M, dims.L)

    G = complex_gaussian((dims.M, dims.N), np.random.default_rng(rng_seed))
    H = np.zeros((dims.N, dims.K), dtype=np.complex128)

    objectives: list[float] = []
    used_fallback = False
    converged = False
    sweeps = 0

    for sweeps in range(1, cfg.max_iterations + 1):
        previous_H, previous_G = H, G

        H, fallback_h = solve_h(tensor, G, phi, cfg.ridge)
        G, fallback_g = solve_g(tensor, H, phi, cfg.ridge)

        if fallback_h or fallback_g:
            used_fallback = True
            logger.warning("sweep %d: singular normal equations, ridge added", sweeps)

        objective = als_objective(tensor, H, G, phi)

        increased = bool(objectives) and objective > objectives[-1] * (1 + 1e-9)

        if cfg.ridge == 0 and increased:
            logger.warning(
                "sweep %d: objective increased from %.6e to %.6e",
                sweeps,
                objectives[-1],
                objective,
            )

        objectives.append(objective)

        change = max(relative_change(H, previous_H), relative_change(G, previous_G))
        logger.debug("sweep %d: objective %.6e, change %.3e", sweeps, objective, change)

        if sweeps > 1 and change < cfg.tolerance:
            converged = True
            break

    residual = objectives[-1]
    if residual * BETA_CAP <= tensor.size:
        beta_hat = BETA_CAP
    else:
        beta_hat = tensor.size / residual

    return ChannelEstimate(
        H=H,
        G=G,
        beta_hat=float(beta_hat),
        iterations=sweeps,
        converged=converged,
        objective_history=tuple(objectives),
        diagnostics=("ridge_fallback",) if used_fallback else (),
    )


@dataclass(frozen=True)
class AlsEstimator:
    """Adapter of [`als_estimator`][risuamp.baselines.als.als_estimator] to the `ChannelEstimator` protocol."""  # noqa: E501

    cfg: BaselineConfig = BaselineConfig()

    def __call__(
        self,
        Y: np.ndarray,
        phase: RisPhaseMatrix,
        dims: SystemDims,
        rng_seed: int,
    ) -> ChannelEstimate:
        """Runs ALS on the observations `Y`."""
        return als_estimator(Y, phase, dims, self.cfg, rng_seed)
