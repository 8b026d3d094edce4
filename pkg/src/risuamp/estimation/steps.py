"""The individual message updates of one UAMP iteration.

Every update takes the current [`EstimatorState`][risuamp.estimation.state.EstimatorState]
and returns a new one. Variances leaving an update are floored at
`cfg.variance_floor`.
"""  # noqa: E501

from dataclasses import replace

import numpy as np

from risuamp.model import TransformedModel

from .config import EstimatorConfig
from .gaussian import apply_prior, gaussian_extrinsic, gaussian_product, product_message
from .state import EstimatorState


def noise_precision(
    R: np.ndarray,
    z_hat: np.ndarray,
    nu_z: np.ndarray,
    *,
    beta_cap: float,
) -> float:
    """Posterior mean of the noise precision, `L·J / Σ_j (‖r_j − ẑ_j‖² + 1ᵀν_{z_j})`.

    Args:
        R (np.ndarray): Transformed observations.
        z_hat (np.ndarray): Means of `z = Ψs`, same shape as `R`.
        nu_z (np.ndarray): Variances of `z`, broadcastable to `R`.
        beta_cap (float): Value returned when the estimate would exceed it.

    Returns:
        The noise precision estimate, in `(0, beta_cap]`.

    Examples:
        >>> noise_precision(np.array([[1.0]]), np.array([[0.0]]), np.array([[1.0]]), beta_cap=1e12)
        0.5
        >>> noise_precision(np.array([[1.0]]), np.array([[1.0]]), np.array([[0.0]]), beta_cap=1e12)
        1000000000000.0
    """  # noqa: E501
    residual = np.sum(np.abs(R - z_hat) ** 2) + np.sum(np.broadcast_to(nu_z, R.shape))

    if residual * beta_cap <= R.size:
        return beta_cap

    return float(R.size / residual)


def update_noise_precision(
    state: EstimatorState,
    R: np.ndarray,
    cfg: EstimatorConfig,
) -> float:
    """Updates `β̂` from the `z` beliefs of the previous iteration.

    Args:
        state (EstimatorState): Current state.
        R (np.ndarray): Transformed observations.
        cfg (EstimatorConfig): Estimator settings.

    Returns:
        The new noise precision estimate.
    """
    return noise_precision(R, state.z_hat, state.nu_z, beta_cap=cfg.beta_cap)


def uamp_forward_step(
    state: EstimatorState,
    model: TransformedModel,
    cfg: EstimatorConfig,
) -> EstimatorState:
    """Runs the UAMP updates of `p`, `μ` and `q` for every column `j`.

    Args:
        state (EstimatorState): Current state.
        model (TransformedModel): Transformed observation model.
        cfg (EstimatorConfig): Estimator settings.

    Returns:
        State with `p`, `ν_p`, `μ`, `ν_μ`, `q`, `ν_q` updated.
    """
    floor = cfg.variance_floor
    Psi, R = model.Psi, model.R

    nu_p = model.psi[:, None] * state.nu_s[None, :]
    p = Psi @ state.s_hat - nu_p * state.mu
    nu_mu = 1 / (nu_p + 1 / state.beta_hat)
    mu = nu_mu * (R - p)

    # |Ψᴴ|² ν_μ can be 0 for a column of Ψ that is all zeros
    q_precision = (np.abs(Psi.conj().T) ** 2) @ nu_mu
    nu_q = 1 / np.maximum(q_precision, floor)
    q = state.s_hat + nu_q * (Psi.conj().T @ mu)

    return replace(
        state,
        p=p,
        nu_p=np.maximum(nu_p, floor),
        mu=mu,
        nu_mu=np.maximum(nu_mu, floor),
        q=q,
        nu_q=np.maximum(nu_q, floor),
    )


def unpack_to_columns(
    state: EstimatorState,
    cfg: EstimatorConfig,
) -> EstimatorState:
    """Transposes `Q` into `Q̃` and splits each column `q̃_n` into K blocks of length M.

    The per-block variance `ν_{q̃_{k,n}}` is the mean of the block.

    Args:
        state (EstimatorState): Current state.
        cfg (EstimatorConfig): Estimator settings.

    Returns:
        State with `q_t` and `nu_qt` updated.
    """  # noqa: E501
    dims = state.dims
    K, M, N = dims.K, dims.M, dims.N

    q_t = state.q.T.reshape(K, M, N)
    nu_qt = state.nu_q.T.reshape(K, M, N).mean(axis=1)

    return replace(
        state,
        q_t=q_t,
        nu_qt=np.maximum(nu_qt, cfg.variance_floor),
    )


def update_g_beliefs(
    state: EstimatorState,
    cfg: EstimatorConfig,
) -> EstimatorState:
    """Computes the forward messages to every `g_{m,n}` and its belief.

    Each of the K branches of `g_{m,n}` divides `q̃_{m,k,n}` by the current
    `h_{k,n}` belief. The branches are multiplied together and combined
    with the prior `ρ_g`.

    Args:
        state (EstimatorState): Current state.
        cfg (EstimatorConfig): Estimator settings.

    Returns:
        State with the forward g messages and the g beliefs updated.
    """
    floor = cfg.variance_floor

    energy = np.maximum(np.abs(state.h_hat) ** 2 + state.nu_h, floor)[:, None, :]
    fwd_nu_g = np.maximum(state.nu_qt[:, None, :] / energy, floor)
    fwd_nu_g = np.broadcast_to(fwd_nu_g, state.q_t.shape).copy()
    fwd_g = state.q_t * state.h_hat.conj()[:, None, :] / energy

    comb_g, comb_nu_g = gaussian_product(fwd_g, fwd_nu_g, axis=0)
    g_hat, nu_g = apply_prior(comb_g, comb_nu_g, cfg.rho_g)

    return replace(
        state,
        fwd_g=fwd_g,
        fwd_nu_g=fwd_nu_g,
        comb_g=comb_g,
        comb_nu_g=np.maximum(comb_nu_g, floor),
        g_hat=g_hat,
        nu_g=np.maximum(nu_g, floor),
    )


def update_h_beliefs(
    state: EstimatorState,
    cfg: EstimatorConfig,
) -> EstimatorState:
    """Mirror of [`update_g_beliefs`][risuamp.estimation.steps.update_g_beliefs] for `h_{k,n}`.

    Uses the g beliefs of the current iteration and combines the M
    branches of every `h_{k,n}`.

    Args:
        state (EstimatorState): Current state.
        cfg (EstimatorConfig): Estimator settings.

    Returns:
        State with the forward h messages and the h beliefs updated.
    """  # noqa: E501
    floor = cfg.variance_floor

    energy = np.maximum(np.abs(state.g_hat) ** 2 + state.nu_g, floor)[None, :, :]
    fwd_nu_h = np.maximum(state.nu_qt[:, None, :] / energy, floor)
    fwd_h = state.q_t * state.g_hat.conj()[None, :, :] / energy

    comb_h, comb_nu_h = gaussian_product(fwd_h, fwd_nu_h, axis=1)
    h_hat, nu_h = apply_prior(comb_h, comb_nu_h, cfg.rho_h)

    return replace(
        state,
        fwd_h=fwd_h,
        fwd_nu_h=fwd_nu_h,
        comb_h=comb_h,
        comb_nu_h=np.maximum(comb_nu_h, floor),
        h_hat=h_hat,
        nu_h=np.maximum(nu_h, floor),
    )


def backward_channel_messages(
    state: EstimatorState,
    cfg: EstimatorConfig,
) -> EstimatorState:
    """Computes the extrinsic messages from every `h_{k,n}` and `g_{m,n}` back to branch `(m, k, n)`.

    The message to a branch is the belief divided by the forward message
    that branch sent. Non-positive precisions are replaced by
    `(belief mean, cfg.extrinsic_variance_cap)`.

    Args:
        state (EstimatorState): Current state.
        cfg (EstimatorConfig): Estimator settings.

    Returns:
        State with the backward h and g messages updated.
    """  # noqa: E501
    floor = cfg.variance_floor
    cap = cfg.extrinsic_variance_cap

    bwd_h, bwd_nu_h = gaussian_extrinsic(
        state.h_hat[:, None, :],
        state.nu_h[:, None, :],
        state.fwd_h,
        state.fwd_nu_h,
        variance_cap=cap,
    )
    bwd_g, bwd_nu_g = gaussian_extrinsic(
        state.g_hat[None, :, :],
        state.nu_g[None, :, :],
        state.fwd_g,
        state.fwd_nu_g,
        variance_cap=cap,
    )

    clamped = int(np.count_nonzero(bwd_nu_h >= cap) + np.count_nonzero(bwd_nu_g >= cap))

    return replace(
        state,
        bwd_h=bwd_h,
        bwd_nu_h=np.maximum(bwd_nu_h, floor),
        bwd_g=bwd_g,
        bwd_nu_g=np.maximum(bwd_nu_g, floor),
        clamped_extrinsic=state.clamped_extrinsic + clamped,
    )


def backward_s_combine(
    state: EstimatorState,
    cfg: EstimatorConfig,
) -> EstimatorState:
    """Combines the backward channel messages into the posterior of `s̃_n` and refreshes `ŝ_j`, `ν_{s_j}`.

    Args:
        state (EstimatorState): Current state.
        cfg (EstimatorConfig): Estimator settings.

    Returns:
        State with `bwd_s`, `s_t_hat`, `s_hat` and `nu_s` updated.
    """  # noqa: E501
    floor = cfg.variance_floor
    dims = state.dims
    J, N = dims.J, dims.N

    bwd_s, bwd_nu_s = product_message(
        state.bwd_h, state.bwd_nu_h, state.bwd_g, state.bwd_nu_g
    )
    bwd_nu_s = np.maximum(bwd_nu_s, floor)
    nu_qt = state.nu_qt[:, None, :]

    nu_s_t = 1 / (1 / nu_qt + 1 / bwd_nu_s)
    s_t_hat = nu_s_t * (state.q_t / nu_qt + bwd_s / bwd_nu_s)

    s_hat = s_t_hat.reshape(J, N).T
    nu_s = np.maximum(nu_s_t.reshape(J, N).mean(axis=1), floor)

    if cfg.damping < 1:
        d = cfg.damping
        s_hat = d * s_hat + (1 - d) * state.s_hat
        nu_s = d * nu_s + (1 - d) * state.nu_s

    return replace(
        state,
        bwd_s=bwd_s,
        bwd_nu_s=bwd_nu_s,
        s_t_hat=s_t_hat,
        nu_s_t=np.maximum(nu_s_t, floor),
        s_hat=s_hat,
        nu_s=nu_s,
    )


def update_z_beliefs(
    state: EstimatorState,
    model: TransformedModel,
    cfg: EstimatorConfig,
) -> EstimatorState:
    """Computes the beliefs of `z_j = Ψs_j` used by the next noise precision update.

    Args:
        state (EstimatorState): Current state.
        model (TransformedModel): Transformed observation model.
        cfg (EstimatorConfig): Estimator settings.

    Returns:
        State with `z_hat` and `nu_z` updated.
    """  # noqa: E501
    nu_p = np.maximum(state.nu_p, cfg.variance_floor)

    nu_z = 1 / (1 / nu_p + state.beta_hat)
    z_hat = nu_z * (state.p / nu_p + state.beta_hat * model.R)

    return replace(
        state,
        z_hat=z_hat,
        nu_z=np.maximum(nu_z, cfg.variance_floor),
    )
