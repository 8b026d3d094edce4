"""UAMP-based estimation of the cascaded channel.

Each iteration runs, in order: the noise precision update, the UAMP
forward step over the columns of `S`, the split of `Q̃` into per-user
blocks, the g and h beliefs, the backward channel messages, the posterior
of every `s̃_n`, and the `z` beliefs.
"""

import logging
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from risuamp.model import (
    AmbiguityFreeError,
    ChannelPair,
    RisPhaseMatrix,
    SystemDims,
    TransformedModel,
    unitary_transform,
)

from .config import EstimatorConfig
from .estimate import ChannelEstimate, IterationTrace
from .state import EstimatorState, initialize_state
from .steps import (
    backward_channel_messages,
    backward_s_combine,
    uamp_forward_step,
    unpack_to_columns,
    update_g_beliefs,
    update_h_beliefs,
    update_noise_precision,
    update_z_beliefs,
)


logger = logging.getLogger(__name__)


class EstimatorDivergedError(RuntimeError):
    """Raised when an estimator produces non-finite values."""

    def __init__(self, iteration: int, quantity: str) -> None:
        """Creates the error.

        Args:
            iteration (int): One-based iteration at which the values appeared.
            quantity (str): Name of the offending quantity.
        """
        self.iteration = iteration
        self.quantity = quantity

        super().__init__(f"non-finite {quantity} at iteration {iteration}")


def relative_change(
    current: np.ndarray,
    previous: np.ndarray,
) -> float:
    """Relative Frobenius change `‖current − previous‖ / ‖previous‖`.

    Examples:
        >>> relative_change(np.array([1.0, 1.0]), np.array([1.0, 0.0]))
        1.0
        >>> relative_change(np.array([1.0]), np.array([0.0]))
        inf
    """
    previous_norm = np.linalg.norm(previous)

    if previous_norm == 0:
        return 0.0 if np.array_equal(current, previous) else float("inf")

    return float(np.linalg.norm(current - previous) / previous_norm)


def _check_finite(state: EstimatorState) -> None:
    checks = {
        "beta_hat": np.asarray(state.beta_hat),
        "h_hat": state.h_hat,
        "g_hat": state.g_hat,
        "s_hat": state.s_hat,
        "nu_s": state.nu_s,
    }

    for quantity, values in checks.items():
        if not np.all(np.isfinite(values)):
            raise EstimatorDivergedError(state.iteration, quantity)


def _meets_truth(
    truth: ChannelPair | None,
    H: np.ndarray,
    G: np.ndarray,
    tolerance: float,
) -> bool:
    if truth is None or not (np.any(truth.H) and np.any(truth.G)):
        return False

    error = AmbiguityFreeError(truth=truth, estimate=ChannelPair(H=H, G=G))

    return error.nmse_h < tolerance and error.nmse_g < tolerance


def run_iteration(
    state: EstimatorState,
    model: TransformedModel,
    cfg: EstimatorConfig,
) -> EstimatorState:
    """Runs one full iteration of the message passing schedule.

    The noise precision is left untouched on the first iteration, since
    the `z` beliefs it needs are not available yet.

    Args:
        state (EstimatorState): State after the previous iteration.
        model (TransformedModel): Transformed observation model.
        cfg (EstimatorConfig): Estimator settings.

    Returns:
        State after this iteration.
    """
    iteration = state.iteration + 1

    if iteration > 1:
        state = replace(state, beta_hat=update_noise_precision(state, model.R, cfg))

    state = uamp_forward_step(state, model, cfg)
    state = unpack_to_columns(state, cfg)
    state = update_g_beliefs(state, cfg)
    state = update_h_beliefs(state, cfg)
    state = backward_channel_messages(state, cfg)
    state = backward_s_combine(state, cfg)
    state = update_z_beliefs(state, model, cfg)

    return replace(state, iteration=iteration)


def run_estimator(
    model: TransformedModel,
    dims: SystemDims,
    cfg: EstimatorConfig,
    rng_seed: int,
    truth: ChannelPair | None = None,
    *,
    initial_h: np.ndarray | None = None,
    on_iteration: Callable[[IterationTrace], None] | None = None,
) -> ChannelEstimate:
    """Estimates `H`, `G` and the noise precision.

    Iterations stop when the relative change of both `Ĥ` and `Ĝ` falls
    below `cfg.tolerance`, or after `cfg.max_iterations`. When `truth` is
    given, the first iteration at which both `Ĥ` and `Ĝ` are within
    `cfg.tolerance` NMSE of the true channels, after removing the scaling
    ambiguity, is reported in `oracle_iteration`. It never changes the
    returned estimate.

    Args:
        model (TransformedModel): Transformed observation model.
        dims (SystemDims): Sizes of the system.
        cfg (EstimatorConfig): Estimator settings.
        rng_seed (int): Seed of the `h` initialization.
        truth (ChannelPair | None): True channels, simulation only.
        initial_h (np.ndarray | None): Optional K×N initial `h` means.
        on_iteration (Callable[[IterationTrace], None] | None): Called after every iteration.

    Returns:
        The channel estimate.

    Raises:
        EstimatorDivergedError: If any estimate becomes non-finite.
    """  # noqa: E501
    if model.R.shape != (model.rows, dims.J) or model.Psi.shape[1] != dims.N:
        raise ValueError(
            f"model with R {model.R.shape} and Ψ {model.Psi.shape} "
            f"does not match {dims}"
        )

    state = initialize_state(model, dims, cfg, rng_seed, initial_h=initial_h)

    previous_H, previous_G = state.H, state.G
    noise_variances: list[float] = []
    oracle_iteration: int | None = None
    converged = False

    for _ in range(cfg.max_iterations):
        state = run_iteration(state, model, cfg)
        _check_finite(state)

        H, G = state.H, state.G
        change_h = relative_change(H, previous_H)
        change_g = relative_change(G, previous_G)
        noise_variances.append(1 / state.beta_hat)

        logger.debug(
            "iteration %d: change H %.3e, change G %.3e, noise variance %.3e",
            state.iteration,
            change_h,
            change_g,
            1 / state.beta_hat,
        )

        if oracle_iteration is None and _meets_truth(truth, H, G, cfg.tolerance):
            oracle_iteration = state.iteration

        if on_iteration is not None:
            on_iteration(
                IterationTrace(
                    iteration=state.iteration,
                    H=H.copy(),
                    G=G.copy(),
                    beta_hat=state.beta_hat,
                )
            )

        if state.iteration > 1 and max(change_h, change_g) < cfg.tolerance:
            converged = True
            break

        previous_H, previous_G = H, G

    diagnostics: tuple[str, ...] = ()
    if state.clamped_extrinsic > 0:
        diagnostics = ("extrinsic_clamped",)

    return ChannelEstimate(
        H=state.H.copy(),
        G=state.G.copy(),
        beta_hat=state.beta_hat,
        iterations=state.iteration,
        converged=converged,
        oracle_iteration=oracle_iteration,
        objective_history=tuple(noise_variances),
        diagnostics=diagnostics,
    )


@dataclass(frozen=True)
class UampEstimator:
    """Runs the unitary transform and [`run_estimator`][risuamp.estimation.uamp.run_estimator] on raw observations.

    Attributes:
        cfg (EstimatorConfig): Estimator settings.
    """  # noqa: E501

    cfg: EstimatorConfig = EstimatorConfig()

    def __call__(
        self,
        Y: np.ndarray,
        phase: RisPhaseMatrix,
        dims: SystemDims,
        rng_seed: int,
        *,
        truth: ChannelPair | None = None,
        on_iteration: Callable[[IterationTrace], None] | None = None,
    ) -> ChannelEstimate:
        """Estimates the channels from the observations `Y`.

        Args:
            Y (np.ndarray): Observations, L×J.
            phase (RisPhaseMatrix): RIS phase matrix.
            dims (SystemDims): Sizes of the system.
            rng_seed (int): Seed of the `h` initialization.
            truth (ChannelPair | None): True channels, simulation only.
            on_iteration (Callable[[IterationTrace], None] | None): Called after every iteration.

        Returns:
            The channel estimate.
        """  # noqa: E501
        model = unitary_transform(phase, Y)

        return run_estimator(
            model,
            dims,
            self.cfg,
            rng_seed,
            truth,
            on_iteration=on_iteration,
        )
