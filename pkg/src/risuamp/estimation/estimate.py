"""Outputs shared by every channel estimator."""

from dataclasses import dataclass, field

import numpy as np

from risuamp.model import ChannelPair


@dataclass(frozen=True)
class ChannelEstimate:
    """Result of a channel estimator.

    Attributes:
        H (np.ndarray): Estimated N×K channel.
        G (np.ndarray): Estimated M×N channel.
        beta_hat (float): Estimated noise precision.
        iterations (int): Number of iterations executed.
        converged (bool): Whether the stopping rule was met before the iteration cap.
        oracle_iteration (int | None): First iteration at which both channels were within the tolerance NMSE of the truth, after removing the scaling ambiguity. Only set when the truth was supplied.
        objective_history (tuple[float, ...]): One value per iteration. The noise variance estimate for UAMP, the LS objective for ALS.
        diagnostics (tuple[str, ...]): Tags of numerical safeguards that were triggered.
    """  # noqa: E501

    H: np.ndarray
    G: np.ndarray
    beta_hat: float
    iterations: int
    converged: bool
    oracle_iteration: int | None = None
    objective_history: tuple[float, ...] = field(default=())
    diagnostics: tuple[str, ...] = field(default=())

    @property
    def channels(self) -> ChannelPair:
        """The estimate as a ChannelPair."""
        return ChannelPair(H=self.H, G=self.G)


@dataclass(frozen=True)
class IterationTrace:
    """Snapshot handed to the per-iteration callback of an estimator.

    Attributes:
        iteration (int): One-based iteration index.
        H (np.ndarray): Current N×K estimate.
        G (np.ndarray): Current M×N estimate.
        beta_hat (float): Current noise precision estimate.
    """

    iteration: int
    H: np.ndarray
    G: np.ndarray
    beta_hat: float
