"""Configuration of the UAMP estimator."""

import math
from dataclasses import dataclass
from typing import Literal


# relative change of both channel estimates below which iterations stop
DEFAULT_TOLERANCE = 1e-3
DEFAULT_MAX_ITERATIONS = 30
# smallest variance kept in any message
DEFAULT_VARIANCE_FLOOR = 1e-12
# largest noise precision estimate
DEFAULT_BETA_CAP = 1e12
# variance of an extrinsic message whose precision is not positive
DEFAULT_EXTRINSIC_VARIANCE_CAP = 1e6


class InvalidEstimatorConfigError(ValueError):
    """Raised when an estimator setting is out of its valid range."""


@dataclass(frozen=True)
class EstimatorConfig:
    """Settings of [`run_estimator`][risuamp.estimation.uamp.run_estimator].

    Attributes:
        tolerance (float): Termination threshold on the relative change of `Ĥ` and `Ĝ`.
        max_iterations (int): Iteration cap.
        rho_h (float): Prior variance of `h`. `math.inf` is non-informative.
        rho_g (float): Prior variance of `g`. `math.inf` is non-informative.
        damping (float): Weight of the new `(ŝ, ν_s)` in `(0, 1]`; 1 disables damping.
        variance_floor (float): Smallest variance kept in any message.
        beta_cap (float): Largest noise precision estimate.
        extrinsic_variance_cap (float): Variance used when an extrinsic precision is not positive.
        h_init (Literal["gaussian", "ones"]): Initialization of the `h` means.

    Examples:
        >>> EstimatorConfig().max_iterations
        30
        >>> EstimatorConfig(max_iterations=0)
        Traceback (most recent call last):
        ...
        risuamp.estimation.config.InvalidEstimatorConfigError: max_iterations must be >= 1, got 0
    """  # noqa: E501

    tolerance: float = DEFAULT_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    rho_h: float = math.inf
    rho_g: float = math.inf
    damping: float = 1.0
    variance_floor: float = DEFAULT_VARIANCE_FLOOR
    beta_cap: float = DEFAULT_BETA_CAP
    extrinsic_variance_cap: float = DEFAULT_EXTRINSIC_VARIANCE_CAP
    h_init: Literal["gaussian", "ones"] = "gaussian"

    def __post_init__(self) -> None:
        """Validates every setting."""
        if not self.tolerance > 0:
            raise InvalidEstimatorConfigError(
                f"tolerance must be > 0, got {self.tolerance}"
            )

        if self.max_iterations < 1:
            raise InvalidEstimatorConfigError(
                f"max_iterations must be >= 1, got {self.max_iterations}"
            )

        for name in ("rho_h", "rho_g"):
            if not getattr(self, name) > 0:
                raise InvalidEstimatorConfigError(
                    f"{name} must be > 0 or inf, got {getattr(self, name)}"
                )

        if not 0 < self.damping <= 1:
            raise InvalidEstimatorConfigError(
                f"damping must be in (0, 1], got {self.damping}"
            )

        if not self.variance_floor > 0:
            raise InvalidEstimatorConfigError(
                f"variance_floor must be > 0, got {self.variance_floor}"
            )

        if not self.beta_cap > 0 or math.isinf(self.beta_cap):
            raise InvalidEstimatorConfigError(
                f"beta_cap must be finite and > 0, got {self.beta_cap}"
            )

        if not self.extrinsic_variance_cap > self.variance_floor:
            raise InvalidEstimatorConfigError(
                "extrinsic_variance_cap must be larger than variance_floor"
            )

        if self.h_init not in ("gaussian", "ones"):
            raise InvalidEstimatorConfigError(
                f"h_init must be 'gaussian' or 'ones', got {self.h_init!r}"
            )
