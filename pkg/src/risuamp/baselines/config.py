"""Configuration of the baseline estimators."""

from dataclasses import dataclass


class InvalidBaselineConfigError(ValueError):
    """Raised when a baseline setting is out of its valid range."""


@dataclass(frozen=True)
class BaselineConfig:
    """Settings shared by the ALS and LS-plus-rank-1 estimators.

    Attributes:
        max_iterations (int): Cap on ALS sweeps.
        tolerance (float): Termination threshold on the relative change of `Ĥ` and `Ĝ`.
        ridge (float): Tikhonov regularizer added to every least squares solve.

    Examples:
        >>> BaselineConfig(ridge=-1.0)
        Traceback (most recent call last):
        ...
        risuamp.baselines.config.InvalidBaselineConfigError: ridge must be >= 0, got -1.0
    """  # noqa: E501

    max_iterations: int = 30
    tolerance: float = 1e-3
    ridge: float = 0.0

    def __post_init__(self) -> None:
        """Validates every setting."""
        if self.max_iterations < 1:
            raise InvalidBaselineConfigError(
                f"max_iterations must be >= 1, got {self.max_iterations}"
            )

        if not self.tolerance > 0:
            raise InvalidBaselineConfigError(
                f"tolerance must be > 0, got {self.tolerance}"
            )

        if not self.ridge >= 0:
            raise InvalidBaselineConfigError(f"ridge must be >= 0, got {self.ridge}")
