"""Experiment configuration and its YAML loader.

A configuration file looks like:

```yaml
grid:
  M: [16]
  K: [16]
  N: [16]
  L: [16]
snr_db: [0, 10, 20, 30]
phase_matrix: partial_dft
estimators: [uamp, als, crlb]
trials: 100
seed: 2022
record_trace: false
uamp:
  tolerance: 1.0e-3
  max_iterations: 30
baseline:
  ridge: 0.0
output: results.csv
```

The grid is the cartesian product of the four lists and the SNR list.
"""

import itertools
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Iterator

import yaml

from risuamp.baselines import BaselineConfig
from risuamp.estimation import EstimatorConfig
from risuamp.model import PhaseMatrixKind, SystemDims


# canonical order of the estimators, also the order of the CSV columns
ESTIMATORS = ("uamp", "als", "ls_rank1")
# everything that can be selected in a configuration
SELECTABLE = (*ESTIMATORS, "crlb")
DEFAULT_TRIALS = 100


class InvalidExperimentConfigError(ValueError):
    """Raised when an experiment configuration is invalid."""


@dataclass(frozen=True)
class GridPoint:
    """One point of the experiment grid.

    Examples:
        >>> GridPoint(M=2, K=2, N=4, L=4, snr_db=10.0, kind=PhaseMatrixKind.PARTIAL_DFT).dims.J
        4
    """  # noqa: E501

    M: int
    K: int
    N: int
    L: int
    snr_db: float
    kind: PhaseMatrixKind

    @property
    def dims(self) -> SystemDims:
        """The system dimensions of this point."""
        return SystemDims(M=self.M, K=self.K, N=self.N, L=self.L)


@dataclass(frozen=True)
class ExperimentConfig:
    """A Monte Carlo sweep.

    Attributes:
        m_values (tuple[int, ...]): BS antenna counts.
        k_values (tuple[int, ...]): User counts.
        n_values (tuple[int, ...]): RIS unit counts.
        l_values (tuple[int, ...]): Phase configuration counts.
        snr_db (tuple[float, ...]): SNR values in dB.
        phase_kind (PhaseMatrixKind): Kind of RIS phase matrix.
        estimators (tuple[str, ...]): Selected estimators, plus `crlb` for the bounds.
        trials (int): Trials per grid point.
        seed (int): Base seed every trial seed derives from.
        uamp (EstimatorConfig): Settings of the UAMP estimator.
        baseline (BaselineConfig): Settings of the baseline estimators.
        output (Path | None): Path of the CSV results.
        record_trace (bool): Whether to record UAMP's per-iteration NMSE and noise variance.
    """  # noqa: E501

    m_values: tuple[int, ...]
    k_values: tuple[int, ...]
    n_values: tuple[int, ...]
    l_values: tuple[int, ...]
    snr_db: tuple[float, ...]
    phase_kind: PhaseMatrixKind = PhaseMatrixKind.PARTIAL_DFT
    estimators: tuple[str, ...] = ("uamp",)
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    uamp: EstimatorConfig = field(default_factory=EstimatorConfig)
    baseline: BaselineConfig = field(default_factory=BaselineConfig)
    output: Path | None = None
    record_trace: bool = False

    def __post_init__(self) -> None:
        """Validates the grid and the selection."""
        if self.trials < 1:
            raise InvalidExperimentConfigError(
                f"trials must be >= 1, got {self.trials}"
            )

        for name in ("m_values", "k_values", "n_values", "l_values", "snr_db"):
            if len(getattr(self, name)) == 0:
                raise InvalidExperimentConfigError(f"{name} must not be empty")

        for name in ("m_values", "k_values", "n_values", "l_values"):
            values = getattr(self, name)

            if any(v < 1 for v in values):
                raise InvalidExperimentConfigError(
                    f"{name} must be positive, got {list(values)}"
                )

        if not self.estimators:
            raise InvalidExperimentConfigError("at least one estimator is required")

        unknown = set(self.estimators) - set(SELECTABLE)
        if unknown:
            raise InvalidExperimentConfigError(
                f"unknown estimators {sorted(unknown)}, expected a subset of "
                f"{list(SELECTABLE)}"
            )

        if self.phase_kind is PhaseMatrixKind.PARTIAL_DFT and max(
            self.l_values
        ) > min(self.n_values):
            raise InvalidExperimentConfigError(
                "a partial DFT phase matrix needs L <= N at every grid point, "
                f"got L={list(self.l_values)} and N={list(self.n_values)}"
            )

    @property
    def selected_estimators(self) -> tuple[str, ...]:
        """Selected estimators in canonical order, without `crlb`."""
        return tuple(name for name in ESTIMATORS if name in self.estimators)

    @property
    def wants_crlb(self) -> bool:
        """Whether the bounds are requested."""
        return "crlb" in self.estimators

    def grid(self) -> Iterator[GridPoint]:
        """Iterates over the grid points in a fixed order.

        Yields:
            Every combination of M, K, N, L and SNR.
        """
        for m, k, n, ell, snr in itertools.product(
            self.m_values, self.k_values, self.n_values, self.l_values, self.snr_db
        ):
            yield GridPoint(M=m, K=k, N=n, L=ell, snr_db=snr, kind=self.phase_kind)


def iter_grid(
    cfg: ExperimentConfig,
) -> list[GridPoint]:
    """Lists the grid points of a configuration in sweep order.

    Examples:
        >>> cfg = ExperimentConfig(m_values=(2,), k_values=(2,), n_values=(4,), l_values=(2, 4), snr_db=(0.0, 10.0))
        >>> [(p.L, p.snr_db) for p in iter_grid(cfg)]
        [(2, 0.0), (2, 10.0), (4, 0.0), (4, 10.0)]
    """  # noqa: E501
    return list(cfg.grid())


def _int_list(data: dict[str, Any], key: str) -> tuple[int, ...]:
    value = data.get(key)

    if isinstance(value, (int, float)) and not isinstance(value, bool):
        value = [value]

    if not isinstance(value, list):
        raise InvalidExperimentConfigError(f"grid.{key} must be a list of integers")

    try:
        return tuple(int(v) for v in value)
    except (TypeError, ValueError) as e:
        raise InvalidExperimentConfigError(
            f"grid.{key} must be a list of integers"
        ) from e


def _sub_config(cls: type, data: Any, section: str) -> Any:
    if data is None:
        return cls()

    if not isinstance(data, dict):
        raise InvalidExperimentConfigError(f"{section} must be a mapping")

    unknown = set(data) - {f.name for f in fields(cls)}
    if unknown:
        raise InvalidExperimentConfigError(
            f"unknown keys in {section}: {sorted(unknown)}"
        )

    kwargs: dict[str, Any] = {}
    try:
        for key, value in data.items():
            if key == "max_iterations":
                kwargs[key] = int(value)
            elif key == "h_init":
                kwargs[key] = str(value)
            else:
                # YAML 1.1 reads 1e-3 as a string
                kwargs[key] = float(value)

        return cls(**kwargs)
    except (TypeError, ValueError) as e:
        raise InvalidExperimentConfigError(f"{section}: {e}") from e


def experiment_config_from_dict(
    data: dict[str, Any],
) -> ExperimentConfig:
    """Builds an experiment configuration from parsed YAML.

    Args:
        data (dict[str, Any]): Parsed document.

    Returns:
        The validated configuration.

    Raises:
        InvalidExperimentConfigError: If a field is missing or invalid.

    Examples:
        >>> cfg = experiment_config_from_dict({
        ...     "grid": {"M": [2], "K": [2], "N": [4], "L": [2, 4]},
        ...     "snr_db": [10],
        ...     "estimators": ["uamp", "crlb"],
        ...     "trials": 3,
        ...     "uamp": {"tolerance": "1e-4"},
        ... })
        >>> cfg.l_values, cfg.uamp.tolerance, len(list(cfg.grid()))
        ((2, 4), 0.0001, 2)
    """
    if not isinstance(data, dict):
        raise InvalidExperimentConfigError("the configuration must be a mapping")

    grid = data.get("grid")
    if not isinstance(grid, dict):
        raise InvalidExperimentConfigError("grid must be a mapping with M, K, N, L")

    snr = data.get("snr_db")
    if isinstance(snr, (int, float)) and not isinstance(snr, bool):
        snr = [snr]
    if not isinstance(snr, list):
        raise InvalidExperimentConfigError("snr_db must be a list of numbers")

    estimators = data.get("estimators", ["uamp"])
    if isinstance(estimators, str):
        estimators = [estimators]

    try:
        phase_kind = PhaseMatrixKind(data.get("phase_matrix", "partial_dft"))
        snr_db = tuple(float(v) for v in snr)
        trials = int(data.get("trials", DEFAULT_TRIALS))
        seed = int(data.get("seed", 0))
    except (TypeError, ValueError) as e:
        raise InvalidExperimentConfigError(str(e)) from e

    output = data.get("output")

    return ExperimentConfig(
        m_values=_int_list(grid, "M"),
        k_values=_int_list(grid, "K"),
        n_values=_int_list(grid, "N"),
        l_values=_int_list(grid, "L"),
        snr_db=snr_db,
        phase_kind=phase_kind,
        estimators=tuple(str(e) for e in estimators),
        trials=trials,
        seed=seed,
        uamp=_sub_config(EstimatorConfig, data.get("uamp"), "uamp"),
        baseline=_sub_config(BaselineConfig, data.get("baseline"), "baseline"),
        output=Path(output) if output is not None else None,
        record_trace=bool(data.get("record_trace", False)),
    )


def load_experiment_config(
    path: Path | str,
) -> ExperimentConfig:
    """Reads an experiment configuration from a YAML file.

    Args:
        path (Path | str): Path of the file.

    Returns:
        The validated configuration.

    Raises:
        InvalidExperimentConfigError: If the file cannot be read or is invalid.
    """
    path = Path(path)

    try:
        with path.open(encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise InvalidExperimentConfigError(f"cannot read {path}: {e}") from e
    except yaml.YAMLError as e:
        raise InvalidExperimentConfigError(f"invalid YAML in {path}: {e}") from e

    return experiment_config_from_dict(data)


def experiment_config_to_dict(
    cfg: ExperimentConfig,
) -> dict[str, Any]:
    """Inverse of [`experiment_config_from_dict`][risuamp.experiments.config.experiment_config_from_dict].

    Examples:
        >>> cfg = ExperimentConfig(m_values=(2,), k_values=(2,), n_values=(4,), l_values=(4,), snr_db=(10.0,))
        >>> experiment_config_from_dict(experiment_config_to_dict(cfg)) == cfg
        True
    """  # noqa: E501
    return {
        "grid": {
            "M": list(cfg.m_values),
            "K": list(cfg.k_values),
            "N": list(cfg.n_values),
            "L": list(cfg.l_values),
        },
        "snr_db": list(cfg.snr_db),
        "phase_matrix": cfg.phase_kind.value,
        "estimators": list(cfg.estimators),
        "trials": cfg.trials,
        "seed": cfg.seed,
        "record_trace": cfg.record_trace,
        "uamp": asdict(cfg.uamp),
        "baseline": asdict(cfg.baseline),
        "output": str(cfg.output) if cfg.output is not None else None,
    }
