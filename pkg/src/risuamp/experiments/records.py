"""Trial records and their CSV rendering.

Results file header:

```
M,K,N,L,snr_db,phase_matrix,trial,seed,
<est>_nmse_h,<est>_nmse_g,<est>_beta_rel_error,<est>_iterations,<est>_runtime_s,<est>_failed,
...
crlb_h,crlb_g,runtime_s
```

The estimator block is repeated for every selected estimator in the order
uamp, als, ls_rank1. Floats are written with 17 significant digits, so
reading them back with `float` gives the same bits.
"""  # noqa: E501

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from .config import ESTIMATORS, GridPoint


GRID_COLUMNS = ("M", "K", "N", "L", "snr_db", "phase_matrix", "trial", "seed")
ESTIMATOR_METRICS = (
    "nmse_h",
    "nmse_g",
    "beta_rel_error",
    "iterations",
    "runtime_s",
    "failed",
)
CRLB_COLUMNS = ("crlb_h", "crlb_g")
TRACE_COLUMNS = ("iteration", "nmse_h", "nmse_g", "noise_variance")


class CsvWriteError(OSError):
    """Raised when a results file cannot be written."""

    def __init__(self, path: Path, reason: str) -> None:
        """Stores the failing path."""
        self.path = path
        super().__init__(f"cannot write {path}: {reason}")


@dataclass(frozen=True)
class EstimatorOutcome:
    """What one estimator produced on one trial.

    Attributes:
        nmse_h (float | None): Ambiguity-free NMSE of `H`. None when the estimator failed.
        nmse_g (float | None): Ambiguity-free NMSE of `G`. None when the estimator failed.
        beta_rel_error (float | None): `|β̂⁻¹ − β⁻¹|/β⁻¹`. None when failed or noiseless.
        iterations (int | None): Iterations executed.
        runtime_s (float): Wall-clock seconds.
        failed (bool): Whether the estimator raised.
        error (str | None): Message of the raised exception.
    """  # noqa: E501

    nmse_h: float | None
    nmse_g: float | None
    beta_rel_error: float | None
    iterations: int | None
    runtime_s: float
    failed: bool = False
    error: str | None = None

    def metrics(self) -> tuple[Any, ...]:
        """Every field except the runtime."""
        return (
            self.nmse_h,
            self.nmse_g,
            self.beta_rel_error,
            self.iterations,
            self.failed,
        )


@dataclass(frozen=True)
class TraceRow:
    """UAMP state after one iteration of a trial."""

    iteration: int
    nmse_h: float
    nmse_g: float
    noise_variance: float


@dataclass(frozen=True)
class TrialRecord:
    """Results of every selected estimator on one trial.

    Attributes:
        point (GridPoint): Grid point of the trial.
        trial (int): Zero-based trial index within the point.
        seed (int): Trial seed every random draw derives from.
        outcomes (dict[str, EstimatorOutcome]): Outcome per selected estimator.
        crlb_h (float | None): Bound of `H` at this grid point, when requested.
        crlb_g (float | None): Bound of `G` at this grid point, when requested.
        runtime_s (float): Wall-clock seconds of the whole trial.
        trace (tuple[TraceRow, ...]): UAMP per-iteration rows, when recorded.
    """  # noqa: E501

    point: GridPoint
    trial: int
    seed: int
    outcomes: dict[str, EstimatorOutcome]
    crlb_h: float | None = None
    crlb_g: float | None = None
    runtime_s: float = 0.0
    trace: tuple[TraceRow, ...] = field(default=())

    @property
    def sort_key(self) -> tuple[Any, ...]:
        """Orders records by grid point, then trial."""
        p = self.point

        return (p.M, p.K, p.N, p.L, p.snr_db, p.kind.value, self.trial)

    def metrics(self) -> tuple[Any, ...]:
        """Every deterministic field of the record, i.e. all but runtimes."""
        return (
            self.sort_key,
            self.seed,
            tuple(
                (name, outcome.metrics())
                for name, outcome in sorted(self.outcomes.items())
            ),
            self.crlb_h,
            self.crlb_g,
            self.trace,
        )


def format_value(value: Any) -> str:
    """Renders one CSV cell.

    Examples:
        >>> format_value(0.1), format_value(None), format_value(True), format_value(3)
        ('0.10000000000000001', '', '1', '3')
    """
    if value is None:
        return ""

    if isinstance(value, bool):
        return "1" if value else "0"

    if isinstance(value, float):
        return f"{value:.17g}"

    return str(value)


def csv_header(
    estimators: Sequence[str],
    with_crlb: bool,
) -> list[str]:
    """Builds the header of a results file.

    Args:
        estimators (Sequence[str]): Estimator names, in any order.
        with_crlb (bool): Whether to include the bound columns.

    Returns:
        Column names.

    Examples:
        >>> csv_header(["als", "uamp"], with_crlb=False)[8:11]
        ['uamp_nmse_h', 'uamp_nmse_g', 'uamp_beta_rel_error']
        >>> csv_header([], with_crlb=True)[8:]
        ['crlb_h', 'crlb_g', 'runtime_s']
    """
    header = list(GRID_COLUMNS)

    for name in ESTIMATORS:
        if name in estimators:
            header.extend(f"{name}_{metric}" for metric in ESTIMATOR_METRICS)

    if with_crlb:
        header.extend(CRLB_COLUMNS)

    header.append("runtime_s")

    return header


def _grid_cells(record: TrialRecord) -> dict[str, str]:
    p = record.point

    return {
        "M": format_value(p.M),
        "K": format_value(p.K),
        "N": format_value(p.N),
        "L": format_value(p.L),
        "snr_db": format_value(float(p.snr_db)),
        "phase_matrix": p.kind.value,
        "trial": format_value(record.trial),
        "seed": format_value(record.seed),
    }


def record_to_row(
    record: TrialRecord,
    estimators: Sequence[str],
    with_crlb: bool,
) -> dict[str, str]:
    """Renders a record as a CSV row keyed by column name."""
    row = _grid_cells(record)

    for name in ESTIMATORS:
        if name not in estimators:
            continue

        outcome = record.outcomes.get(name)
        if outcome is None:
            row.update({f"{name}_{metric}": "" for metric in ESTIMATOR_METRICS})
            continue

        row[f"{name}_nmse_h"] = format_value(outcome.nmse_h)
        row[f"{name}_nmse_g"] = format_value(outcome.nmse_g)
        row[f"{name}_beta_rel_error"] = format_value(outcome.beta_rel_error)
        row[f"{name}_iterations"] = format_value(outcome.iterations)
        row[f"{name}_runtime_s"] = format_value(outcome.runtime_s)
        row[f"{name}_failed"] = format_value(outcome.failed)

    if with_crlb:
        row["crlb_h"] = format_value(record.crlb_h)
        row["crlb_g"] = format_value(record.crlb_g)

    row["runtime_s"] = format_value(record.runtime_s)

    return row


def _infer_columns(
    records: Sequence[TrialRecord],
) -> tuple[list[str], bool]:
    names = {name for record in records for name in record.outcomes}
    with_crlb = any(record.crlb_h is not None for record in records)

    return [name for name in ESTIMATORS if name in names], with_crlb


def emit_csv(
    records: Iterable[TrialRecord],
    path: Path | str,
    estimators: Sequence[str] | None = None,
    with_crlb: bool | None = None,
) -> None:
    """Writes the records to a UTF-8 CSV file.

    Args:
        records (Iterable[TrialRecord]): Records to write, in order.
        path (Path | str): Output file, overwritten if it exists.
        estimators (Sequence[str] | None): Estimator columns to write. Inferred from the records when None.
        with_crlb (bool | None): Whether to write the bound columns. Inferred from the records when None.

    Raises:
        CsvWriteError: If the file cannot be written.
    """  # noqa: E501
    path = Path(path)
    records = list(records)

    inferred_estimators, inferred_crlb = _infer_columns(records)
    if estimators is None:
        estimators = inferred_estimators
    if with_crlb is None:
        with_crlb = inferred_crlb

    header = csv_header(estimators, with_crlb)

    try:
        with path.open("w", encoding="utf-8", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=header)
            writer.writeheader()

            for record in records:
                writer.writerow(record_to_row(record, estimators, with_crlb))
    except OSError as e:
        raise CsvWriteError(path, e.strerror or str(e)) from e


def emit_trace_csv(
    records: Iterable[TrialRecord],
    path: Path | str,
) -> None:
    """Writes the UAMP per-iteration trace of every record.

    One row per iteration, with the grid fields, the trial and the seed
    followed by `iteration,nmse_h,nmse_g,noise_variance`.

    Args:
        records (Iterable[TrialRecord]): Records with a recorded trace.
        path (Path | str): Output file, overwritten if it exists.

    Raises:
        CsvWriteError: If the file cannot be written.
    """
    path = Path(path)
    header = [*GRID_COLUMNS, *TRACE_COLUMNS]

    try:
        with path.open("w", encoding="utf-8", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=header)
            writer.writeheader()

            for record in records:
                cells = _grid_cells(record)

                for row in record.trace:
                    writer.writerow(
                        {
                            **cells,
                            "iteration": format_value(row.iteration),
                            "nmse_h": format_value(row.nmse_h),
                            "nmse_g": format_value(row.nmse_g),
                            "noise_variance": format_value(row.noise_variance),
                        }
                    )
    except OSError as e:
        raise CsvWriteError(path, e.strerror or str(e)) from e
