"""Command line interface.

```
risuamp [-v] simulate --config PATH [--out PATH] [--threads N] [--seed N]
risuamp [-v] crlb --config PATH [--out PATH] [--threads N] [--seed N]
risuamp [-v] reproduce NAME [--scale S] [--out PATH] [--threads N] [--seed N]
```

`--threads` defaults to the `RIS_UAMP_THREADS` environment variable, then 1.
Exit codes: 0 on success, 1 on a configuration or runtime error, 2 on a
usage error.
"""  # noqa: E501

import argparse
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Sequence

from .config import ESTIMATORS, ExperimentConfig, load_experiment_config
from .designs import DESIGNS, REPRODUCE_ALIASES, builtin_config
from .monte_carlo import run_monte_carlo
from .records import TrialRecord, emit_csv, emit_trace_csv


logger = logging.getLogger(__name__)

THREADS_ENV = "RIS_UAMP_THREADS"
DEFAULT_OUTPUT = Path("results.csv")


def build_parser() -> argparse.ArgumentParser:
    """Builds the argument parser of the `risuamp` command."""
    parser = argparse.ArgumentParser(
        prog="risuamp",
        description="Monte Carlo experiments of RIS channel estimation.",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log debug messages"
    )

    subparsers = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="path of the CSV results")
    common.add_argument("--threads", type=int, help="number of worker processes")
    common.add_argument("--seed", type=int, help="overrides the base seed")

    simulate = subparsers.add_parser(
        "simulate", parents=[common], help="run a configuration file"
    )
    simulate.add_argument("--config", type=Path, required=True)

    crlb = subparsers.add_parser(
        "crlb", parents=[common], help="compute only the bounds of a grid"
    )
    crlb.add_argument("--config", type=Path, required=True)

    reproduce = subparsers.add_parser(
        "reproduce", parents=[common], help="run a built-in design"
    )
    reproduce.add_argument("name", choices=sorted(DESIGNS) + sorted(REPRODUCE_ALIASES))
    reproduce.add_argument(
        "--scale", type=float, default=1.0, help="divides the number of trials"
    )

    return parser


def resolve_threads(
    threads: int | None,
) -> int:
    """Number of workers from the flag, then the environment, then 1.

    Raises:
        ValueError: If the value is not a positive integer.
    """
    if threads is None:
        raw = os.environ.get(THREADS_ENV)

        if raw is None or raw.strip() == "":
            return 1

        try:
            threads = int(raw)
        except ValueError as e:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from e

    if threads < 1:
        raise ValueError(f"the number of threads must be >= 1, got {threads}")

    return threads


def _configs(args: argparse.Namespace) -> tuple[list[ExperimentConfig], Path]:
    if args.command == "reproduce":
        configs = builtin_config(args.name, args.scale)
        default_output = Path(f"{args.name}.csv")
    else:
        cfg = load_experiment_config(args.config)

        if args.command == "crlb":
            cfg = replace(cfg, estimators=("crlb",), trials=1, record_trace=False)

        configs = [cfg]
        default_output = cfg.output or DEFAULT_OUTPUT

    if args.seed is not None:
        configs = [replace(cfg, seed=args.seed) for cfg in configs]

    return configs, args.out or default_output


def run(
    args: argparse.Namespace,
) -> Path:
    """Runs the sweeps selected by the parsed arguments and writes the results.

    Returns:
        Path of the CSV results.
    """
    configs, output = _configs(args)
    threads = resolve_threads(args.threads)

    # designs sharing a grid point share its seeds, so the first record is kept
    by_key: dict[tuple[Any, ...], TrialRecord] = {}
    for cfg in configs:
        for record in run_monte_carlo(
            cfg, threads=threads, progress=sys.stderr.isatty()
        ):
            by_key.setdefault(record.sort_key, record)

    records = list(by_key.values())

    selected = {name for cfg in configs for name in cfg.selected_estimators}
    emit_csv(
        records,
        output,
        estimators=[name for name in ESTIMATORS if name in selected],
        with_crlb=any(cfg.wants_crlb for cfg in configs),
    )
    logger.info("wrote %d records to %s", len(records), output)

    if any(cfg.record_trace for cfg in configs):
        trace_output = output.with_name(f"{output.stem}_trace.csv")
        emit_trace_csv(records, trace_output)
        logger.info("wrote the iteration trace to %s", trace_output)

    return output


def cli_main(
    argv: Sequence[str] | None = None,
) -> int:
    """Entry point returning an exit code instead of exiting.

    Args:
        argv (Sequence[str] | None): Arguments without the program name. Defaults to `sys.argv[1:]`.

    Returns:
        0 on success, 1 on a configuration or runtime error, 2 on a usage error.
    """  # noqa: E501
    parser = build_parser()

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    try:
        run(args)
    except (ValueError, OSError, RuntimeError) as e:
        logger.error("%s", e)
        return 1

    return 0


def main() -> None:
    """Runs the command line interface and exits with its code."""
    sys.exit(cli_main())
