"""Experiments module.

This module runs configuration-driven Monte Carlo sweeps of the estimators,
scores them with the ambiguity-free NMSE, writes the results as CSV, and
exposes everything through the `risuamp` command line interface.
"""

from risuamp.model import nmse_with_ambiguity_removal, to_db

from .cli import build_parser, cli_main, main, resolve_threads
from .config import (
    ESTIMATORS,
    ExperimentConfig,
    GridPoint,
    InvalidExperimentConfigError,
    experiment_config_from_dict,
    experiment_config_to_dict,
    iter_grid,
    load_experiment_config,
)
from .designs import DESIGNS, REPRODUCE_ALIASES, UnknownDesignError, builtin_config
from .monte_carlo import (
    PooledTrialArgs,
    TrialInstance,
    TrialSeeds,
    derive_trial_seed,
    generate_instance,
    point_crlb,
    pooled_run_trial,
    run_monte_carlo,
    run_trial,
)
from .records import (
    CsvWriteError,
    EstimatorOutcome,
    TraceRow,
    TrialRecord,
    csv_header,
    emit_csv,
    emit_trace_csv,
)


__all__ = [
    "build_parser",
    "cli_main",
    "main",
    "resolve_threads",
    "ESTIMATORS",
    "ExperimentConfig",
    "GridPoint",
    "InvalidExperimentConfigError",
    "experiment_config_from_dict",
    "experiment_config_to_dict",
    "iter_grid",
    "load_experiment_config",
    "DESIGNS",
    "REPRODUCE_ALIASES",
    "UnknownDesignError",
    "builtin_config",
    "nmse_with_ambiguity_removal",
    "to_db",
    "PooledTrialArgs",
    "TrialInstance",
    "TrialSeeds",
    "derive_trial_seed",
    "generate_instance",
    "point_crlb",
    "pooled_run_trial",
    "run_monte_carlo",
    "run_trial",
    "CsvWriteError",
    "EstimatorOutcome",
    "TraceRow",
    "TrialRecord",
    "csv_header",
    "emit_csv",
    "emit_trace_csv",
]
