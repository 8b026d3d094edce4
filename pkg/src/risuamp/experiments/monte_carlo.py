"""Monte Carlo sweeps over an experiment grid.

Every trial is an independent work item. Its random draws derive only from
the base seed, its grid point and its trial index, so a sweep gives the same
records whether trials run sequentially or in a worker pool, and extending
the grid never perturbs existing points.
"""

import hashlib
import logging
import math
import time
from dataclasses import dataclass, replace
from functools import partial
from multiprocessing import Pool
from typing import TypedDict

import numpy as np
from tqdm import tqdm

from risuamp.baselines import AlsEstimator, LsRank1Estimator
from risuamp.crlb import crlb_for_instance
from risuamp.estimation import (
    ChannelEstimate,
    ChannelEstimator,
    IterationTrace,
    UampEstimator,
)
from risuamp.model import (
    ChannelPair,
    RisPhaseMatrix,
    generate_channels,
    generate_phase_matrix,
    nmse_with_ambiguity_removal,
    simulate_observations,
    snr_to_noise_variance,
)

from .config import ExperimentConfig, GridPoint, iter_grid
from .records import EstimatorOutcome, TraceRow, TrialRecord


logger = logging.getLogger(__name__)

# trial seeds are non-negative 63-bit integers
SEED_MASK = (1 << 63) - 1


def derive_trial_seed(
    base_seed: int,
    point: GridPoint,
    trial: int,
) -> int:
    """Hashes the base seed, the grid coordinates and the trial index into a seed.

    Args:
        base_seed (int): Base seed of the experiment.
        point (GridPoint): Grid point of the trial.
        trial (int): Zero-based trial index.

    Returns:
        A 63-bit seed, stable across processes and platforms.

    Examples:
        >>> from risuamp.model import PhaseMatrixKind
        >>> point = GridPoint(M=2, K=2, N=4, L=4, snr_db=10.0, kind=PhaseMatrixKind.PARTIAL_DFT)
        >>> derive_trial_seed(1, point, 0) == derive_trial_seed(1, point, 0)
        True
        >>> derive_trial_seed(1, point, 0) == derive_trial_seed(1, point, 1)
        False
    """  # noqa: E501
    key = "|".join(
        [
            str(base_seed),
            str(point.M),
            str(point.K),
            str(point.N),
            str(point.L),
            repr(float(point.snr_db)),
            point.kind.value,
            str(trial),
        ]
    )
    digest = hashlib.blake2b(key.encode("utf-8"), digest_size=8).digest()

    return int.from_bytes(digest, "big") & SEED_MASK


@dataclass(frozen=True)
class TrialSeeds:
    """Seeds of every random stage of a trial."""

    channels: int
    phase: int
    noise: int
    uamp: int
    als: int

    @classmethod
    def spawn(cls, trial_seed: int) -> "TrialSeeds":
        """Derives the stage seeds with `numpy.random.SeedSequence`."""
        state = np.random.SeedSequence(trial_seed).generate_state(5)

        return cls(*(int(s) for s in state))


@dataclass(frozen=True)
class TrialInstance:
    """Data of one trial: true channels, phase matrix and observations."""

    channels: ChannelPair
    phase: RisPhaseMatrix
    Y: np.ndarray
    noise_variance: float
    seeds: TrialSeeds


def generate_instance(
    point: GridPoint,
    trial_seed: int,
) -> TrialInstance:
    """Draws the channels, the phase matrix and the observations of a trial.

    Args:
        point (GridPoint): Grid point of the trial.
        trial_seed (int): Seed from [`derive_trial_seed`][risuamp.experiments.monte_carlo.derive_trial_seed].

    Returns:
        The trial data.
    """  # noqa: E501
    seeds = TrialSeeds.spawn(trial_seed)
    dims = point.dims

    channels = generate_channels(dims, seeds.channels)
    phase = generate_phase_matrix(dims, point.kind, seeds.phase)

    noise_variance = snr_to_noise_variance(phase, point.snr_db, dims)
    beta = math.inf if noise_variance == 0 else 1 / noise_variance

    Y = simulate_observations(channels, phase, beta, seeds.noise)

    return TrialInstance(
        channels=channels,
        phase=phase,
        Y=Y,
        noise_variance=noise_variance,
        seeds=seeds,
    )


def _outcome(
    estimate: ChannelEstimate,
    instance: TrialInstance,
    runtime_s: float,
) -> EstimatorOutcome:
    nmse_h, nmse_g = nmse_with_ambiguity_removal(instance.channels, estimate.channels)

    beta_rel_error = None
    if instance.noise_variance > 0:
        beta_rel_error = (
            abs(1 / estimate.beta_hat - instance.noise_variance)
            / instance.noise_variance
        )

    return EstimatorOutcome(
        nmse_h=float(nmse_h),
        nmse_g=float(nmse_g),
        beta_rel_error=beta_rel_error,
        iterations=estimate.iterations,
        runtime_s=runtime_s,
    )


def _run_estimator(
    name: str,
    estimator: ChannelEstimator,
    rng_seed: int,
    instance: TrialInstance,
    point: GridPoint,
    trial: int,
) -> EstimatorOutcome:
    start = time.perf_counter()

    try:
        estimate = estimator(instance.Y, instance.phase, point.dims, rng_seed)
        return _outcome(estimate, instance, time.perf_counter() - start)
    except Exception as e:
        logger.warning(
            "%s failed on %s, trial %d: %s: %s",
            name,
            point,
            trial,
            type(e).__name__,
            e,
        )

        return EstimatorOutcome(
            nmse_h=None,
            nmse_g=None,
            beta_rel_error=None,
            iterations=None,
            runtime_s=time.perf_counter() - start,
            failed=True,
            error=f"{type(e).__name__}: {e}",
        )


def run_trial(
    cfg: ExperimentConfig,
    point: GridPoint,
    trial: int,
) -> TrialRecord:
    """Runs every selected estimator on the same trial data.

    The bounds are not computed here, see
    [`point_crlb`][risuamp.experiments.monte_carlo.point_crlb].

    Args:
        cfg (ExperimentConfig): Experiment configuration.
        point (GridPoint): Grid point of the trial.
        trial (int): Zero-based trial index.

    Returns:
        The record of the trial. An estimator that raises is marked as failed.
    """
    start = time.perf_counter()

    seed = derive_trial_seed(cfg.seed, point, trial)
    instance = generate_instance(point, seed)

    trace: list[TraceRow] = []

    def record_iteration(snapshot: IterationTrace) -> None:
        nmse_h, nmse_g = nmse_with_ambiguity_removal(
            instance.channels, ChannelPair(H=snapshot.H, G=snapshot.G)
        )
        trace.append(
            TraceRow(
                iteration=snapshot.iteration,
                nmse_h=float(nmse_h),
                nmse_g=float(nmse_g),
                noise_variance=1 / snapshot.beta_hat,
            )
        )

    estimators: dict[str, tuple[ChannelEstimator, int]] = {
        "uamp": (
            partial(
                UampEstimator(cfg.uamp),
                on_iteration=record_iteration if cfg.record_trace else None,
            ),
            instance.seeds.uamp,
        ),
        "als": (AlsEstimator(cfg.baseline), instance.seeds.als),
        # deterministic, the seed is ignored
        "ls_rank1": (LsRank1Estimator(cfg.baseline), instance.seeds.als),
    }

    outcomes = {
        name: _run_estimator(name, *estimators[name], instance, point, trial)
        for name in cfg.selected_estimators
    }

    return TrialRecord(
        point=point,
        trial=trial,
        seed=seed,
        outcomes=outcomes,
        runtime_s=time.perf_counter() - start,
        trace=tuple(trace),
    )


def point_crlb(
    cfg: ExperimentConfig,
    point: GridPoint,
) -> tuple[float | None, float | None]:
    """Computes the bounds of a grid point on the instance of its first trial.

    Args:
        cfg (ExperimentConfig): Experiment configuration.
        point (GridPoint): Grid point.

    Returns:
        `(CRLB_H, CRLB_G)`, or `(None, None)` when the point is noiseless or
        the Fisher information cannot be inverted.
    """
    instance = generate_instance(point, derive_trial_seed(cfg.seed, point, 0))

    if instance.noise_variance == 0:
        logger.warning("no bounds for the noiseless point %s", point)
        return None, None

    try:
        report = crlb_for_instance(
            instance.channels, instance.phase, instance.noise_variance
        )
    except np.linalg.LinAlgError as e:
        logger.warning("no bounds for %s: %s", point, e)
        return None, None

    return report.crlb_h, report.crlb_g


class PooledTrialArgs(TypedDict):
    """Data container for the arguments of the [`pooled_run_trial`][risuamp.experiments.monte_carlo.pooled_run_trial] function.

    Attributes:
        cfg (ExperimentConfig): Experiment configuration.
        point (GridPoint): Grid point of the trial.
        trial (int): Zero-based trial index.
    """  # noqa: E501

    cfg: ExperimentConfig
    point: GridPoint
    trial: int


def pooled_run_trial(
    args: PooledTrialArgs,
) -> TrialRecord:
    """Replicates [`run_trial`][risuamp.experiments.monte_carlo.run_trial] behaviour, with slight modifications to work well with `multiprocessing.Pool`.

    Args:
        args (PooledTrialArgs): args of this function.

    Returns:
        The record of the trial.
    """  # noqa: E501
    return run_trial(cfg=args["cfg"], point=args["point"], trial=args["trial"])


def run_monte_carlo(
    cfg: ExperimentConfig,
    *,
    threads: int = 1,
    progress: bool = False,
) -> list[TrialRecord]:
    """Runs every trial of every grid point.

    Records come back ordered by grid point, then trial, whatever the number
    of workers. When the bounds are selected, they are computed once per
    grid point and attached to every record of that point.

    Args:
        cfg (ExperimentConfig): Experiment configuration.
        threads (int): Number of worker processes. 1 runs in the calling process.
        progress (bool): Whether to show a progress bar.

    Returns:
        One record per trial.

    Raises:
        ValueError: If `threads < 1`.
    """  # noqa: E501
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")

    points = iter_grid(cfg)
    func_args: list[PooledTrialArgs] = [
        {"cfg": cfg, "point": point, "trial": trial}
        for point in points
        for trial in range(cfg.trials)
    ]

    logger.info(
        "running %d trials over %d grid points with %d worker(s)",
        len(func_args),
        len(points),
        threads,
    )

    if threads == 1:
        records = [
            pooled_run_trial(args)
            for args in tqdm(func_args, desc="trials", disable=not progress)
        ]
    else:
        with Pool(threads) as p:
            # imap keeps the submission order
            records = list(
                tqdm(
                    p.imap(pooled_run_trial, func_args),
                    total=len(func_args),
                    desc="trials",
                    disable=not progress,
                )
            )

    if cfg.wants_crlb:
        bounds = {
            point: point_crlb(cfg, point)
            for point in tqdm(points, desc="crlb", disable=not progress)
        }
        records = [
            replace(
                record,
                crlb_h=bounds[record.point][0],
                crlb_g=bounds[record.point][1],
            )
            for record in records
        ]

    failed = sum(
        outcome.failed for record in records for outcome in record.outcomes.values()
    )
    if failed:
        logger.warning("%d estimator run(s) failed", failed)

    logger.info("finished %d trials", len(records))

    return records
