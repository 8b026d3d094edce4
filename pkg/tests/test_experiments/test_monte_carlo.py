import math

import numpy as np
import pytest
from risuamp.experiments import (
    GridPoint,
    derive_trial_seed,
    generate_instance,
    point_crlb,
    run_monte_carlo,
    run_trial,
)
from risuamp.model import PhaseMatrixKind, to_db

from .test_fixtures import tiny_config


POINT = GridPoint(M=2, K=2, N=2, L=2, snr_db=10.0, kind=PhaseMatrixKind.PARTIAL_DFT)


def test_derive_trial_seed_should_depend_on_every_coordinate():
    seeds = {
        derive_trial_seed(0, POINT, 0),
        derive_trial_seed(1, POINT, 0),
        derive_trial_seed(0, POINT, 1),
        derive_trial_seed(0, GridPoint(2, 2, 2, 2, 20.0, POINT.kind), 0),
        derive_trial_seed(
            0, GridPoint(2, 2, 2, 2, 10.0, PhaseMatrixKind.BINARY_RANDOM), 0
        ),
    }

    assert len(seeds) == 5
    assert all(0 <= seed < 2**63 for seed in seeds)


def test_derive_trial_seed_should_not_distinguish_int_and_float_snr():
    integer_snr = GridPoint(2, 2, 2, 2, 10, POINT.kind)

    assert derive_trial_seed(0, integer_snr, 3) == derive_trial_seed(0, POINT, 3)


def test_generate_instance_should_be_reproducible():
    first = generate_instance(POINT, 123)
    second = generate_instance(POINT, 123)

    assert (first.Y == second.Y).all()
    assert first.seeds == second.seeds
    assert first.noise_variance == pytest.approx(0.4)


def test_run_trial_should_give_every_estimator_the_same_instance():
    record = run_trial(tiny_config(), POINT, 0)

    assert set(record.outcomes) == {"uamp", "als", "ls_rank1"}
    assert record.seed == derive_trial_seed(7, POINT, 0)
    assert not any(outcome.failed for outcome in record.outcomes.values())
    assert record.crlb_h is None


def test_run_trial_should_record_the_uamp_trace_when_asked():
    record = run_trial(tiny_config(record_trace=True), POINT, 0)

    assert [row.iteration for row in record.trace] == list(
        range(1, record.outcomes["uamp"].iterations + 1)
    )


def test_run_trial_should_mark_a_raising_estimator_as_failed():
    cfg = tiny_config(n_values=(4,), estimators=("als", "ls_rank1"))
    point = next(cfg.grid())

    record = run_trial(cfg, point, 0)

    assert record.outcomes["ls_rank1"].failed
    assert record.outcomes["ls_rank1"].nmse_h is None
    assert "UnderdeterminedSystemError" in record.outcomes["ls_rank1"].error
    assert not record.outcomes["als"].failed


def test_run_trial_should_skip_the_noise_error_when_noiseless():
    cfg = tiny_config(snr_db=(math.inf,), estimators=("ls_rank1",))
    point = next(cfg.grid())

    outcome = run_trial(cfg, point, 0).outcomes["ls_rank1"]

    assert outcome.beta_rel_error is None
    assert outcome.nmse_h < 1e-20


def test_point_crlb_should_be_none_when_noiseless():
    cfg = tiny_config(snr_db=(math.inf,), estimators=("crlb",))

    assert point_crlb(cfg, next(cfg.grid())) == (None, None)


def test_run_monte_carlo_should_be_deterministic():
    cfg = tiny_config()

    first = run_monte_carlo(cfg)
    second = run_monte_carlo(cfg)

    assert [r.metrics() for r in first] == [r.metrics() for r in second]


def test_run_monte_carlo_should_match_with_a_worker_pool():
    cfg = tiny_config(snr_db=(0.0, 20.0))

    sequential = run_monte_carlo(cfg)
    pooled = run_monte_carlo(cfg, threads=2)

    assert [r.metrics() for r in pooled] == [r.metrics() for r in sequential]
    assert [r.sort_key for r in pooled] == sorted(r.sort_key for r in pooled)


def test_run_monte_carlo_should_keep_existing_points_when_the_grid_grows():
    small = run_monte_carlo(tiny_config(snr_db=(10.0,)))
    large = run_monte_carlo(tiny_config(snr_db=(0.0, 10.0)))

    at_10_db = [r.metrics() for r in large if r.point.snr_db == 10.0]

    assert at_10_db == [r.metrics() for r in small]


def test_run_monte_carlo_should_attach_the_bounds_to_every_record():
    cfg = tiny_config(estimators=("als", "crlb"), trials=3)

    records = run_monte_carlo(cfg)

    assert len(records) == 3
    assert all(set(r.outcomes) == {"als"} for r in records)
    assert len({(r.crlb_h, r.crlb_g) for r in records}) == 1
    assert records[0].crlb_h > 0


def test_run_monte_carlo_should_reject_zero_threads():
    with pytest.raises(ValueError):
        run_monte_carlo(tiny_config(), threads=0)


def _medians(records, estimator, metric):
    by_snr: dict[float, list[float]] = {}
    for record in records:
        value = getattr(record.outcomes[estimator], metric)
        by_snr.setdefault(record.point.snr_db, []).append(value)

    return {snr: float(np.median(values)) for snr, values in by_snr.items()}


def test_run_monte_carlo_should_bring_uamp_within_2_db_of_the_bound():
    cfg = tiny_config(
        m_values=(16,),
        k_values=(16,),
        n_values=(16,),
        l_values=(16,),
        snr_db=(10.0, 20.0, 30.0),
        estimators=("uamp", "crlb"),
        trials=10,
    )

    records = run_monte_carlo(cfg)
    bounds = {r.point.snr_db: r.crlb_h for r in records}

    for snr, nmse_h in _medians(records, "uamp", "nmse_h").items():
        assert abs(to_db(nmse_h) - to_db(bounds[snr])) < 2.0, snr


def test_run_monte_carlo_should_rank_uamp_above_als_with_a_binary_phase_matrix():
    cfg = tiny_config(
        m_values=(32,),
        k_values=(32,),
        n_values=(32,),
        l_values=(16,),
        snr_db=(20.0,),
        phase_kind=PhaseMatrixKind.BINARY_RANDOM,
        estimators=("uamp", "als"),
        trials=8,
    )

    records = run_monte_carlo(cfg)

    assert _medians(records, "uamp", "nmse_h")[20.0] < (
        _medians(records, "als", "nmse_h")[20.0]
    )


def test_run_monte_carlo_should_estimate_the_noise_variance_within_20_percent():
    cfg = tiny_config(
        m_values=(32,),
        k_values=(32,),
        n_values=(32,),
        l_values=(20,),
        snr_db=(0.0, 10.0, 20.0, 30.0),
        estimators=("uamp",),
        trials=8,
    )

    records = run_monte_carlo(cfg)

    for snr, error in _medians(records, "uamp", "beta_rel_error").items():
        assert error < 0.2, snr
