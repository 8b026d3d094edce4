"""Built-in experiment designs.

Each design sweeps both phase matrix kinds unless noted, with the estimator
defaults `tolerance=1e-3` and `max_iterations=30`.

| name              | grid                             | SNR (dB)       | estimators      |
| ----------------- | -------------------------------- | -------------- | --------------- |
| `snr`             | L=N=K=M=64                       | 0 to 30 step 5 | uamp, als       |
| `phase_count_snr` | N=K=M=64, L in {16, 32, 64}      | 0 to 30 step 5 | uamp, als       |
| `phase_count`     | N=K=M=64, L in {8, 16, ..., 64}  | 20             | uamp, als       |
| `ris_size`        | L=K=M=32, N in {32, 64, 128}     | 0 to 30 step 5 | uamp, als       |
| `bound`           | L=K=M=N=16                       | 0 to 30 step 5 | uamp, als, crlb |
| `convergence`     | L=20, K=M=N=32                   | 20             | uamp, traced    |
| `noise_variance`  | L=20, K=M=N=32, partial DFT only | 0 to 30 step 5 | uamp, traced    |

`reproduce` also accepts the names in `REPRODUCE_ALIASES`, each standing for one
or more designs.
"""  # noqa: E501

from dataclasses import replace

from risuamp.model import PhaseMatrixKind

from .config import DEFAULT_TRIALS, ExperimentConfig


SNR_SWEEP = (0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0)
BOTH_KINDS = (PhaseMatrixKind.PARTIAL_DFT, PhaseMatrixKind.BINARY_RANDOM)
BASE_SEED = 2022


class UnknownDesignError(ValueError):
    """Raised when a built-in design name is unknown."""


def _design(
    m: tuple[int, ...],
    k: tuple[int, ...],
    n: tuple[int, ...],
    l: tuple[int, ...],  # noqa: E741
    snr: tuple[float, ...],
    estimators: tuple[str, ...],
    kinds: tuple[PhaseMatrixKind, ...] = BOTH_KINDS,
    record_trace: bool = False,
) -> list[ExperimentConfig]:
    return [
        ExperimentConfig(
            m_values=m,
            k_values=k,
            n_values=n,
            l_values=l,
            snr_db=snr,
            phase_kind=kind,
            estimators=estimators,
            trials=DEFAULT_TRIALS,
            seed=BASE_SEED,
            record_trace=record_trace,
        )
        for kind in kinds
    ]


DESIGNS = {
    "snr": lambda: _design((64,), (64,), (64,), (64,), SNR_SWEEP, ("uamp", "als")),
    "phase_count_snr": lambda: _design(
        (64,), (64,), (64,), (16, 32, 64), SNR_SWEEP, ("uamp", "als")
    ),
    "phase_count": lambda: _design(
        (64,), (64,), (64,), tuple(range(8, 65, 8)), (20.0,), ("uamp", "als")
    ),
    "ris_size": lambda: _design(
        (32,), (32,), (32, 64, 128), (32,), SNR_SWEEP, ("uamp", "als")
    ),
    "bound": lambda: _design(
        (16,), (16,), (16,), (16,), SNR_SWEEP, ("uamp", "als", "crlb")
    ),
    "convergence": lambda: _design(
        (32,), (32,), (32,), (20,), (20.0,), ("uamp",), record_trace=True
    ),
    "noise_variance": lambda: _design(
        (32,),
        (32,),
        (32,),
        (20,),
        SNR_SWEEP,
        ("uamp",),
        kinds=(PhaseMatrixKind.PARTIAL_DFT,),
        record_trace=True,
    ),
}

# short names accepted by `reproduce`
REPRODUCE_ALIASES = {
    "fig4": ("snr",),
    "fig5": ("phase_count_snr",),
    "fig6": ("phase_count",),
    "fig7": ("ris_size",),
    "fig8": ("bound",),
    "fig9": ("convergence", "noise_variance"),
}


def builtin_config(
    name: str,
    scale: float = 1.0,
) -> list[ExperimentConfig]:
    """Returns the sweeps of a built-in design.

    Args:
        name (str): Key of `DESIGNS` or of `REPRODUCE_ALIASES`.
        scale (float): Divides the number of trials, keeping at least one.

    Returns:
        One configuration per design and phase matrix kind.

    Raises:
        UnknownDesignError: If the name is unknown.
        ValueError: If `scale` is not positive.

    Examples:
        >>> [(c.phase_kind.value, c.trials) for c in builtin_config("bound", scale=10)]
        [('partial_dft', 10), ('binary_random', 10)]
        >>> [(c.snr_db, c.phase_kind.value) for c in builtin_config("convergence")]
        [((20.0,), 'partial_dft'), ((20.0,), 'binary_random')]
        >>> [(len(c.snr_db), c.phase_kind.value) for c in builtin_config("fig9")]
        [(1, 'partial_dft'), (1, 'binary_random'), (7, 'partial_dft')]
        >>> builtin_config("noise_variance", scale=1000)[0].trials
        1
    """  # noqa: E501
    if name in REPRODUCE_ALIASES:
        designs = REPRODUCE_ALIASES[name]
    elif name in DESIGNS:
        designs = (name,)
    else:
        raise UnknownDesignError(
            f"unknown design {name!r}, expected one of "
            f"{sorted(DESIGNS) + sorted(REPRODUCE_ALIASES)}"
        )

    if not scale > 0:
        raise ValueError(f"scale must be > 0, got {scale}")

    trials = max(1, int(DEFAULT_TRIALS / scale))

    return [
        replace(cfg, trials=trials) for design in designs for cfg in DESIGNS[design]()
    ]
