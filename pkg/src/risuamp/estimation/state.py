"""Message state of the UAMP estimator.

Array layouts, with `L'` the number of rows of `Ψ`:

- `(L', J)`: `p`, `nu_p`, `mu`, `nu_mu`, `z_hat`, `nu_z`.
- `(N, J)`: `s_hat`, `q`, `nu_q`. `nu_s` has length J.
- `(K, N)`: `h_hat`, `nu_h`, the combined h messages, and `nu_qt`.
- `(M, N)`: `g_hat`, `nu_g` and the combined g messages.
- `(K, M, N)`: every per-branch quantity, i.e. `q_t`, the forward and
  backward channel messages, the backward `s̃` message and `s_t_hat`.
  Flattening the first two axes gives the global ordering `j = k·M + m`.
"""

from dataclasses import dataclass

import numpy as np

from risuamp.model import SystemDims, TransformedModel, complex_gaussian

from .config import EstimatorConfig


@dataclass(frozen=True)
class EstimatorState:
    """Every message of one UAMP iteration."""

    dims: SystemDims
    iteration: int
    beta_hat: float

    # UAMP on the columns of S
    s_hat: np.ndarray
    nu_s: np.ndarray
    mu: np.ndarray
    nu_mu: np.ndarray
    p: np.ndarray
    nu_p: np.ndarray
    q: np.ndarray
    nu_q: np.ndarray
    z_hat: np.ndarray
    nu_z: np.ndarray

    # q̃ split in K blocks of length M
    q_t: np.ndarray
    nu_qt: np.ndarray

    # beliefs
    h_hat: np.ndarray
    nu_h: np.ndarray
    g_hat: np.ndarray
    nu_g: np.ndarray

    # forward messages, per branch and combined
    fwd_g: np.ndarray
    fwd_nu_g: np.ndarray
    fwd_h: np.ndarray
    fwd_nu_h: np.ndarray
    comb_g: np.ndarray
    comb_nu_g: np.ndarray
    comb_h: np.ndarray
    comb_nu_h: np.ndarray

    # backward messages
    bwd_h: np.ndarray
    bwd_nu_h: np.ndarray
    bwd_g: np.ndarray
    bwd_nu_g: np.ndarray
    bwd_s: np.ndarray
    bwd_nu_s: np.ndarray

    # posterior of s̃
    s_t_hat: np.ndarray
    nu_s_t: np.ndarray

    # safeguards triggered so far
    clamped_extrinsic: int = 0

    @property
    def H(self) -> np.ndarray:
        """Current N×K estimate of `H`."""
        return self.h_hat.T

    @property
    def G(self) -> np.ndarray:
        """Current M×N estimate of `G`."""
        return self.g_hat

    def variance_fields(self) -> dict[str, np.ndarray]:
        """Every variance array of the state, by field name."""
        return {
            name: getattr(self, name)
            for name in self.__dataclass_fields__
            if name.startswith(("nu_", "fwd_nu_", "comb_nu_", "bwd_nu_"))
        }


def initialize_state(
    model: TransformedModel,
    dims: SystemDims,
    cfg: EstimatorConfig,
    rng_seed: int,
    *,
    initial_h: np.ndarray | None = None,
) -> EstimatorState:
    """Builds the state before the first iteration.

    `ν_h = 1`, `ŝ = 0`, `ν_s = 1`, `μ = 0` and `β̂ = 1`. The `h` means are
    i.i.d. unit-variance complex Gaussian draws (or ones, per `cfg.h_init`),
    unless `initial_h` is given. Variances without a defined initial value
    start at the variance floor.

    Args:
        model (TransformedModel): Transformed observation model.
        dims (SystemDims): Sizes of the system.
        cfg (EstimatorConfig): Estimator settings.
        rng_seed (int): Seed of the `h` initialization.
        initial_h (np.ndarray | None): Optional K×N initial `h` means.

    Returns:
        The initial state.

    Examples:
        >>> from risuamp.model import generate_phase_matrix, unitary_transform
        >>> dims = SystemDims(M=1, K=1, N=1, L=1)
        >>> phase = generate_phase_matrix(dims, "partial_dft", rng_seed=0)
        >>> model = unitary_transform(phase, np.ones((1, 1), dtype=complex))
        >>> state = initialize_state(model, dims, EstimatorConfig(), rng_seed=0)
        >>> state.beta_hat, state.s_hat.shape, state.nu_s.tolist()
        (1.0, (1, 1), [1.0])
    """  # noqa: E501
    M, K, N, J = dims.M, dims.K, dims.N, dims.J
    rows = model.rows
    floor = cfg.variance_floor

    if initial_h is not None:
        h_hat = np.array(initial_h, dtype=np.complex128).reshape(K, N)
    elif cfg.h_init == "ones":
        h_hat = np.ones((K, N), dtype=np.complex128)
    else:
        h_hat = complex_gaussian((K, N), np.random.default_rng(rng_seed))

    def zeros(*shape: int) -> np.ndarray:
        return np.zeros(shape, dtype=np.complex128)

    def floors(*shape: int) -> np.ndarray:
        return np.full(shape, floor)

    return EstimatorState(
        dims=dims,
        iteration=0,
        beta_hat=1.0,
        s_hat=zeros(N, J),
        nu_s=np.ones(J),
        mu=zeros(rows, J),
        nu_mu=floors(rows, J),
        p=zeros(rows, J),
        nu_p=floors(rows, J),
        q=zeros(N, J),
        nu_q=floors(N, J),
        z_hat=zeros(rows, J),
        nu_z=floors(rows, J),
        q_t=zeros(K, M, N),
        nu_qt=floors(K, N),
        h_hat=h_hat,
        nu_h=np.ones((K, N)),
        g_hat=zeros(M, N),
        nu_g=np.ones((M, N)),
        fwd_g=zeros(K, M, N),
        fwd_nu_g=floors(K, M, N),
        fwd_h=zeros(K, M, N),
        fwd_nu_h=floors(K, M, N),
        comb_g=zeros(M, N),
        comb_nu_g=floors(M, N),
        comb_h=zeros(K, N),
        comb_nu_h=floors(K, N),
        bwd_h=zeros(K, M, N),
        bwd_nu_h=floors(K, M, N),
        bwd_g=zeros(K, M, N),
        bwd_nu_g=floors(K, M, N),
        bwd_s=zeros(K, M, N),
        bwd_nu_s=floors(K, M, N),
        s_t_hat=zeros(K, M, N),
        nu_s_t=floors(K, M, N),
    )
