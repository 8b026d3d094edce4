import numpy as np
import pytest
from risuamp.model import (
    PhaseMatrixKind,
    RisPhaseMatrix,
    SystemDims,
    complex_gaussian,
    generate_phase_matrix,
    unitary_transform,
)


def _observations(L: int, J: int, seed: int = 0) -> np.ndarray:
    return complex_gaussian((L, J), np.random.default_rng(seed))


def test_unitary_transform_should_keep_the_identity_phase_matrix_up_to_signs():
    phi = np.eye(3, dtype=complex)
    Y = _observations(3, 4)

    model = unitary_transform(RisPhaseMatrix(phi, PhaseMatrixKind.PARTIAL_DFT), Y)

    assert np.allclose(np.abs(model.U), np.eye(3))
    assert np.allclose(model.U @ model.Psi, phi)
    assert np.allclose(model.U @ model.R, Y)
    assert np.allclose(model.psi, 1.0)


def test_unitary_transform_should_reconstruct_a_partial_dft_matrix():
    dims = SystemDims(M=2, K=2, N=8, L=4)
    phase = generate_phase_matrix(dims, PhaseMatrixKind.PARTIAL_DFT, rng_seed=0)

    model = unitary_transform(phase, _observations(4, dims.J))

    gram = model.Psi @ model.Psi.conj().T
    error = np.linalg.norm(model.U @ model.Psi - phase.phi) / np.linalg.norm(phase.phi)

    assert np.allclose(gram, np.diag(np.diag(gram)))
    assert error < 1e-10


def test_unitary_transform_should_stay_unitary_with_a_zero_row():
    phi = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)

    model = unitary_transform(
        RisPhaseMatrix(phi, PhaseMatrixKind.BINARY_RANDOM), _observations(2, 3)
    )

    assert np.linalg.norm(model.U.conj().T @ model.U - np.eye(2)) < 1e-10


def test_unitary_transform_should_keep_every_row_when_l_exceeds_n():
    dims = SystemDims(M=2, K=2, N=4, L=6)
    phase = generate_phase_matrix(dims, PhaseMatrixKind.BINARY_RANDOM, rng_seed=3)

    model = unitary_transform(phase, _observations(6, dims.J))

    assert model.U.shape == (6, 6)
    assert model.Psi.shape == (6, 4)
    assert model.R.shape == (6, dims.J)
    assert np.allclose(model.U.conj().T @ model.U, np.eye(6))
    assert np.allclose(model.Psi[4:], 0.0)


@pytest.mark.parametrize(
    ("L", "N", "kind"),
    [
        (4, 8, PhaseMatrixKind.PARTIAL_DFT),
        (8, 8, PhaseMatrixKind.BINARY_RANDOM),
        (10, 6, PhaseMatrixKind.BINARY_RANDOM),
    ],
)
def test_unitary_transform_should_preserve_the_frobenius_norm(L, N, kind):
    dims = SystemDims(M=3, K=2, N=N, L=L)
    phase = generate_phase_matrix(dims, kind, rng_seed=1)
    Y = _observations(L, dims.J, seed=2)

    model = unitary_transform(phase, Y)

    assert np.linalg.norm(model.R) == pytest.approx(np.linalg.norm(Y), rel=1e-12)
    assert np.all(model.psi >= 0)
    assert np.sum(model.psi) == pytest.approx(np.linalg.norm(model.Psi) ** 2)


def test_unitary_transform_should_reject_observations_with_the_wrong_row_count():
    phase = RisPhaseMatrix(np.eye(3, dtype=complex), PhaseMatrixKind.PARTIAL_DFT)

    with pytest.raises(ValueError):
        unitary_transform(phase, _observations(4, 2))
