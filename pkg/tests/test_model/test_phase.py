import numpy as np
import pytest
from risuamp.model import (
    InvalidPhaseMatrixError,
    PhaseMatrixKind,
    SystemDims,
    generate_phase_matrix,
    partial_dft,
)


def test_partial_dft_should_be_the_two_point_dft_when_l_and_n_are_2():
    result = partial_dft(2, 2)
    expected = np.array([[1, 1], [1, -1]])

    assert np.allclose(result, expected)


def test_partial_dft_should_evaluate_the_dft_formula_for_l_2_and_n_4():
    result = partial_dft(2, 4)

    assert np.allclose(result[0], [1, 1, 1, 1])
    assert np.allclose(result[1], [1, -1j, -1, 1j])


def test_partial_dft_should_have_unit_modulus_and_orthogonal_rows():
    result = partial_dft(5, 8)

    assert np.allclose(np.abs(result), 1.0)
    assert np.allclose(result @ result.conj().T, 8 * np.eye(5))


def test_partial_dft_should_reject_more_rows_than_columns():
    with pytest.raises(InvalidPhaseMatrixError):
        partial_dft(5, 4)


def test_generate_phase_matrix_should_reject_partial_dft_with_l_greater_than_n():
    with pytest.raises(InvalidPhaseMatrixError):
        generate_phase_matrix(
            SystemDims(M=1, K=1, N=4, L=5), PhaseMatrixKind.PARTIAL_DFT, rng_seed=0
        )


def test_generate_phase_matrix_should_reject_unknown_kinds():
    with pytest.raises(InvalidPhaseMatrixError):
        generate_phase_matrix(SystemDims(M=1, K=1, N=4, L=4), "gaussian", rng_seed=0)


def test_binary_phase_matrix_should_only_have_zeros_and_ones():
    phase = generate_phase_matrix(
        SystemDims(M=1, K=1, N=16, L=32), PhaseMatrixKind.BINARY_RANDOM, rng_seed=1
    )

    assert phase.phi.shape == (32, 16)
    assert set(np.unique(phase.phi).tolist()) <= {0, 1}


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_binary_phase_matrix_should_have_about_half_ones(seed: int):
    phase = generate_phase_matrix(
        SystemDims(M=1, K=1, N=64, L=64), PhaseMatrixKind.BINARY_RANDOM, seed
    )

    fraction = float(np.mean(phase.phi.real))

    assert 0.4 <= fraction <= 0.6


def test_binary_phase_matrix_should_be_deterministic_given_the_seed():
    dims = SystemDims(M=1, K=1, N=8, L=8)

    first = generate_phase_matrix(dims, PhaseMatrixKind.BINARY_RANDOM, rng_seed=5)
    second = generate_phase_matrix(dims, PhaseMatrixKind.BINARY_RANDOM, rng_seed=5)

    assert np.array_equal(first.phi, second.phi)
    assert first.kind is PhaseMatrixKind.BINARY_RANDOM
