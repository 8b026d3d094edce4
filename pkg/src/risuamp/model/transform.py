"""Unitary transform of the observation model.

With the SVD `Φ = UΛV`, left-multiplying `Y = ΦS + W` by `Uᴴ` gives
`R = ΨS + W'` with `Ψ = UᴴΦ = ΛV`. The noise stays white because `U` is
unitary.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .phase import RisPhaseMatrix


class UnitaryTransformError(RuntimeError):
    """Raised when the SVD of the phase matrix does not converge."""


@dataclass(frozen=True)
class TransformedModel:
    """Observation model after the unitary transform.

    Attributes:
        phase (RisPhaseMatrix): The original phase matrix `Φ`.
        U (np.ndarray): Unitary L×L factor of the SVD.
        singular_values (np.ndarray): Singular values of `Φ`, length `min(L, N)`.
        Psi (np.ndarray): Transformed sensing matrix `UᴴΦ`, L×N.
        R (np.ndarray): Transformed observations `UᴴY`, L×J.
        psi (np.ndarray): Row-wise energies `Σ_n |Ψ_{l,n}|²`, length L.
    """  # noqa: E501

    phase: RisPhaseMatrix
    U: np.ndarray
    singular_values: np.ndarray
    Psi: np.ndarray
    R: np.ndarray
    psi: np.ndarray

    @property
    def rows(self) -> int:
        """Number of rows of `Ψ` and `R`."""
        return self.Psi.shape[0]


def unitary_transform(
    phase: RisPhaseMatrix,
    Y: np.ndarray,
) -> TransformedModel:
    """Applies the SVD-based unitary transform.

    When `L <= N` the economic SVD already gives a square `U`. When `L > N`
    the complete SVD is used so that `U` stays L×L unitary and `Ψ` gets
    `L - N` zero rows, which keeps every observation row in `R`.

    Args:
        phase (RisPhaseMatrix): Phase matrix `Φ`, L×N.
        Y (np.ndarray): Observations, L×J.

    Returns:
        The transformed model.

    Raises:
        UnitaryTransformError: If the SVD fails.

    Examples:
        >>> from risuamp.model.phase import PhaseMatrixKind
        >>> phase = RisPhaseMatrix(phi=np.eye(2, dtype=complex), kind=PhaseMatrixKind.PARTIAL_DFT)
        >>> model = unitary_transform(phase, np.ones((2, 3), dtype=complex))
        >>> model.psi.tolist()
        [1.0, 1.0]
    """  # noqa: E501
    phi = phase.phi
    L, N = phi.shape

    if Y.shape[0] != L:
        raise ValueError(f"Y has {Y.shape[0]} rows but Φ has {L}")

    try:
        U, singular_values, _ = scipy.linalg.svd(phi, full_matrices=L > N)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise UnitaryTransformError(f"SVD of the {L}×{N} phase matrix failed") from e

    Uh = U.conj().T
    Psi = Uh @ phi
    R = Uh @ Y
    psi = np.sum(np.abs(Psi) ** 2, axis=1)

    return TransformedModel(
        phase=phase,
        U=U,
        singular_values=singular_values,
        Psi=Psi,
        R=R,
        psi=psi,
    )
