"""Khatri-Rao structure of the reduced observation model.

Every RIS unit `n` contributes the column `s̃_n = h_n ⊗ g_n`, and the
N×J signal matrix is `S = (Hᵀ ⊙ G)ᵀ`. Entries of a length-J vector are
always laid out with `j = k·M + m` (k outer, m inner, zero-based).
"""

import numpy as np

from .dims import ChannelPair


def khatri_rao_column(
    h_n: np.ndarray,
    g_n: np.ndarray,
) -> np.ndarray:
    """Computes `h_n ⊗ g_n`.

    Args:
        h_n (np.ndarray): Vector of length K.
        g_n (np.ndarray): Vector of length M.

    Returns:
        Vector of length `K·M` whose entry `k·M + m` is `h_n[k]·g_n[m]`.

    Examples:
        >>> khatri_rao_column(np.array([1, 2]), np.array([3, 4])).tolist()
        [3, 4, 6, 8]
        >>> khatri_rao_column(np.array([1]), np.array([5, 6])).tolist()
        [5, 6]
    """
    return np.kron(h_n, g_n)


def build_signal_matrix(
    channels: ChannelPair,
) -> np.ndarray:
    """Builds `S = (Hᵀ ⊙ G)ᵀ` without forming the Kronecker product `Hᵀ ⊗ G`.

    Args:
        channels (ChannelPair): Channel matrices.

    Returns:
        Complex N×J matrix whose row `n` is `khatri_rao_column(h_n, g_n)`.

    Examples:
        >>> H = np.array([[1, 2]])
        >>> G = np.array([[3], [4]])
        >>> build_signal_matrix(ChannelPair(H=H, G=G)).tolist()
        [[3, 4, 6, 8]]
    """  # noqa: E501
    H, G = channels.H, channels.G
    n = H.shape[0]

    # (N, K, 1) * (N, 1, M) flattens row-major into k outer, m inner
    return (H[:, :, None] * G.T[:, None, :]).reshape(n, -1)


def vectorized_model_oracle(
    channels: ChannelPair,
    phi_row: np.ndarray,
) -> np.ndarray:
    """Evaluates `(Hᵀ ⊗ G)·vec(Diag(φ))` literally.

    This is the full Kronecker form of one training block before the
    sparsity of `vec(Diag(φ))` is exploited. It is quadratic in `N` in
    memory and only meant as an independent check of
    [`build_signal_matrix`][risuamp.model.khatri_rao.build_signal_matrix].

    Args:
        channels (ChannelPair): Channel matrices.
        phi_row (np.ndarray): One row of the phase matrix, length N.

    Returns:
        Vector of length J.
    """
    H, G = channels.H, channels.G
    n = H.shape[0]

    # vec stacks columns, so Diag(φ)[i, i] lands at i·N + i
    diag_vec = np.zeros(n * n, dtype=np.result_type(phi_row, np.complex128))
    diag_vec[np.arange(n) * (n + 1)] = phi_row

    return np.kron(H.T, G) @ diag_vec
