"""Algebra of complex Gaussian messages.

Messages are `(mean, variance)` pairs of arrays, broadcast element-wise.
"""

import math

import numpy as np


def gaussian_product(
    means: np.ndarray,
    variances: np.ndarray,
    *,
    axis: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Multiplies the Gaussian messages laid along `axis`.

    Args:
        means (np.ndarray): Message means.
        variances (np.ndarray): Message variances, broadcastable to `means`.
        axis (int): Axis along which the messages are combined.

    Returns:
        The `(mean, variance)` of the normalized product.

    Examples:
        >>> mean, var = gaussian_product(np.array([4.0, 0.0]), np.array([2.0, 2.0]), axis=0)
        >>> float(mean), float(var)
        (2.0, 1.0)
    """  # noqa: E501
    variances = np.broadcast_to(variances, means.shape)
    precision = np.sum(1 / variances, axis=axis)
    variance = 1 / precision
    mean = variance * np.sum(means / variances, axis=axis)

    return mean, variance


def gaussian_extrinsic(
    belief_mean: np.ndarray,
    belief_variance: np.ndarray,
    incoming_mean: np.ndarray,
    incoming_variance: np.ndarray,
    *,
    variance_cap: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Divides a belief by one of its incoming messages.

    Where the resulting precision is not above `1/variance_cap`, the message
    is replaced by `(belief mean, variance_cap)`.

    Args:
        belief_mean (np.ndarray): Mean of the belief.
        belief_variance (np.ndarray): Variance of the belief.
        incoming_mean (np.ndarray): Mean of the message to remove.
        incoming_variance (np.ndarray): Variance of the message to remove.
        variance_cap (float): Largest variance of the result.

    Returns:
        The `(mean, variance)` of the extrinsic message.

    Examples:
        >>> mean, var = gaussian_extrinsic(
        ...     np.array(2.0), np.array(1.0), np.array(1.0), np.array(2.0), variance_cap=1e6
        ... )
        >>> float(mean), float(var)
        (3.0, 2.0)
    """  # noqa: E501
    precision = 1 / belief_variance - 1 / incoming_variance
    valid = precision > 1 / variance_cap
    safe_precision = np.where(valid, precision, 1 / variance_cap)

    variance = np.where(valid, 1 / safe_precision, variance_cap)
    mean = np.where(
        valid,
        variance * (belief_mean / belief_variance - incoming_mean / incoming_variance),
        np.broadcast_to(belief_mean, np.shape(variance)),
    )

    return mean, variance


def apply_prior(
    mean: np.ndarray,
    variance: np.ndarray,
    rho: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Combines a message with the zero-mean prior `CN(0, rho)`.

    Examples:
        >>> mean, var = apply_prior(np.array(2.0), np.array(1.0), 1.0)
        >>> float(mean), float(var)
        (1.0, 0.5)
    """
    if math.isinf(rho):
        return mean, variance

    shrink = rho / (rho + variance)

    return mean * shrink, variance * shrink


def product_message(
    h_mean: np.ndarray,
    h_variance: np.ndarray,
    g_mean: np.ndarray,
    g_variance: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Gaussian approximation of the product of two independent Gaussian variables.

    Returns:
        Mean `h·g` and variance `|h|²ν_g + ν_h|g|² + ν_h·ν_g`.

    Examples:
        >>> mean, var = product_message(np.array(0.0), np.array(1.0), np.array(2.0), np.array(0.5))
        >>> float(mean), float(var)
        (0.0, 4.5)
    """  # noqa: E501
    mean = h_mean * g_mean
    variance = (
        np.abs(h_mean) ** 2 * g_variance
        + h_variance * np.abs(g_mean) ** 2
        + h_variance * g_variance
    )

    return mean, variance
