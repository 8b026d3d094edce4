"""Protocol for a channel estimator."""

from typing import Protocol

import numpy as np

from risuamp.model import RisPhaseMatrix, SystemDims

from .estimate import ChannelEstimate


class ChannelEstimator(Protocol):
    """Protocol for a channel estimator."""

    def __call__(
        self,
        Y: np.ndarray,
        phase: RisPhaseMatrix,
        dims: SystemDims,
        rng_seed: int,
    ) -> ChannelEstimate:  # pragma: no cover
        """Interface of a function that estimates `H` and `G` from observations.

        Args:
            Y (np.ndarray): Observations, L×J.
            phase (RisPhaseMatrix): RIS phase matrix used during training.
            dims (SystemDims): Sizes of the system.
            rng_seed (int): Seed for any random initialization.

        Returns:
            The channel estimate.
        """
        raise NotImplementedError()
