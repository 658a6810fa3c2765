import math
from typing import Sequence, Tuple

import numpy as np

from lpc_ad.error import DimensionError
from lpc_ad.logger.messages import error_shape_mismatch, error_length_mismatch
from lpc_ad.model.sequence import LatentSeq
from lpc_ad.tensor import Tensor, ops


def sample_noise(
    rng: np.random.Generator, sigma2: float, shape: Tuple[int, ...]
) -> np.ndarray:
    """Draws i.i.d. N(0, sigma2) noise; sigma2 == 0 yields zeros."""
    if sigma2 == 0.0:
        return np.zeros(shape)
    return rng.normal(0.0, math.sqrt(sigma2), size=shape)


def rand_perturb(
    z_future: Sequence[Tensor], z_predicted: Sequence[Tensor], eps: np.ndarray
) -> LatentSeq:
    """``Z + eps * |Z - Z_hat|`` step by step.

    :param z_future: l tensors ``[B x N]``, the encoded future window.
    :param z_predicted: l tensors ``[B x N]``, the predictor output.
    :param eps: noise of shape ``(B, l, N)`` (or ``(l, N)`` when B is 1).
    """
    if len(z_future) != len(z_predicted):
        raise DimensionError(
            error_length_mismatch("rand_perturb", len(z_future), len(z_predicted))
        )
    batch, latent_dim = z_future[0].shape
    eps = np.asarray(eps, dtype=np.float64)
    if eps.ndim == 2:
        eps = eps.reshape((1,) + eps.shape)
    if eps.shape != (batch, len(z_future), latent_dim):
        raise DimensionError(
            error_shape_mismatch(
                "rand_perturb", eps.shape, (batch, len(z_future), latent_dim)
            )
        )
    perturbed = []
    for j, (z, z_hat) in enumerate(zip(z_future, z_predicted)):
        residual = ops.abs(ops.sub(z, z_hat))
        perturbed.append(ops.add(z, ops.mul(Tensor(eps[:, j, :]), residual)))
    return perturbed
