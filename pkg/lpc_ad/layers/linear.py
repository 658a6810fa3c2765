from typing import Dict

import numpy as np

from lpc_ad.error import DimensionError
from lpc_ad.layers.init import uniform_tensor
from lpc_ad.logger.messages import error_shape_mismatch
from lpc_ad.tensor import Tensor, ops


class LinearLayer:
    weight: Tensor  # [out x in]
    bias: Tensor  # [out]

    def __init__(self, *, weight: Tensor, bias: Tensor):
        if weight.ndim != 2 or bias.shape != (weight.shape[0],):
            raise DimensionError(
                error_shape_mismatch("LinearLayer", weight.shape, bias.shape)
            )
        self.weight = weight
        self.bias = bias

    @classmethod
    def initialize(
        cls, *, in_dim: int, out_dim: int, rng: np.random.Generator
    ) -> "LinearLayer":
        return LinearLayer(
            weight=uniform_tensor(rng, (out_dim, in_dim), in_dim),
            bias=uniform_tensor(rng, (out_dim,), in_dim),
        )

    @property
    def in_dim(self) -> int:
        return self.weight.shape[1]

    @property
    def out_dim(self) -> int:
        return self.weight.shape[0]

    def parameters(self, prefix: str) -> Dict[str, Tensor]:
        return {f"{prefix}.weight": self.weight, f"{prefix}.bias": self.bias}

    def __call__(self, x: Tensor) -> Tensor:
        return linear_forward(self, x)


def linear_forward(layer: LinearLayer, x: Tensor) -> Tensor:
    """weight . x + bias for ``x[in]`` or for every row of ``x[B x in]``."""
    if x.ndim == 1:
        row = ops.reshape(x, (1, x.shape[0]))
        return ops.reshape(linear_forward(layer, row), (layer.out_dim,))
    if x.ndim != 2 or x.shape[1] != layer.in_dim:
        raise DimensionError(
            error_shape_mismatch("linear_forward", x.shape, layer.weight.shape)
        )
    return ops.add_bias(ops.matmul(x, ops.transpose(layer.weight)), layer.bias)
