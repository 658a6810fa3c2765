import math
from typing import Optional, Tuple

import numpy as np

from lpc_ad.tensor import Tensor


def uniform_tensor(
    rng: np.random.Generator,
    shape: Tuple[int, ...],
    fan: int,
    name: Optional[str] = None,
) -> Tensor:
    """Samples a trainable tensor uniformly from [-1/sqrt(fan), 1/sqrt(fan)]."""
    bound = 1.0 / math.sqrt(max(fan, 1))
    return Tensor(rng.uniform(-bound, bound, size=shape), requires_grad=True, name=name)


def constant_tensor(
    shape: Tuple[int, ...], value: float, name: Optional[str] = None
) -> Tensor:
    return Tensor(np.full(shape, value), requires_grad=True, name=name)
