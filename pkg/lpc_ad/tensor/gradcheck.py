from typing import Callable, Mapping, Sequence, Union

import numpy as np

from lpc_ad.tensor.tape import ComputationTape, backward
from lpc_ad.tensor.tensor import Tensor

Params = Union[Sequence[Tensor], Mapping[str, Tensor]]


def finite_diff_check(
    f: Callable[[], Tensor],
    params: Params,
    h: float = 1e-5,
    floor: float = 1e-6,
    relative_floor: float = 1e-5,
) -> float:
    """Compares autodiff gradients of ``f`` against central differences.

    :param f: Deterministic function of the current parameter values returning a scalar.
    :param params: The tensors to differentiate against.
    :param h: The finite-difference step.
    :param floor: Lower bound of the relative-error denominator, so that two
        vanishing gradients compare equal.
    :param relative_floor: A second lower bound of the denominator as a fraction
        of |f|, the scale of the central-difference rounding error.
    :return: The worst relative error over all parameter entries.
    """
    tensors = list(params.values()) if isinstance(params, Mapping) else list(params)
    saved_flags = [t.requires_grad for t in tensors]
    for t in tensors:
        t.requires_grad = True
        t.grad = None

    with ComputationTape() as tape:
        root = f()
    backward(root, tape)
    floor = max(floor, relative_floor * abs(root.item()))
    analytic = [
        t.grad.copy() if t.grad is not None else np.zeros_like(t.data) for t in tensors
    ]

    worst = 0.0
    for tensor, grad in zip(tensors, analytic):
        flat = tensor.data.reshape(-1)
        flat_grad = grad.reshape(-1)
        for i in range(flat.size):
            original = flat[i]
            flat[i] = original + h
            f_plus = f().item()
            flat[i] = original - h
            f_minus = f().item()
            flat[i] = original
            numeric = (f_plus - f_minus) / (2.0 * h)
            denominator = max(abs(numeric), abs(flat_grad[i]), floor)
            worst = max(worst, abs(numeric - flat_grad[i]) / denominator)

    for t, flag in zip(tensors, saved_flags):
        t.requires_grad = flag
        t.grad = None
    return worst
