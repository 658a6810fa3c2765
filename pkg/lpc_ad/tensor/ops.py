"""Differentiable operations on ``Tensor`` values.

Binary operations require identical shapes; the only implicit expansion is
multiplication by a Python scalar (``scale``). Row-wise expansion is spelled
out by dedicated operations (``add_bias``, ``scale_rows``).
"""
from typing import Sequence, Tuple

import numpy as np
from scipy.special import expit

from lpc_ad.error import DimensionError, ContractError
from lpc_ad.logger.messages import (
    error_shape_mismatch,
    error_unexpected_rank,
    error_unknown_elementwise_op,
    error_empty_sequence,
)
from lpc_ad.tensor.tape import BackwardFn, active_tape
from lpc_ad.tensor.tensor import Tensor


def _result(
    op_name: str,
    inputs: Sequence[Tensor],
    value: np.ndarray,
    backward_fn: BackwardFn,
) -> Tensor:
    out = Tensor._from_op(value, op_name)
    tape = active_tape()
    if tape is not None and any(t.requires_grad for t in inputs):
        out.requires_grad = True
        out._is_leaf = False
        tape.record(op_name, inputs, out, backward_fn)
    return out


def _same_shape(op_name: str, a: Tensor, b: Tensor) -> None:
    if a.shape != b.shape:
        raise DimensionError(error_shape_mismatch(op_name, a.shape, b.shape))


def _rank(op_name: str, a: Tensor, expected: int) -> None:
    if a.ndim != expected:
        raise DimensionError(error_unexpected_rank(op_name, expected, a.shape))


# -------------------------------
# Linear algebra
# -------------------------------


def matmul(a: Tensor, b: Tensor) -> Tensor:
    _rank("matmul", a, 2)
    _rank("matmul", b, 2)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(error_shape_mismatch("matmul", a.shape, b.shape))
    a_data, b_data = a.data, b.data

    def backward_fn(g: np.ndarray):
        return g @ b_data.T, a_data.T @ g

    return _result("matmul", (a, b), a_data @ b_data, backward_fn)


def transpose(a: Tensor) -> Tensor:
    _rank("transpose", a, 2)

    def backward_fn(g: np.ndarray):
        return (g.T,)

    return _result("transpose", (a,), a.data.T, backward_fn)


def reshape(a: Tensor, shape: Tuple[int, ...]) -> Tensor:
    if int(np.prod(shape)) != a.size:
        raise DimensionError(error_shape_mismatch("reshape", a.shape, shape))
    original = a.shape

    def backward_fn(g: np.ndarray):
        return (g.reshape(original),)

    return _result("reshape", (a,), a.data.reshape(shape), backward_fn)


# -------------------------------
# Elementwise
# -------------------------------


def add(a: Tensor, b: Tensor) -> Tensor:
    _same_shape("add", a, b)

    def backward_fn(g: np.ndarray):
        return g, g

    return _result("add", (a, b), a.data + b.data, backward_fn)


def sub(a: Tensor, b: Tensor) -> Tensor:
    _same_shape("sub", a, b)

    def backward_fn(g: np.ndarray):
        return g, -g

    return _result("sub", (a, b), a.data - b.data, backward_fn)


def mul(a: Tensor, b: Tensor) -> Tensor:
    _same_shape("mul", a, b)
    a_data, b_data = a.data, b.data

    def backward_fn(g: np.ndarray):
        return g * b_data, g * a_data

    return _result("mul", (a, b), a_data * b_data, backward_fn)


def scale(a: Tensor, factor: float) -> Tensor:
    factor = float(factor)

    def backward_fn(g: np.ndarray):
        return (g * factor,)

    return _result("scale", (a,), a.data * factor, backward_fn)


def sigmoid(a: Tensor) -> Tensor:
    s = expit(a.data)

    def backward_fn(g: np.ndarray):
        return (g * s * (1.0 - s),)

    return _result("sigmoid", (a,), s, backward_fn)


def tanh(a: Tensor) -> Tensor:
    t = np.tanh(a.data)

    def backward_fn(g: np.ndarray):
        return (g * (1.0 - t * t),)

    return _result("tanh", (a,), t, backward_fn)


def abs(a: Tensor) -> Tensor:
    # subgradient 0 at 0
    sign = np.sign(a.data)

    def backward_fn(g: np.ndarray):
        return (g * sign,)

    return _result("abs", (a,), np.abs(a.data), backward_fn)


def exp(a: Tensor) -> Tensor:
    e = np.exp(a.data)

    def backward_fn(g: np.ndarray):
        return (g * e,)

    return _result("exp", (a,), e, backward_fn)


_UNARY = {"sigmoid": sigmoid, "tanh": tanh, "abs": abs, "exp": exp}
_BINARY = {"add": add, "sub": sub, "mul": mul}


def elementwise(op: str, *args) -> Tensor:
    """Dispatches ``op`` in {add, sub, mul, sigmoid, tanh, abs, exp, scale}.

    ``scale`` takes ``(tensor, factor)``.
    """
    if op in _UNARY and len(args) == 1:
        return _UNARY[op](args[0])
    if op in _BINARY and len(args) == 2:
        return _BINARY[op](args[0], args[1])
    if op == "scale" and len(args) == 2:
        return scale(args[0], args[1])
    raise ContractError(error_unknown_elementwise_op(op))


# -------------------------------
# Row-wise expansion
# -------------------------------


def add_bias(x: Tensor, bias: Tensor) -> Tensor:
    """Adds ``bias[n]`` to every row of ``x[B x n]``."""
    _rank("add_bias", x, 2)
    _rank("add_bias", bias, 1)
    if x.shape[1] != bias.shape[0]:
        raise DimensionError(error_shape_mismatch("add_bias", x.shape, bias.shape))

    def backward_fn(g: np.ndarray):
        return g, g.sum(axis=0)

    return _result("add_bias", (x, bias), x.data + bias.data, backward_fn)


def scale_rows(x: Tensor, weights: Tensor) -> Tensor:
    """Multiplies row ``i`` of ``x[B x n]`` by ``weights[i, 0]``."""
    _rank("scale_rows", x, 2)
    _rank("scale_rows", weights, 2)
    if weights.shape != (x.shape[0], 1):
        raise DimensionError(error_shape_mismatch("scale_rows", x.shape, weights.shape))
    x_data, w_data = x.data, weights.data

    def backward_fn(g: np.ndarray):
        return g * w_data, (g * x_data).sum(axis=1, keepdims=True)

    return _result("scale_rows", (x, weights), x_data * w_data, backward_fn)


# -------------------------------
# Structure
# -------------------------------


def concat_cols(tensors: Sequence[Tensor]) -> Tensor:
    if not tensors:
        raise ContractError(error_empty_sequence("concat_cols input"))
    for t in tensors:
        _rank("concat_cols", t, 2)
        if t.shape[0] != tensors[0].shape[0]:
            raise DimensionError(
                error_shape_mismatch("concat_cols", tensors[0].shape, t.shape)
            )
    bounds = np.cumsum([0] + [t.shape[1] for t in tensors])

    def backward_fn(g: np.ndarray):
        return [g[:, bounds[i] : bounds[i + 1]] for i in range(len(bounds) - 1)]

    return _result(
        "concat_cols",
        tuple(tensors),
        np.concatenate([t.data for t in tensors], axis=1),
        backward_fn,
    )


def concat_rows(tensors: Sequence[Tensor]) -> Tensor:
    if not tensors:
        raise ContractError(error_empty_sequence("concat_rows input"))
    for t in tensors:
        _rank("concat_rows", t, 2)
        if t.shape[1] != tensors[0].shape[1]:
            raise DimensionError(
                error_shape_mismatch("concat_rows", tensors[0].shape, t.shape)
            )
    bounds = np.cumsum([0] + [t.shape[0] for t in tensors])

    def backward_fn(g: np.ndarray):
        return [g[bounds[i] : bounds[i + 1], :] for i in range(len(bounds) - 1)]

    return _result(
        "concat_rows",
        tuple(tensors),
        np.concatenate([t.data for t in tensors], axis=0),
        backward_fn,
    )


def slice_cols(a: Tensor, start: int, stop: int) -> Tensor:
    _rank("slice_cols", a, 2)
    if not 0 <= start < stop <= a.shape[1]:
        raise DimensionError(error_shape_mismatch("slice_cols", a.shape, (start, stop)))
    shape = a.shape

    def backward_fn(g: np.ndarray):
        full = np.zeros(shape)
        full[:, start:stop] = g
        return (full,)

    return _result("slice_cols", (a,), a.data[:, start:stop], backward_fn)


def slice_rows(a: Tensor, start: int, stop: int) -> Tensor:
    _rank("slice_rows", a, 2)
    if not 0 <= start < stop <= a.shape[0]:
        raise DimensionError(error_shape_mismatch("slice_rows", a.shape, (start, stop)))
    shape = a.shape

    def backward_fn(g: np.ndarray):
        full = np.zeros(shape)
        full[start:stop, :] = g
        return (full,)

    return _result("slice_rows", (a,), a.data[start:stop, :], backward_fn)


# -------------------------------
# Reductions
# -------------------------------


def sum_all(a: Tensor) -> Tensor:
    shape = a.shape

    def backward_fn(g: np.ndarray):
        return (np.full(shape, float(np.reshape(g, -1)[0])),)

    return _result("sum_all", (a,), np.array(a.data.sum()), backward_fn)


def softmax_rows(a: Tensor) -> Tensor:
    _rank("softmax_rows", a, 2)
    shifted = a.data - a.data.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    s = e / e.sum(axis=1, keepdims=True)

    def backward_fn(g: np.ndarray):
        return (s * (g - (g * s).sum(axis=1, keepdims=True)),)

    return _result("softmax_rows", (a,), s, backward_fn)


def row_norms(a: Tensor) -> Tensor:
    """Euclidean norm of every row of ``a[B x n]`` as a ``[B x 1]`` tensor."""
    _rank("row_norms", a, 2)
    a_data = a.data
    norms = np.sqrt((a_data * a_data).sum(axis=1, keepdims=True))

    def backward_fn(g: np.ndarray):
        # subgradient 0 at the origin
        safe = np.where(norms > 0.0, norms, 1.0)
        return (np.where(norms > 0.0, g * a_data / safe, 0.0),)

    return _result("row_norms", (a,), norms, backward_fn)
