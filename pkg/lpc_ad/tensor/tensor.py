from typing import Optional, Tuple, Union, Any

import numpy as np

from lpc_ad.error import ContractError, NonFiniteValueError
from lpc_ad.logger.messages import error_non_finite_value


def ensure_finite(value: np.ndarray, op_name: str) -> np.ndarray:
    if not np.all(np.isfinite(value)):
        raise NonFiniteValueError(error_non_finite_value(op_name))
    return value


class Tensor:
    """A dense float64 array that can take part in reverse-mode differentiation.

    Tensors created by users are leaves. Tensors returned by the functions in
    ``lpc_ad.tensor.ops`` are produced by an operation and, while a
    ``ComputationTape`` is active, get recorded on it whenever one of their
    inputs requires gradients.
    """

    data: np.ndarray
    requires_grad: bool
    grad: Optional[np.ndarray]
    name: Optional[str]

    def __init__(
        self,
        data: Any,
        *,
        requires_grad: bool = False,
        name: Optional[str] = None,
    ):
        """
        :param data: Anything numpy can turn into a float64 array (copied).
        :param requires_grad: True if backward() should populate ``grad``.
        :param name: Optional name used in messages and checkpoints.
        """
        self.data = ensure_finite(
            np.array(data, dtype=np.float64, order="C"), name or "Tensor"
        )
        self.requires_grad = requires_grad
        self.grad = None
        self.name = name
        self._is_leaf = True

    @classmethod
    def _from_op(cls, value: np.ndarray, op_name: str) -> "Tensor":
        tensor = cls.__new__(cls)
        tensor.data = ensure_finite(
            np.array(value, dtype=np.float64, order="C"), op_name
        )
        tensor.requires_grad = False
        tensor.grad = None
        tensor.name = None
        tensor._is_leaf = True
        return tensor

    @staticmethod
    def zeros(shape: Tuple[int, ...], *, requires_grad: bool = False) -> "Tensor":
        return Tensor(np.zeros(shape), requires_grad=requires_grad)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(self.data.shape)

    @property
    def size(self) -> int:
        return int(self.data.size)

    @property
    def ndim(self) -> int:
        return int(self.data.ndim)

    @property
    def is_leaf(self) -> bool:
        return self._is_leaf

    def item(self) -> float:
        if self.size != 1:
            raise ContractError(
                f"item() requires a single-element tensor (shape: {self.shape})"
            )
        return float(self.data.reshape(-1)[0])

    def numpy(self) -> np.ndarray:
        return self.data.copy()

    def detach(self) -> "Tensor":
        return Tensor(self.data)

    def zero_grad(self) -> None:
        self.grad = None

    # operator sugar; the functions in ops are the canonical API

    def __add__(self, other: "Tensor") -> "Tensor":
        from lpc_ad.tensor import ops

        return ops.add(self, other)

    def __sub__(self, other: "Tensor") -> "Tensor":
        from lpc_ad.tensor import ops

        return ops.sub(self, other)

    def __mul__(self, other: Union["Tensor", float]) -> "Tensor":
        from lpc_ad.tensor import ops

        if isinstance(other, Tensor):
            return ops.mul(self, other)
        return ops.scale(self, float(other))

    def __rmul__(self, other: float) -> "Tensor":
        from lpc_ad.tensor import ops

        return ops.scale(self, float(other))

    def __neg__(self) -> "Tensor":
        from lpc_ad.tensor import ops

        return ops.scale(self, -1.0)

    def __matmul__(self, other: "Tensor") -> "Tensor":
        from lpc_ad.tensor import ops

        return ops.matmul(self, other)

    def __repr__(self) -> str:
        label = f" name={self.name!r}" if self.name else ""
        return (
            f"Tensor(shape={self.shape}{label}, requires_grad={self.requires_grad})"
        )
