import threading
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from lpc_ad.error import ContractError
from lpc_ad.logger.messages import error_no_active_tape, error_non_scalar_root
from lpc_ad.tensor.tensor import Tensor

BackwardFn = Callable[[np.ndarray], Sequence[Optional[np.ndarray]]]


class TapeRecord:
    op_name: str
    inputs: Sequence[Tensor]
    output: Tensor
    backward_fn: BackwardFn

    def __init__(
        self,
        *,
        op_name: str,
        inputs: Sequence[Tensor],
        output: Tensor,
        backward_fn: BackwardFn,
    ):
        self.op_name = op_name
        self.inputs = inputs
        self.output = output
        self.backward_fn = backward_fn


_local = threading.local()


def _tape_stack() -> List["ComputationTape"]:
    stack = getattr(_local, "stack", None)
    if stack is None:
        stack = []
        _local.stack = stack
    return stack


def active_tape() -> Optional["ComputationTape"]:
    stack = _tape_stack()
    return stack[-1] if stack else None


class ComputationTape:
    """Records differentiable operations in execution order.

    A tape becomes active for the current thread inside a ``with`` block;
    operations run on other threads, or outside the block, are not recorded.
    """

    records: List[TapeRecord]

    def __init__(self):
        self.records = []

    def __enter__(self) -> "ComputationTape":
        _tape_stack().append(self)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        stack = _tape_stack()
        if stack and stack[-1] is self:
            stack.pop()

    def __len__(self) -> int:
        return len(self.records)

    def record(
        self,
        op_name: str,
        inputs: Sequence[Tensor],
        output: Tensor,
        backward_fn: BackwardFn,
    ) -> None:
        self.records.append(
            TapeRecord(
                op_name=op_name,
                inputs=tuple(inputs),
                output=output,
                backward_fn=backward_fn,
            )
        )


def backward(root: Tensor, tape: Optional[ComputationTape] = None) -> None:
    """Accumulates d(root)/d(leaf) into ``grad`` of every leaf that requires it.

    :param root: A single-element tensor produced on ``tape``.
    :param tape: The tape that recorded the computation (default: the active one).
    """
    if root.size != 1:
        raise ContractError(error_non_scalar_root(root.shape))
    tape = tape if tape is not None else active_tape()
    if tape is None:
        raise ContractError(error_no_active_tape())

    grads: Dict[int, np.ndarray] = {id(root): np.ones_like(root.data)}
    leaves: Dict[int, Tensor] = {}
    if root.is_leaf and root.requires_grad:
        leaves[id(root)] = root

    for record in reversed(tape.records):
        grad_out = grads.pop(id(record.output), None)
        if grad_out is None:
            continue
        input_grads = record.backward_fn(grad_out)
        for tensor, grad in zip(record.inputs, input_grads):
            if grad is None or not tensor.requires_grad:
                continue
            key = id(tensor)
            if key in grads:
                grads[key] = grads[key] + grad
            else:
                grads[key] = grad
            if tensor.is_leaf:
                leaves[key] = tensor

    for key, leaf in leaves.items():
        grad = grads.get(key)
        if grad is None:
            continue
        grad = np.reshape(grad, leaf.data.shape)
        leaf.grad = grad.copy() if leaf.grad is None else leaf.grad + grad
