from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from lpc_ad.error import ContractError, DimensionError
from lpc_ad.layers.init import uniform_tensor, constant_tensor
from lpc_ad.logger.messages import error_empty_sequence, error_shape_mismatch
from lpc_ad.tensor import Tensor, ops

GATES = ("input", "forget", "output", "candidate")

LstmState = Tuple[Tensor, Tensor]


class LstmCell:
    """A single LSTM layer.

    Every gate owns an input weight ``[d_h x d_in]``, a recurrent weight
    ``[d_h x d_h]`` and a bias ``[d_h]``.
    """

    input_weights: Dict[str, Tensor]
    hidden_weights: Dict[str, Tensor]
    biases: Dict[str, Tensor]

    def __init__(
        self,
        *,
        input_weights: Dict[str, Tensor],
        hidden_weights: Dict[str, Tensor],
        biases: Dict[str, Tensor],
    ):
        self.input_weights = input_weights
        self.hidden_weights = hidden_weights
        self.biases = biases
        d_h, d_in = input_weights["input"].shape
        for gate in GATES:
            shapes = (
                input_weights[gate].shape,
                hidden_weights[gate].shape,
                biases[gate].shape,
            )
            if shapes != ((d_h, d_in), (d_h, d_h), (d_h,)):
                raise DimensionError(
                    error_shape_mismatch(f"LstmCell({gate})", (d_h, d_in), shapes[0])
                )

    @classmethod
    def initialize(
        cls,
        *,
        in_dim: int,
        hidden_dim: int,
        rng: np.random.Generator,
        forget_bias: float = 1.0,
    ) -> "LstmCell":
        input_weights, hidden_weights, biases = {}, {}, {}
        for gate in GATES:
            input_weights[gate] = uniform_tensor(rng, (hidden_dim, in_dim), hidden_dim)
            hidden_weights[gate] = uniform_tensor(
                rng, (hidden_dim, hidden_dim), hidden_dim
            )
            if gate == "forget":
                biases[gate] = constant_tensor((hidden_dim,), forget_bias)
            else:
                biases[gate] = uniform_tensor(rng, (hidden_dim,), hidden_dim)
        return LstmCell(
            input_weights=input_weights, hidden_weights=hidden_weights, biases=biases
        )

    @property
    def in_dim(self) -> int:
        return self.input_weights["input"].shape[1]

    @property
    def hidden_dim(self) -> int:
        return self.input_weights["input"].shape[0]

    def parameters(self, prefix: str) -> Dict[str, Tensor]:
        params = {}
        for gate in GATES:
            params[f"{prefix}.{gate}.input_weight"] = self.input_weights[gate]
            params[f"{prefix}.{gate}.hidden_weight"] = self.hidden_weights[gate]
            params[f"{prefix}.{gate}.bias"] = self.biases[gate]
        return params

    def zero_state(self, batch: int) -> LstmState:
        zeros = np.zeros((batch, self.hidden_dim))
        return Tensor(zeros), Tensor(zeros)


class _TransposedWeights:
    # transposes computed once per sequence instead of once per step
    def __init__(self, cell: LstmCell):
        self.input = {g: ops.transpose(cell.input_weights[g]) for g in GATES}
        self.hidden = {g: ops.transpose(cell.hidden_weights[g]) for g in GATES}
        self.biases = cell.biases


def _step(
    weights: _TransposedWeights, x: Tensor, h: Tensor, c: Tensor
) -> LstmState:
    pre = {
        g: ops.add_bias(
            ops.add(ops.matmul(x, weights.input[g]), ops.matmul(h, weights.hidden[g])),
            weights.biases[g],
        )
        for g in GATES
    }
    i = ops.sigmoid(pre["input"])
    f = ops.sigmoid(pre["forget"])
    o = ops.sigmoid(pre["output"])
    candidate = ops.tanh(pre["candidate"])
    c_next = ops.add(ops.mul(f, c), ops.mul(i, candidate))
    h_next = ops.mul(o, ops.tanh(c_next))
    return h_next, c_next


def _as_batch(t: Tensor) -> Tensor:
    return ops.reshape(t, (1, t.shape[0])) if t.ndim == 1 else t


def _check_step_shapes(cell: LstmCell, x: Tensor, h: Tensor, c: Tensor) -> None:
    batch = x.shape[0]
    if x.ndim != 2 or x.shape[1] != cell.in_dim:
        raise DimensionError(
            error_shape_mismatch("lstm_step(x)", x.shape, (batch, cell.in_dim))
        )
    for name, state in (("h", h), ("c", c)):
        if state.shape != (batch, cell.hidden_dim):
            raise DimensionError(
                error_shape_mismatch(
                    f"lstm_step({name})", state.shape, (batch, cell.hidden_dim)
                )
            )


def lstm_step(cell: LstmCell, x: Tensor, h: Tensor, c: Tensor) -> LstmState:
    """One LSTM recurrence; 1-d inputs are treated as a batch of one."""
    squeeze = x.ndim == 1
    x, h, c = _as_batch(x), _as_batch(h), _as_batch(c)
    _check_step_shapes(cell, x, h, c)
    h_next, c_next = _step(_TransposedWeights(cell), x, h, c)
    if squeeze:
        return (
            ops.reshape(h_next, (cell.hidden_dim,)),
            ops.reshape(c_next, (cell.hidden_dim,)),
        )
    return h_next, c_next


def lstm_scan(
    cell: LstmCell,
    xs: Sequence[Tensor],
    h0: Optional[Tensor] = None,
    c0: Optional[Tensor] = None,
) -> Tuple[List[Tensor], List[Tensor]]:
    """Folds ``lstm_step`` over ``xs`` left to right.

    :return: hidden states and cell states, one per input step.
    """
    if not xs:
        raise ContractError(error_empty_sequence("LSTM input sequence"))
    batch = xs[0].shape[0]
    zero_h, zero_c = cell.zero_state(batch)
    h = h0 if h0 is not None else zero_h
    c = c0 if c0 is not None else zero_c
    weights = _TransposedWeights(cell)
    hidden_states, cell_states = [], []
    for x in xs:
        _check_step_shapes(cell, x, h, c)
        h, c = _step(weights, x, h, c)
        hidden_states.append(h)
        cell_states.append(c)
    return hidden_states, cell_states


def lstm_encode(
    cell: LstmCell,
    xs: Sequence[Tensor],
    h0: Optional[Tensor] = None,
    c0: Optional[Tensor] = None,
) -> List[Tensor]:
    return lstm_scan(cell, xs, h0, c0)[0]
