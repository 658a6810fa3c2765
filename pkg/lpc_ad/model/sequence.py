from typing import Dict, List, Sequence

import numpy as np

from lpc_ad.error import ContractError, DimensionError
from lpc_ad.layers import LinearLayer, LstmCell, lstm_encode
from lpc_ad.logger.messages import error_empty_sequence, error_shape_mismatch
from lpc_ad.tensor import Tensor

LatentSeq = List[Tensor]


class _LstmLinear:
    lstm: LstmCell
    linear: LinearLayer

    def __init__(self, *, lstm: LstmCell, linear: LinearLayer):
        if lstm.hidden_dim != linear.in_dim:
            raise DimensionError(
                error_shape_mismatch(
                    type(self).__name__, (lstm.hidden_dim,), (linear.in_dim,)
                )
            )
        self.lstm = lstm
        self.linear = linear

    @classmethod
    def initialize(
        cls, *, in_dim: int, hidden_dim: int, out_dim: int, rng: np.random.Generator
    ):
        return cls(
            lstm=LstmCell.initialize(in_dim=in_dim, hidden_dim=hidden_dim, rng=rng),
            linear=LinearLayer.initialize(in_dim=hidden_dim, out_dim=out_dim, rng=rng),
        )

    @property
    def in_dim(self) -> int:
        return self.lstm.in_dim

    @property
    def out_dim(self) -> int:
        return self.linear.out_dim

    def parameters(self, prefix: str) -> Dict[str, Tensor]:
        params = self.lstm.parameters(f"{prefix}.lstm")
        params.update(self.linear.parameters(f"{prefix}.linear"))
        return params

    def run(self, steps: Sequence[Tensor]) -> List[Tensor]:
        """One continuous LSTM pass, every hidden state mapped by the linear layer."""
        if not steps:
            raise ContractError(error_empty_sequence(f"{type(self).__name__} input"))
        for step in steps:
            if step.ndim != 2 or step.shape[1] != self.in_dim:
                raise DimensionError(
                    error_shape_mismatch(
                        type(self).__name__, step.shape, (step.shape[0], self.in_dim)
                    )
                )
        return [self.linear(h) for h in lstm_encode(self.lstm, steps)]


class SeqEncoder(_LstmLinear):
    """LSTM over M-dimensional observations followed by a linear map to N."""


class SeqDecoder(_LstmLinear):
    """LSTM over N-dimensional latents followed by a linear map back to M."""
