from abc import ABCMeta, abstractmethod
from typing import Dict, List, Sequence, Tuple

import numpy as np

from lpc_ad.error import ContractError, DimensionError
from lpc_ad.layers import (
    AttentionParams,
    LinearLayer,
    LstmCell,
    attention_context,
    attention_scores,
    lstm_scan,
)
from lpc_ad.layers.init import uniform_tensor
from lpc_ad.logger.messages import error_empty_sequence, error_shape_mismatch
from lpc_ad.model.sequence import LatentSeq
from lpc_ad.tensor import Tensor, ops


class Predictor(metaclass=ABCMeta):
    """Maps l_h historical latents to l predicted latents."""

    kind: str

    @property
    @abstractmethod
    def future_window(self) -> int:
        raise NotImplementedError()

    @abstractmethod
    def parameters(self, prefix: str) -> Dict[str, Tensor]:
        raise NotImplementedError()

    @abstractmethod
    def __call__(self, history: Sequence[Tensor]) -> LatentSeq:
        raise NotImplementedError()


def _check_history(history: Sequence[Tensor], latent_dim: int) -> None:
    if not history:
        raise ContractError(error_empty_sequence("latent history"))
    for z in history:
        if z.ndim != 2 or z.shape[1] != latent_dim:
            raise DimensionError(
                error_shape_mismatch("predictor", z.shape, (z.shape[0], latent_dim))
            )


# -------------------------------
# Linear: P Z Q
# -------------------------------


class LinearPredictor(Predictor):
    kind = "linear"
    p: Tensor  # [N x N]
    q: Tensor  # [l_h x l]

    def __init__(self, *, p: Tensor, q: Tensor):
        if p.ndim != 2 or p.shape[0] != p.shape[1] or q.ndim != 2:
            raise DimensionError(
                error_shape_mismatch("LinearPredictor", p.shape, q.shape)
            )
        self.p = p
        self.q = q

    @classmethod
    def initialize(
        cls,
        *,
        latent_dim: int,
        history_window: int,
        future_window: int,
        rng: np.random.Generator,
    ) -> "LinearPredictor":
        return LinearPredictor(
            p=uniform_tensor(rng, (latent_dim, latent_dim), latent_dim),
            q=uniform_tensor(rng, (history_window, future_window), history_window),
        )

    @property
    def future_window(self) -> int:
        return self.q.shape[1]

    def parameters(self, prefix: str) -> Dict[str, Tensor]:
        return {f"{prefix}.p": self.p, f"{prefix}.q": self.q}

    def __call__(self, history: Sequence[Tensor]) -> LatentSeq:
        return predic_linear(self.p, self.q, history)


def predic_linear(p: Tensor, q: Tensor, history: Sequence[Tensor]) -> LatentSeq:
    """Predicts ``P Z Q`` where Z stacks the history latents as columns."""
    _check_history(history, p.shape[0])
    if q.shape[0] != len(history):
        raise DimensionError(
            error_shape_mismatch("predic_linear", q.shape, (len(history), q.shape[1]))
        )
    batch, latent_dim = history[0].shape
    # row b * N + n holds component n of sample b
    stacked = ops.concat_cols(
        [ops.reshape(z, (batch * latent_dim, 1)) for z in history]
    )
    mixed = ops.matmul(stacked, q)
    p_t = ops.transpose(p)
    columns = [ops.slice_cols(mixed, j, j + 1) for j in range(q.shape[1])]
    return [ops.matmul(ops.reshape(c, (batch, latent_dim)), p_t) for c in columns]


# -------------------------------
# LSTM seq2seq
# -------------------------------


class Seq2SeqPredictor(Predictor):
    kind = "seq2seq"
    encoder: LstmCell
    decoder: LstmCell
    output: LinearLayer

    def __init__(
        self,
        *,
        encoder: LstmCell,
        decoder: LstmCell,
        output: LinearLayer,
        future_window: int,
    ):
        if encoder.hidden_dim != decoder.hidden_dim or decoder.in_dim != output.out_dim:
            raise DimensionError(
                error_shape_mismatch(
                    "Seq2SeqPredictor",
                    (encoder.hidden_dim, decoder.in_dim),
                    (decoder.hidden_dim, output.out_dim),
                )
            )
        self.encoder = encoder
        self.decoder = decoder
        self.output = output
        self._future_window = future_window

    @classmethod
    def initialize(
        cls,
        *,
        latent_dim: int,
        hidden_dim: int,
        future_window: int,
        rng: np.random.Generator,
    ) -> "Seq2SeqPredictor":
        return Seq2SeqPredictor(
            encoder=LstmCell.initialize(
                in_dim=latent_dim, hidden_dim=hidden_dim, rng=rng
            ),
            decoder=LstmCell.initialize(
                in_dim=latent_dim, hidden_dim=hidden_dim, rng=rng
            ),
            output=LinearLayer.initialize(
                in_dim=hidden_dim, out_dim=latent_dim, rng=rng
            ),
            future_window=future_window,
        )

    @property
    def future_window(self) -> int:
        return self._future_window

    def parameters(self, prefix: str) -> Dict[str, Tensor]:
        params = self.encoder.parameters(f"{prefix}.encoder")
        params.update(self.decoder.parameters(f"{prefix}.decoder"))
        params.update(self.output.parameters(f"{prefix}.output"))
        return params

    def __call__(self, history: Sequence[Tensor]) -> LatentSeq:
        return predic_seq2seq(self, history)


def predic_seq2seq(predictor: Seq2SeqPredictor, history: Sequence[Tensor]) -> LatentSeq:
    """Autoregressive decoding seeded with the last history latent."""
    _check_history(history, predictor.output.out_dim)
    hs, cs = lstm_scan(predictor.encoder, history)
    h, c = hs[-1], cs[-1]
    x = history[-1]
    predictions = []
    for _ in range(predictor.future_window):
        (h,), (c,) = lstm_scan(predictor.decoder, [x], h, c)
        x = predictor.output(h)
        predictions.append(x)
    return predictions


# -------------------------------
# Attention seq2seq
# -------------------------------


class AttentionPredictor(Predictor):
    kind = "attention"
    encoder: LstmCell
    decoder: LstmCell  # input: [previous prediction, context]
    attention: AttentionParams
    output: LinearLayer

    def __init__(
        self,
        *,
        encoder: LstmCell,
        decoder: LstmCell,
        attention: AttentionParams,
        output: LinearLayer,
        future_window: int,
    ):
        latent_dim = output.out_dim
        if (
            encoder.hidden_dim != decoder.hidden_dim
            or decoder.in_dim != 2 * latent_dim
            or attention.hidden_dim != decoder.hidden_dim
            or attention.latent_dim != latent_dim
        ):
            raise DimensionError(
                error_shape_mismatch(
                    "AttentionPredictor",
                    (decoder.hidden_dim, decoder.in_dim),
                    (attention.hidden_dim, 2 * latent_dim),
                )
            )
        self.encoder = encoder
        self.decoder = decoder
        self.attention = attention
        self.output = output
        self._future_window = future_window

    @classmethod
    def initialize(
        cls,
        *,
        latent_dim: int,
        hidden_dim: int,
        future_window: int,
        rng: np.random.Generator,
    ) -> "AttentionPredictor":
        return AttentionPredictor(
            encoder=LstmCell.initialize(
                in_dim=latent_dim, hidden_dim=hidden_dim, rng=rng
            ),
            decoder=LstmCell.initialize(
                in_dim=2 * latent_dim, hidden_dim=hidden_dim, rng=rng
            ),
            attention=AttentionParams.initialize(
                hidden_dim=hidden_dim,
                latent_dim=latent_dim,
                align_dim=hidden_dim,
                rng=rng,
            ),
            output=LinearLayer.initialize(
                in_dim=hidden_dim, out_dim=latent_dim, rng=rng
            ),
            future_window=future_window,
        )

    @property
    def future_window(self) -> int:
        return self._future_window

    def parameters(self, prefix: str) -> Dict[str, Tensor]:
        params = self.encoder.parameters(f"{prefix}.encoder")
        params.update(self.decoder.parameters(f"{prefix}.decoder"))
        params.update(self.attention.parameters(f"{prefix}.attention"))
        params.update(self.output.parameters(f"{prefix}.output"))
        return params

    def __call__(self, history: Sequence[Tensor]) -> LatentSeq:
        return predic_attention(self, history)[0]


def predic_attention(
    predictor: AttentionPredictor, history: Sequence[Tensor]
) -> Tuple[LatentSeq, List[Tensor]]:
    """Like ``predic_seq2seq`` with every decoder step conditioned on an attention
    context over the history latents.

    :return: the predictions and the attention weights ``[B x l_h]`` of every step.
    """
    _check_history(history, predictor.output.out_dim)
    hs, cs = lstm_scan(predictor.encoder, history)
    s, d = hs[-1], cs[-1]
    x = history[-1]
    predictions, weights = [], []
    for _ in range(predictor.future_window):
        betas = attention_scores(predictor.attention, s, d, history)
        context = attention_context(betas, history)
        (s,), (d,) = lstm_scan(predictor.decoder, [ops.concat_cols([x, context])], s, d)
        x = predictor.output(s)
        predictions.append(x)
        weights.append(betas)
    return predictions, weights
