from collections import OrderedDict
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from lpc_ad.error import ContractError, DimensionError
from lpc_ad.logger.messages import (
    error_empty_sequence,
    error_no_predictor,
    error_predictor_mismatch,
    error_shape_mismatch,
    error_unknown_variant,
)
from lpc_ad.model.hyperparams import ModelHyperParams
from lpc_ad.model.perturb import rand_perturb
from lpc_ad.model.predictor import (
    AttentionPredictor,
    LinearPredictor,
    Predictor,
    Seq2SeqPredictor,
)
from lpc_ad.model.sequence import LatentSeq, SeqDecoder, SeqEncoder
from lpc_ad.tensor import Tensor
from lpc_ad.util.utils import STREAM_INIT, create_rng

ModelParams = Dict[str, Tensor]


# -------------------------------
# Window <-> step conversion
# -------------------------------


def window_steps(window: np.ndarray) -> List[Tensor]:
    """Splits ``(B, L, M)`` (or ``(L, M)``) windows into L step tensors ``[B x M]``."""
    window = np.asarray(window, dtype=np.float64)
    if window.ndim == 2:
        window = window.reshape((1,) + window.shape)
    if window.ndim != 3:
        raise DimensionError(
            error_shape_mismatch("window", window.shape, ("B", "L", "M"))
        )
    if window.shape[1] == 0:
        raise ContractError(error_empty_sequence("window"))
    return [Tensor(window[:, i, :]) for i in range(window.shape[1])]


def steps_to_array(steps: Sequence[Tensor]) -> np.ndarray:
    """Inverse of ``window_steps``: returns ``(B, L, d)``."""
    return np.stack([s.data for s in steps], axis=1)


# -------------------------------
# Encoding / decoding
# -------------------------------


def seq_enc(
    encoder: SeqEncoder, history: Sequence[Tensor], future: Sequence[Tensor]
) -> Tuple[LatentSeq, LatentSeq]:
    """Encodes both windows in one LSTM pass and splits the latents back."""
    latents = encoder.run(list(history) + list(future))
    return latents[: len(history)], latents[len(history) :]


def seq_dec(
    decoder: SeqDecoder, z_history: Sequence[Tensor], z_future: Sequence[Tensor]
) -> Tuple[List[Tensor], List[Tensor]]:
    outputs = decoder.run(list(z_history) + list(z_future))
    return outputs[: len(z_history)], outputs[len(z_history) :]


class LpcModel:
    """Encoder, decoder and (for every variant but ``ae``) a latent predictor."""

    hyperparams: ModelHyperParams
    encoder: SeqEncoder
    decoder: SeqDecoder
    predictor: Optional[Predictor]

    def __init__(
        self,
        *,
        hyperparams: ModelHyperParams,
        encoder: SeqEncoder,
        decoder: SeqDecoder,
        predictor: Optional[Predictor] = None,
    ):
        hp = hyperparams
        if (encoder.in_dim, encoder.out_dim) != (hp.dims, hp.latent_dim) or (
            decoder.in_dim,
            decoder.out_dim,
        ) != (hp.latent_dim, hp.dims):
            raise DimensionError(
                error_shape_mismatch(
                    "LpcModel",
                    (encoder.in_dim, encoder.out_dim),
                    (decoder.in_dim, decoder.out_dim),
                )
            )
        if (predictor.kind if predictor else None) != hp.predictor_kind:
            raise ContractError(
                error_predictor_mismatch(hp.variant, getattr(predictor, "kind", "no"))
            )
        self.hyperparams = hyperparams
        self.encoder = encoder
        self.decoder = decoder
        self.predictor = predictor

    @classmethod
    def initialize(cls, hyperparams: ModelHyperParams, seed: int) -> "LpcModel":
        hp = hyperparams
        rng = create_rng(seed, STREAM_INIT)
        encoder = SeqEncoder.initialize(
            in_dim=hp.dims, hidden_dim=hp.hidden_dim, out_dim=hp.latent_dim, rng=rng
        )
        decoder = SeqDecoder.initialize(
            in_dim=hp.latent_dim, hidden_dim=hp.hidden_dim, out_dim=hp.dims, rng=rng
        )
        predictor: Optional[Predictor] = None
        if hp.predictor_kind == "linear":
            predictor = LinearPredictor.initialize(
                latent_dim=hp.latent_dim,
                history_window=hp.history_window,
                future_window=hp.future_window,
                rng=rng,
            )
        elif hp.predictor_kind == "seq2seq":
            predictor = Seq2SeqPredictor.initialize(
                latent_dim=hp.latent_dim,
                hidden_dim=hp.hidden_dim,
                future_window=hp.future_window,
                rng=rng,
            )
        elif hp.predictor_kind == "attention":
            predictor = AttentionPredictor.initialize(
                latent_dim=hp.latent_dim,
                hidden_dim=hp.hidden_dim,
                future_window=hp.future_window,
                rng=rng,
            )
        return LpcModel(
            hyperparams=hp, encoder=encoder, decoder=decoder, predictor=predictor
        )

    def parameters(self) -> ModelParams:
        """All trainable tensors keyed by a stable dotted name."""
        params: ModelParams = OrderedDict()
        params.update(self.encoder.parameters("encoder"))
        params.update(self.decoder.parameters("decoder"))
        if self.predictor is not None:
            params.update(self.predictor.parameters("predictor"))
        return params

    def parameter_count(self) -> int:
        return sum(p.size for p in self.parameters().values())

    def encode(
        self, history: Sequence[Tensor], future: Sequence[Tensor]
    ) -> Tuple[LatentSeq, LatentSeq]:
        self._check_windows(history, future)
        return seq_enc(self.encoder, history, future)

    def decode(
        self, z_history: Sequence[Tensor], z_future: Sequence[Tensor]
    ) -> Tuple[List[Tensor], List[Tensor]]:
        return seq_dec(self.decoder, z_history, z_future)

    def predict(self, z_history: Sequence[Tensor]) -> LatentSeq:
        if self.predictor is None:
            raise ContractError(error_no_predictor(self.hyperparams.variant))
        return self.predictor(z_history)

    def reconstruct(
        self, history: np.ndarray, future: np.ndarray, eps: Optional[np.ndarray] = None
    ) -> np.ndarray:
        """Future-window reconstruction ``(B, l, M)`` of the model's own variant.

        ``eps`` of shape ``(B, l, N)`` is only read by the perturbing variants;
        ``None`` means zero noise.
        """
        if self.hyperparams.variant in ("ae", "n"):
            steps = variant_reconstruct(self, history, future)
        else:
            steps = lpc_reconstruct(self, history, future, eps)
        return steps_to_array(steps)

    def _check_windows(
        self, history: Sequence[Tensor], future: Sequence[Tensor]
    ) -> None:
        hp = self.hyperparams
        if len(history) != hp.history_window or len(future) != hp.future_window:
            raise DimensionError(
                error_shape_mismatch(
                    "LpcModel windows",
                    (len(history), len(future)),
                    (hp.history_window, hp.future_window),
                )
            )


def _zero_noise(model: LpcModel, batch: int) -> np.ndarray:
    hp = model.hyperparams
    return np.zeros((batch, hp.future_window, hp.latent_dim))


def lpc_reconstruct(
    model: LpcModel,
    history: np.ndarray,
    future: np.ndarray,
    eps: Optional[np.ndarray] = None,
) -> List[Tensor]:
    """encode -> predict -> perturb -> decode ``[Z^h, Z~]``; returns the future half."""
    w_history, w_future = window_steps(history), window_steps(future)
    z_history, z_future = model.encode(w_history, w_future)
    z_predicted = model.predict(z_history)
    if eps is None:
        eps = _zero_noise(model, w_history[0].shape[0])
    z_perturbed = rand_perturb(z_future, z_predicted, eps)
    _, reconstruction = model.decode(z_history, z_perturbed)
    return reconstruction


def variant_reconstruct(
    model: LpcModel, history: np.ndarray, future: np.ndarray
) -> List[Tensor]:
    """Reconstruction of the ablation variants; neither of them reads noise.

    ``ae`` returns the first decode of the true latents, ``n`` decodes
    ``[Z^h, Z_hat]``.
    """
    variant = model.hyperparams.variant
    if variant not in ("ae", "n"):
        raise ContractError(error_unknown_variant(variant, ("ae", "n")))
    w_history, w_future = window_steps(history), window_steps(future)
    z_history, z_future = model.encode(w_history, w_future)
    if variant == "ae":
        _, reconstruction = model.decode(z_history, z_future)
    else:
        _, reconstruction = model.decode(z_history, model.predict(z_history))
    return reconstruction
