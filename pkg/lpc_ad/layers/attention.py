from typing import Dict, List, Sequence

import numpy as np

from lpc_ad.error import ContractError, DimensionError
from lpc_ad.layers.init import uniform_tensor
from lpc_ad.logger.messages import (
    error_attention_not_normalized,
    error_empty_sequence,
    error_length_mismatch,
    error_shape_mismatch,
)
from lpc_ad.tensor import Tensor, ops

NORMALIZATION_TOLERANCE = 1e-9


class AttentionParams:
    """Additive alignment ``l_i = v . tanh(W [s, d] + U z_i)``.

    ``v[A]``, ``W[A x 2H]`` for the previous decoder hidden and cell states,
    ``U[A x N]`` for the encoder latents.
    """

    v: Tensor
    w: Tensor
    u: Tensor

    def __init__(self, *, v: Tensor, w: Tensor, u: Tensor):
        if v.ndim != 1 or w.shape[0] != v.shape[0] or u.shape[0] != v.shape[0]:
            raise DimensionError(
                error_shape_mismatch("AttentionParams", w.shape, u.shape)
            )
        if w.shape[1] % 2 != 0:
            raise DimensionError(
                error_shape_mismatch("AttentionParams(W)", w.shape, (v.shape[0], 2))
            )
        self.v = v
        self.w = w
        self.u = u

    @classmethod
    def initialize(
        cls,
        *,
        hidden_dim: int,
        latent_dim: int,
        align_dim: int,
        rng: np.random.Generator,
    ) -> "AttentionParams":
        return AttentionParams(
            v=uniform_tensor(rng, (align_dim,), align_dim),
            w=uniform_tensor(rng, (align_dim, 2 * hidden_dim), 2 * hidden_dim),
            u=uniform_tensor(rng, (align_dim, latent_dim), latent_dim),
        )

    @property
    def hidden_dim(self) -> int:
        return self.w.shape[1] // 2

    @property
    def latent_dim(self) -> int:
        return self.u.shape[1]

    def parameters(self, prefix: str) -> Dict[str, Tensor]:
        return {f"{prefix}.v": self.v, f"{prefix}.w": self.w, f"{prefix}.u": self.u}


def attention_scores(
    params: AttentionParams, s_prev: Tensor, d_prev: Tensor, zs: Sequence[Tensor]
) -> Tensor:
    """Softmax-normalized alignment of every encoder latent, ``[B x len(zs)]``."""
    if not zs:
        raise ContractError(error_empty_sequence("attention latents"))
    if s_prev.shape != d_prev.shape or s_prev.ndim != 2:
        raise DimensionError(
            error_shape_mismatch("attention_scores", s_prev.shape, d_prev.shape)
        )
    if s_prev.shape[1] != params.hidden_dim:
        raise DimensionError(
            error_shape_mismatch("attention_scores", s_prev.shape, params.w.shape)
        )
    align_dim = params.v.shape[0]
    state_term = ops.matmul(
        ops.concat_cols([s_prev, d_prev]), ops.transpose(params.w)
    )
    u_t = ops.transpose(params.u)
    v_col = ops.reshape(params.v, (align_dim, 1))
    logits: List[Tensor] = []
    for z in zs:
        if z.shape != (s_prev.shape[0], params.latent_dim):
            raise DimensionError(
                error_shape_mismatch("attention_scores", z.shape, params.u.shape)
            )
        energy = ops.tanh(ops.add(state_term, ops.matmul(z, u_t)))
        logits.append(ops.matmul(energy, v_col))
    return ops.softmax_rows(ops.concat_cols(logits))


def attention_context(betas: Tensor, zs: Sequence[Tensor]) -> Tensor:
    """``c = sum_i beta_i z_i`` for ``betas[L]`` with ``zs`` of ``[N]``, or row-wise
    for ``betas[B x L]`` with ``zs`` of ``[B x N]``."""
    if not zs:
        raise ContractError(error_empty_sequence("attention latents"))
    squeeze = betas.ndim == 1
    if squeeze:
        betas = ops.reshape(betas, (1, betas.shape[0]))
        zs = [ops.reshape(z, (1, z.shape[0])) for z in zs]
    if betas.shape[1] != len(zs):
        raise DimensionError(
            error_length_mismatch("attention_context", betas.shape[1], len(zs))
        )
    totals = betas.data.sum(axis=1)
    if np.any(betas.data < 0.0) or np.any(
        np.abs(totals - 1.0) > NORMALIZATION_TOLERANCE
    ):
        worst = float(totals[np.argmax(np.abs(totals - 1.0))])
        raise ContractError(error_attention_not_normalized(worst))

    context = None
    for i, z in enumerate(zs):
        weighted = ops.scale_rows(z, ops.slice_cols(betas, i, i + 1))
        context = weighted if context is None else ops.add(context, weighted)
    if squeeze:
        return ops.reshape(context, (context.shape[1],))
    return context
