from typing import Any, Dict, Optional

from lpc_ad.error import ConfigError
from lpc_ad.logger.messages import (
    error_invalid_config_value,
    error_latent_dim_too_large,
    error_negative_sigma2,
    error_unknown_variant,
)
from lpc_ad.util.utils import default_hidden_dim

# sa: attention seq2seq, s: LSTM seq2seq, l: linear, ae: no predictor,
# n: predictor without random perturbation
VARIANTS = ("sa", "s", "l", "ae", "n")
PREDICTOR_VARIANTS = ("sa", "s", "l")

PREDICTOR_KINDS = {"sa": "attention", "s": "seq2seq", "l": "linear"}


class ModelHyperParams:
    dims: int
    latent_dim: int
    history_window: int
    future_window: int
    hidden_dim: int
    variant: str
    sigma2: float
    base_predictor: str

    def __init__(
        self,
        *,
        dims: int,
        latent_dim: int = 8,
        history_window: int = 10,
        future_window: int = 2,
        hidden_dim: Optional[int] = None,
        variant: str = "sa",
        sigma2: float = 1.0,
        base_predictor: str = "s",
    ):
        """Shapes and flavour of an LPC model.

        :param dims: M, the number of series dimensions.
        :param latent_dim: N, the latent dimension (must be < M).
        :param history_window: l_h, the length of the historical window.
        :param future_window: l, the length of the future window.
        :param hidden_dim: The LSTM hidden dimension (Default: ceil(M / 2)).
        :param variant: One of sa, s, l, ae, n.
        :param sigma2: Variance of the perturbation noise; 0 means deterministic mode.
        :param base_predictor: The predictor (sa, s or l) used by the n variant.
        """
        self.dims = int(dims)
        self.latent_dim = int(latent_dim)
        self.history_window = int(history_window)
        self.future_window = int(future_window)
        self.hidden_dim = (
            int(hidden_dim) if hidden_dim is not None else default_hidden_dim(self.dims)
        )
        self.variant = variant
        self.sigma2 = float(sigma2)
        self.base_predictor = base_predictor
        self._validate()

    def _validate(self) -> None:
        if self.variant not in VARIANTS:
            raise ConfigError(error_unknown_variant(self.variant, VARIANTS))
        if self.base_predictor not in PREDICTOR_VARIANTS:
            raise ConfigError(
                error_unknown_variant(self.base_predictor, PREDICTOR_VARIANTS)
            )
        for key in (
            "dims",
            "latent_dim",
            "history_window",
            "future_window",
            "hidden_dim",
        ):
            if getattr(self, key) < 1:
                raise ConfigError(
                    error_invalid_config_value(key, getattr(self, key), "must be >= 1")
                )
        if self.latent_dim >= self.dims:
            raise ConfigError(error_latent_dim_too_large(self.latent_dim, self.dims))
        if self.sigma2 < 0.0:
            raise ConfigError(error_negative_sigma2(self.sigma2))

    @property
    def predictor_kind(self) -> Optional[str]:
        if self.variant == "ae":
            return None
        if self.variant == "n":
            return PREDICTOR_KINDS[self.base_predictor]
        return PREDICTOR_KINDS[self.variant]

    @property
    def uses_perturbation(self) -> bool:
        return self.variant in PREDICTOR_VARIANTS

    @property
    def is_deterministic(self) -> bool:
        return not self.uses_perturbation or self.sigma2 == 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dims": self.dims,
            "latent_dim": self.latent_dim,
            "history_window": self.history_window,
            "future_window": self.future_window,
            "hidden_dim": self.hidden_dim,
            "variant": self.variant,
            "sigma2": self.sigma2,
            "base_predictor": self.base_predictor,
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "ModelHyperParams":
        return ModelHyperParams(**d)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ModelHyperParams) and self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        return f"ModelHyperParams({self.to_dict()})"
