from typing import Any, Dict, Optional

from lpc_ad.detect.noise import NoiseMode
from lpc_ad.error import ConfigError
from lpc_ad.logger.messages import error_invalid_config_value, error_unknown_variant
from lpc_ad.model.hyperparams import PREDICTOR_VARIANTS, VARIANTS, ModelHyperParams
from lpc_ad.util.key_value import load_key_values, optional_int


class TrainConfig:
    history_window: int
    future_window: int
    latent_dim: int
    hidden_dim: Optional[int]
    mc_samples: int
    sigma2: float
    learning_rate: float
    batch_size: int
    max_epoch: int
    seed: int
    variant: str
    smoothing: float
    train_fraction: float
    base_predictor: str
    detect_noise: str
    detect_batch_size: int
    score_workers: int

    def __init__(
        self,
        *,
        history_window: int = 10,
        future_window: int = 2,
        latent_dim: int = 8,
        hidden_dim: Optional[int] = None,
        mc_samples: int = 10,
        sigma2: float = 1.0,
        learning_rate: float = 0.001,
        batch_size: int = 64,
        max_epoch: int = 40,
        seed: int = 0,
        variant: str = "sa",
        smoothing: float = 1e-4,
        train_fraction: float = 1.0,
        base_predictor: str = "s",
        detect_noise: str = "deterministic",
        detect_batch_size: int = 256,
        score_workers: int = 1,
    ):
        """Everything a train + detect run needs besides the data.

        :param history_window: l_h (Default: 10).
        :param future_window: l (Default: 2).
        :param latent_dim: N, must be smaller than the series dimension M (Default: 8).
        :param hidden_dim: LSTM hidden size (Default: ceil(M / 2)).
        :param mc_samples: K, Monte-Carlo samples of the perturbed decode (Default: 10).
        :param sigma2: Perturbation noise variance (Default: 1.0).
        :param learning_rate: Adam step size (Default: 0.001).
        :param batch_size: Window pairs per Adam step (Default: 64).
        :param max_epoch: Number of passes over the window pairs (Default: 40).
        :param seed: The run seed every random stream derives from (Default: 0).
        :param variant: sa, s, l, ae or n (Default: sa).
        :param smoothing: The normalization smoothing factor alpha (Default: 1e-4).
        :param train_fraction: Leading fraction of the train split (Default: 1.0).
        :param base_predictor: Predictor of the n variant (Default: s).
        :param detect_noise: sample, deterministic or mc:<k> (Default: deterministic).
        :param detect_batch_size: Windows per scoring forward pass (Default: 256).
        :param score_workers: Threads used for scoring (Default: 1).
        """
        self.history_window = history_window
        self.future_window = future_window
        self.latent_dim = latent_dim
        self.hidden_dim = hidden_dim
        self.mc_samples = mc_samples
        self.sigma2 = float(sigma2)
        self.learning_rate = float(learning_rate)
        self.batch_size = batch_size
        self.max_epoch = max_epoch
        self.seed = seed
        self.variant = variant
        self.smoothing = float(smoothing)
        self.train_fraction = float(train_fraction)
        self.base_predictor = base_predictor
        self.detect_noise = detect_noise
        self.detect_batch_size = detect_batch_size
        self.score_workers = score_workers
        self._validate()

    def _validate(self) -> None:
        for key in (
            "history_window",
            "future_window",
            "latent_dim",
            "mc_samples",
            "batch_size",
            "detect_batch_size",
            "score_workers",
        ):
            if getattr(self, key) < 1:
                raise ConfigError(
                    error_invalid_config_value(key, getattr(self, key), "must be >= 1")
                )
        if self.hidden_dim is not None and self.hidden_dim < 1:
            raise ConfigError(
                error_invalid_config_value(
                    "hidden_dim", self.hidden_dim, "must be >= 1"
                )
            )
        if self.max_epoch < 0:
            raise ConfigError(
                error_invalid_config_value("max_epoch", self.max_epoch, "must be >= 0")
            )
        if self.seed < 0:
            raise ConfigError(
                error_invalid_config_value("seed", self.seed, "must be >= 0")
            )
        if self.learning_rate < 0.0:
            raise ConfigError(
                error_invalid_config_value(
                    "learning_rate", self.learning_rate, "must be >= 0"
                )
            )
        if self.smoothing <= 0.0:
            raise ConfigError(
                error_invalid_config_value("smoothing", self.smoothing, "must be > 0")
            )
        if not 0.0 < self.train_fraction <= 1.0:
            raise ConfigError(
                error_invalid_config_value(
                    "train_fraction", self.train_fraction, "must be in (0, 1]"
                )
            )
        if self.variant not in VARIANTS:
            raise ConfigError(error_unknown_variant(self.variant, VARIANTS))
        if self.base_predictor not in PREDICTOR_VARIANTS:
            raise ConfigError(
                error_unknown_variant(self.base_predictor, PREDICTOR_VARIANTS)
            )
        NoiseMode.parse(self.detect_noise)

    def hyperparams(self, dims: int) -> ModelHyperParams:
        """Model shapes for a series with ``dims`` dimensions."""
        return ModelHyperParams(
            dims=dims,
            latent_dim=self.latent_dim,
            history_window=self.history_window,
            future_window=self.future_window,
            hidden_dim=self.hidden_dim,
            variant=self.variant,
            sigma2=self.sigma2,
            base_predictor=self.base_predictor,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {key: getattr(self, key) for key in CONFIG_CONVERTERS}

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "TrainConfig":
        return TrainConfig(**d)

    def replace(self, **changes: Any) -> "TrainConfig":
        d = self.to_dict()
        d.update(changes)
        return TrainConfig.from_dict(d)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TrainConfig) and self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        return f"TrainConfig({self.to_dict()})"


CONFIG_CONVERTERS = {
    "history_window": int,
    "future_window": int,
    "latent_dim": int,
    "hidden_dim": optional_int,
    "mc_samples": int,
    "sigma2": float,
    "learning_rate": float,
    "batch_size": int,
    "max_epoch": int,
    "seed": int,
    "variant": str,
    "smoothing": float,
    "train_fraction": float,
    "base_predictor": str,
    "detect_noise": str,
    "detect_batch_size": int,
    "score_workers": int,
}


def load_train_config(path: Optional[str] = None, **overrides: Any) -> TrainConfig:
    """Reads a ``key=value`` config file; ``None``-valued overrides are ignored."""
    values = load_key_values(path, CONFIG_CONVERTERS) if path else {}
    values.update({k: v for k, v in overrides.items() if v is not None})
    return TrainConfig.from_dict(values)
