from typing import Any, Dict

import numpy as np

from lpc_ad.data.series import SeriesMatrix
from lpc_ad.error import ConfigError, DimensionError
from lpc_ad.logger.messages import (
    error_dimension_mismatch,
    error_invalid_config_value,
)


class NormalizationStats:
    """Per-dimension min/max of the training split and the smoothing factor."""

    minimum: np.ndarray
    maximum: np.ndarray
    smoothing: float

    def __init__(self, *, minimum: np.ndarray, maximum: np.ndarray, smoothing: float):
        if smoothing <= 0.0:
            raise ConfigError(
                error_invalid_config_value("smoothing", smoothing, "must be > 0")
            )
        self.minimum = np.asarray(minimum, dtype=np.float64)
        self.maximum = np.asarray(maximum, dtype=np.float64)
        if self.minimum.shape != self.maximum.shape or np.any(
            self.maximum < self.minimum
        ):
            raise DimensionError(
                error_dimension_mismatch(
                    "NormalizationStats", self.minimum.size, self.maximum.size
                )
            )
        self.smoothing = float(smoothing)

    @property
    def dims(self) -> int:
        return self.minimum.size

    def to_dict(self) -> Dict[str, Any]:
        return {
            "minimum": [float(v) for v in self.minimum],
            "maximum": [float(v) for v in self.maximum],
            "smoothing": self.smoothing,
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "NormalizationStats":
        return NormalizationStats(
            minimum=np.array(d["minimum"], dtype=np.float64),
            maximum=np.array(d["maximum"], dtype=np.float64),
            smoothing=d["smoothing"],
        )


def fit_normalizer(train: SeriesMatrix, smoothing: float = 1e-4) -> NormalizationStats:
    return NormalizationStats(
        minimum=train.values.min(axis=0),
        maximum=train.values.max(axis=0),
        smoothing=smoothing,
    )


def apply_normalizer(stats: NormalizationStats, series: SeriesMatrix) -> SeriesMatrix:
    """``(x - min) / (max - min + alpha)`` with the training statistics; not clamped."""
    if series.dims != stats.dims:
        raise DimensionError(
            error_dimension_mismatch(series.series_id, stats.dims, series.dims)
        )
    scaled = (series.values - stats.minimum) / (
        stats.maximum - stats.minimum + stats.smoothing
    )
    return series.with_values(scaled)
