from typing import Optional

import numpy as np

from lpc_ad.error import DataError, DimensionError
from lpc_ad.logger.messages import (
    error_dimension_mismatch,
    error_empty_series,
    error_invalid_labels,
    error_label_length_mismatch,
    error_unexpected_rank,
)


class SeriesMatrix:
    """T timestamps x M dimensions, optionally labeled per timestamp."""

    values: np.ndarray
    labels: Optional[np.ndarray]
    series_id: str

    def __init__(
        self,
        values: np.ndarray,
        labels: Optional[np.ndarray] = None,
        series_id: str = "series",
    ):
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 2:
            raise DimensionError(error_unexpected_rank(series_id, 2, values.shape))
        if values.shape[0] < 1 or values.shape[1] < 1:
            raise DataError(error_empty_series(series_id))
        if labels is not None:
            labels = np.asarray(labels).astype(np.int64)
            if labels.shape != (values.shape[0],):
                raise DataError(
                    error_label_length_mismatch(labels.size, values.shape[0])
                )
            if np.any((labels != 0) & (labels != 1)):
                raise DataError(error_invalid_labels(series_id))
        self.values = values
        self.labels = labels
        self.series_id = series_id

    @property
    def length(self) -> int:
        return self.values.shape[0]

    @property
    def dims(self) -> int:
        return self.values.shape[1]

    def with_values(self, values: np.ndarray) -> "SeriesMatrix":
        return SeriesMatrix(values, self.labels, self.series_id)

    def head(self, rows: int) -> "SeriesMatrix":
        labels = self.labels[:rows] if self.labels is not None else None
        return SeriesMatrix(self.values[:rows], labels, self.series_id)

    def __repr__(self) -> str:
        labeled = "labeled" if self.labels is not None else "unlabeled"
        return f"SeriesMatrix({self.series_id}, {self.length}x{self.dims}, {labeled})"


class DatasetBundle:
    """An unlabeled train split and a labeled test split of the same M."""

    train: SeriesMatrix
    test: SeriesMatrix
    name: str

    def __init__(self, *, train: SeriesMatrix, test: SeriesMatrix, name: str):
        if train.dims != test.dims:
            raise DimensionError(error_dimension_mismatch(name, train.dims, test.dims))
        self.train = train
        self.test = test
        self.name = name

    @property
    def dims(self) -> int:
        return self.train.dims

    def __repr__(self) -> str:
        return f"DatasetBundle({self.name}, train={self.train}, test={self.test})"
