from logging import Logger
from typing import Optional

import numpy as np

from lpc_ad.error import DimensionError, UndefinedMetricError
from lpc_ad.evaluation.point_adjust import find_segments
from lpc_ad.logger import get_lpc_logger
from lpc_ad.logger.messages import (
    error_empty_scores,
    error_length_mismatch,
    warning_zero_scores,
)

GRID_STEPS = 10000


class ThresholdResult:
    threshold: float
    f1: float
    precision: float
    recall: float

    def __init__(self, *, threshold: float, f1: float, precision: float, recall: float):
        self.threshold = threshold
        self.f1 = f1
        self.precision = precision
        self.recall = recall

    def __repr__(self) -> str:
        return (
            f"ThresholdResult(threshold={self.threshold!r}, f1={self.f1!r}, "
            f"precision={self.precision!r}, recall={self.recall!r})"
        )


def threshold_grid(max_score: float, steps: int = GRID_STEPS) -> np.ndarray:
    """``{0, 1/steps, ..., 1} * max_score``."""
    return np.arange(steps + 1) / float(steps) * max_score


def threshold_search(
    scores: np.ndarray,
    labels: np.ndarray,
    *,
    steps: int = GRID_STEPS,
    logger: Optional[Logger] = None,
) -> ThresholdResult:
    """The grid threshold with the best point-adjusted F1 (smallest on ties).

    All grid points are evaluated at once: a labeled segment contributes its
    whole length to TP when its maximum score reaches the threshold, and FP
    counts the normal points at or above it.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels).astype(np.int64)
    if scores.shape != labels.shape:
        raise DimensionError(
            error_length_mismatch("threshold_search", scores.size, labels.size)
        )
    if scores.size == 0:
        raise UndefinedMetricError(error_empty_scores())
    max_score = float(scores.max())
    if max_score == 0.0:
        (logger or get_lpc_logger(ThresholdResult)).warning(warning_zero_scores())
    grid = threshold_grid(max_score, steps)

    segments = find_segments(labels)
    seg_max = np.array([scores[a:b].max() for a, b in segments], dtype=np.float64)
    seg_len = np.array([b - a for a, b in segments], dtype=np.float64)
    order = np.argsort(seg_max, kind="stable")
    seg_max, seg_len = seg_max[order], seg_len[order]
    # TP(lambda): total length of the segments whose maximum is >= lambda
    len_below = np.concatenate(([0.0], np.cumsum(seg_len)))
    tp = len_below[-1] - len_below[np.searchsorted(seg_max, grid, side="left")]

    normals = np.sort(scores[labels == 0])
    fp = normals.size - np.searchsorted(normals, grid, side="left")

    positives = float(labels.sum())
    with np.errstate(divide="ignore", invalid="ignore"):
        precision = np.where(tp + fp > 0, tp / (tp + fp), 0.0)
        recall = np.where(positives > 0, tp / max(positives, 1.0), 0.0)
        f1 = np.where(
            precision + recall > 0,
            2.0 * precision * recall / (precision + recall),
            0.0,
        )
    best = int(np.argmax(f1))
    return ThresholdResult(
        threshold=float(grid[best]),
        f1=float(f1[best]),
        precision=float(precision[best]),
        recall=float(recall[best]),
    )
