from typing import Tuple

import numpy as np
from scipy.stats import rankdata

from lpc_ad.error import DimensionError, UndefinedMetricError
from lpc_ad.evaluation.point_adjust import adjust_scores
from lpc_ad.logger.messages import (
    error_empty_scores,
    error_length_mismatch,
    error_single_class_labels,
)


def _ratio(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator > 0 else 0.0


def f1_from(precision: float, recall: float) -> float:
    return _ratio(2.0 * precision * recall, precision + recall)


def prf(flags: np.ndarray, labels: np.ndarray) -> Tuple[float, float, float]:
    """Precision, recall and F1 of binary flags.

    Zero denominators give 0 (no positive predictions means P = 0, no
    positive labels means R = 0).
    """
    flags = np.asarray(flags).astype(bool)
    labels = np.asarray(labels).astype(bool)
    if flags.shape != labels.shape:
        raise DimensionError(error_length_mismatch("prf", flags.size, labels.size))
    tp = float(np.sum(flags & labels))
    fp = float(np.sum(flags & ~labels))
    fn = float(np.sum(~flags & labels))
    precision = _ratio(tp, tp + fp)
    recall = _ratio(tp, tp + fn)
    return precision, recall, f1_from(precision, recall)


def auroc(scores: np.ndarray, labels: np.ndarray, adjust: bool = True) -> float:
    """Rank-based (Mann-Whitney) AUROC; tied scores count one half.

    :param adjust: Point-adjust the flags of every threshold first. Implemented
        by scoring each labeled segment with its maximum.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels).astype(np.int64)
    if scores.shape != labels.shape:
        raise DimensionError(error_length_mismatch("auroc", scores.size, labels.size))
    if scores.size == 0:
        raise UndefinedMetricError(error_empty_scores())
    positives = int(labels.sum())
    negatives = labels.size - positives
    if positives == 0 or negatives == 0:
        raise UndefinedMetricError(error_single_class_labels())
    if adjust:
        scores = adjust_scores(scores, labels)
    ranks = rankdata(scores)  # average ranks for ties
    rank_sum = float(ranks[labels == 1].sum())
    u = rank_sum - positives * (positives + 1) / 2.0
    return u / (positives * negatives)
