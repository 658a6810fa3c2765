from typing import List, Tuple

import numpy as np

from lpc_ad.error import DimensionError
from lpc_ad.logger.messages import error_length_mismatch

Segment = Tuple[int, int]  # [start, stop)


def _check_lengths(what: str, left: np.ndarray, right: np.ndarray) -> None:
    if left.shape != right.shape:
        raise DimensionError(error_length_mismatch(what, left.size, right.size))


def find_segments(labels: np.ndarray) -> List[Segment]:
    """Maximal runs of label 1 as ``[start, stop)`` pairs."""
    labels = np.asarray(labels).astype(np.int64)
    edges = np.diff(np.concatenate(([0], labels, [0])))
    starts = np.flatnonzero(edges == 1)
    stops = np.flatnonzero(edges == -1)
    return list(zip(starts.tolist(), stops.tolist()))


def point_adjust(flags: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Flags a whole labeled segment as soon as one of its points is flagged."""
    flags = np.asarray(flags).astype(np.int64)
    labels = np.asarray(labels).astype(np.int64)
    _check_lengths("point_adjust", flags, labels)
    adjusted = flags.copy()
    for start, stop in find_segments(labels):
        if adjusted[start:stop].any():
            adjusted[start:stop] = 1
    return adjusted


def adjust_scores(scores: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Replaces the scores inside every labeled segment by the segment maximum.

    Thresholding the result at any level gives the point-adjusted flags of
    thresholding ``scores`` at that level.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels).astype(np.int64)
    _check_lengths("adjust_scores", scores, labels)
    adjusted = scores.copy()
    for start, stop in find_segments(labels):
        adjusted[start:stop] = scores[start:stop].max()
    return adjusted
