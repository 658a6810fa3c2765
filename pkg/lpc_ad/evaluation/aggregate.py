from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from lpc_ad.error import UndefinedMetricError
from lpc_ad.evaluation.metrics import f1_from
from lpc_ad.logger.messages import error_empty_scores, error_missing_grid_cells


class RunMetrics:
    """Metrics of one (series, repeat) cell of the protocol."""

    series_id: str
    repeat: int
    precision: float
    recall: float
    f1: float
    auroc: Optional[float]
    threshold: float
    train_seconds: float

    def __init__(
        self,
        *,
        series_id: str,
        repeat: int,
        precision: float,
        recall: float,
        f1: float,
        auroc: Optional[float],
        threshold: float,
        train_seconds: float = 0.0,
    ):
        self.series_id = series_id
        self.repeat = repeat
        self.precision = precision
        self.recall = recall
        self.f1 = f1
        self.auroc = auroc
        self.threshold = threshold
        self.train_seconds = train_seconds

    def to_dict(self) -> Dict[str, Any]:
        return {
            "series": self.series_id,
            "repeat": self.repeat,
            "P": self.precision,
            "R": self.recall,
            "F1": self.f1,
            "AUROC": self.auroc,
            "lambda": self.threshold,
            "train_seconds": self.train_seconds,
        }


class MetricBundle:
    """Grand means over the (series, repeat) grid.

    ``f1`` is the micro F1 (mean of the per-run F1); ``f1_star`` the macro F1
    computed from the averaged precision and recall.
    """

    precision: float
    recall: float
    f1: float
    f1_star: float
    auroc: Optional[float]
    threshold: float
    train_seconds: float
    runs: List[RunMetrics]

    def __init__(
        self,
        *,
        precision: float,
        recall: float,
        f1: float,
        f1_star: float,
        auroc: Optional[float],
        threshold: float,
        train_seconds: float,
        runs: List[RunMetrics],
    ):
        self.precision = precision
        self.recall = recall
        self.f1 = f1
        self.f1_star = f1_star
        self.auroc = auroc
        self.threshold = threshold
        self.train_seconds = train_seconds
        self.runs = runs

    def to_dict(self) -> Dict[str, Any]:
        return {
            "P": self.precision,
            "R": self.recall,
            "F1": self.f1,
            "F1_star": self.f1_star,
            "AUROC": self.auroc,
            "lambda": self.threshold,
            "train_seconds": self.train_seconds,
            "per_series": [r.to_dict() for r in self.runs],
        }


def aggregate(
    runs: Sequence[RunMetrics],
    series_ids: Optional[Sequence[str]] = None,
    repeats: Optional[int] = None,
) -> MetricBundle:
    """Averages a complete grid of runs.

    :param runs: One ``RunMetrics`` per (series, repeat).
    :param series_ids: The expected series (Default: those present in ``runs``).
    :param repeats: The expected repeats 0..D-1 (Default: the largest present + 1).
    """
    if not runs:
        raise UndefinedMetricError(error_empty_scores())
    if series_ids is None:
        series_ids = sorted({r.series_id for r in runs})
    if repeats is None:
        repeats = max(r.repeat for r in runs) + 1
    present = {(r.series_id, r.repeat) for r in runs}
    missing = [
        (s, j) for s in series_ids for j in range(repeats) if (s, j) not in present
    ]
    if missing:
        raise UndefinedMetricError(error_missing_grid_cells(missing))

    precision = float(np.mean([r.precision for r in runs]))
    recall = float(np.mean([r.recall for r in runs]))
    aurocs = [r.auroc for r in runs if r.auroc is not None]
    return MetricBundle(
        precision=precision,
        recall=recall,
        f1=float(np.mean([r.f1 for r in runs])),
        f1_star=f1_from(precision, recall),
        auroc=float(np.mean(aurocs)) if aurocs else None,
        threshold=float(np.mean([r.threshold for r in runs])),
        train_seconds=float(np.mean([r.train_seconds for r in runs])),
        runs=list(runs),
    )
