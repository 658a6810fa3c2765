from logging import Logger
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from lpc_ad.data.series import DatasetBundle
from lpc_ad.detect import NoiseMode, WindowScores, score_windows
from lpc_ad.error import DimensionError
from lpc_ad.evaluation import (
    MetricBundle,
    RunMetrics,
    aggregate,
    auroc,
    point_adjust,
    prf,
    threshold_search,
)
from lpc_ad.logger import get_lpc_logger, get_lpc_run_logger
from lpc_ad.logger.messages import (
    error_shape_mismatch,
    info_run_completed,
    warning_no_anomalies_in_labels,
)
from lpc_ad.train import TrainConfig, TrainResult, apply_normalizer, train_on_series


def evaluate_scores(
    scores: np.ndarray,
    labels: np.ndarray,
    *,
    series_id: str,
    repeat: int = 0,
    threshold: Optional[float] = None,
    flags: Optional[np.ndarray] = None,
    adjust_auroc: bool = True,
    train_seconds: float = 0.0,
    logger: Optional[Logger] = None,
) -> RunMetrics:
    """Point-adjusted metrics of one scored series.

    A given ``threshold`` wins over given ``flags``; with neither the threshold
    is searched. For given flags the reported threshold is the smallest flagged
    score, or the next float above the largest score when nothing is flagged.
    AUROC is None when the labels hold a single class.
    """
    logger = logger or get_lpc_logger(RunMetrics)
    if threshold is None and flags is None:
        best = threshold_search(scores, labels, logger=logger)
        threshold = best.threshold
        precision, recall, f1 = best.precision, best.recall, best.f1
    else:
        if threshold is not None:
            flags = (scores >= threshold).astype(np.int64)
        else:
            flags = np.asarray(flags, dtype=np.int64)
            if flags.shape != scores.shape:
                raise DimensionError(
                    error_shape_mismatch("flags", flags.shape, scores.shape)
                )
            flagged = scores[flags == 1]
            threshold = (
                float(flagged.min())
                if flagged.size
                else float(np.nextafter(np.max(scores, initial=0.0), np.inf))
            )
        precision, recall, f1 = prf(point_adjust(flags, labels), labels)
    if 0 < int(np.sum(labels)) < labels.size:
        area: Optional[float] = auroc(scores, labels, adjust=adjust_auroc)
    else:
        logger.warning(warning_no_anomalies_in_labels(series_id))
        area = None
    return RunMetrics(
        series_id=series_id,
        repeat=repeat,
        precision=precision,
        recall=recall,
        f1=f1,
        auroc=area,
        threshold=float(threshold),
        train_seconds=train_seconds,
    )


class ProtocolRunner:
    """Train, score, search the threshold and aggregate over series x repeats.

    Repeat j of every series trains with seed ``config.seed + j``.
    """

    config: TrainConfig
    repeats: int
    logger: Logger

    def __init__(
        self,
        config: TrainConfig,
        *,
        repeats: int = 1,
        logger: Optional[Logger] = None,
    ):
        self.config = config
        self.repeats = repeats
        self.logger = logger or get_lpc_logger(ProtocolRunner)

    def train(self, bundle: DatasetBundle, repeat: int) -> TrainResult:
        config = self.config.replace(seed=self.config.seed + repeat)
        logger = get_lpc_run_logger(bundle.name, ProtocolRunner)
        return train_on_series(bundle.train, config, logger=logger)

    def score(
        self, bundle: DatasetBundle, result: TrainResult, repeat: int
    ) -> WindowScores:
        config = self.config
        return score_windows(
            result.model,
            apply_normalizer(result.stats, bundle.test),
            noise_mode=NoiseMode.parse(config.detect_noise),
            seed=config.seed + repeat,
            batch_size=config.detect_batch_size,
            workers=config.score_workers,
            logger=get_lpc_run_logger(bundle.name, ProtocolRunner),
        )

    def run_series(self, bundle: DatasetBundle, repeat: int) -> RunMetrics:
        result = self.train(bundle, repeat)
        scores = self.score(bundle, result, repeat)
        labels = bundle.test.labels
        if labels is None:
            labels = np.zeros(bundle.test.length, dtype=np.int64)
        metrics = evaluate_scores(
            scores.scored_values,
            labels[scores.timestamps],
            series_id=bundle.name,
            repeat=repeat,
            train_seconds=result.seconds,
            logger=self.logger,
        )
        self.logger.info(
            info_run_completed(bundle.name, repeat, metrics.f1, metrics.threshold)
        )
        return metrics

    def run(self, bundles: Sequence[DatasetBundle]) -> MetricBundle:
        runs = [
            self.run_series(bundle, repeat)
            for bundle in bundles
            for repeat in range(self.repeats)
        ]
        return aggregate(runs, [b.name for b in bundles], self.repeats)

    def sweep(
        self, bundles: Sequence[DatasetBundle], key: str, values: Sequence[Any]
    ) -> List[Dict[str, Any]]:
        """Runs the whole protocol once per value of one config field."""
        cells = []
        base = self.config
        try:
            for value in values:
                self.config = base.replace(**{key: value})
                cell: Dict[str, Any] = {"param": key, "value": value}
                cell.update(self.run(bundles).to_dict())
                cells.append(cell)
        finally:
            self.config = base
        return cells
