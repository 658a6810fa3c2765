import logging
import time
from logging import Logger
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from lpc_ad.data.series import SeriesMatrix
from lpc_ad.error import ContractError, NonFiniteValueError, TrainingDivergedError
from lpc_ad.logger import get_lpc_logger
from lpc_ad.logger.messages import (
    debug_batch_loss,
    error_empty_training_set,
    error_training_diverged,
    info_epoch_completed,
    info_file_written,
    info_training_started,
)
from lpc_ad.model import LpcModel
from lpc_ad.tensor import AdamState, ComputationTape, adam_step, backward
from lpc_ad.train.config import TrainConfig
from lpc_ad.train.loss import batch_loss, draw_loss_noise
from lpc_ad.train.normalizer import (
    NormalizationStats,
    apply_normalizer,
    fit_normalizer,
)
from lpc_ad.train.windows import WindowPair, make_window_pairs, stack_pairs
from lpc_ad.util.utils import (
    STREAM_SHUFFLE,
    STREAM_TRAIN_NOISE,
    create_rng,
    format_float,
)


class EpochRecord:
    epoch: int
    mean_loss: float
    seconds: float

    def __init__(self, *, epoch: int, mean_loss: float, seconds: float):
        self.epoch = epoch
        self.mean_loss = mean_loss
        self.seconds = seconds

    def __repr__(self) -> str:
        return f"EpochRecord({self.epoch}, {self.mean_loss!r}, {self.seconds:.3f}s)"


class TrainResult:
    model: LpcModel
    history: List[EpochRecord]
    stats: Optional[NormalizationStats]

    def __init__(
        self,
        *,
        model: LpcModel,
        history: List[EpochRecord],
        stats: Optional[NormalizationStats] = None,
    ):
        self.model = model
        self.history = history
        self.stats = stats

    @property
    def losses(self) -> List[float]:
        return [r.mean_loss for r in self.history]

    @property
    def seconds(self) -> float:
        return sum(r.seconds for r in self.history)


class Trainer:
    """Mini-batch Adam over shuffled window pairs.

    Every random draw comes from streams derived from ``config.seed``, so two
    trainers with the same config produce bit-identical loss histories.
    """

    config: TrainConfig
    logger: Logger

    def __init__(self, config: TrainConfig, *, logger: Optional[Logger] = None):
        self.config = config
        self.logger = logger or get_lpc_logger(Trainer)

    def fit(
        self, pairs: Sequence[WindowPair], model: Optional[LpcModel] = None
    ) -> TrainResult:
        """Trains ``model`` (a fresh one seeded by the config when None) in place."""
        if not pairs:
            raise ContractError(error_empty_training_set())
        config = self.config
        if model is None:
            dims = pairs[0].history.shape[1]
            model = LpcModel.initialize(config.hyperparams(dims), config.seed)
        params = model.parameters()
        for p in params.values():
            p.requires_grad = True
        state = AdamState(learning_rate=config.learning_rate)
        shuffle_rng = create_rng(config.seed, STREAM_SHUFFLE)
        noise_rng = create_rng(config.seed, STREAM_TRAIN_NOISE)
        histories, futures = stack_pairs(pairs)
        self.logger.info(
            info_training_started(
                model.hyperparams.variant, len(pairs), model.parameter_count()
            )
        )

        history: List[EpochRecord] = []
        for epoch in range(config.max_epoch):
            starting_time = time.time()
            order = shuffle_rng.permutation(len(pairs))
            total = 0.0
            for batch, start in enumerate(range(0, len(pairs), config.batch_size)):
                index = order[start : start + config.batch_size]
                eps = draw_loss_noise(model, noise_rng, config.mc_samples, index.size)
                try:
                    with ComputationTape() as tape:
                        loss = batch_loss(model, histories[index], futures[index], eps)
                    backward(loss, tape)
                    adam_step(params, state)
                except NonFiniteValueError as e:
                    raise TrainingDivergedError(
                        error_training_diverged(epoch, batch, str(e))
                    ) from e
                value = loss.item()
                total += value
                if self.logger.level <= logging.DEBUG:
                    self.logger.debug(debug_batch_loss(epoch, batch, value))
            record = EpochRecord(
                epoch=epoch,
                mean_loss=total / len(pairs),
                seconds=time.time() - starting_time,
            )
            history.append(record)
            self.logger.info(
                info_epoch_completed(epoch, record.mean_loss, record.seconds)
            )

        return TrainResult(model=model, history=history)


def train(
    pairs: Sequence[WindowPair],
    config: TrainConfig,
    *,
    model: Optional[LpcModel] = None,
    logger: Optional[Logger] = None,
) -> TrainResult:
    return Trainer(config, logger=logger).fit(pairs, model)


def train_on_series(
    series: SeriesMatrix, config: TrainConfig, *, logger: Optional[Logger] = None
) -> TrainResult:
    """Normalizes the leading ``train_fraction`` of ``series`` with its own
    statistics, slices it into window pairs and trains on them.

    The statistics travel with the result so that test data can be scaled the
    same way.
    """
    rows = max(1, int(np.floor(series.length * config.train_fraction)))
    series = series.head(rows)
    stats = fit_normalizer(series, config.smoothing)
    pairs = make_window_pairs(
        apply_normalizer(stats, series),
        config.history_window,
        config.future_window,
    )
    result = train(pairs, config, logger=logger)
    result.stats = stats
    return result


def write_loss_history(
    history: Sequence[EpochRecord], path: str, logger: Optional[Logger] = None
) -> None:
    """Writes ``epoch,mean_loss,seconds`` lines."""
    df = pd.DataFrame(
        {
            "epoch": [r.epoch for r in history],
            "mean_loss": [format_float(r.mean_loss) for r in history],
            "seconds": [format_float(r.seconds) for r in history],
        }
    )
    df.to_csv(path, header=False, index=False)
    (logger or get_lpc_logger(Trainer)).info(info_file_written("Loss history", path))
