import logging
from concurrent.futures.thread import ThreadPoolExecutor
from logging import Logger
from typing import List, Optional, Sequence, Tuple

import numpy as np

from lpc_ad.data.series import SeriesMatrix
from lpc_ad.detect.noise import NoiseMode
from lpc_ad.error import DimensionError
from lpc_ad.logger import get_lpc_logger
from lpc_ad.logger.messages import debug_scoring_anchors, error_dimension_mismatch
from lpc_ad.model import LpcModel, sample_noise
from lpc_ad.train.windows import check_series_length
from lpc_ad.util.utils import STREAM_DETECT_NOISE, create_rng


def scoring_anchors(length: int, history_window: int, future_window: int) -> List[int]:
    """Anchors stepping by ``l`` so every timestamp from ``l_h`` on is covered.

    When ``T - l_h`` is not a multiple of ``l`` one more anchor at ``T - l``
    covers the tail; it overlaps the previous window.
    """
    check_series_length(length, history_window, future_window)
    anchors = list(range(history_window, length - future_window + 1, future_window))
    if anchors[-1] + future_window < length:
        anchors.append(length - future_window)
    return anchors


class WindowScores:
    """Per-timestamp scores and reconstructions of one series.

    Unscored timestamps hold NaN in ``scores`` and ``reconstruction``.
    """

    scores: np.ndarray  # (T,)
    reconstruction: np.ndarray  # (T, M)

    def __init__(self, *, scores: np.ndarray, reconstruction: np.ndarray):
        self.scores = scores
        self.reconstruction = reconstruction

    @property
    def scored_mask(self) -> np.ndarray:
        return ~np.isnan(self.scores)

    @property
    def timestamps(self) -> np.ndarray:
        return np.flatnonzero(self.scored_mask)

    @property
    def unscored(self) -> np.ndarray:
        return np.flatnonzero(~self.scored_mask)

    @property
    def scored_values(self) -> np.ndarray:
        return self.scores[self.scored_mask]


class WindowScorer:
    """Scores a (normalized) test series with a trained model.

    Noise is drawn up front in anchor order from the detection stream of
    ``seed``, so the scores do not depend on ``batch_size`` chunking order or
    on the number of workers.
    """

    model: LpcModel
    noise_mode: NoiseMode
    seed: int
    batch_size: int
    workers: int
    logger: Logger

    def __init__(
        self,
        model: LpcModel,
        *,
        noise_mode: Optional[NoiseMode] = None,
        seed: int = 0,
        batch_size: int = 256,
        workers: int = 1,
        logger: Optional[Logger] = None,
    ):
        """
        :param model: The trained model (only read).
        :param noise_mode: sample, deterministic (Default) or mc:k.
        :param seed: Seeds the detection noise stream.
        :param batch_size: Windows per forward pass.
        :param workers: More than one runs the forward passes in a thread pool.
        :param logger: The logger (Default: lpc_ad.WindowScorer).
        """
        self.model = model
        self.noise_mode = noise_mode or NoiseMode("deterministic")
        self.seed = seed
        self.batch_size = batch_size
        self.workers = workers
        self.logger = logger or get_lpc_logger(WindowScorer)

    def score(self, test: SeriesMatrix) -> WindowScores:
        hp = self.model.hyperparams
        if test.dims != hp.dims:
            raise DimensionError(
                error_dimension_mismatch(test.series_id, hp.dims, test.dims)
            )
        values = test.values
        anchors = scoring_anchors(test.length, hp.history_window, hp.future_window)
        if self.logger.level <= logging.DEBUG:
            self.logger.debug(debug_scoring_anchors(len(anchors), str(self.noise_mode)))
        noise = self._draw_noise(len(anchors))

        chunks = []
        for start in range(0, len(anchors), self.batch_size):
            chunk = anchors[start : start + self.batch_size]
            chunk_noise = None if noise is None else noise[start : start + len(chunk)]
            chunks.append((chunk, chunk_noise))

        def run(chunk: Tuple[Sequence[int], Optional[np.ndarray]]) -> np.ndarray:
            return self._reconstruct(values, *chunk)

        if self.workers > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                reconstructions = list(executor.map(run, chunks))
        else:
            reconstructions = [run(c) for c in chunks]

        scores = np.full(test.length, np.nan)
        reconstruction = np.full(values.shape, np.nan)
        for (chunk, _), recon in zip(chunks, reconstructions):
            for t, window in zip(chunk, recon):
                rows = np.arange(t, t + hp.future_window)
                # the earlier anchor wins on the overlapping tail window
                fresh = np.isnan(scores[rows])
                rows, window = rows[fresh], window[fresh]
                reconstruction[rows] = window
                scores[rows] = np.linalg.norm(values[rows] - window, axis=1)
        return WindowScores(scores=scores, reconstruction=reconstruction)

    def _draw_noise(self, anchors: int) -> Optional[np.ndarray]:
        hp = self.model.hyperparams
        if self.noise_mode.is_deterministic or not hp.uses_perturbation:
            return None
        rng = create_rng(self.seed, STREAM_DETECT_NOISE)
        # (A, draws, l, N): the draws of one anchor are contiguous
        return sample_noise(
            rng,
            hp.sigma2,
            (anchors, self.noise_mode.draws, hp.future_window, hp.latent_dim),
        )

    def _reconstruct(
        self, values: np.ndarray, chunk: Sequence[int], noise: Optional[np.ndarray]
    ) -> np.ndarray:
        hp = self.model.hyperparams
        history = np.stack([values[t - hp.history_window : t] for t in chunk])
        future = np.stack([values[t : t + hp.future_window] for t in chunk])
        if noise is None:
            return self.model.reconstruct(history, future)
        draws = [
            self.model.reconstruct(history, future, noise[:, k])
            for k in range(noise.shape[1])
        ]
        return draws[0] if len(draws) == 1 else np.mean(draws, axis=0)


def score_windows(
    model: LpcModel,
    test: SeriesMatrix,
    *,
    noise_mode: Optional[NoiseMode] = None,
    seed: int = 0,
    batch_size: int = 256,
    workers: int = 1,
    logger: Optional[Logger] = None,
) -> WindowScores:
    return WindowScorer(
        model,
        noise_mode=noise_mode,
        seed=seed,
        batch_size=batch_size,
        workers=workers,
        logger=logger,
    ).score(test)
