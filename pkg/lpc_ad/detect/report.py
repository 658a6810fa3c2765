from logging import Logger
from typing import Optional, Sequence, Union

import numpy as np
import pandas as pd

from lpc_ad.detect.scoring import WindowScores
from lpc_ad.error import ConfigError, ParseError
from lpc_ad.logger import get_lpc_logger
from lpc_ad.logger.messages import (
    error_empty_file,
    error_negative_threshold,
    error_parse_failure,
    info_file_written,
)
from lpc_ad.util.utils import format_float


class DetectionReport:
    """Scores and flags of the scored timestamps.

    ``flags[i]`` is 1 exactly when ``scores[i] >= threshold``.
    """

    timestamps: np.ndarray
    scores: np.ndarray
    flags: np.ndarray
    threshold: float
    unscored: np.ndarray

    def __init__(
        self,
        *,
        timestamps: np.ndarray,
        scores: np.ndarray,
        flags: np.ndarray,
        threshold: float,
        unscored: Optional[np.ndarray] = None,
    ):
        self.timestamps = np.asarray(timestamps, dtype=np.int64)
        self.scores = np.asarray(scores, dtype=np.float64)
        self.flags = np.asarray(flags, dtype=np.int64)
        self.threshold = threshold
        self.unscored = (
            np.asarray(unscored, dtype=np.int64)
            if unscored is not None
            else np.zeros(0, dtype=np.int64)
        )

    def __len__(self) -> int:
        return self.timestamps.size

    def __repr__(self) -> str:
        return (
            f"DetectionReport({len(self)} scored, {int(self.flags.sum())} flagged, "
            f"threshold={self.threshold!r})"
        )


def detect(
    scores: Union[WindowScores, Sequence[float], np.ndarray], threshold: float
) -> DetectionReport:
    """Flags every scored timestamp whose score is at least ``threshold``."""
    if threshold < 0.0:
        raise ConfigError(error_negative_threshold(threshold))
    if isinstance(scores, WindowScores):
        timestamps = scores.timestamps
        values = scores.scored_values
        unscored = scores.unscored
    else:
        values = np.asarray(scores, dtype=np.float64)
        timestamps = np.arange(values.size)
        unscored = None
    return DetectionReport(
        timestamps=timestamps,
        scores=values,
        flags=(values >= threshold).astype(np.int64),
        threshold=threshold,
        unscored=unscored,
    )


# -------------------------------
# Score dump: "timestamp,score,flag" lines
# -------------------------------


def write_score_dump(
    report: DetectionReport, path: str, logger: Optional[Logger] = None
) -> None:
    df = pd.DataFrame(
        {
            "timestamp": report.timestamps,
            "score": [format_float(s) for s in report.scores],
            "flag": report.flags,
        }
    )
    df.to_csv(path, header=False, index=False)
    (logger or get_lpc_logger(DetectionReport)).info(info_file_written("Scores", path))


def read_score_dump(path: str, threshold: float = 0.0) -> DetectionReport:
    """Reads a score dump back; ``threshold`` is only recorded in the report."""
    try:
        df = pd.read_csv(path, header=None, dtype=str, skip_blank_lines=True)
    except pd.errors.EmptyDataError as e:
        raise ParseError(error_empty_file(path)) from e
    except pd.errors.ParserError as e:
        raise ParseError(error_parse_failure(path, 0, str(e))) from e
    if df.shape[1] != 3:
        raise ParseError(
            error_parse_failure(path, 1, f"expected 3 columns, got {df.shape[1]}")
        )
    timestamps = pd.to_numeric(df[0], errors="coerce")
    scores = pd.to_numeric(df[1], errors="coerce")
    flags = pd.to_numeric(df[2], errors="coerce")
    bad = timestamps.isna() | scores.isna() | flags.isna() | ~flags.isin([0, 1])
    bad |= timestamps.notna() & (timestamps % 1 != 0)
    if bad.any():
        line = int(np.flatnonzero(bad.to_numpy())[0]) + 1
        raise ParseError(error_parse_failure(path, line, "malformed score record"))
    return DetectionReport(
        timestamps=timestamps.to_numpy().astype(np.int64),
        # parsed by float() for an exact round trip
        scores=df[1].to_numpy(dtype=object).astype(np.float64),
        flags=flags.to_numpy().astype(np.int64),
        threshold=threshold,
    )
