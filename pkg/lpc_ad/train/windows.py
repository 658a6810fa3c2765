from typing import List, Sequence, Tuple, Union

import numpy as np

from lpc_ad.data.series import SeriesMatrix
from lpc_ad.error import ConfigError, SeriesTooShortError
from lpc_ad.logger.messages import error_invalid_config_value, error_series_too_short


class WindowPair:
    """A historical window and the future window right after it.

    ``anchor`` is the 0-based index t of the first future row: history rows
    are ``[t - l_h, t)`` and future rows ``[t, t + l)``.
    """

    history: np.ndarray  # (l_h, M)
    future: np.ndarray  # (l, M)
    anchor: int

    def __init__(self, *, history: np.ndarray, future: np.ndarray, anchor: int):
        self.history = history
        self.future = future
        self.anchor = anchor

    def __repr__(self) -> str:
        return (
            f"WindowPair(anchor={self.anchor}, "
            f"history={self.history.shape}, future={self.future.shape})"
        )


def check_series_length(length: int, history_window: int, future_window: int) -> None:
    if length < history_window + future_window:
        raise SeriesTooShortError(
            error_series_too_short(length, history_window, future_window)
        )


def window_anchors(
    length: int, history_window: int, future_window: int, stride: int = 1
) -> List[int]:
    """Anchors ``l_h, l_h + stride, ...`` up to ``T - l``."""
    if stride < 1:
        raise ConfigError(error_invalid_config_value("stride", stride, "must be >= 1"))
    check_series_length(length, history_window, future_window)
    return list(range(history_window, length - future_window + 1, stride))


def make_window_pairs(
    series: Union[SeriesMatrix, np.ndarray],
    history_window: int,
    future_window: int,
    stride: int = 1,
) -> List[WindowPair]:
    """Slices a series (or a ``(T, M)`` array) into consecutive window pairs."""
    values = series.values if isinstance(series, SeriesMatrix) else np.asarray(series)
    return [
        WindowPair(
            history=values[t - history_window : t],
            future=values[t : t + future_window],
            anchor=t,
        )
        for t in window_anchors(values.shape[0], history_window, future_window, stride)
    ]


def stack_pairs(pairs: Sequence[WindowPair]) -> Tuple[np.ndarray, np.ndarray]:
    """Batches pairs into ``(B, l_h, M)`` and ``(B, l, M)`` arrays."""
    return (
        np.stack([p.history for p in pairs]),
        np.stack([p.future for p in pairs]),
    )
