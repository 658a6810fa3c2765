from logging import Logger
from typing import Optional, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

from lpc_ad.data.series import SeriesMatrix  # noqa: E402
from lpc_ad.detect.report import DetectionReport  # noqa: E402
from lpc_ad.error import DimensionError  # noqa: E402
from lpc_ad.evaluation.point_adjust import find_segments  # noqa: E402
from lpc_ad.logger import get_lpc_logger  # noqa: E402
from lpc_ad.logger.messages import (  # noqa: E402
    error_length_mismatch,
    info_file_written,
)

MAX_PLOTTED_DIMS = 4


def plot_frame(
    test: SeriesMatrix,
    reconstruction: np.ndarray,
    report: DetectionReport,
    window: Optional[Tuple[int, int]] = None,
) -> pd.DataFrame:
    """One row per scored timestamp: values, reconstruction, score, flag, label."""
    if reconstruction.shape != test.values.shape:
        raise DimensionError(
            error_length_mismatch(
                "reconstruction", reconstruction.shape[0], test.values.shape[0]
            )
        )
    timestamps = report.timestamps
    if timestamps.size and (timestamps.min() < 0 or timestamps.max() >= test.length):
        raise DimensionError(
            error_length_mismatch(
                "plot timestamps", int(timestamps.max()) + 1, test.length
            )
        )
    keep = np.ones(timestamps.size, dtype=bool)
    if window is not None:
        keep = (timestamps >= window[0]) & (timestamps < window[1])
    timestamps = timestamps[keep]
    labels = (
        test.labels[timestamps]
        if test.labels is not None
        else np.zeros(timestamps.size, dtype=np.int64)
    )
    columns = {"timestamp": timestamps}
    for d in range(test.dims):
        columns[f"value_{d}"] = test.values[timestamps, d]
    for d in range(test.dims):
        columns[f"recon_{d}"] = reconstruction[timestamps, d]
    columns["score"] = report.scores[keep]
    columns["flag"] = report.flags[keep]
    columns["label"] = labels
    return pd.DataFrame(columns)


def _shade(
    ax, timestamps: np.ndarray, marks: np.ndarray, color: str, label: str
) -> None:
    for i, (start, stop) in enumerate(find_segments(marks)):
        ax.axvspan(
            timestamps[start],
            timestamps[stop - 1] + 1,
            color=color,
            alpha=0.25,
            label=label if i == 0 else None,
        )


def write_svg(frame: pd.DataFrame, dims: int, path: str) -> None:
    plotted = min(dims, MAX_PLOTTED_DIMS)
    fig, axes = plt.subplots(
        plotted + 1, 1, figsize=(10, 2 * (plotted + 1)), sharex=True, squeeze=False
    )
    t = frame["timestamp"].to_numpy()
    labels = frame["label"].to_numpy()
    flags = frame["flag"].to_numpy()
    for d in range(plotted):
        ax = axes[d][0]
        ax.plot(t, frame[f"value_{d}"], color="black", linewidth=0.8, label="truth")
        ax.plot(t, frame[f"recon_{d}"], color="tab:blue", linewidth=0.8, label="recon")
        _shade(ax, t, labels, "tab:red", "labeled")
        _shade(ax, t, flags, "tab:orange", "flagged")
        ax.set_ylabel(f"dim {d}")
    score_ax = axes[plotted][0]
    score_ax.plot(t, frame["score"], color="tab:purple", linewidth=0.8)
    _shade(score_ax, t, labels, "tab:red", "labeled")
    _shade(score_ax, t, flags, "tab:orange", "flagged")
    score_ax.set_ylabel("score")
    score_ax.set_xlabel("timestamp")
    axes[0][0].legend(loc="upper right", fontsize="small")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def emit_plot_data(
    test: SeriesMatrix,
    reconstruction: np.ndarray,
    report: DetectionReport,
    path: str,
    *,
    window: Optional[Tuple[int, int]] = None,
    svg_path: Optional[str] = None,
    logger: Optional[Logger] = None,
) -> pd.DataFrame:
    """Writes the plot records as CSV (with a header) and optionally an SVG."""
    logger = logger or get_lpc_logger(DetectionReport)
    frame = plot_frame(test, reconstruction, report, window)
    frame.to_csv(path, index=False, float_format="%.17g")
    logger.info(info_file_written("Plot data", path))
    if svg_path is not None:
        write_svg(frame, test.dims, svg_path)
        logger.info(info_file_written("Plot", svg_path))
    return frame
