"""SMD-style dataset directories.

A dataset directory holds ``train.csv`` and ``test.csv`` (headerless,
comma-separated, one row per timestamp) and ``test_label.csv`` (one 0/1
label per line). A directory without these files but with sub-directories
that have them is a multi-series dataset.
"""
import io
import os
from logging import Logger
from typing import List, Optional

import numpy as np
import pandas as pd

from lpc_ad.data.series import DatasetBundle, SeriesMatrix
from lpc_ad.error import DataError, ParseError
from lpc_ad.logger import get_lpc_logger
from lpc_ad.logger.messages import (
    debug_loaded_series,
    error_dimension_mismatch,
    error_empty_file,
    error_label_length_mismatch,
    error_missing_dataset_file,
    error_parse_failure,
    info_file_written,
)

TRAIN_FILE = "train.csv"
TEST_FILE = "test.csv"
LABEL_FILE = "test_label.csv"


def _read_text(path: str) -> str:
    if not os.path.isfile(path):
        raise DataError(error_missing_dataset_file(path))
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    text = text.rstrip("\r\n ")
    if not text:
        raise ParseError(error_empty_file(path))
    return text


def read_matrix(path: str) -> np.ndarray:
    """Parses a headerless float CSV, naming file and line on the first bad row."""
    text = _read_text(path)
    lines = text.splitlines()
    width = lines[0].count(",") + 1
    for number, line in enumerate(lines, start=1):
        fields = line.count(",") + 1
        if fields != width:
            raise ParseError(
                error_parse_failure(
                    path, number, f"expected {width} values but found {fields}"
                )
            )
    df = pd.read_csv(
        io.StringIO(text), header=None, dtype=str, skip_blank_lines=False
    )
    coerced = df.apply(pd.to_numeric, errors="coerce").to_numpy(dtype=np.float64)
    bad = ~np.isfinite(coerced)
    if bad.any():
        row, column = np.argwhere(bad)[0]
        raise ParseError(
            error_parse_failure(
                path,
                int(row) + 1,
                f"column {int(column) + 1} is not a number: {df.iat[row, column]!r}",
            )
        )
    # str -> float per cell is correctly rounded, so 17-digit files round-trip
    return df.to_numpy(dtype=object).astype(np.float64)


def read_labels(path: str) -> np.ndarray:
    values = read_matrix(path)
    if values.shape[1] != 1:
        raise ParseError(error_parse_failure(path, 1, "expected one label per line"))
    labels = values[:, 0]
    bad = (labels != 0.0) & (labels != 1.0)
    if bad.any():
        line = int(np.flatnonzero(bad)[0]) + 1
        raise ParseError(error_parse_failure(path, line, "labels must be 0 or 1"))
    return labels.astype(np.int64)


def load_dataset(path: str, logger: Optional[Logger] = None) -> DatasetBundle:
    logger = logger or get_lpc_logger(DatasetBundle)
    name = os.path.basename(os.path.normpath(path))
    train = read_matrix(os.path.join(path, TRAIN_FILE))
    test = read_matrix(os.path.join(path, TEST_FILE))
    labels = read_labels(os.path.join(path, LABEL_FILE))
    if test.shape[1] != train.shape[1]:
        raise ParseError(
            error_dimension_mismatch(
                os.path.join(path, TEST_FILE), train.shape[1], test.shape[1]
            )
        )
    if labels.size != test.shape[0]:
        raise ParseError(
            error_parse_failure(
                os.path.join(path, LABEL_FILE),
                min(labels.size, test.shape[0]) + 1,
                error_label_length_mismatch(labels.size, test.shape[0]),
            )
        )
    logger.debug(debug_loaded_series(name, test.shape[0], test.shape[1]))
    return DatasetBundle(
        train=SeriesMatrix(train, None, f"{name}/train"),
        test=SeriesMatrix(test, labels, f"{name}/test"),
        name=name,
    )


def is_dataset_dir(path: str) -> bool:
    return os.path.isfile(os.path.join(path, TRAIN_FILE))


def discover_datasets(
    path: str, logger: Optional[Logger] = None
) -> List[DatasetBundle]:
    """One bundle for a dataset directory, one per sub-directory otherwise."""
    if is_dataset_dir(path):
        return [load_dataset(path, logger)]
    if not os.path.isdir(path):
        raise DataError(error_missing_dataset_file(path))
    children = sorted(
        os.path.join(path, child)
        for child in os.listdir(path)
        if is_dataset_dir(os.path.join(path, child))
    )
    if not children:
        raise DataError(error_missing_dataset_file(os.path.join(path, TRAIN_FILE)))
    return [load_dataset(child, logger) for child in children]


def write_matrix(values: np.ndarray, path: str) -> None:
    pd.DataFrame(values).to_csv(path, header=False, index=False, float_format="%.17g")


def write_dataset(
    bundle: DatasetBundle, path: str, logger: Optional[Logger] = None
) -> None:
    os.makedirs(path, exist_ok=True)
    write_matrix(bundle.train.values, os.path.join(path, TRAIN_FILE))
    write_matrix(bundle.test.values, os.path.join(path, TEST_FILE))
    labels = bundle.test.labels
    if labels is None:
        labels = np.zeros(bundle.test.length, dtype=np.int64)
    pd.DataFrame(labels).to_csv(
        os.path.join(path, LABEL_FILE), header=False, index=False
    )
    (logger or get_lpc_logger(DatasetBundle)).info(info_file_written("Dataset", path))
