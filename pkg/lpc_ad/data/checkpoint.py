"""Text checkpoints of trained models.

A checkpoint is a JSON document::

    {
      "format": "lpc_ad-checkpoint",
      "version": 1,
      "hyperparams": {...},
      "normalizer": {...} | null,
      "params": [{"name": ..., "shape": [...], "values": [...]}, ...]
    }

Values are written with ``repr`` precision (shortest round-tripping decimal),
so loading restores bit-equal parameters and re-saving reproduces the file
byte for byte.
"""
import json
from logging import Logger
from typing import Any, Dict, Optional, Tuple

import numpy as np

from lpc_ad.error import CheckpointError, LpcError
from lpc_ad.logger import get_lpc_logger
from lpc_ad.logger.messages import (
    error_checkpoint_format,
    error_checkpoint_shape,
    info_file_written,
)
from lpc_ad.model import LpcModel, ModelHyperParams
from lpc_ad.train.normalizer import NormalizationStats

CHECKPOINT_FORMAT = "lpc_ad-checkpoint"
CHECKPOINT_VERSION = 1


def checkpoint_document(
    model: LpcModel, stats: Optional[NormalizationStats] = None
) -> Dict[str, Any]:
    return {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "hyperparams": model.hyperparams.to_dict(),
        "normalizer": stats.to_dict() if stats is not None else None,
        "params": [
            {
                "name": name,
                "shape": list(p.shape),
                "values": [float(v) for v in p.data.reshape(-1)],
            }
            for name, p in model.parameters().items()
        ],
    }


def save_checkpoint(
    model: LpcModel,
    path: str,
    stats: Optional[NormalizationStats] = None,
    logger: Optional[Logger] = None,
) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(checkpoint_document(model, stats), f, indent=1, sort_keys=True)
        f.write("\n")
    (logger or get_lpc_logger(LpcModel)).info(info_file_written("Checkpoint", path))


def load_checkpoint(path: str) -> Tuple[LpcModel, Optional[NormalizationStats]]:
    """Rebuilds the model and the normalization statistics of a checkpoint.

    Every parameter's shape is checked against the one the stored
    hyperparameters imply.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = json.load(f)
    except (OSError, ValueError) as e:
        raise CheckpointError(error_checkpoint_format(path, str(e))) from e
    if not isinstance(document, dict) or document.get("format") != CHECKPOINT_FORMAT:
        raise CheckpointError(error_checkpoint_format(path, "not an lpc_ad checkpoint"))
    if document.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(
            error_checkpoint_format(
                path, f"unsupported version {document.get('version')!r}"
            )
        )
    try:
        hyperparams = ModelHyperParams.from_dict(document["hyperparams"])
        stats = (
            NormalizationStats.from_dict(document["normalizer"])
            if document.get("normalizer") is not None
            else None
        )
        records = {r["name"]: r for r in document["params"]}
    except (KeyError, TypeError, ValueError, LpcError) as e:
        raise CheckpointError(error_checkpoint_format(path, str(e))) from e

    # a freshly initialized model provides the expected names and shapes
    model = LpcModel.initialize(hyperparams, seed=0)
    params = model.parameters()
    if set(records) != set(params):
        missing = sorted(set(params) - set(records))
        unexpected = sorted(set(records) - set(params))
        raise CheckpointError(
            error_checkpoint_format(
                path, f"missing {missing}, unexpected {unexpected}"
            )
        )
    for name, param in params.items():
        record = records[name]
        try:
            shape = tuple(record.get("shape", ()))
            values = np.asarray(record.get("values", []), dtype=np.float64)
        except (TypeError, ValueError) as e:
            raise CheckpointError(
                error_checkpoint_format(path, f"`{name}`: {e}")
            ) from e
        if shape != param.shape:
            raise CheckpointError(error_checkpoint_shape(name, param.shape, shape))
        if values.size != param.size:
            raise CheckpointError(
                error_checkpoint_shape(name, param.shape, (values.size,))
            )
        if not np.all(np.isfinite(values)):
            raise CheckpointError(
                error_checkpoint_format(path, f"`{name}` is not finite")
            )
        param.data[...] = values.reshape(param.shape)
    return model, stats
