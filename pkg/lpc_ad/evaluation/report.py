import json
from logging import Logger
from typing import Any, Dict, Optional

from lpc_ad.evaluation.aggregate import MetricBundle
from lpc_ad.logger import get_lpc_logger
from lpc_ad.logger.messages import info_file_written


def write_metric_report(
    report: Dict[str, Any], path: str, logger: Optional[Logger] = None
) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(report, f, indent=2, sort_keys=True)
        f.write("\n")
    (logger or get_lpc_logger(MetricBundle)).info(info_file_written("Report", path))


def read_metric_report(path: str) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)
