from .point_adjust import find_segments, point_adjust, adjust_scores  # noqa
from .metrics import prf, auroc, f1_from  # noqa
from .threshold import ThresholdResult, threshold_search, threshold_grid  # noqa
from .aggregate import RunMetrics, MetricBundle, aggregate  # noqa
from .report import write_metric_report, read_metric_report  # noqa
