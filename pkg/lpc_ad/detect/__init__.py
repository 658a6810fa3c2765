from .noise import NoiseMode  # noqa
from .scoring import WindowScores, WindowScorer, score_windows, scoring_anchors  # noqa
from .report import (  # noqa
    DetectionReport,
    detect,
    write_score_dump,
    read_score_dump,
)
