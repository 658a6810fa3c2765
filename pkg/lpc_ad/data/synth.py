"""Synthetic multivariate series with labeled anomaly segments.

The base signal mixes a few sinusoidal sources into M channels, scales every
channel to a unit peak amplitude and adds Gaussian noise. Magnitudes are in
units of that amplitude. Anomalies are injected into the test split only:

* ``spike``: a pulse of ``spike_magnitude`` on a few channels that decays
  exponentially over its segment
* ``level_shift``: a constant offset of ``level_shift_magnitude``
* ``correlation_break``: the affected channels are mirrored around their
  mean over the split, which inverts their relation to the other channels
"""
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from lpc_ad.data.series import DatasetBundle, SeriesMatrix
from lpc_ad.error import ConfigError, SynthSpecError
from lpc_ad.logger.messages import (
    error_invalid_config_value,
    error_overlapping_segments,
    error_segment_out_of_range,
    error_segments_do_not_fit,
)
from lpc_ad.util.key_value import load_key_values
from lpc_ad.util.utils import STREAM_SYNTH, create_rng

ANOMALY_KINDS = ("spike", "level_shift", "correlation_break")

_SIGNAL_STREAM = 0
_ANOMALY_STREAM = 1

# a spike falls to exp(-SPIKE_DECAY) of its peak at the end of its segment
SPIKE_DECAY = 4.0


class SynthSpec:
    t_train: int
    t_test: int
    dims: int
    seed: int
    sources: int
    period_min: float
    period_max: float
    noise_std: float
    nonlinear_coupling: float
    coupling_lag: int
    spikes: int
    level_shifts: int
    correlation_breaks: int
    spike_magnitude: float
    level_shift_magnitude: float
    min_length: int
    max_length: int
    affected_dims: int
    warmup: int

    def __init__(
        self,
        *,
        t_train: int = 2000,
        t_test: int = 1000,
        dims: int = 8,
        seed: int = 0,
        sources: int = 3,
        period_min: float = 20.0,
        period_max: float = 100.0,
        noise_std: float = 0.05,
        nonlinear_coupling: float = 0.0,
        coupling_lag: int = 5,
        spikes: int = 2,
        level_shifts: int = 2,
        correlation_breaks: int = 2,
        spike_magnitude: float = 2.0,
        level_shift_magnitude: float = 1.5,
        min_length: int = 5,
        max_length: int = 20,
        affected_dims: int = 2,
        warmup: int = 10,
    ):
        """
        :param t_train: Length of the anomaly-free train split.
        :param t_test: Length of the test split.
        :param dims: M, the number of channels.
        :param seed: Seeds every random draw of the generator.
        :param sources: Number of sinusoidal sources mixed into the channels.
        :param period_min: Smallest source period in timestamps.
        :param period_max: Largest source period in timestamps.
        :param noise_std: Standard deviation of the additive Gaussian noise.
        :param nonlinear_coupling: Weight of ``tanh(s_a(t - lag) * s_b(t - lag))``
            added to every channel; 0 disables it.
        :param coupling_lag: The lag of the nonlinear coupling.
        :param spikes: Number of spike segments.
        :param level_shifts: Number of level-shift segments.
        :param correlation_breaks: Number of correlation-break segments.
        :param spike_magnitude: Peak offset of a spike (Default: 2.0).
        :param level_shift_magnitude: Offset of a level shift (Default: 1.5).
        :param min_length: Shortest anomaly segment.
        :param max_length: Longest anomaly segment.
        :param affected_dims: Channels touched by one anomaly.
        :param warmup: No anomaly starts before this test index.
        """
        self.t_train = t_train
        self.t_test = t_test
        self.dims = dims
        self.seed = seed
        self.sources = sources
        self.period_min = float(period_min)
        self.period_max = float(period_max)
        self.noise_std = float(noise_std)
        self.nonlinear_coupling = float(nonlinear_coupling)
        self.coupling_lag = coupling_lag
        self.spikes = spikes
        self.level_shifts = level_shifts
        self.correlation_breaks = correlation_breaks
        self.spike_magnitude = float(spike_magnitude)
        self.level_shift_magnitude = float(level_shift_magnitude)
        self.min_length = min_length
        self.max_length = max_length
        self.affected_dims = affected_dims
        self.warmup = warmup
        self._validate()

    def _validate(self) -> None:
        for key in ("t_train", "t_test", "dims", "sources", "min_length"):
            if getattr(self, key) < 1:
                raise ConfigError(
                    error_invalid_config_value(key, getattr(self, key), "must be >= 1")
                )
        for key in (
            "seed",
            "spikes",
            "level_shifts",
            "correlation_breaks",
            "coupling_lag",
            "warmup",
            "noise_std",
        ):
            if getattr(self, key) < 0:
                raise ConfigError(
                    error_invalid_config_value(key, getattr(self, key), "must be >= 0")
                )
        if self.max_length < self.min_length:
            raise ConfigError(
                error_invalid_config_value(
                    "max_length", self.max_length, "must be >= min_length"
                )
            )
        if not 0 < self.period_min <= self.period_max:
            raise ConfigError(
                error_invalid_config_value(
                    "period_min", self.period_min, "must be in (0, period_max]"
                )
            )
        if not 1 <= self.affected_dims <= self.dims:
            raise ConfigError(
                error_invalid_config_value(
                    "affected_dims", self.affected_dims, "must be in [1, dims]"
                )
            )

    @property
    def total_segments(self) -> int:
        return self.spikes + self.level_shifts + self.correlation_breaks

    def to_dict(self) -> Dict[str, Any]:
        return {key: getattr(self, key) for key in SYNTH_CONVERTERS}

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "SynthSpec":
        return SynthSpec(**d)

    def __repr__(self) -> str:
        return f"SynthSpec({self.to_dict()})"


SYNTH_CONVERTERS = {
    "t_train": int,
    "t_test": int,
    "dims": int,
    "seed": int,
    "sources": int,
    "period_min": float,
    "period_max": float,
    "noise_std": float,
    "nonlinear_coupling": float,
    "coupling_lag": int,
    "spikes": int,
    "level_shifts": int,
    "correlation_breaks": int,
    "spike_magnitude": float,
    "level_shift_magnitude": float,
    "min_length": int,
    "max_length": int,
    "affected_dims": int,
    "warmup": int,
}


def load_synth_spec(path: Optional[str] = None, **overrides: Any) -> SynthSpec:
    values = load_key_values(path, SYNTH_CONVERTERS) if path else {}
    values.update({k: v for k, v in overrides.items() if v is not None})
    return SynthSpec.from_dict(values)


class AnomalySegment:
    kind: str
    start: int
    length: int
    magnitude: float
    dims: Tuple[int, ...]

    def __init__(
        self,
        *,
        kind: str,
        start: int,
        length: int,
        magnitude: float,
        dims: Sequence[int],
    ):
        self.kind = kind
        self.start = start
        self.length = length
        self.magnitude = magnitude
        self.dims = tuple(dims)

    @property
    def stop(self) -> int:
        return self.start + self.length

    def __repr__(self) -> str:
        return (
            f"AnomalySegment({self.kind}, [{self.start}, {self.stop}), "
            f"magnitude={self.magnitude!r}, dims={self.dims})"
        )


# -------------------------------
# Base signal
# -------------------------------


def base_signal(spec: SynthSpec) -> np.ndarray:
    """Both splits back to back as one ``(t_train + t_test, M)`` array."""
    rng = create_rng(spec.seed, STREAM_SYNTH, _SIGNAL_STREAM)
    length = spec.t_train + spec.t_test
    periods = rng.uniform(spec.period_min, spec.period_max, size=spec.sources)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=spec.sources)
    mixing = rng.uniform(-1.0, 1.0, size=(spec.dims, spec.sources))
    t = np.arange(length, dtype=np.float64)[:, np.newaxis]
    sources = np.sin(2.0 * np.pi * t / periods + phases)
    values = sources @ mixing.T
    values = values / np.maximum(np.abs(values).max(axis=0), 1e-12)
    if spec.nonlinear_coupling != 0.0 and spec.sources >= 2:
        lagged = np.roll(sources, spec.coupling_lag, axis=0)
        lagged[: spec.coupling_lag] = sources[0]
        coupling = np.tanh(4.0 * lagged[:, 0] * lagged[:, 1])[:, np.newaxis]
        weights = rng.uniform(0.5, 1.0, size=spec.dims)
        values = values + spec.nonlinear_coupling * coupling * weights
    return values + rng.normal(0.0, spec.noise_std, size=values.shape)


# -------------------------------
# Anomalies
# -------------------------------


def plan_anomalies(spec: SynthSpec) -> List[AnomalySegment]:
    """Places one segment per slot of the test span, in random kind order.

    Slots keep at least one normal timestamp between segments so that no two
    of them merge into a single labeled run.
    """
    total = spec.total_segments
    if total == 0:
        return []
    rng = create_rng(spec.seed, STREAM_SYNTH, _ANOMALY_STREAM)
    span = spec.t_test - spec.warmup
    slot = span // total
    if slot < spec.max_length + 1:
        raise SynthSpecError(error_segments_do_not_fit(total, spec.max_length, span))
    kinds = (
        ["spike"] * spec.spikes
        + ["level_shift"] * spec.level_shifts
        + ["correlation_break"] * spec.correlation_breaks
    )
    kinds = [kinds[i] for i in rng.permutation(total)]
    segments = []
    for i, kind in enumerate(kinds):
        length = int(rng.integers(spec.min_length, spec.max_length + 1))
        offset = int(rng.integers(0, slot - length))
        sign = 1.0 if rng.random() < 0.5 else -1.0
        magnitude = {
            "spike": spec.spike_magnitude,
            "level_shift": spec.level_shift_magnitude,
            "correlation_break": 0.0,
        }[kind]
        segments.append(
            AnomalySegment(
                kind=kind,
                start=spec.warmup + i * slot + offset,
                length=length,
                magnitude=sign * magnitude,
                dims=sorted(
                    rng.choice(spec.dims, size=spec.affected_dims, replace=False)
                ),
            )
        )
    return segments


def check_segments(segments: Sequence[AnomalySegment], low: int, high: int) -> None:
    ordered = sorted(segments, key=lambda s: s.start)
    for segment in ordered:
        if segment.length < 1 or segment.start < low or segment.stop > high:
            raise SynthSpecError(
                error_segment_out_of_range((segment.start, segment.stop), low, high)
            )
    for first, second in zip(ordered, ordered[1:]):
        if second.start < first.stop:
            raise SynthSpecError(
                error_overlapping_segments(
                    (first.start, first.stop), (second.start, second.stop)
                )
            )


def inject_anomalies(
    values: np.ndarray, segments: Sequence[AnomalySegment], warmup: int = 0
) -> Tuple[np.ndarray, np.ndarray]:
    """Returns the modified copy of ``values`` and the per-timestamp labels."""
    check_segments(segments, warmup, values.shape[0])
    values = values.copy()
    centers = values.mean(axis=0)
    labels = np.zeros(values.shape[0], dtype=np.int64)
    for s in segments:
        rows = slice(s.start, s.stop)
        dims = list(s.dims)
        if s.kind == "correlation_break":
            values[rows, dims] = 2.0 * centers[dims] - values[rows, dims]
        elif s.kind == "spike":
            decay = np.exp(-SPIKE_DECAY * np.arange(s.length) / s.length)
            values[rows, dims] += s.magnitude * decay[:, np.newaxis]
        else:
            values[rows, dims] += s.magnitude
        labels[rows] = 1
    return values, labels


def synth_generate(spec: SynthSpec) -> DatasetBundle:
    values = base_signal(spec)
    train, test = values[: spec.t_train], values[spec.t_train :]
    test, labels = inject_anomalies(test, plan_anomalies(spec), spec.warmup)
    name = f"synth-{spec.seed}"
    return DatasetBundle(
        train=SeriesMatrix(train, None, f"{name}/train"),
        test=SeriesMatrix(test, labels, f"{name}/test"),
        name=name,
    )
