import os
import shutil
import tempfile

import numpy as np
import pytest

from lpc_ad.data import (
    AnomalySegment,
    SynthSpec,
    inject_anomalies,
    load_synth_spec,
    plan_anomalies,
    synth_generate,
)
from lpc_ad.data.synth import SPIKE_DECAY
from lpc_ad.error import ConfigError, SynthSpecError
from lpc_ad.evaluation import find_segments


class TestSynth:
    def setup_method(self):
        self.workdir = tempfile.mkdtemp()
        self.spec = SynthSpec(t_train=300, t_test=400, dims=5, seed=3)

    def teardown_method(self):
        shutil.rmtree(self.workdir, ignore_errors=True)

    def test_shapes(self):
        bundle = synth_generate(self.spec)
        assert bundle.name == "synth-3"
        assert bundle.train.values.shape == (300, 5)
        assert bundle.test.values.shape == (400, 5)
        assert bundle.train.labels is None
        assert bundle.test.labels.shape == (400,)

    def test_deterministic(self):
        first = synth_generate(self.spec)
        second = synth_generate(SynthSpec(t_train=300, t_test=400, dims=5, seed=3))
        assert np.array_equal(first.train.values, second.train.values)
        assert np.array_equal(first.test.values, second.test.values)
        assert np.array_equal(first.test.labels, second.test.labels)

    def test_seeds_differ(self):
        other = synth_generate(SynthSpec(t_train=300, t_test=400, dims=5, seed=4))
        train = synth_generate(self.spec).train
        assert not np.allclose(train.values, other.train.values)

    def test_labels_follow_the_planned_segments(self):
        segments = plan_anomalies(self.spec)
        assert len(segments) == 6
        assert sorted(s.kind for s in segments) == sorted(
            ["spike"] * 2 + ["level_shift"] * 2 + ["correlation_break"] * 2
        )
        labels = synth_generate(self.spec).test.labels
        runs = find_segments(labels)
        assert runs == sorted((s.start, s.stop) for s in segments)
        assert not labels[: self.spec.warmup].any()
        for s in segments:
            assert self.spec.min_length <= s.length <= self.spec.max_length
            assert len(s.dims) == self.spec.affected_dims

    def test_no_segments(self):
        spec = SynthSpec(
            t_train=50,
            t_test=50,
            dims=2,
            spikes=0,
            level_shifts=0,
            correlation_breaks=0,
        )
        assert plan_anomalies(spec) == []
        assert not synth_generate(spec).test.labels.any()

    def test_spike_is_a_decaying_pulse(self):
        values = np.zeros((10, 3))
        segment = AnomalySegment(
            kind="spike", start=2, length=4, magnitude=-1.5, dims=[0, 2]
        )
        injected, labels = inject_anomalies(values, [segment])
        assert labels.tolist() == [0, 0, 1, 1, 1, 1, 0, 0, 0, 0]
        decay = np.exp(-SPIKE_DECAY * np.arange(4) / 4)
        assert np.allclose(injected[2:6, 0], -1.5 * decay)
        assert np.array_equal(injected[2:6, 0], injected[2:6, 2])
        assert injected[2, 0] == -1.5
        assert injected[2:6, 1].tolist() == [0.0] * 4
        assert injected[6:].sum() == 0.0
        assert values.sum() == 0.0

    def test_level_shift_is_constant(self):
        values = np.zeros((10, 2))
        segment = AnomalySegment(
            kind="level_shift", start=3, length=5, magnitude=0.75, dims=[1]
        )
        injected, _ = inject_anomalies(values, [segment])
        assert injected[3:8, 1].tolist() == [0.75] * 5
        assert not injected[:, 0].any()

    def test_spike_and_level_shift_differ(self):
        values = np.zeros((30, 2))

        def inject(kind):
            segment = AnomalySegment(
                kind=kind, start=5, length=10, magnitude=1.0, dims=[0]
            )
            return inject_anomalies(values, [segment])

        spiked, spike_labels = inject("spike")
        shifted, shift_labels = inject("level_shift")
        assert np.array_equal(spike_labels, shift_labels)
        assert spiked[5, 0] == shifted[5, 0] == 1.0
        # the pulse has mostly decayed where the shift still holds
        assert spiked[14, 0] < 0.1
        assert shifted[14, 0] == 1.0
        assert not np.allclose(spiked, shifted)

    def test_correlation_break_mirrors_around_the_split_mean(self):
        values = np.arange(20, dtype=np.float64).reshape(10, 2)
        segment = AnomalySegment(
            kind="correlation_break", start=4, length=4, magnitude=0.0, dims=[1]
        )
        injected, _ = inject_anomalies(values, [segment])
        center = values[:, 1].mean()
        assert np.allclose(injected[4:8, 1], 2.0 * center - values[4:8, 1])
        assert injected[4:8, 1].tolist() == [11.0, 9.0, 7.0, 5.0]
        assert np.array_equal(injected[:, 0], values[:, 0])

    def test_channels_have_unit_peak_amplitude(self):
        spec = SynthSpec(
            t_train=300,
            t_test=400,
            dims=5,
            seed=3,
            noise_std=0.0,
            spikes=0,
            level_shifts=0,
            correlation_breaks=0,
        )
        bundle = synth_generate(spec)
        values = np.vstack([bundle.train.values, bundle.test.values])
        assert np.allclose(np.abs(values).max(axis=0), 1.0)

    def test_segment_checks(self):
        values = np.zeros((10, 2))

        def segment(start, length):
            return AnomalySegment(
                kind="spike", start=start, length=length, magnitude=1.0, dims=[0]
            )

        with pytest.raises(SynthSpecError):
            inject_anomalies(values, [segment(1, 4), segment(3, 2)])
        with pytest.raises(SynthSpecError):
            inject_anomalies(values, [segment(8, 4)])
        with pytest.raises(SynthSpecError):
            inject_anomalies(values, [segment(1, 2)], warmup=2)

    def test_segments_that_do_not_fit(self):
        with pytest.raises(SynthSpecError):
            plan_anomalies(SynthSpec(t_train=50, t_test=50, dims=3))

    @pytest.mark.parametrize(
        "overrides",
        [
            {"dims": 0},
            {"affected_dims": 4, "dims": 3},
            {"min_length": 10, "max_length": 5},
            {"period_min": 50.0, "period_max": 20.0},
            {"noise_std": -1.0},
        ],
    )
    def test_invalid_specs(self, overrides):
        with pytest.raises(ConfigError):
            SynthSpec(**overrides)

    def test_default_magnitudes(self):
        spec = SynthSpec(noise_std=0.2)
        assert (spec.spike_magnitude, spec.level_shift_magnitude) == (2.0, 1.5)

    def test_small_spikes_are_labeled_exactly(self):
        spec = SynthSpec(
            t_train=100,
            t_test=200,
            dims=3,
            seed=5,
            spikes=3,
            level_shifts=0,
            correlation_breaks=0,
            spike_magnitude=10 * 0.05,
        )
        segments = plan_anomalies(spec)
        bundle = synth_generate(spec)
        expected = np.zeros(200, dtype=np.int64)
        for s in segments:
            expected[s.start : s.stop] = 1
        assert np.array_equal(bundle.test.labels, expected)
        clean = synth_generate(
            SynthSpec(
                t_train=100,
                t_test=200,
                dims=3,
                seed=5,
                spikes=0,
                level_shifts=0,
                correlation_breaks=0,
            )
        )
        offsets = bundle.test.values - clean.test.values
        for s in segments:
            assert np.allclose(np.abs(offsets[s.start, list(s.dims)]), 0.5)
        assert not offsets[expected == 0].any()

    def test_load_synth_spec(self):
        path = os.path.join(self.workdir, "synth.conf")
        with open(path, "w") as f:
            f.write("# small\nt_train=120\nt_test=300\ndims=4\nseed=7\n")
        spec = load_synth_spec(path, seed=9, dims=None)
        assert (spec.t_train, spec.t_test, spec.dims, spec.seed) == (120, 300, 4, 9)
        assert load_synth_spec().to_dict() == SynthSpec().to_dict()
        with open(path, "w") as f:
            f.write("dims=four\n")
        with pytest.raises(ConfigError):
            load_synth_spec(path)
