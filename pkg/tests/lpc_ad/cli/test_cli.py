import json
import logging
import os
import shutil
import tempfile

import pandas as pd
import pytest
from click.testing import CliRunner

from lpc_ad.cli import cli
from lpc_ad.cli.main import exit_code_for
from lpc_ad.data import load_dataset
from lpc_ad.error import (
    ConfigError,
    DataError,
    DimensionError,
    NonFiniteValueError,
    TrainingDivergedError,
)
from lpc_ad.version import __version__
from tests.utils import remove_lpc_env_temporarily, restore_lpc_env

SYNTH_SPEC = """\
t_train=60
t_test=120
dims=3
seed=1
spikes=1
level_shifts=1
correlation_breaks=0
min_length=3
max_length=8
affected_dims=1
"""

TRAIN_CONFIG = """\
# tiny model for fast runs
history_window=4
future_window=2
latent_dim=2
mc_samples=2
batch_size=32
max_epoch=1
seed=0
"""

REPORT_KEYS = [
    "AUROC",
    "F1",
    "F1_star",
    "P",
    "R",
    "lambda",
    "per_series",
    "train_seconds",
]


class TestCli:
    def setup_method(self):
        self.old_env = remove_lpc_env_temporarily()
        self.workdir = tempfile.mkdtemp()
        self.runner = CliRunner()
        self.spec = self.write("synth.conf", SYNTH_SPEC)
        self.config = self.write("train.conf", TRAIN_CONFIG)

    def teardown_method(self):
        shutil.rmtree(self.workdir, ignore_errors=True)
        logging.getLogger().setLevel(logging.WARNING)
        restore_lpc_env(self.old_env)

    def path(self, *names: str) -> str:
        return os.path.join(self.workdir, *names)

    def write(self, name: str, text: str) -> str:
        with open(self.path(name), "w") as f:
            f.write(text)
        return self.path(name)

    def invoke(self, *args: str, env=None):
        return self.runner.invoke(cli, list(args), env=env)

    def synth(self, name: str = "data", seed: str = "1") -> str:
        out = self.path("root", name)
        result = self.invoke("synth", "--spec", self.spec, "--seed", seed, "--out", out)
        assert result.exit_code == 0, result.output
        return out

    def train(self, data: str) -> str:
        ckpt = self.path("model.ckpt")
        result = self.invoke(
            "train",
            "--data",
            data,
            "--config",
            self.config,
            "--out",
            ckpt,
            "--history",
            self.path("loss.csv"),
        )
        assert result.exit_code == 0, result.output
        return ckpt

    def test_version(self):
        result = self.invoke("--version")
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_synth(self):
        data = self.synth()
        bundle = load_dataset(data)
        assert bundle.train.values.shape == (60, 3)
        assert bundle.test.values.shape == (120, 3)
        assert bundle.test.labels.sum() > 0
        again = load_dataset(self.synth("again"))
        assert (again.test.values == bundle.test.values).all()

    def test_train_detect_eval(self):
        data = self.synth()
        ckpt = self.train(data)
        history = pd.read_csv(self.path("loss.csv"), header=None)
        assert history[0].tolist() == [0]

        scores = self.path("scores.csv")
        result = self.invoke(
            "detect",
            "--ckpt",
            ckpt,
            "--data",
            data,
            "--lambda",
            "0.0",
            "--seed",
            "2",
            "--scores",
            scores,
        )
        assert result.exit_code == 0, result.output
        dump = pd.read_csv(scores, header=None)
        # the first history_window timestamps are unscored
        assert dump[0].tolist() == list(range(4, 120))
        assert set(dump[2]) == {1}

        report = self.path("report.json")
        result = self.invoke(
            "eval",
            "--scores",
            scores,
            "--labels",
            os.path.join(data, "test_label.csv"),
            "--search-lambda",
            "--report",
            report,
        )
        assert result.exit_code == 0, result.output
        with open(report) as f:
            metrics = json.load(f)
        assert sorted(metrics) == REPORT_KEYS
        assert 0.0 <= metrics["F1"] <= 1.0
        assert 0.0 <= metrics["AUROC"] <= 1.0

        result = self.invoke(
            "eval",
            "--scores",
            scores,
            "--labels",
            os.path.join(data, "test_label.csv"),
            "--lambda",
            "0.0",
            "--auroc",
            "raw",
            "--report",
            report,
        )
        assert result.exit_code == 0, result.output
        with open(report) as f:
            metrics = json.load(f)
        # every timestamp is flagged at lambda 0
        assert metrics["R"] == 1.0
        assert metrics["lambda"] == 0.0

        result = self.invoke(
            "eval",
            "--scores",
            scores,
            "--labels",
            os.path.join(data, "test_label.csv"),
            "--report",
            report,
        )
        assert result.exit_code == 0, result.output
        with open(report) as f:
            metrics = json.load(f)
        # the dump's own flags, all set by detect at lambda 0
        assert metrics["R"] == 1.0
        assert metrics["lambda"] == pytest.approx(dump[1].min(), rel=1e-12)

    def test_eval_uses_the_flags_of_the_dump(self):
        data = self.synth()
        ckpt = self.train(data)
        scores = self.path("scores.csv")
        result = self.invoke(
            "detect",
            "--ckpt",
            ckpt,
            "--data",
            data,
            "--lambda",
            "1e9",
            "--noise",
            "deterministic",
            "--scores",
            scores,
        )
        assert result.exit_code == 0, result.output
        assert set(pd.read_csv(scores, header=None)[2]) == {0}

        labels = os.path.join(data, "test_label.csv")
        report = self.path("report.json")
        args = ["eval", "--scores", scores, "--labels", labels, "--report", report]
        assert self.invoke(*args).exit_code == 0
        with open(report) as f:
            from_flags = json.load(f)
        assert (from_flags["R"], from_flags["F1"]) == (0.0, 0.0)

        assert self.invoke(*args, "--lambda", "0").exit_code == 0
        with open(report) as f:
            overridden = json.load(f)
        assert overridden["R"] == 1.0
        assert overridden["lambda"] == 0.0

    def test_detect_is_seeded(self):
        data = self.synth()
        ckpt = self.train(data)
        outputs = []
        for name in ("a.csv", "b.csv"):
            scores = self.path(name)
            args = ["--ckpt", ckpt, "--data", data, "--lambda", "0.5"]
            args += ["--seed", "4"]
            result = self.invoke("detect", *args, "--scores", scores)
            assert result.exit_code == 0, result.output
            with open(scores) as f:
                outputs.append(f.read())
        assert outputs[0] == outputs[1]

    def test_run(self):
        self.synth("one", "1")
        self.synth("two", "2")
        report = self.path("run.json")
        result = self.invoke(
            "run",
            "--data",
            self.path("root"),
            "--config",
            self.config,
            "--repeats",
            "2",
            "--report",
            report,
        )
        assert result.exit_code == 0, result.output
        with open(report) as f:
            metrics = json.load(f)
        assert sorted(metrics) == REPORT_KEYS
        assert [(r["series"], r["repeat"]) for r in metrics["per_series"]] == [
            ("one", 0),
            ("one", 1),
            ("two", 0),
            ("two", 1),
        ]

    def test_sweep(self):
        self.synth()
        report = self.path("sweep.json")
        result = self.invoke(
            "sweep",
            "--data",
            self.path("root"),
            "--config",
            self.config,
            "--param",
            "sigma2",
            "--values",
            "0.5, 2",
            "--report",
            report,
        )
        assert result.exit_code == 0, result.output
        with open(report) as f:
            sweep = json.load(f)
        assert sweep["param"] == "sigma2"
        assert [c["value"] for c in sweep["cells"]] == [0.5, 2.0]

    def test_sweep_rejects_bad_values_before_training(self):
        self.synth()
        base = ["sweep", "--data", self.path("root"), "--config", self.config]
        report = ["--report", self.path("sweep.json")]
        result = self.invoke(*base, "--param", "latent_dim", "--values", "x", *report)
        assert result.exit_code == 1
        result = self.invoke(*base, "--param", "latent_dim", "--values", "0", *report)
        assert result.exit_code == 1
        assert not os.path.exists(self.path("sweep.json"))

    def test_plot(self):
        data = self.synth()
        ckpt = self.train(data)
        out = self.path("plot.csv")
        svg = self.path("plot.svg")
        result = self.invoke(
            "plot",
            "--ckpt",
            ckpt,
            "--data",
            data,
            "--window",
            "10:30",
            "--out",
            out,
            "--svg",
            svg,
        )
        assert result.exit_code == 0, result.output
        frame = pd.read_csv(out)
        assert frame["timestamp"].tolist() == list(range(10, 30))
        assert "recon_2" in frame.columns
        assert os.path.getsize(svg) > 0

    def test_plot_window_is_validated(self):
        data = self.synth()
        ckpt = self.train(data)
        args = ["plot", "--ckpt", ckpt, "--data", data, "--out", self.path("p.csv")]
        assert self.invoke(*args, "--window", "30").exit_code == 1
        assert self.invoke(*args, "--window", "30:10").exit_code == 1

    def test_usage_errors_exit_with_1(self):
        assert self.invoke("train", "--config", self.config).exit_code == 1
        assert self.invoke("no-such-command").exit_code == 1
        data = self.synth()
        result = self.invoke(
            "eval",
            "--scores",
            self.path("s.csv"),
            "--labels",
            os.path.join(data, "test_label.csv"),
            "--lambda",
            "0.5",
            "--search-lambda",
            "--report",
            self.path("r.json"),
        )
        assert result.exit_code == 1
        ckpt = self.train(data)
        result = self.invoke(
            "detect", "--ckpt", ckpt, "--data", data, "--scores", self.path("s.csv")
        )
        assert result.exit_code == 1
        assert "--lambda" in result.output

    def test_config_errors_exit_with_1(self):
        data = self.synth()
        bad = self.write("bad.conf", "latent_dim=3\n")
        result = self.invoke(
            "train", "--data", data, "--config", bad, "--out", self.path("m.ckpt")
        )
        assert result.exit_code == 1
        assert "Error:" in result.output
        unknown = self.write("unknown.conf", "epochs=3\n")
        result = self.invoke(
            "train", "--data", data, "--config", unknown, "--out", self.path("m.ckpt")
        )
        assert result.exit_code == 1
        assert "unknown.conf:1" in result.output

    def test_data_errors_exit_with_2(self):
        os.makedirs(self.path("empty"))
        result = self.invoke(
            "train", "--data", self.path("empty"), "--out", self.path("m.ckpt")
        )
        assert result.exit_code == 2
        assert "Error:" in result.output
        with open(self.path("broken.ckpt"), "w") as f:
            f.write("{}")
        data = self.synth()
        result = self.invoke(
            "detect",
            "--ckpt",
            self.path("broken.ckpt"),
            "--data",
            data,
            "--lambda",
            "0.5",
            "--scores",
            self.path("s.csv"),
        )
        assert result.exit_code == 2

    def test_exit_codes(self):
        assert exit_code_for(ConfigError("x")) == 1
        assert exit_code_for(DataError("x")) == 2
        assert exit_code_for(DimensionError("x")) == 2
        assert exit_code_for(NonFiniteValueError("x")) == 3
        assert exit_code_for(TrainingDivergedError("x")) == 3

    def test_log_level(self):
        out = self.path("d")
        args = ["synth", "--spec", self.spec, "--out", out]
        result = self.invoke("--log-level", "debug", *args)
        assert result.exit_code == 0, result.output
        assert logging.getLogger().level == logging.DEBUG
        assert os.path.isdir(out)

    def test_log_level_from_the_environment(self):
        args = ["synth", "--spec", self.spec, "--out", self.path("d")]
        result = self.invoke(*args, env={"LPC_AD_LOG_LEVEL": "INFO"})
        assert result.exit_code == 0, result.output
        assert logging.getLogger().level == logging.INFO
