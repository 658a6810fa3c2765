import os
import shutil
import tempfile
from xml.etree import ElementTree

import numpy as np
import pandas as pd
import pytest

from lpc_ad.data import SeriesMatrix
from lpc_ad.data.plot import emit_plot_data, plot_frame
from lpc_ad.detect import WindowScores, detect
from lpc_ad.error import DimensionError


class TestPlotData:
    def setup_method(self):
        self.workdir = tempfile.mkdtemp()
        rng = np.random.default_rng(12)
        labels = np.zeros(12, dtype=np.int64)
        labels[6:9] = 1
        self.test = SeriesMatrix(rng.normal(size=(12, 2)), labels, "plot")
        self.reconstruction = self.test.values + 0.1
        scores = np.full(12, np.nan)
        scores[3:] = np.linspace(0.1, 0.9, 9)
        self.report = detect(
            WindowScores(scores=scores, reconstruction=self.reconstruction), 0.5
        )

    def teardown_method(self):
        shutil.rmtree(self.workdir, ignore_errors=True)

    def test_frame(self):
        frame = plot_frame(self.test, self.reconstruction, self.report)
        assert list(frame.columns) == [
            "timestamp",
            "value_0",
            "value_1",
            "recon_0",
            "recon_1",
            "score",
            "flag",
            "label",
        ]
        assert frame["timestamp"].tolist() == list(range(3, 12))
        assert frame["label"].tolist() == [0, 0, 0, 1, 1, 1, 0, 0, 0]
        assert frame["flag"].tolist() == self.report.flags.tolist()
        assert np.array_equal(frame["value_1"].to_numpy(), self.test.values[3:, 1])

    def test_window(self):
        frame = plot_frame(self.test, self.reconstruction, self.report, (5, 8))
        assert frame["timestamp"].tolist() == [5, 6, 7]
        assert frame["score"].tolist() == self.report.scores[2:5].tolist()

    def test_shape_checks(self):
        with pytest.raises(DimensionError):
            plot_frame(self.test, self.reconstruction[:5], self.report)

    def test_emit(self):
        csv_path = os.path.join(self.workdir, "plot.csv")
        svg_path = os.path.join(self.workdir, "plot.svg")
        emit_plot_data(
            self.test, self.reconstruction, self.report, csv_path, svg_path=svg_path
        )
        frame = pd.read_csv(csv_path, float_precision="round_trip")
        assert frame["timestamp"].tolist() == list(range(3, 12))
        assert np.array_equal(frame["recon_0"].to_numpy(), self.reconstruction[3:, 0])
        root = ElementTree.parse(svg_path).getroot()
        assert root.tag == "{http://www.w3.org/2000/svg}svg"
        assert len(root) > 0

    def test_emit_without_svg(self):
        csv_path = os.path.join(self.workdir, "plot.csv")
        emit_plot_data(self.test, self.reconstruction, self.report, csv_path)
        assert os.listdir(self.workdir) == ["plot.csv"]
