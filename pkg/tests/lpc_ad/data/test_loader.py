import os
import shutil
import tempfile

import numpy as np
import pytest

from lpc_ad.data import (
    DatasetBundle,
    SeriesMatrix,
    discover_datasets,
    load_dataset,
    read_labels,
    read_matrix,
    write_dataset,
)
from lpc_ad.error import DataError, DimensionError, ParseError


class TestSeriesMatrix:
    def setup_method(self):
        pass

    def teardown_method(self):
        pass

    def test_shape(self):
        series = SeriesMatrix(np.zeros((5, 3)), np.array([0, 1, 0, 0, 1]), "s")
        assert (series.length, series.dims) == (5, 3)
        head = series.head(2)
        assert head.length == 2
        assert head.labels.tolist() == [0, 1]

    def test_checks(self):
        with pytest.raises(DimensionError):
            SeriesMatrix(np.zeros(5))
        with pytest.raises(DataError):
            SeriesMatrix(np.zeros((0, 3)))
        with pytest.raises(DataError):
            SeriesMatrix(np.zeros((3, 2)), np.array([0, 1]))
        with pytest.raises(DataError):
            SeriesMatrix(np.zeros((2, 2)), np.array([0, 2]))
        with pytest.raises(DimensionError):
            DatasetBundle(
                train=SeriesMatrix(np.zeros((2, 2))),
                test=SeriesMatrix(np.zeros((2, 3))),
                name="x",
            )


class TestLoader:
    def setup_method(self):
        self.workdir = tempfile.mkdtemp()

    def teardown_method(self):
        shutil.rmtree(self.workdir, ignore_errors=True)

    def write(self, name: str, text: str) -> str:
        path = os.path.join(self.workdir, name)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w") as f:
            f.write(text)
        return path

    def dataset(self, name: str = "machine-1-1") -> DatasetBundle:
        rng = np.random.default_rng(11)
        labels = np.zeros(6, dtype=np.int64)
        labels[2:4] = 1
        return DatasetBundle(
            train=SeriesMatrix(rng.normal(size=(8, 3))),
            test=SeriesMatrix(rng.normal(size=(6, 3)), labels),
            name=name,
        )

    def test_read_matrix(self):
        path = self.write("m.csv", "1,2.5,-3\n4,5e-3,6\n")
        assert read_matrix(path).tolist() == [[1.0, 2.5, -3.0], [4.0, 0.005, 6.0]]

    @pytest.mark.parametrize(
        "text,line",
        [
            ("1,2\n3\n", 2),
            ("1,2\n3,x\n", 2),
            ("1,2\n3,nan\n", 2),
            ("1,2\n\n3,4\n", 2),
        ],
    )
    def test_malformed_matrix(self, text, line):
        path = self.write("bad.csv", text)
        with pytest.raises(ParseError) as e:
            read_matrix(path)
        assert f"bad.csv:{line}" in str(e.value)

    def test_missing_or_empty_files(self):
        with pytest.raises(DataError):
            read_matrix(os.path.join(self.workdir, "missing.csv"))
        with pytest.raises(ParseError):
            read_matrix(self.write("empty.csv", "\n"))

    def test_labels(self):
        assert read_labels(self.write("l.csv", "0\n1\n1\n")).tolist() == [0, 1, 1]
        with pytest.raises(ParseError):
            read_labels(self.write("l.csv", "0\n2\n"))
        with pytest.raises(ParseError):
            read_labels(self.write("l.csv", "0,1\n1,0\n"))

    def test_round_trip(self):
        bundle = self.dataset()
        path = os.path.join(self.workdir, "machine-1-1")
        write_dataset(bundle, path)
        loaded = load_dataset(path)
        assert loaded.name == "machine-1-1"
        assert np.array_equal(loaded.train.values, bundle.train.values)
        assert np.array_equal(loaded.test.values, bundle.test.values)
        assert loaded.test.labels.tolist() == bundle.test.labels.tolist()
        assert loaded.train.labels is None

    def test_label_length_mismatch(self):
        path = os.path.join(self.workdir, "d")
        write_dataset(self.dataset(), path)
        self.write("d/test_label.csv", "0\n1\n")
        with pytest.raises(ParseError):
            load_dataset(path)

    def test_discover(self):
        for name in ("b", "a"):
            write_dataset(self.dataset(name), os.path.join(self.workdir, "root", name))
        os.makedirs(os.path.join(self.workdir, "root", "not-a-dataset"))
        bundles = discover_datasets(os.path.join(self.workdir, "root"))
        assert [b.name for b in bundles] == ["a", "b"]
        single = discover_datasets(os.path.join(self.workdir, "root", "a"))
        assert [b.name for b in single] == ["a"]
        with pytest.raises(DataError):
            discover_datasets(os.path.join(self.workdir, "root", "not-a-dataset"))
