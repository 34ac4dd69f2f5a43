import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ensemble_knn.dataset import (
    Dataset,
    DatasetError,
    EmptyDatasetError,
    NormalizationBounds,
    ParseError,
    SplitSpec,
    bundled_path,
    fit_normalizer,
    load_bundled,
    load_csv,
    normalize,
    split,
)


def write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestLoadCsv:
    def test_first_appearance_mapping(self, tmp_path):
        data = load_csv(write(tmp_path, "1,2,a\n3,4,b\n5,6,a\n"))
        assert data.labels.tolist() == [0, 1, 0]
        assert data.class_names == ("a", "b")
        assert data.n_classes == 2
        assert data.n_features == 2
        assert data.examples.tolist() == [[1, 2], [3, 4], [5, 6]]

    def test_iris_shape(self):
        iris = load_bundled("iris")
        assert len(iris) == 150
        assert iris.n_features == 4
        assert iris.n_classes == 3

    @pytest.mark.parametrize(
        "name, n, f, c",
        [("wine", 178, 13, 3), ("glass", 214, 9, 6), ("sonar", 208, 60, 2), ("haberman", 306, 3, 2)],
    )
    def test_bundled_shapes(self, name, n, f, c):
        data = load_bundled(name)
        assert (len(data), data.n_features, data.n_classes) == (n, f, c)

    def test_non_numeric_names_row(self, tmp_path):
        path = write(tmp_path, "1,2,a\n3,abc,b\n")
        with pytest.raises(ParseError, match="row 2") as info:
            load_csv(path)
        assert info.value.row == 2

    def test_column_count_mismatch(self, tmp_path):
        with pytest.raises(ParseError, match="row 3"):
            load_csv(write(tmp_path, "1,2,a\n3,4,b\n5,b\n"))

    def test_empty_file(self, tmp_path):
        with pytest.raises(EmptyDatasetError):
            load_csv(write(tmp_path, ""))

    def test_header_only(self, tmp_path):
        with pytest.raises(EmptyDatasetError):
            load_csv(write(tmp_path, "x,y,label\n"), header=True)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DatasetError, match="missing.csv"):
            load_csv(tmp_path / "missing.csv")

    def test_label_by_header_name(self, tmp_path):
        data = load_csv(write(tmp_path, "kind,x,y\nb,1,2\na,3,4\n"), label_column="kind", header=True)
        assert data.class_names == ("b", "a")
        assert data.examples.tolist() == [[1, 2], [3, 4]]

    def test_label_by_index(self, tmp_path):
        data = load_csv(write(tmp_path, "b,1,2\na,3,4\n"), label_column=0)
        assert data.labels.tolist() == [0, 1]

    def test_unknown_header_name(self, tmp_path):
        with pytest.raises(DatasetError, match="no column named"):
            load_csv(write(tmp_path, "x,y\n1,a\n"), label_column="label", header=True)

    def test_nan_rejected(self, tmp_path):
        with pytest.raises(ParseError, match="row 2"):
            load_csv(write(tmp_path, "1,a\nnan,b\n"))

    def test_unknown_bundled(self):
        with pytest.raises(DatasetError):
            bundled_path("mnist")


class TestDatasetInvariants:
    def test_label_bijection(self):
        data = load_bundled("glass")
        assert sorted(set(data.labels.tolist())) == list(range(data.n_classes))
        assert len(set(data.class_names)) == data.n_classes

    def test_immutable(self):
        data = load_bundled("iris")
        with pytest.raises(ValueError):
            data.examples[0, 0] = 99.0

    def test_rejects_out_of_range_label(self):
        with pytest.raises(DatasetError):
            Dataset([[1.0]], [3], ("a",))

    def test_rejects_infinite(self):
        with pytest.raises(DatasetError):
            Dataset([[np.inf]], [0], ("a",))


class TestNormalization:
    def _data(self, rows):
        return Dataset(rows, [0] * len(rows), ("a",))

    def test_single_example(self):
        bounds = fit_normalizer(self._data([[2.0, 5.0]]))
        assert bounds.pairs() == [(2, 2), (5, 5)]

    def test_min_max(self):
        bounds = fit_normalizer(self._data([[0, 1], [4, 3]]))
        assert bounds.pairs() == [(0, 4), (1, 3)]

    def test_iris_bounds_within_table_range(self):
        train, _ = split(load_bundled("iris"), SplitSpec(0.3, 0))
        bounds = fit_normalizer(train)
        assert bounds.minima.min() >= 0.1
        assert bounds.maxima.max() <= 7.9

    @pytest.mark.parametrize(
        "x, bounds, expected",
        [([2.0], [(2, 2)], [0.0]), ([4.0], [(0, 4)], [1.0]), ([5.0], [(0, 4)], [1.25])],
    )
    def test_examples(self, x, bounds, expected):
        b = NormalizationBounds([lo for lo, _ in bounds], [hi for _, hi in bounds])
        assert normalize(self._data([x]), b).examples[0].tolist() == expected

    def test_dimension_mismatch(self):
        with pytest.raises(DatasetError):
            normalize(self._data([[1.0, 2.0]]), NormalizationBounds([0.0], [1.0]))

    def test_inverted_bounds_rejected(self):
        with pytest.raises(DatasetError):
            NormalizationBounds([1.0], [0.0])

    @settings(max_examples=60, deadline=None)
    @given(arrays(np.float64, st.tuples(st.integers(1, 20), st.integers(1, 5)),
                  elements=st.floats(-1e6, 1e6)))
    def test_train_lands_in_unit_box(self, x):
        data = self._data(x)
        z = normalize(data, fit_normalizer(data)).examples
        assert np.all(z >= 0.0) and np.all(z <= 1.0)


class TestSplit:
    def _data(self, n):
        return Dataset(np.arange(n, dtype=float)[:, None], [0] * n, ("a",))

    def test_sizes(self):
        train, test = split(self._data(10), SplitSpec(0.3, 5))
        assert (len(train), len(test)) == (7, 3)

    def test_iris_sizes(self):
        train, test = split(load_bundled("iris"), SplitSpec(0.3, 1))
        assert (len(train), len(test)) == (105, 45)

    def test_ceiling(self):
        _, test = split(self._data(11), SplitSpec(0.3, 0))
        assert len(test) == 4

    def test_deterministic(self):
        data = load_bundled("wine")
        a = split(data, SplitSpec(0.3, 42))
        b = split(data, SplitSpec(0.3, 42))
        assert np.array_equal(a[0].examples, b[0].examples)
        assert np.array_equal(a[1].labels, b[1].labels)

    def test_seed_changes_partition(self):
        data = self._data(50)
        a, _ = split(data, SplitSpec(0.3, 1))
        b, _ = split(data, SplitSpec(0.3, 2))
        assert not np.array_equal(a.examples, b.examples)

    @pytest.mark.parametrize("n, fraction", [(1, 0.5), (2, 0.99), (5, 0.9)])
    def test_empty_partition_rejected(self, n, fraction):
        with pytest.raises(DatasetError):
            split(self._data(n), SplitSpec(fraction, 0))

    def test_bad_fraction(self):
        with pytest.raises(DatasetError):
            SplitSpec(1.0, 0)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 200), st.floats(0.01, 0.99), st.integers(0, 2**32 - 1))
    def test_round_trip_permutation(self, n, fraction, seed):
        spec = SplitSpec(fraction, seed)
        if not 1 <= spec.test_size(n) <= n - 1:
            return
        train, test = split(self._data(n), spec)
        merged = np.concatenate([train.examples[:, 0], test.examples[:, 0]])
        assert sorted(merged.tolist()) == list(range(n))
