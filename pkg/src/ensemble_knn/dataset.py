"""Loading, min-max normalization and seeded splitting of labeled tables."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

BUNDLED = ("iris", "wine", "glass", "sonar", "haberman")


class DatasetError(ValueError):
    """Raised for unreadable, malformed or unusable datasets."""


class ParseError(DatasetError):
    def __init__(self, message: str, row: int | None = None):
        super().__init__(message if row is None else f"row {row}: {message}")
        self.row = row


class EmptyDatasetError(DatasetError):
    pass


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class Dataset:
    """Feature matrix with dense 0-based integer labels.

    ``class_names[c]`` is the original label string of class ``c``. Arrays are
    copied and made read-only on construction.
    """

    examples: np.ndarray
    labels: np.ndarray
    class_names: tuple[str, ...]
    name: str = ""

    def __post_init__(self):
        examples = np.asarray(self.examples, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64)
        if examples.ndim != 2:
            raise DatasetError(f"examples must be 2-D, got shape {examples.shape}")
        if len(examples) == 0:
            raise EmptyDatasetError("dataset has no examples")
        if labels.shape != (len(examples),):
            raise DatasetError(f"{len(labels)} labels for {len(examples)} examples")
        if not np.all(np.isfinite(examples)):
            raise DatasetError("feature values must be finite")
        n_classes = len(self.class_names)
        if labels.min() < 0 or labels.max() >= n_classes:
            raise DatasetError(f"labels must lie in [0, {n_classes})")
        object.__setattr__(self, "examples", _frozen(examples))
        object.__setattr__(self, "labels", _frozen(labels))
        object.__setattr__(self, "class_names", tuple(str(c) for c in self.class_names))

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def n_features(self) -> int:
        return self.examples.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    def subset(self, indices) -> "Dataset":
        """Rows at ``indices``; the class mapping is kept, so some classes may be absent."""
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(self.examples[indices], self.labels[indices], self.class_names, self.name)

    def with_examples(self, examples: np.ndarray) -> "Dataset":
        return Dataset(examples, self.labels, self.class_names, self.name)


@dataclass(frozen=True)
class NormalizationBounds:
    minima: np.ndarray
    maxima: np.ndarray

    def __post_init__(self):
        lo = _frozen(np.asarray(self.minima, dtype=np.float64))
        hi = _frozen(np.asarray(self.maxima, dtype=np.float64))
        if lo.shape != hi.shape or lo.ndim != 1:
            raise DatasetError("bounds must be two 1-D arrays of equal length")
        if np.any(lo > hi):
            raise DatasetError("every feature needs min <= max")
        object.__setattr__(self, "minima", lo)
        object.__setattr__(self, "maxima", hi)

    def __len__(self) -> int:
        return len(self.minima)

    def pairs(self) -> list[tuple[float, float]]:
        return [(float(a), float(b)) for a, b in zip(self.minima, self.maxima)]


@dataclass(frozen=True)
class SplitSpec:
    test_fraction: float = 0.3
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.test_fraction < 1.0:
            raise DatasetError(f"test_fraction must be in (0, 1), got {self.test_fraction}")
        if self.seed < 0:
            raise DatasetError("seed must be non-negative")

    def test_size(self, n: int) -> int:
        return math.ceil(self.test_fraction * n)


def _column_index(selector: int | str, header: Sequence[str] | None, width: int) -> int:
    if isinstance(selector, str) and not selector.lstrip("-").isdigit():
        if header is None:
            raise DatasetError(f"label column {selector!r} named but the file has no header")
        try:
            return list(header).index(selector)
        except ValueError:
            raise DatasetError(f"no column named {selector!r}") from None
    index = int(selector)
    if not -width <= index < width:
        raise DatasetError(f"label column {index} out of range for {width} columns")
    return index % width


def load_csv(
    path: str | Path,
    label_column: int | str = -1,
    header: bool = False,
    delimiter: str = ",",
) -> Dataset:
    """Read a delimited numeric table with one label column.

    Labels become dense indices in order of first appearance. Row numbers in
    errors are 1-based file lines.
    """
    path = Path(path)
    if not path.is_file():
        raise DatasetError(f"no such file: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        lines = [(i, row) for i, row in enumerate(csv.reader(fh, delimiter=delimiter), 1) if row]

    names = None
    if header and lines:
        names = [cell.strip() for cell in lines[0][1]]
        lines = lines[1:]
    if not lines:
        raise EmptyDatasetError(f"{path} contains no data rows")

    width = len(names) if names is not None else len(lines[0][1])
    label_at = _column_index(label_column, names, width)

    features, raw_labels = [], []
    for lineno, row in lines:
        if len(row) != width:
            raise ParseError(f"expected {width} columns, found {len(row)}", lineno)
        try:
            features.append([float(cell) for j, cell in enumerate(row) if j != label_at])
        except ValueError as exc:
            raise ParseError(f"non-numeric feature ({exc})", lineno) from None
        raw_labels.append(row[label_at].strip())

    class_names = list(dict.fromkeys(raw_labels))
    lookup = {name: c for c, name in enumerate(class_names)}
    examples = np.array(features, dtype=np.float64).reshape(len(features), width - 1)
    bad = ~np.isfinite(examples).all(axis=1)
    if bad.any():
        raise ParseError("non-finite feature value", lines[int(np.argmax(bad))][0])
    return Dataset(examples, [lookup[s] for s in raw_labels], class_names, name=path.stem)


def bundled_path(name: str) -> Path:
    """Path of one of the bundled UCI tables (label in the last column, no header)."""
    stem = Path(name).stem.lower()
    if stem not in BUNDLED:
        raise DatasetError(f"no bundled dataset {name!r}; choose from {', '.join(BUNDLED)}")
    return Path(str(resources.files("ensemble_knn") / "data" / f"{stem}.csv"))


def load_bundled(name: str) -> Dataset:
    return load_csv(bundled_path(name))


def fit_normalizer(train: Dataset) -> NormalizationBounds:
    return NormalizationBounds(train.examples.min(axis=0), train.examples.max(axis=0))


def normalize(data: Dataset, bounds: NormalizationBounds) -> Dataset:
    # Test rows may land outside [0, 1]; no clamping.
    if data.n_features != len(bounds):
        raise DatasetError(f"data has {data.n_features} features, bounds cover {len(bounds)}")
    return data.with_examples(normalize_array(data.examples, bounds))


def normalize_array(x: np.ndarray, bounds: NormalizationBounds) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != len(bounds):
        raise DatasetError(f"vector has {x.shape[-1]} features, bounds cover {len(bounds)}")
    span = bounds.maxima - bounds.minima
    safe = np.where(span > 0, span, 1.0)
    return np.where(span > 0, (x - bounds.minima) / safe, 0.0)


def split(data: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    """Seeded shuffle; the first ``ceil(test_fraction * n)`` rows form the test set."""
    n = len(data)
    n_test = spec.test_size(n)
    if n < 2 or not 1 <= n_test <= n - 1:
        raise DatasetError(
            f"cannot split {n} examples with test_fraction={spec.test_fraction}: "
            "a partition would be empty"
        )
    order = np.random.default_rng(spec.seed).permutation(n)
    return data.subset(order[n_test:]), data.subset(order[:n_test])
