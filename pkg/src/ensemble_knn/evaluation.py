"""Repeated seeded hold-out experiments and accuracy reports."""
from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Sequence

import numpy as np

from .classifiers import Classifier
from .dataset import (
    BUNDLED,
    Dataset,
    DatasetError,
    SplitSpec,
    bundled_path,
    fit_normalizer,
    load_csv,
    normalize,
    split,
)
from .distance import Metric, distances_to
from .neighbors import rank_distances, select_nearest

log = logging.getLogger(__name__)

THREADS_ENV = "ENSEMBLE_KNN_THREADS"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    dataset: str
    test_fraction: float = 0.3
    repetitions: int = 10
    base_seed: int = 0
    metric: str = "manhattan"
    roster: tuple[str, ...] = ("ensemble",)
    normalize_scope: str = "train"
    label_column: int = -1
    header: bool = False

    def __post_init__(self):
        if self.repetitions < 1:
            raise ConfigError("repetitions must be >= 1")
        if not 0.0 < self.test_fraction < 1.0:
            raise ConfigError("test_fraction must be in (0, 1)")
        if self.base_seed < 0:
            raise ConfigError("seed must be non-negative")
        if self.normalize_scope not in ("train", "all"):
            raise ConfigError("normalize_scope must be 'train' or 'all'")
        if not self.roster:
            raise ConfigError("classifier roster is empty")
        try:
            Metric.parse(self.metric)
            names = tuple(Classifier.parse(c).name for c in self.roster)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if len(set(names)) != len(names):
            raise ConfigError("classifier roster has duplicates")
        object.__setattr__(self, "roster", names)

    def classifiers(self) -> list[Classifier]:
        return [Classifier.parse(c) for c in self.roster]


@dataclass
class ExperimentReport:
    config: dict
    seeds: list[int]
    accuracies: dict[str, list[float]]
    means: dict[str, float]
    skipped: list[str] = field(default_factory=list)

    @property
    def dataset_name(self) -> str:
        return Path(self.config["dataset"]).stem

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "runs": [
                {"seed": seed, "per_classifier": {n: a[r] for n, a in self.accuracies.items()}}
                for r, seed in enumerate(self.seeds)
            ],
            "means": dict(self.means),
            "skipped": list(self.skipped),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "ExperimentReport":
        runs = payload["runs"]
        names = list(payload["means"])
        return cls(
            config=payload["config"],
            seeds=[run["seed"] for run in runs],
            accuracies={n: [run["per_classifier"][n] for run in runs] for n in names},
            means=dict(payload["means"]),
            skipped=list(payload.get("skipped", [])),
        )


def accuracy(predictions: Sequence[int], truth: Sequence[int]) -> float:
    predictions = np.asarray(predictions)
    truth = np.asarray(truth)
    if predictions.shape != truth.shape:
        raise ValueError(f"length mismatch: {len(predictions)} predictions, {len(truth)} labels")
    if truth.size == 0:
        raise ValueError("accuracy of an empty prediction list")
    return float(np.count_nonzero(predictions == truth)) / truth.size


def resolve_dataset(path: str) -> Path:
    """A file path, or the bare name of a bundled table (``iris``, ``iris.csv``)."""
    candidate = Path(path)
    if candidate.is_file():
        return candidate
    if candidate.parent == Path(".") and candidate.stem.lower() in BUNDLED:
        return bundled_path(candidate.stem)
    raise DatasetError(f"no such file: {path}")


def worker_count(threads: int | None = None) -> int:
    if threads is None:
        raw = os.environ.get(THREADS_ENV, "0")
        try:
            threads = int(raw)
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if threads < 0:
        raise ConfigError("thread count must be >= 0")
    return threads or (os.cpu_count() or 1)


def evaluate_split(
    train: Dataset,
    test: Dataset,
    classifiers: Sequence[Classifier],
    metric: Metric | str = Metric.MANHATTAN,
) -> dict[str, float]:
    """Accuracy of each classifier on one train/test partition.

    Every query is ranked once, deep enough for the most demanding
    classifier; shallower ones read a prefix of the same list.
    """
    n = len(train)
    depth = max(c.neighbors_needed(n) for c in classifiers)
    predictions = {c.name: [] for c in classifiers}
    for query in test.examples:
        dists = distances_to(metric, train.examples, query)
        if depth >= n:
            neighbors = rank_distances(dists, train.labels)
        else:
            neighbors = select_nearest(dists, train.labels, depth)
        for c in classifiers:
            predictions[c.name].append(c.predict(neighbors, n, train.n_classes).class_index)
    return {name: accuracy(p, test.labels) for name, p in predictions.items()}


def _single_run(data: Dataset, config: ExperimentConfig, classifiers, run: int):
    seed = config.base_seed + run
    try:
        if config.normalize_scope == "all":
            data = normalize(data, fit_normalizer(data))
        train, test = split(data, SplitSpec(config.test_fraction, seed))
        if config.normalize_scope == "train":
            bounds = fit_normalizer(train)
            train, test = normalize(train, bounds), normalize(test, bounds)
    except DatasetError as exc:
        raise DatasetError(f"run {run} (seed {seed}): {exc}") from exc
    return seed, evaluate_split(train, test, classifiers, config.metric)


def run_experiment(
    config: ExperimentConfig,
    data: Dataset | None = None,
    threads: int | None = None,
) -> ExperimentReport:
    """Run ``config.repetitions`` seeded splits; run ``r`` uses seed ``base_seed + r``.

    Fixed-k classifiers whose k exceeds the training size are dropped with a
    warning and listed in ``report.skipped``. ``data`` overrides loading
    ``config.dataset``.
    """
    if data is None:
        data = load_csv(resolve_dataset(config.dataset), config.label_column, config.header)
    n_train = len(data) - SplitSpec(config.test_fraction).test_size(len(data))
    active, skipped = [], []
    for c in config.classifiers():
        # an empty training side is reported by split() with run context
        (active if n_train < 1 or c.fits(n_train) else skipped).append(c)
    for c in skipped:
        log.warning("skipping %s: k=%d exceeds %d training examples", c.name, c.k, n_train)
    if not active:
        raise DatasetError(f"no classifier in the roster fits {n_train} training examples")

    runs = range(config.repetitions)
    workers = min(worker_count(threads), config.repetitions)
    if workers == 1:
        results = [_single_run(data, config, active, r) for r in runs]
    else:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda r: _single_run(data, config, active, r), runs))

    accuracies = {c.name: [acc[c.name] for _, acc in results] for c in active}
    return ExperimentReport(
        config=asdict(config) | {"roster": list(config.roster)},
        seeds=[seed for seed, _ in results],
        accuracies=accuracies,
        means={name: float(np.mean(values)) for name, values in accuracies.items()},
        skipped=[c.name for c in skipped],
    )


def round_half_up(value: float, places: int = 2) -> str:
    return str(Decimal(repr(value)).quantize(Decimal(1).scaleb(-places), ROUND_HALF_UP))


def render_table(reports: Sequence[ExperimentReport], roster: Sequence[str] | None = None) -> str:
    """Datasets as rows, classifiers as columns, mean accuracy to two decimals."""
    if not reports:
        raise ValueError("nothing to render")
    if roster is None:
        roster = list(dict.fromkeys(n for r in reports for n in r.config["roster"]))
    headers = ["Dataset"] + [Classifier.parse(n).label for n in roster]
    rows = [
        [r.dataset_name] + [round_half_up(r.means[n]) if n in r.means else "-" for n in roster]
        for r in reports
    ]
    widths = [max(len(row[j]) for row in [headers] + rows) for j in range(len(headers))]
    fmt = lambda row: "  ".join(
        cell.ljust(w) if j == 0 else cell.rjust(w) for j, (cell, w) in enumerate(zip(row, widths))
    )
    return "\n".join([fmt(headers)] + [fmt(row) for row in rows]) + "\n"


def render_report(report: ExperimentReport, format: str = "table") -> str:
    if format == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if format == "table":
        return render_table([report])
    raise ValueError(f"unknown format {format!r}")
