"""Fixed-k KNN, the inverted-index (IINC) classifier and the odd-k ensemble.

All three read a :class:`NeighborList` whose classes are ordered by
ascending distance; rank ``i`` (1-based) is position ``i - 1`` in it.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dataset import Dataset
from .distance import Metric, distances_to
from .neighbors import NeighborList, kmax_for, rank_distances, select_nearest


@dataclass(frozen=True, eq=False)
class Prediction:
    class_index: int
    scores: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, Prediction):
            return NotImplemented
        return self.class_index == other.class_index and np.array_equal(self.scores, other.scores)


def weight(rank: int) -> float:
    """Inverted-log rank weight ``1 / log2(1 + rank)``; ``weight(1) == 1``."""
    if rank < 1:
        raise ValueError("rank must be >= 1")
    return 1.0 / math.log2(1 + rank)


@lru_cache(maxsize=64)
def _weights(count: int) -> tuple[float, ...]:
    return tuple(weight(i) for i in range(1, count + 1))


def argmax_nearest_first(scores: np.ndarray, classes: np.ndarray) -> int:
    """Argmax; among tied classes pick the one seen first in ``classes``, then the lowest index."""
    best = scores.max()
    tied = np.flatnonzero(scores == best)
    if len(tied) == 1:
        return int(tied[0])
    for c in classes.tolist():
        if c in tied:
            return int(c)
    return int(tied[0])


def knn_predict(neighbors: NeighborList, k: int, n_classes: int) -> Prediction:
    """Majority vote among the first ``k`` neighbors."""
    if not 1 <= k <= len(neighbors):
        raise ValueError(f"k={k} needs at least {k} neighbors, have {len(neighbors)}")
    top = neighbors.classes[:k]
    votes = np.bincount(top, minlength=n_classes).astype(np.float64)
    return Prediction(argmax_nearest_first(votes, top), votes)


def iinc_predict(ranked: NeighborList, n_classes: int) -> Prediction:
    """Per-class sums of ``1/rank`` over the whole ranking, divided by the harmonic number ``H_n``.

    ``ranked`` must cover every training example. Ties go to the lowest class index.
    """
    n = len(ranked)
    if n == 0:
        raise ValueError("empty ranking")
    inverse = 1.0 / np.arange(1, n + 1, dtype=np.float64)
    sums = np.bincount(ranked.classes, weights=inverse, minlength=n_classes)
    scores = sums / inverse.sum()
    return Prediction(int(np.argmax(scores)), scores)


def ensemble_predict(neighbors: NeighborList, kmax: int, n_classes: int) -> Prediction:
    """Weighted-sum fusion of the 1-NN, 3-NN, ..., kmax-NN votes.

    Each odd-k member adds ``weight(i)`` to the class of every neighbor at
    rank ``i <= k``, so near neighbors are counted by more members and with
    larger weights.
    """
    if kmax < 1 or kmax % 2 == 0:
        raise ValueError(f"kmax must be odd and >= 1, got {kmax}")
    if kmax > len(neighbors):
        raise ValueError(f"kmax={kmax} exceeds the {len(neighbors)} available neighbors")
    classes = neighbors.classes[:kmax].tolist()
    w = _weights(kmax)
    scores = [0.0] * n_classes
    for k in range(1, kmax + 1, 2):
        for i in range(k):
            scores[classes[i]] += w[i]
    scores = np.array(scores)
    return Prediction(argmax_nearest_first(scores, neighbors.classes[:kmax]), scores)


@dataclass(frozen=True)
class Classifier:
    """One roster entry: ``knn`` (fixed k), ``sqrt-knn``, ``iinc`` or ``ensemble``."""

    kind: str
    k: int | None = None

    def __post_init__(self):
        if self.kind not in ("knn", "sqrt-knn", "iinc", "ensemble"):
            raise ValueError(f"unknown classifier kind {self.kind!r}")
        if (self.kind == "knn") != (self.k is not None):
            raise ValueError("only 'knn' takes a k")
        if self.k is not None and self.k < 1:
            raise ValueError("k must be >= 1")

    @classmethod
    def parse(cls, text: str) -> "Classifier":
        text = text.strip().lower()
        match = re.fullmatch(r"knn:(\d+)", text)
        if match:
            return cls("knn", int(match.group(1)))
        if text in ("sqrt-knn", "iinc", "ensemble"):
            return cls(text)
        raise ValueError(
            f"bad classifier {text!r}: expected knn:<k>, sqrt-knn, iinc or ensemble"
        )

    @property
    def name(self) -> str:
        return f"knn:{self.k}" if self.kind == "knn" else self.kind

    @property
    def label(self) -> str:
        """Column heading in the accuracy table."""
        return {
            "knn": f"{self.k}-NN",
            "sqrt-knn": "sqrt(n)-NN",
            "iinc": "IINC",
            "ensemble": "Ensemble",
        }[self.kind]

    def neighbors_needed(self, n_train: int) -> int:
        if self.kind == "knn":
            return self.k
        if self.kind == "sqrt-knn":
            return math.isqrt(n_train)
        if self.kind == "ensemble":
            return kmax_for(n_train)
        return n_train

    def fits(self, n_train: int) -> bool:
        return self.neighbors_needed(n_train) <= n_train

    def predict(self, neighbors: NeighborList, n_train: int, n_classes: int) -> Prediction:
        """Decide from an ascending neighbor list of at least ``neighbors_needed`` entries."""
        if self.kind == "iinc":
            if len(neighbors) != n_train:
                raise ValueError("iinc needs the full ranking of the training set")
            return iinc_predict(neighbors, n_classes)
        if self.kind == "ensemble":
            return ensemble_predict(neighbors, kmax_for(n_train), n_classes)
        return knn_predict(neighbors, self.neighbors_needed(n_train), n_classes)


TABLE_ROSTER = tuple(
    Classifier.parse(s)
    for s in (
        "knn:1", "knn:3", "knn:5", "knn:7", "knn:9", "sqrt-knn",
        "knn:30", "knn:45", "knn:60", "iinc", "ensemble",
    )
)


def classify(
    train: Dataset,
    query,
    method: Classifier | str = "ensemble",
    metric: Metric | str = Metric.MANHATTAN,
) -> Prediction:
    method = Classifier.parse(method) if isinstance(method, str) else method
    query = np.asarray(query, dtype=np.float64)
    if query.shape != (train.n_features,):
        raise ValueError(f"query has shape {query.shape}, expected ({train.n_features},)")
    n = len(train)
    dists = distances_to(metric, train.examples, query)
    if method.kind == "iinc":
        neighbors = rank_distances(dists, train.labels)
    else:
        neighbors = select_nearest(dists, train.labels, method.neighbors_needed(n))
    return method.predict(neighbors, n, train.n_classes)
