"""Ordered nearest-neighbor lists.

``nearest`` streams once over the training distances through a max-heap
capped at ``m`` entries: a candidate enters only if it beats the current
worst kept neighbor, which it then evicts. That is ``O(n log m)`` key
comparisons in the worst case instead of the ``O(n log n)`` of sorting
everything. ``rank_all`` does the full stable sort the inverted-index
classifier needs.

Ties on distance go to the lower training index, so keys are the pairs
``(distance, index)`` compared lexicographically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dataset import Dataset
from .distance import Metric, distances_to


@dataclass(frozen=True, eq=False)
class NeighborList:
    classes: np.ndarray
    distances: np.ndarray
    indices: np.ndarray

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, item: slice) -> "NeighborList":
        if not isinstance(item, slice):
            raise TypeError("NeighborList supports slicing only")
        return NeighborList(self.classes[item], self.distances[item], self.indices[item])

    def __eq__(self, other):
        if not isinstance(other, NeighborList):
            return NotImplemented
        return (
            np.array_equal(self.classes, other.classes)
            and np.array_equal(self.distances, other.distances)
            and np.array_equal(self.indices, other.indices)
        )


@dataclass
class SelectionStats:
    """Instrumentation filled in by ``nearest``."""

    comparisons: int = 0
    peak_size: int = 0
    on_size: Callable[[int], None] | None = None


class BoundedMaxHeap:
    """Keeps the ``capacity`` smallest ``(distance, index)`` keys seen so far."""

    def __init__(self, capacity: int, stats: SelectionStats | None = None):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self.stats = stats if stats is not None else SelectionStats()
        self._keys: list[tuple[float, int]] = []

    def __len__(self) -> int:
        return len(self._keys)

    def _greater(self, a, b) -> bool:
        self.stats.comparisons += 1
        return a > b

    def _sift_up(self, pos: int) -> None:
        keys = self._keys
        item = keys[pos]
        while pos > 0:
            parent = (pos - 1) >> 1
            if not self._greater(item, keys[parent]):
                break
            keys[pos] = keys[parent]
            pos = parent
        keys[pos] = item

    def _sift_down(self, pos: int) -> None:
        keys = self._keys
        size = len(keys)
        item = keys[pos]
        while True:
            child = 2 * pos + 1
            if child >= size:
                break
            right = child + 1
            if right < size and self._greater(keys[right], keys[child]):
                child = right
            if not self._greater(keys[child], item):
                break
            keys[pos] = keys[child]
            pos = child
        keys[pos] = item

    def offer(self, dist: float, index: int) -> None:
        key = (dist, index)
        if len(self._keys) < self.capacity:
            self._keys.append(key)
            self._sift_up(len(self._keys) - 1)
        elif self._greater(self._keys[0], key):
            self._keys[0] = key
            self._sift_down(0)
        size = len(self._keys)
        if size > self.stats.peak_size:
            self.stats.peak_size = size
        if self.stats.on_size is not None:
            self.stats.on_size(size)

    def pop_max(self) -> tuple[float, int]:
        keys = self._keys
        top = keys[0]
        last = keys.pop()
        if keys:
            keys[0] = last
            self._sift_down(0)
        return top

    def drain_ascending(self) -> list[tuple[float, int]]:
        out = [self.pop_max() for _ in range(len(self._keys))]
        out.reverse()
        return out


def kmax_for(n_train: int) -> int:
    """Largest odd integer not above floor(sqrt(n_train)), at least 1."""
    if n_train < 1:
        raise ValueError("n_train must be >= 1")
    root = math.isqrt(n_train)
    return root if root % 2 else max(root - 1, 1)


def select_nearest(
    distances: np.ndarray,
    labels: np.ndarray,
    m: int,
    stats: SelectionStats | None = None,
) -> NeighborList:
    """Bounded selection over precomputed distances (one pass, no full sort)."""
    n = len(distances)
    if not 1 <= m <= n:
        raise ValueError(f"m={m} out of range for {n} training examples")
    heap = BoundedMaxHeap(m, stats)
    for index, dist in enumerate(distances.tolist()):
        heap.offer(dist, index)
    kept = heap.drain_ascending()
    idx = np.fromiter((i for _, i in kept), dtype=np.int64, count=m)
    return NeighborList(labels[idx], distances[idx], idx)


def rank_distances(distances: np.ndarray, labels: np.ndarray) -> NeighborList:
    if len(distances) == 0:
        raise ValueError("nothing to rank")
    idx = np.argsort(distances, kind="stable")
    return NeighborList(labels[idx], distances[idx], idx)


def nearest(
    train: Dataset,
    query,
    m: int,
    metric: Metric | str = Metric.MANHATTAN,
    stats: SelectionStats | None = None,
) -> NeighborList:
    return select_nearest(distances_to(metric, train.examples, query), train.labels, m, stats)


def rank_all(train: Dataset, query, metric: Metric | str = Metric.MANHATTAN) -> NeighborList:
    return rank_distances(distances_to(metric, train.examples, query), train.labels)
