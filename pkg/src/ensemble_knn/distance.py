"""Point-to-point distance metrics."""
from __future__ import annotations

from enum import Enum

import numpy as np


class Metric(str, Enum):
    MANHATTAN = "manhattan"
    EUCLIDEAN = "euclidean"

    @classmethod
    def parse(cls, value: "str | Metric") -> "Metric":
        try:
            return cls(value)
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown metric {value!r} (expected one of: {choices})") from None


def _check(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape[-1] != b.shape[-1]:
        raise ValueError(f"dimensionality mismatch: {a.shape[-1]} vs {b.shape[-1]}")


def distance(metric: Metric | str, a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 1 or b.ndim != 1:
        raise ValueError("distance() takes two 1-D vectors")
    return float(distances_to(metric, a[None, :], b)[0])


def distances_to(metric: Metric | str, points: np.ndarray, query) -> np.ndarray:
    """Distance from ``query`` to every row of ``points``."""
    metric = Metric.parse(metric)
    points = np.asarray(points, dtype=np.float64)
    query = np.asarray(query, dtype=np.float64)
    _check(points, query)
    diff = points - query
    if metric is Metric.MANHATTAN:
        return np.abs(diff).sum(axis=1)
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))
