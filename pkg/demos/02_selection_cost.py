# %% [markdown]
# # Cost of picking the sqrt(n) nearest neighbours
#
# `select_nearest` streams the distances through a max-heap capped at m
# entries. We count key comparisons and set them against sorting all n
# distances (what the inverted-index classifier needs).

# %%
import math
import time

import numpy as np

from ensemble_knn.neighbors import SelectionStats, select_nearest


class Counted:
    calls = 0
    __slots__ = ("key",)

    def __init__(self, key):
        self.key = key

    def __lt__(self, other):
        Counted.calls += 1
        return self.key < other.key


rng = np.random.default_rng(0)
print(f"{'n':>7} {'m':>4} {'heap/random':>12} {'heap/worst':>11} {'full sort':>10} {'n log2 m':>10}")
for n in (10**3, 10**4, 10**5):
    m = math.isqrt(n)
    labels = np.zeros(n, dtype=np.int64)
    d = rng.random(n)

    typical = SelectionStats()
    select_nearest(d, labels, m, typical)
    worst = SelectionStats()
    select_nearest(np.sort(d)[::-1].copy(), labels, m, worst)

    Counted.calls = 0
    sorted(Counted((x, i)) for i, x in enumerate(d.tolist()))
    print(f"{n:>7} {m:>4} {typical.comparisons:>12} {worst.comparisons:>11} "
          f"{Counted.calls:>10} {round(n * math.log2(m)):>10}")

# %% [markdown]
# On shuffled input most candidates are rejected by a single comparison
# with the heap root, so the count stays close to n.

# %%
n = 10**5
d = rng.random(n)
t0 = time.perf_counter()
select_nearest(d, np.zeros(n, dtype=np.int64), math.isqrt(n))
print(f"select 316 of 100000: {1e3 * (time.perf_counter() - t0):.0f} ms (pure Python heap)")
