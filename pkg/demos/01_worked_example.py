# %% [markdown]
# # The weighted-sum ensemble on a toy neighbourhood
#
# A query whose five nearest training points have classes 0, 1, 1, 1, 1.
# The 1-NN member votes for class 0; the 3-NN and 5-NN members vote for 1.
# Each member adds the rank weight 1/log2(1+i) of every neighbour it sees.

# %%
import numpy as np

from ensemble_knn import ensemble_predict, knn_predict, weight
from ensemble_knn.neighbors import NeighborList

classes = np.array([0, 1, 1, 1, 1])
neighbors = NeighborList(classes, np.arange(5, dtype=float), np.arange(5))

print("rank   ", *range(1, 6), sep="\t")
print("class  ", *classes, sep="\t")
print("weight ", *(f"{weight(i):.2f}" for i in range(1, 6)), sep="\t")

# %% [markdown]
# Contribution of each member, per class:

# %%
for k in (1, 3, 5):
    contrib = np.zeros(2)
    for i in range(1, k + 1):
        contrib[classes[i - 1]] += weight(i)
    print(f"{k}-NN  WS0 += {contrib[0]:.2f}  WS1 += {contrib[1]:.2f}")

pred = ensemble_predict(neighbors, 5, 2)
print("total  WS0 = %.2f  WS1 = %.2f  -> class %d" % (*pred.scores, pred.class_index))

# %% [markdown]
# Plain majority voting disagrees with itself depending on k:

# %%
for k in (1, 3, 5):
    print(f"{k}-NN alone predicts class {knn_predict(neighbors, k, 2).class_index}")
