# %% [markdown]
# # Classifying a single flower
#
# Fit the scaler on the training table, scale the query with the same
# bounds, then ask each classifier.

# %%
from ensemble_knn import classify, fit_normalizer, load_bundled, normalize
from ensemble_knn.dataset import normalize_array

iris = load_bundled("iris")
bounds = fit_normalizer(iris)
train = normalize(iris, bounds)
query = normalize_array([6.0, 2.9, 4.6, 1.5], bounds)

for method in ("knn:1", "knn:5", "sqrt-knn", "iinc", "ensemble"):
    pred = classify(train, query, method)
    scores = ", ".join(f"{s:.3f}" for s in pred.scores)
    print(f"{method:9s} {iris.class_names[pred.class_index]:16s} [{scores}]")
