# %% [markdown]
# # Accuracy table on five UCI datasets
#
# 70/30 hold-out, min-max scaling fitted on the training side, Manhattan
# distance, ten seeded repetitions. Same as
#
#     ensemble-knn compare --datasets iris wine glass sonar haberman

# %%
from ensemble_knn import TABLE_ROSTER, ExperimentConfig, run_experiment
from ensemble_knn.evaluation import render_table

roster = tuple(c.name for c in TABLE_ROSTER)
reports = [
    run_experiment(ExperimentConfig(name, roster=roster))
    for name in ("iris", "wine", "glass", "sonar", "haberman")
]
print(render_table(reports))

# %% [markdown]
# Spread of the ten runs behind each ensemble cell:

# %%
import numpy as np

for r in reports:
    runs = np.array(r.accuracies["ensemble"])
    print(f"{r.dataset_name:9s} mean {runs.mean():.3f}  sd {runs.std(ddof=1):.3f}  "
          f"min {runs.min():.3f}  max {runs.max():.3f}")
