"""Parameter-free ensemble KNN classification with fixed-k KNN and IINC baselines."""

__version__ = "0.1.0"

from .classifiers import (
    TABLE_ROSTER,
    Classifier,
    Prediction,
    classify,
    ensemble_predict,
    iinc_predict,
    knn_predict,
    weight,
)
from .dataset import (
    Dataset,
    DatasetError,
    NormalizationBounds,
    SplitSpec,
    fit_normalizer,
    load_bundled,
    load_csv,
    normalize,
    split,
)
from .distance import Metric, distance
from .evaluation import ExperimentConfig, ExperimentReport, accuracy, render_report, run_experiment
from .neighbors import NeighborList, kmax_for, nearest, rank_all

__all__ = [
    "TABLE_ROSTER", "Classifier", "Prediction", "classify", "ensemble_predict",
    "iinc_predict", "knn_predict", "weight", "Dataset", "DatasetError",
    "NormalizationBounds", "SplitSpec", "fit_normalizer", "load_bundled", "load_csv",
    "normalize", "split", "Metric", "distance", "ExperimentConfig", "ExperimentReport",
    "accuracy", "render_report", "run_experiment", "NeighborList", "kmax_for",
    "nearest", "rank_all",
]
