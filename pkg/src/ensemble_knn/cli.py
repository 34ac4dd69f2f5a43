"""Command-line entry point: ``predict``, ``bench`` and ``compare``.

Exit codes: 0 success, 1 usage error, 2 data error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .classifiers import TABLE_ROSTER, Classifier, classify
from .dataset import DatasetError, fit_normalizer, load_csv, normalize, normalize_array
from .distance import Metric
from .evaluation import (
    ConfigError,
    ExperimentConfig,
    render_report,
    render_table,
    resolve_dataset,
    run_experiment,
    worker_count,
)

USAGE_ERROR = 1
DATA_ERROR = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _classifier(text: str) -> Classifier:
    try:
        return Classifier.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fraction(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("must be strictly between 0 and 1")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _label_column(text: str) -> int | str:
    try:
        return int(text)
    except ValueError:
        return text


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ensemble-knn",
        description="Parameter-free ensemble KNN classifier and its baselines.",
        epilog="Set ENSEMBLE_KNN_THREADS to cap worker threads (0 = one per CPU).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    data_opts = _Parser(add_help=False)
    data_opts.add_argument(
        "--label-column", type=_label_column, default=-1,
        help="label column as 0-based index (negative counts from the end) or header name; default -1",
    )
    data_opts.add_argument("--header", action="store_true", help="first row of each CSV is a header")
    data_opts.add_argument(
        "--metric", choices=[m.value for m in Metric], default="manhattan",
        help="distance metric (default: manhattan)",
    )

    proto = _Parser(add_help=False)
    proto.add_argument("--test-fraction", type=_fraction, default=0.3, help="held-out share per run (default 0.3)")
    proto.add_argument("--runs", type=_positive, default=10, help="number of seeded repetitions (default 10)")
    proto.add_argument("--seed", type=_seed, default=0, help="base seed; run r uses seed+r (default 0)")
    proto.add_argument(
        "--normalize-scope", choices=["train", "all"], default="train",
        help="fit min-max bounds on the training split only, or on the whole dataset (default train)",
    )
    proto.add_argument("--format", choices=["table", "json"], default="table", help="report format (default table)")
    proto.add_argument("--out", type=Path, help="write the report here instead of standard output")

    p = sub.add_parser("predict", parents=[data_opts], help="classify query vectors against a training CSV")
    p.add_argument("--train", required=True, help="training CSV")
    p.add_argument(
        "--query", required=True,
        help="comma-separated feature vector, or a CSV file of query rows (features only)",
    )
    p.add_argument(
        "--classifier", type=_classifier, default=Classifier("ensemble"),
        help="knn:<k>, sqrt-knn, iinc or ensemble (default ensemble)",
    )
    p.add_argument("--no-normalize", action="store_true", help="use raw feature values")

    b = sub.add_parser("bench", parents=[data_opts, proto], help="repeated hold-out accuracy on one dataset")
    b.add_argument("--train", required=True, help="dataset CSV, or a bundled name (iris, wine, glass, sonar, haberman)")
    b.add_argument(
        "--classifier", type=_classifier, action="append",
        help="knn:<k>, sqrt-knn, iinc or ensemble; repeat to compare (default ensemble)",
    )

    c = sub.add_parser("compare", parents=[data_opts, proto], help="the eleven-classifier accuracy table over datasets")
    c.add_argument(
        "--datasets", nargs="+", required=True,
        help="dataset CSVs or bundled names (iris, wine, glass, sonar, haberman)",
    )
    return parser


def _read_queries(text: str, n_features: int) -> np.ndarray:
    path = Path(text)
    if path.is_file():
        rows = []
        for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            if line.strip():
                try:
                    rows.append([float(v) for v in line.split(",")])
                except ValueError:
                    raise DatasetError(f"{path} row {lineno}: non-numeric query value") from None
    else:
        try:
            rows = [[float(v) for v in text.split(",")]]
        except ValueError:
            raise UsageError(f"--query is neither a file nor a numeric vector: {text!r}") from None
    bad = [len(r) for r in rows if len(r) != n_features]
    if not rows or bad:
        raise DatasetError(f"queries must have {n_features} features")
    return np.array(rows, dtype=np.float64)


def _predict(args, out) -> None:
    train = load_csv(resolve_dataset(args.train), args.label_column, args.header)
    queries = _read_queries(args.query, train.n_features)
    if not args.no_normalize:
        bounds = fit_normalizer(train)
        train, queries = normalize(train, bounds), normalize_array(queries, bounds)
    n_train = len(train)
    if not args.classifier.fits(n_train):
        raise DatasetError(f"{args.classifier.name} needs more than {n_train} training examples")
    for query in queries:
        pred = classify(train, query, args.classifier, args.metric)
        scores = "  ".join(
            f"{name}={score:.6g}" for name, score in zip(train.class_names, pred.scores)
        )
        print(f"{train.class_names[pred.class_index]}\t{scores}", file=out)


def _emit(text: str, args, out) -> None:
    if args.out is None:
        out.write(text)
    else:
        args.out.write_text(text, encoding="utf-8")


def _config(args, dataset: str, roster) -> ExperimentConfig:
    return ExperimentConfig(
        dataset=dataset,
        test_fraction=args.test_fraction,
        repetitions=args.runs,
        base_seed=args.seed,
        metric=args.metric,
        roster=tuple(c.name for c in roster),
        normalize_scope=args.normalize_scope,
        label_column=args.label_column,
        header=args.header,
    )


def _bench(args, out) -> None:
    roster = args.classifier or [Classifier("ensemble")]
    report = run_experiment(_config(args, args.train, roster))
    _emit(render_report(report, args.format), args, out)


def _compare(args, out) -> None:
    reports = [run_experiment(_config(args, d, TABLE_ROSTER)) for d in args.datasets]
    if args.format == "json":
        text = "[\n" + ",\n".join(render_report(r, "json").rstrip("\n") for r in reports) + "\n]\n"
    else:
        text = render_table(reports, [c.name for c in TABLE_ROSTER])
    _emit(text, args, out)


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    logging.basicConfig(level=logging.WARNING, format="warning: %(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        worker_count()
        handler = {"predict": _predict, "bench": _bench, "compare": _compare}[args.command]
        handler(args, out)
    except SystemExit as exc:  # --help / --version
        return exc.code or 0
    except (UsageError, ConfigError) as exc:
        print(exc, file=sys.stderr)
        return USAGE_ERROR
    except (DatasetError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    return 0


if __name__ == "__main__":
    sys.exit(main())
