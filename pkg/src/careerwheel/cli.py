"""Command-line surface for the survey assessment workflow.

Subcommands: stats, corr, train, evaluate, predict, fuzzify, synth.
Exit codes: 0 success, 1 usage or configuration error, 2 data or
validation error, 3 numerical failure.  Every command is deterministic
given its flags; all randomness flows from the seed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from careerwheel import dataio, evaluation, fuzzy, stats
from careerwheel.config import ConfigError, RunConfig, load_run_config
from careerwheel.models import (
    MODEL_KINDS,
    NumericalError,
    PersistError,
    fit_forest,
    fit_linear,
    fit_svr,
    load_model,
    save_model,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


def _load_dataset(path: str) -> dataio.Dataset:
    text = Path(path).read_text(encoding="utf-8")
    first_line = text.splitlines()[0] if text.splitlines() else ""
    header = [h.strip() for h in first_line.split(",")] if first_line else []
    schema = dataio.schema_for_header(header)
    return dataio.parse_csv(text, schema)


def _print_describe(summary: stats.DescriptiveStats) -> None:
    print("label,count,mean,std,min,25%,50%,75%,max")
    for col in summary.columns:
        cells = [col.label, str(col.count)] + [
            repr(v) for v in (col.mean, col.std, col.min, col.q25, col.median, col.q75, col.max)
        ]
        print(",".join(cells))


def _print_matrix(corr: stats.CorrelationMatrix) -> None:
    print("label," + ",".join(corr.labels))
    for i, label in enumerate(corr.labels):
        print(label + "," + ",".join(repr(float(v)) for v in corr.values[i]))


def _print_sorted_pairs(corr: stats.CorrelationMatrix, target: str) -> None:
    pairs = corr.target_correlations(target)
    print(f"label,corr_with_{target}")
    for label, r in sorted(pairs.items(), key=lambda kv: -kv[1]):
        print(f"{label},{r!r}")


def cmd_stats(args) -> int:
    dataset = _load_dataset(args.dataset)
    _print_describe(stats.describe(dataset))
    print()
    corr = stats.pearson(dataset)
    if args.sorted:
        _print_sorted_pairs(corr, args.target or dataset.target_label)
    else:
        _print_matrix(corr)
    return EXIT_OK


def cmd_corr(args) -> int:
    dataset = _load_dataset(args.dataset)
    corr = stats.pearson(dataset)
    if args.sorted:
        _print_sorted_pairs(corr, args.target or dataset.target_label)
    else:
        _print_matrix(corr)
    return EXIT_OK


def _config_from_args(args, dataset_path: str | None = None) -> RunConfig:
    features = None
    if getattr(args, "features", None):
        features = tuple(f.strip() for f in args.features.split(",") if f.strip())
    return load_run_config(
        getattr(args, "config", None),
        dataset_path=dataset_path,
        target_label=getattr(args, "target", None),
        feature_labels=features,
        correlation_threshold=getattr(args, "threshold", None),
        test_fraction=getattr(args, "test_fraction", None),
        seed=getattr(args, "seed", None),
        positive_class=getattr(args, "positive_class", None),
        model_out=getattr(args, "model_out", None),
        report_out=getattr(args, "report_out", None),
        partition_path=getattr(args, "partition", None),
    )


def _resolve_features(dataset: dataio.Dataset, config: RunConfig):
    if config.feature_labels is not None:
        for label in config.feature_labels:
            dataset.column_index(label)
        return tuple(config.feature_labels), None
    selection = stats.select_features(
        stats.pearson(dataset), dataset.target_label, config.correlation_threshold
    )
    return selection.selected_labels, selection


def cmd_train(args) -> int:
    config = _config_from_args(args, dataset_path=args.dataset)
    dataset = _load_dataset(config.dataset_path)
    if dataset.target_label != config.target_label:
        dataset = dataset.with_target(config.target_label)
    features, _ = _resolve_features(dataset, config)
    parts = dataio.split(dataset, config.test_fraction, config.seed)
    X, y = dataset.design(features)
    train = np.array(parts.train_indices)
    test = np.array(parts.test_indices)

    kinds = MODEL_KINDS if args.model == "all" else (args.model,)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    reports = {}
    for kind in kinds:
        if kind == "linear":
            model = fit_linear(
                X[train], y[train], config.params.linear.ridge_lambda, features
            )
        elif kind == "svr":
            model = fit_svr(X[train], y[train], config.params.svr, features)
        else:
            model = fit_forest(
                X[train], y[train], config.params.forest,
                seed=config.seed, feature_labels=features,
            )
        path = out_dir / f"model_{kind}.json"
        path.write_text(save_model(model), encoding="utf-8")
        reports[kind] = evaluation.regression_metrics(
            y[test], model.predict(X[test]), kind
        )
        print(f"wrote {path}")

    print(f"{'Model':<28}{'MAE':>10}{'MSE':>10}{'RMSE':>10}")
    for kind in kinds:
        r = reports[kind]
        print(
            f"{evaluation.MODEL_DISPLAY_NAMES[kind]:<28}"
            f"{r.mae:>10.4f}{r.mse:>10.4f}{r.rmse:>10.4f}"
        )
    return EXIT_OK


def cmd_evaluate(args) -> int:
    config = _config_from_args(args, dataset_path=args.dataset)
    dataset = _load_dataset(config.dataset_path)
    result = evaluation.evaluate_pipeline(dataset, config)
    print(evaluation.render_tables(result), end="")
    report_path = Path(config.report_out or "evaluation_report.json")
    report_path.write_text(evaluation.report_document(result), encoding="utf-8")
    model_path = Path(config.model_out or "model.json")
    model_path.write_text(result.winner_document, encoding="utf-8")
    print(f"wrote {report_path}")
    print(f"wrote {model_path}")
    return EXIT_OK


def _response_scores(args) -> dict[str, float]:
    if args.scores:
        scores = {}
        for item in args.scores.split(","):
            if "=" not in item:
                raise ConfigError(f"--scores entries must be Label=value, got {item!r}")
            label, raw = item.split("=", 1)
            try:
                scores[label.strip()] = float(raw)
            except ValueError:
                raise ConfigError(f"score {label.strip()!r} is not numeric: {raw!r}")
        return scores
    text = Path(args.response).read_text(encoding="utf-8")
    lines = [line for line in text.splitlines() if line.strip()]
    if len(lines) < 2:
        raise dataio.EmptyFile("response file needs a header and one data row")
    header = [h.strip() for h in lines[0].split(",")]
    cells = [c.strip() for c in lines[1].split(",")]
    scores = {}
    for label, cell in zip(header, cells):
        if not cell:
            continue
        try:
            scores[label] = float(cell)
        except ValueError:
            continue  # identity columns
    return scores


def cmd_predict(args) -> int:
    config = _config_from_args(args)
    model = load_model(Path(args.model).read_text(encoding="utf-8"))
    scores = _response_scores(args)
    vector = []
    for label in model.feature_labels:
        if label not in scores:
            raise dataio.MissingColumn(label)
        vector.append(scores[label])
    raw = model.predict_one(vector)
    assessment = fuzzy.fuzzify(config.partition, raw)
    print(f"raw_prediction = {raw!r}")
    print(f"clamped_score = {assessment.input_score!r}")
    for label, degree in assessment.memberships.items():
        print(f"membership[{label}] = {degree!r}")
    print(f"assessment = {assessment.chosen_term} (degree {assessment.chosen_degree!r})")
    return EXIT_OK


def cmd_fuzzify(args) -> int:
    config = _config_from_args(args)
    assessment = fuzzy.fuzzify(config.partition, args.score)
    print(f"clamped_score = {assessment.input_score!r}")
    for label, degree in assessment.memberships.items():
        print(f"membership[{label}] = {degree!r}")
    print(f"assessment = {assessment.chosen_term} (degree {assessment.chosen_degree!r})")
    return EXIT_OK


def cmd_synth(args) -> int:
    coefficients = [float(p) for p in args.coefficients.split(",") if p.strip()]
    dataset = dataio.generate_synthetic(
        args.n, coefficients, args.intercept, args.noise_sd, args.seed
    )
    Path(args.out).write_text(dataio.to_csv(dataset), encoding="utf-8")
    print(f"wrote {args.out} ({dataset.n} rows, {dataset.m} columns)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="careerwheel",
        description="Balance-Wheel survey analytics and career-readiness assessment",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config_flags(p, with_split=True):
        p.add_argument("--config", help="INI run-config file")
        p.add_argument("--target", help="target column label")
        p.add_argument("--features", help="comma-separated feature labels")
        p.add_argument("--threshold", type=float, help="correlation threshold")
        if with_split:
            p.add_argument("--test-fraction", type=float, dest="test_fraction")
            p.add_argument("--seed", type=int)
        p.add_argument("--partition", help="INI file with a [fuzzy] partition section")

    p = sub.add_parser("stats", help="descriptive summary plus correlations")
    p.add_argument("dataset")
    p.add_argument("--sorted", action="store_true", help="emit target pairs, descending")
    p.add_argument("--target")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("corr", help="correlation matrix export")
    p.add_argument("dataset")
    p.add_argument("--sorted", action="store_true", help="emit target pairs, descending")
    p.add_argument("--target")
    p.set_defaults(func=cmd_corr)

    p = sub.add_parser("train", help="fit model(s) and write model documents")
    p.add_argument("dataset")
    p.add_argument("--model", choices=MODEL_KINDS + ("all",), default="all")
    p.add_argument("--out-dir", default=".", dest="out_dir")
    add_config_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="full pipeline: fit, compare, fuzzify, score")
    p.add_argument("dataset")
    p.add_argument("--positive-class", dest="positive_class")
    p.add_argument("--model-out", dest="model_out")
    p.add_argument("--report-out", dest="report_out")
    add_config_flags(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("predict", help="score one respondent with a saved model")
    p.add_argument("model", help="model document path")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--response", help="single-row CSV with a header")
    group.add_argument("--scores", help="inline Label=value pairs, comma-separated")
    add_config_flags(p, with_split=False)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("fuzzify", help="linguistic assessment of a crisp score")
    p.add_argument("--score", type=float, required=True)
    add_config_flags(p, with_split=False)
    p.set_defaults(func=cmd_fuzzify)

    p = sub.add_parser("synth", help="write a synthetic cohort CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--coefficients", required=True, help="comma-separated slopes")
    p.add_argument("--intercept", type=float, default=0.0)
    p.add_argument("--noise-sd", type=float, default=0.0, dest="noise_sd")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        return args.func(args)
    except (ConfigError, stats.UnknownLabel, stats.NoFeaturesSelected, fuzzy.AlphaOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (dataio.DataError, PersistError, fuzzy.UnknownTerm, evaluation.LengthMismatch, evaluation.Empty) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
