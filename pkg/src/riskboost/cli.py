"""Command-line front end: train, predict, print, eval, bench.

Exit codes: 0 success, 1 user error (bad flags, bad input data, malformed
model files), 2 internal error. Every failure prints a one-line diagnostic
naming the stage that raised it.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

import numpy as np

from .boosting import FitConfig, fit, save_ensemble
from .data import Dataset, OutcomeSchema, _parse_cell, load_csv, plan_for
from .errors import DataError, RiskBoostError
from .losses import Objective
from .metrics import EvalReport, auc, c_index, mse, split
from .scorecard import (
    ScoreCard,
    aggregate,
    count_rules,
    load_scorecard,
    predict_scorecard,
    render,
    save_scorecard,
    to_probability,
)

__all__ = ["main"]

# user-facing objective flag -> internal tag
_OBJECTIVES = {
    "squared_error": Objective.SQUARED_ERROR,
    "logistic": Objective.LOGISTIC,
    "survival": Objective.SURVIVAL_RANK,
}
_KINDS = {
    Objective.SQUARED_ERROR: "continuous",
    Objective.LOGISTIC: "binary",
    Objective.SURVIVAL_RANK: "survival",
}
_METRIC_NAMES = {
    Objective.SQUARED_ERROR: "mse",
    Objective.LOGISTIC: "auc",
    Objective.SURVIVAL_RANK: "c_index",
}


class _Parser(argparse.ArgumentParser):
    """argparse that exits with the user-error code instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"error [cli]: {message}\n")


def _schema_for(objective: str, args) -> OutcomeSchema:
    kind = _KINDS[objective]
    if kind == "survival":
        if not args.time or not args.event:
            raise DataError("survival objective requires --time and --event column names")
        return OutcomeSchema(kind="survival", time=args.time, event=args.event)
    if not args.target:
        raise DataError(f"{kind} objective requires --target column name")
    return OutcomeSchema(kind=kind, target=args.target)


def parse_thresholds_file(path) -> dict:
    """Read per-feature cutoffs: one ``name: v1, v2, ...`` line per feature,
    with blank lines and ``#`` comments ignored."""
    if not os.path.exists(path):
        raise DataError(f"no such thresholds file: {path}")
    spec: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            name, sep, rest = line.partition(":")
            if not sep:
                raise DataError(f"{path}:{line_no}: expected 'name: v1, v2, ...'")
            name = name.strip()
            if not name:
                raise DataError(f"{path}:{line_no}: missing feature name")
            if name in spec:
                raise DataError(f"{path}:{line_no}: duplicate feature {name!r}")
            values = []
            for token in rest.split(","):
                token = token.strip()
                if not token:
                    continue
                try:
                    value = float(token)
                except ValueError:
                    raise DataError(f"{path}:{line_no}: cannot parse {token!r}") from None
                if not np.isfinite(value):
                    raise DataError(f"{path}:{line_no}: cutoff must be finite")
                values.append(value)
            spec[name] = values
    return spec


def _parse_labels(pairs) -> dict:
    labels = {}
    for item in pairs or []:
        name, sep, rest = item.partition("=")
        low, sep2, high = rest.partition("/")
        if not sep or not sep2 or not name:
            raise DataError(f"bad --labels value {item!r}, expected NAME=LOW/HIGH")
        labels[name] = (low, high)
    return labels


def _read_feature_table(path):
    """Header + numeric rows of a CSV that need not carry outcome columns."""
    if not os.path.exists(path):
        raise DataError(f"no such file: {path}")
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise DataError(f"{path}: empty file, header row required") from None
        if len(set(header)) != len(header):
            raise DataError(f"{path}: duplicate column names in header")
        rows = []
        for line_no, record in enumerate(reader, start=1):
            if not record or (len(record) == 1 and record[0].strip() == ""):
                continue
            if len(record) != len(header):
                raise DataError(
                    f"{path}: row {line_no} has {len(record)} fields, expected {len(header)}"
                )
            rows.append([_parse_cell(cell, line_no, header[k]) for k, cell in enumerate(record)])
    if not rows:
        raise DataError(f"{path}: no data rows")
    return header, np.asarray(rows, dtype=np.float64)


def _config_from(args) -> FitConfig:
    return FitConfig(
        n_iter=args.n_iter,
        learning_rate=args.lr,
        n_quantiles=args.n_quantiles,
        subsample=args.subsample,
        seed=args.seed,
    )


def _plan_from(args, dataset: Dataset):
    user_cutoffs = parse_thresholds_file(args.thresholds) if args.thresholds else None
    return plan_for(
        dataset,
        args.n_quantiles,
        user_cutoffs=user_cutoffs,
        merge_quantiles=not args.thresholds_only,
    )


def _ensemble_path(out_path: str) -> str:
    stem = out_path[:-5] if out_path.endswith(".json") else out_path
    return stem + ".ensemble.json"


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_train(args) -> int:
    objective = _OBJECTIVES[args.objective]
    dataset = load_csv(args.data, _schema_for(objective, args))
    plan = _plan_from(args, dataset)
    ensemble = fit(dataset, plan, _config_from(args))
    card = aggregate(ensemble)
    save_scorecard(card, args.out)
    save_ensemble(ensemble, args.out_ensemble or _ensemble_path(args.out))
    sys.stdout.write(render(card, decimals=args.decimals, bool_labels=_parse_labels(args.labels)))
    return 0


def cmd_predict(args) -> int:
    card = load_scorecard(args.model)
    names, table = _read_feature_table(args.data)
    scores = predict_scorecard(card, table, columns=names)
    if card.objective == Objective.LOGISTIC:
        lines = ["score,probability"]
        lines += [f"{float(s)!r},{to_probability(card, float(s))!r}" for s in scores]
    elif card.objective == Objective.SURVIVAL_RANK:
        lines = ["score"] + [repr(float(s)) for s in scores]
    else:
        lines = ["prediction"] + [repr(float(s)) for s in scores]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_print(args) -> int:
    card = load_scorecard(args.model)
    sys.stdout.write(render(card, decimals=args.decimals, bool_labels=_parse_labels(args.labels)))
    return 0


def _evaluate(card: ScoreCard, dataset: Dataset) -> EvalReport:
    scores = predict_scorecard(card, dataset.features, columns=dataset.feature_names)
    if card.objective == Objective.SQUARED_ERROR:
        value = mse(dataset.outcome.values, scores)
    elif card.objective == Objective.LOGISTIC:
        value = auc(dataset.outcome.labels, scores)
    else:
        value = c_index(dataset.outcome.times, dataset.outcome.events, scores)
    return EvalReport(
        metric_name=_METRIC_NAMES[card.objective],
        value=float(value),
        n_samples=dataset.n_samples,
        rule_count=count_rules(card),
    )


def cmd_eval(args) -> int:
    card = load_scorecard(args.model)
    dataset = load_csv(args.data, _schema_for(card.objective, args))
    report = _evaluate(card, dataset)
    sys.stdout.write("metric,value,n_samples,rule_count\n")
    sys.stdout.write(
        f"{report.metric_name},{report.value!r},{report.n_samples},{report.rule_count}\n"
    )
    return 0


def cmd_bench(args) -> int:
    objective = _OBJECTIVES[args.objective]
    dataset = load_csv(args.data, _schema_for(objective, args))
    if args.repeats < 1:
        raise DataError("--repeats must be >= 1")
    user_cutoffs = parse_thresholds_file(args.thresholds) if args.thresholds else None
    values = []
    rules = []
    out = ["repeat,seed,metric,value,n_test,rule_count"]
    for r in range(args.repeats):
        run_seed = args.seed + r
        train_set, test_set = split(dataset, (1.0 - args.test_frac, args.test_frac), seed=run_seed)
        plan = plan_for(
            train_set,
            args.n_quantiles,
            user_cutoffs=user_cutoffs,
            merge_quantiles=not args.thresholds_only,
        )
        config = FitConfig(
            n_iter=args.n_iter,
            learning_rate=args.lr,
            n_quantiles=args.n_quantiles,
            subsample=args.subsample,
            seed=run_seed,
        )
        card = aggregate(fit(train_set, plan, config))
        report = _evaluate(card, test_set)
        values.append(report.value)
        rules.append(report.rule_count)
        out.append(
            f"{r},{run_seed},{report.metric_name},{report.value!r},"
            f"{report.n_samples},{report.rule_count}"
        )
    mean = float(np.mean(values))
    std = float(np.std(values, ddof=1)) if len(values) > 1 else 0.0
    metric = _METRIC_NAMES[objective]
    out.append(
        f"# summary: metric={metric} mean={mean!r} std={std!r} "
        f"mean_rule_count={float(np.mean(rules))!r} repeats={args.repeats}"
    )
    sys.stdout.write("\n".join(out) + "\n")
    return 0


def _add_schema_flags(p, with_objective=True):
    if with_objective:
        p.add_argument(
            "--objective",
            required=True,
            choices=sorted(_OBJECTIVES),
            help="outcome kind to model",
        )
    p.add_argument("--target", help="outcome column (squared_error, logistic)")
    p.add_argument("--time", help="survival time column")
    p.add_argument("--event", help="survival event indicator column (1=event, 0=censored)")


def _add_fit_flags(p):
    p.add_argument("--n-iter", type=int, default=500, help="boosting iterations (default 500)")
    p.add_argument("--lr", type=float, default=0.05, help="learning rate in (0,1] (default 0.05)")
    p.add_argument(
        "--n-quantiles",
        type=int,
        default=4,
        help="quantile bins per feature; cutoffs at the interior quantiles (default 4)",
    )
    p.add_argument("--subsample", type=float, default=1.0, help="row fraction per iteration")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--thresholds", help="file of per-feature cutoffs: 'name: v1, v2, ...'")
    p.add_argument(
        "--thresholds-only",
        action="store_true",
        help="split only on features listed in --thresholds (no quantile fill-in)",
    )


def _add_label_flags(p):
    p.add_argument("--decimals", type=int, default=1, help="digits for printed points (default 1)")
    p.add_argument(
        "--labels",
        action="append",
        metavar="NAME=LOW/HIGH",
        help="bin labels for a one-cutoff variable, e.g. smoking=FALSE/TRUE",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="riskboost", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("train", help="fit a model and print its score table")
    p.add_argument("--data", required=True, help="training CSV with header")
    _add_schema_flags(p)
    _add_fit_flags(p)
    _add_label_flags(p)
    p.add_argument("--out", required=True, help="score table model file to write (JSON)")
    p.add_argument("--out-ensemble", help="raw ensemble file (default: <out>.ensemble.json)")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="score rows of a feature CSV")
    p.add_argument("--model", required=True, help="model file from train")
    p.add_argument("--data", required=True, help="feature CSV (outcome columns not needed)")
    p.add_argument("--out", help="output CSV (default: stdout)")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("print", help="render a model file as a score table")
    p.add_argument("--model", required=True)
    _add_label_flags(p)
    p.set_defaults(func=cmd_print)

    p = sub.add_parser("eval", help="evaluate a model on labeled data")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True, help="labeled CSV")
    _add_schema_flags(p, with_objective=False)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="repeated random-split benchmark")
    p.add_argument("--data", required=True, help="labeled CSV")
    _add_schema_flags(p)
    _add_fit_flags(p)
    p.add_argument("--repeats", type=int, default=10, help="number of random splits (default 10)")
    p.add_argument(
        "--test-frac", type=float, default=0.3, help="held-out fraction per split (default 0.3)"
    )
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse exits; keep main() returning a code
        return int(exc.code or 0)
    try:
        return args.func(args)
    except RiskBoostError as exc:
        print(f"error [{exc.stage}]: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"error [internal]: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
