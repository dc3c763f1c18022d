"""Aggregation of stump ensembles into printable per-variable point tables.

A stump contributes ``left + (right - left) * [x >= threshold]`` on its
feature. Summing the indicator coefficients of all stumps that share a
(feature, threshold) pair collapses a long boosting sequence into one rule
per distinct cutoff; cumulative sums of those coefficients give the
piecewise-constant bin points that are printed. Every variable is
display-normalized so its smallest bin shows 0 points, with the offsets
folded into the intercept, leaving total predictions unchanged.

Model files are JSON documents::

    {
      "format_version": 1,
      "objective": "logistic",
      "learning_rate": 0.05,
      "intercept": -1.25,
      "tables": [{"feature": "age", "cutoffs": [...], "bin_points": [...]}]
    }

Floats are written with full round-trip precision and LF line endings, so
identical models serialize to identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .boosting import StumpEnsemble
from .errors import DataError, ScoreCardError
from .losses import Objective, clamped_probabilities

__all__ = [
    "VariableTable",
    "ScoreCard",
    "aggregate",
    "predict_scorecard",
    "to_probability",
    "to_hazard_ratio",
    "render",
    "count_rules",
    "indicator_form",
    "table_from_indicator",
    "dump_scorecard",
    "save_scorecard",
    "load_scorecard",
]

SCORECARD_FORMAT_VERSION = 1


@dataclass(frozen=True, eq=False)
class VariableTable:
    """Piecewise-constant point table for one variable.

    ``bin_points[k]`` applies on ``[cutoffs[k-1], cutoffs[k])`` with the
    usual open ends; a value equal to a cutoff falls in the bin to its
    right. Points are display-normalized: the smallest bin is exactly 0.
    """

    feature_name: str
    cutoffs: np.ndarray
    bin_points: np.ndarray

    def __post_init__(self):
        cutoffs = np.asarray(self.cutoffs, dtype=np.float64)
        points = np.asarray(self.bin_points, dtype=np.float64)
        if cutoffs.ndim != 1 or cutoffs.size < 1:
            raise ScoreCardError(f"{self.feature_name!r}: needs at least one cutoff")
        if not np.all(np.isfinite(cutoffs)) or not np.all(np.isfinite(points)):
            raise ScoreCardError(f"{self.feature_name!r}: non-finite table entries")
        if cutoffs.size > 1 and not np.all(np.diff(cutoffs) > 0):
            raise ScoreCardError(f"{self.feature_name!r}: cutoffs must be strictly increasing")
        if points.shape != (cutoffs.size + 1,):
            raise ScoreCardError(
                f"{self.feature_name!r}: {cutoffs.size} cutoffs require "
                f"{cutoffs.size + 1} bin points, got {points.size}"
            )
        if points.min() != 0.0:
            raise ScoreCardError(f"{self.feature_name!r}: bin points must be normalized to min 0")
        object.__setattr__(self, "cutoffs", cutoffs)
        object.__setattr__(self, "bin_points", points)

    def lookup(self, values) -> np.ndarray:
        """Bin points for an array of raw feature values."""
        idx = np.searchsorted(self.cutoffs, np.asarray(values, dtype=np.float64), side="right")
        return self.bin_points[idx]


@dataclass(frozen=True, eq=False)
class ScoreCard:
    """Aggregated model: intercept plus one point table per used variable.

    ``feature_names`` preserves the full training column order when the
    card was produced in process; cards loaded from disk carry ``None`` and
    align inputs by column name instead.
    """

    intercept: float
    tables: tuple
    objective: str
    learning_rate: float
    feature_names: tuple | None = None


def aggregate(ensemble: StumpEnsemble) -> ScoreCard:
    """Collapse an ensemble into per-variable tables, preserving predictions.

    Stumps sharing a (feature, threshold) pair have their indicator
    coefficients summed; cutoffs whose net coefficient is exactly 0 are
    dropped. Per variable, the summed left values plus the minimum bin
    value move into the intercept so the printed bins start at 0.
    """
    intercept = ensemble.intercept
    tables = []
    for j, name in enumerate(ensemble.feature_names):
        base = 0.0
        deltas: dict = {}
        hit = False
        for stump in ensemble.stumps:
            if stump.feature_index != j:
                continue
            hit = True
            base += stump.left_value
            key = stump.threshold
            deltas[key] = deltas.get(key, 0.0) + (stump.right_value - stump.left_value)
        if not hit:
            continue
        cutoffs = sorted(tau for tau, coef in deltas.items() if coef != 0.0)
        if not cutoffs:
            intercept += base
            continue
        bins = [0.0]
        for tau in cutoffs:
            bins.append(bins[-1] + deltas[tau])
        lowest = min(bins)
        points = [b - lowest for b in bins]
        intercept += base + lowest
        tables.append(VariableTable(name, np.asarray(cutoffs), np.asarray(points)))
    return ScoreCard(
        intercept=intercept,
        tables=tuple(tables),
        objective=ensemble.objective,
        learning_rate=ensemble.learning_rate,
        feature_names=ensemble.feature_names,
    )


def indicator_form(table: VariableTable):
    """Equivalent indicator representation: (base, per-cutoff coefficients).

    The table's scoring function equals
    ``base + sum_k coefficients[k] * [x >= cutoffs[k]]``.
    """
    return float(table.bin_points[0]), np.diff(table.bin_points)


def table_from_indicator(feature_name: str, cutoffs, base: float, coefficients) -> VariableTable:
    """Inverse of :func:`indicator_form`; bin k is base plus the first k
    coefficients, accumulated left to right."""
    bins = [float(base)]
    for coef in np.asarray(coefficients, dtype=np.float64):
        bins.append(bins[-1] + coef)
    return VariableTable(feature_name, np.asarray(cutoffs, dtype=np.float64), np.asarray(bins))


def _resolve_columns(card: ScoreCard, features, columns):
    """Validated matrix plus the column index of each table within it."""
    x = np.asarray(features, dtype=np.float64)
    if x.ndim == 1:
        x = x.reshape(1, -1)
    if x.ndim != 2:
        raise DataError("features must be a 2-D matrix")
    if columns is not None:
        where = {str(name): k for k, name in enumerate(columns)}
        if len(where) != len(list(columns)):
            raise DataError("duplicate column names")
        missing = [t.feature_name for t in card.tables if t.feature_name not in where]
        if missing:
            raise DataError(f"missing feature column {missing[0]!r}")
        return x, [where[t.feature_name] for t in card.tables]
    if card.feature_names is not None:
        if x.shape[1] != len(card.feature_names):
            raise DataError(
                f"expected {len(card.feature_names)} feature columns, got {x.shape[1]}"
            )
        index = {name: k for k, name in enumerate(card.feature_names)}
        return x, [index[t.feature_name] for t in card.tables]
    if x.shape[1] != len(card.tables):
        raise DataError(
            f"expected {len(card.tables)} feature columns (one per table), got {x.shape[1]}"
        )
    return x, list(range(len(card.tables)))


def predict_scorecard(card: ScoreCard, features, columns=None, decimals: int | None = None) -> np.ndarray:
    """Raw scores: intercept plus each variable's bin points.

    ``columns`` names the columns of ``features``; without it the matrix
    must match the training layout (or, for cards loaded from disk, have
    one column per table in table order). Predictions use full-precision
    points unless ``decimals`` is given, which rounds every point and the
    intercept first to mimic by-hand scoring from the printed table.
    """
    x, col_of = _resolve_columns(card, features, columns)
    intercept = card.intercept if decimals is None else round(card.intercept, decimals)
    scores = np.full(x.shape[0], intercept, dtype=np.float64)
    for table, col in zip(card.tables, col_of):
        points = table.lookup(x[:, col])
        if decimals is not None:
            points = np.round(points, decimals)
        scores += points
    return scores


def to_probability(card: ScoreCard, raw):
    """Map a raw log-odds score to an event probability (logistic models)."""
    if card.objective != Objective.LOGISTIC:
        raise ScoreCardError("probabilities are only defined for the logistic objective")
    out = clamped_probabilities(np.asarray(raw, dtype=np.float64))
    return float(out) if np.isscalar(raw) else out

def to_hazard_ratio(card: ScoreCard, points_delta):
    """Multiplicative risk change for a point difference (survival models)."""
    if card.objective != Objective.SURVIVAL_RANK:
        raise ScoreCardError("hazard ratios are only defined for the survival objective")
    out = np.exp(np.asarray(points_delta, dtype=np.float64))
    return float(out) if np.isscalar(points_delta) else out


def count_rules(card: ScoreCard) -> int:
    """Number of retained threshold rules across all variables."""
    return int(sum(t.cutoffs.size for t in card.tables))


def _format_cutoff(value: float) -> str:
    # 6 significant digits, padded to at least one decimal place so integer
    # cutoffs read as "50.0"; display-only, predictions use exact values
    text = f"{float(value):.6g}"
    if "." not in text and "e" not in text and "inf" not in text:
        text += ".0"
    return text


def _bin_labels(table: VariableTable, bool_labels) -> list:
    if bool_labels and table.cutoffs.size == 1 and table.feature_name in bool_labels:
        low, high = bool_labels[table.feature_name]
        return [str(low), str(high)]
    cuts = [_format_cutoff(c) for c in table.cutoffs]
    labels = [f"<{cuts[0]}"]
    labels += [f"[{a},{b})" for a, b in zip(cuts[:-1], cuts[1:])]
    labels.append(f">={cuts[-1]}")
    return labels


def _block(cells_top: list, cells_bottom: list) -> list:
    widths = [max(len(a), len(b)) for a, b in zip(cells_top, cells_bottom)]
    top = "| " + " | ".join(c.ljust(w) for c, w in zip(cells_top, widths)) + " "
    bottom = "| " + " | ".join(c.ljust(w) for c, w in zip(cells_bottom, widths)) + " "
    return [top, bottom]


def _ruler(width: int) -> str:
    return " " + "=" * (width - 1) + " "


def render(card: ScoreCard, decimals: int = 1, bool_labels: Mapping | None = None) -> str:
    """Plain-text point tables, one aligned block per variable.

    Each block is two pipe-delimited rows (bin labels, then points rounded
    to ``decimals``) closed by a ``=`` ruler sized to the block; the first
    block also opens with one. Variables with no retained cutoffs do not
    appear. A trailing ``Intercept`` block carries the base score. Rounding
    here is display-only. ``bool_labels`` may map a single-cutoff variable's
    name to a (below, at-or-above) label pair, e.g. ``("FALSE", "TRUE")``.
    """
    if decimals < 0:
        raise ScoreCardError("decimals must be >= 0")
    lines = []
    for table in card.tables:
        labels = _bin_labels(table, bool_labels)
        points = [f"{p:.{decimals}f}" for p in table.bin_points]
        rows = _block([table.feature_name] + labels, [""] + points)
        if not lines:
            lines.append(_ruler(len(rows[0])))
        lines.extend(rows)
        lines.append(_ruler(len(rows[0])))
    intercept_row = f"| Intercept | {card.intercept:.{decimals}f} "
    if not lines:
        lines.append(_ruler(len(intercept_row)))
    lines.append(intercept_row)
    lines.append(_ruler(len(intercept_row)))
    return "\n".join(lines) + "\n"


def dump_scorecard(card: ScoreCard) -> str:
    """The model document as a JSON string."""
    doc = {
        "format_version": SCORECARD_FORMAT_VERSION,
        "objective": card.objective,
        "learning_rate": card.learning_rate,
        "intercept": card.intercept,
        "tables": [
            {
                "feature": t.feature_name,
                "cutoffs": [float(c) for c in t.cutoffs],
                "bin_points": [float(p) for p in t.bin_points],
            }
            for t in card.tables
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def save_scorecard(card: ScoreCard, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dump_scorecard(card))


def load_scorecard(path) -> ScoreCard:
    """Read a model document written by :func:`save_scorecard`."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ScoreCardError(f"cannot read model file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScoreCardError(f"malformed model file {path}: {exc}") from exc
    try:
        if doc["format_version"] != SCORECARD_FORMAT_VERSION:
            raise ScoreCardError(f"unsupported format_version {doc['format_version']!r}")
        objective = doc["objective"]
        if objective not in Objective.ALL:
            raise ScoreCardError(f"unknown objective {objective!r}")
        tables = tuple(
            VariableTable(
                str(t["feature"]),
                np.asarray(t["cutoffs"], dtype=np.float64),
                np.asarray(t["bin_points"], dtype=np.float64),
            )
            for t in doc["tables"]
        )
        return ScoreCard(
            intercept=float(doc["intercept"]),
            tables=tables,
            objective=objective,
            learning_rate=float(doc["learning_rate"]),
            feature_names=None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ScoreCardError(f"malformed model file {path}: {exc}") from exc
