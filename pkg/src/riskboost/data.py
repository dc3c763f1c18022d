"""Tabular data containers, CSV loading, and candidate split thresholds.

A :class:`Dataset` is a dense matrix of finite feature values plus one
outcome: continuous targets, 0/1 labels, or survival (time, event) pairs.
Missing values are a hard error everywhere; callers must pre-encode
categorical variables as numbers.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import DataError

__all__ = [
    "Continuous",
    "Binary",
    "Survival",
    "Outcome",
    "OutcomeSchema",
    "Dataset",
    "ThresholdPlan",
    "load_csv",
    "quantile_thresholds",
    "user_thresholds",
    "plan_for",
    "subset_rows",
]


def _float_vector(values, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise DataError(f"{what} must be one-dimensional")
    if not np.all(np.isfinite(arr)):
        raise DataError(f"{what} must be finite")
    return arr


def _binary_vector(values, what: str) -> np.ndarray:
    arr = _float_vector(values, what)
    if not np.all((arr == 0.0) | (arr == 1.0)):
        raise DataError(f"{what} must be exactly 0 or 1")
    return arr


@dataclass(frozen=True, eq=False)
class Continuous:
    """Real-valued regression targets."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _float_vector(self.values, "continuous targets"))

    def __len__(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class Binary:
    """Classification labels, each exactly 0 or 1."""

    labels: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "labels", _binary_vector(self.labels, "binary labels"))

    def __len__(self) -> int:
        return self.labels.shape[0]


@dataclass(frozen=True, eq=False)
class Survival:
    """Time-to-event outcome: strictly positive times plus event indicators
    (1 = observed event, 0 = censored)."""

    times: np.ndarray
    events: np.ndarray

    def __post_init__(self):
        times = _float_vector(self.times, "survival times")
        events = _binary_vector(self.events, "event indicators")
        if times.shape != events.shape:
            raise DataError("survival times and event indicators differ in length")
        if not np.all(times > 0.0):
            raise DataError("survival times must be strictly positive")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "events", events)

    def __len__(self) -> int:
        return self.times.shape[0]


Outcome = Union[Continuous, Binary, Survival]


@dataclass(frozen=True, eq=False)
class Dataset:
    """Feature matrix with named columns and one outcome.

    Invariants: at least one row and one column, all feature values finite,
    column names unique and aligned with the matrix.
    """

    features: np.ndarray
    feature_names: tuple
    outcome: Outcome

    def __post_init__(self):
        features = np.asarray(self.features, dtype=np.float64)
        if features.ndim != 2:
            raise DataError("features must be a 2-D matrix")
        n, d = features.shape
        if n < 1 or d < 1:
            raise DataError("dataset needs at least one row and one feature")
        if not np.all(np.isfinite(features)):
            raise DataError("feature values must be finite (no missing values)")
        names = tuple(str(name) for name in self.feature_names)
        if len(names) != d:
            raise DataError(f"got {len(names)} feature names for {d} columns")
        if len(set(names)) != len(names):
            raise DataError("feature names must be unique")
        if len(self.outcome) != n:
            raise DataError(
                f"outcome length {len(self.outcome)} does not match {n} rows"
            )
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "feature_names", names)

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]


@dataclass(frozen=True, eq=False)
class ThresholdPlan:
    """Per-feature candidate cutoffs, aligned with a dataset's columns.

    ``cutoffs[j]`` is a strictly increasing (possibly empty) float array;
    ``sources[j]`` records whether it came from training quantiles or was
    user-supplied.
    """

    feature_names: tuple
    cutoffs: tuple
    sources: tuple

    def __post_init__(self):
        names = tuple(str(n) for n in self.feature_names)
        cleaned = []
        for name, cuts in zip(names, self.cutoffs, strict=True):
            arr = np.asarray(cuts, dtype=np.float64)
            if arr.ndim != 1:
                raise DataError(f"cutoffs for {name!r} must be one-dimensional")
            if not np.all(np.isfinite(arr)):
                raise DataError(f"cutoffs for {name!r} must be finite")
            if arr.size > 1 and not np.all(np.diff(arr) > 0):
                raise DataError(f"cutoffs for {name!r} must be strictly increasing")
            cleaned.append(arr)
        sources = tuple(self.sources)
        if len(sources) != len(names):
            raise DataError("one source tag per feature required")
        for src in sources:
            if src not in ("quantile", "user"):
                raise DataError(f"unknown threshold source {src!r}")
        object.__setattr__(self, "feature_names", names)
        object.__setattr__(self, "cutoffs", tuple(cleaned))
        object.__setattr__(self, "sources", sources)

    @property
    def n_candidates(self) -> int:
        """Total number of (feature, cutoff) split candidates."""
        return int(sum(c.size for c in self.cutoffs))


@dataclass(frozen=True)
class OutcomeSchema:
    """Names the outcome columns of a CSV file.

    ``kind`` is one of ``continuous``, ``binary``, ``survival``. The first
    two name a single ``target`` column; survival names ``time`` and
    ``event`` columns.
    """

    kind: str
    target: str | None = None
    time: str | None = None
    event: str | None = None

    def __post_init__(self):
        if self.kind in ("continuous", "binary"):
            if not self.target:
                raise DataError(f"{self.kind} outcome requires a target column name")
        elif self.kind == "survival":
            if not self.time or not self.event:
                raise DataError("survival outcome requires time and event column names")
        else:
            raise DataError(f"unknown outcome kind {self.kind!r}")

    @property
    def column_names(self) -> tuple:
        if self.kind == "survival":
            return (self.time, self.event)
        return (self.target,)


def _parse_cell(text: str, row: int, column: str) -> float:
    try:
        value = float(text)
    except ValueError:
        value = math.nan
    if not math.isfinite(value):
        raise DataError(f"cannot parse {text!r} as a number at row {row}, column {column!r}")
    return value


def load_csv(path, schema: OutcomeSchema) -> Dataset:
    """Read an RFC-4180-style CSV (header required, ``.`` decimals) into a
    :class:`Dataset`.

    Feature columns are every column not named by ``schema``, kept in file
    order. Rows are numbered from 1 (header excluded) in error messages.
    """
    if not os.path.exists(path):
        raise DataError(f"no such file: {path}")
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file, header row required") from None
        header = [h.strip() for h in header]
        if len(set(header)) != len(header):
            raise DataError(f"{path}: duplicate column names in header")
        for needed in schema.column_names:
            if needed not in header:
                raise DataError(f"{path}: missing column {needed!r}")
        outcome_cols = set(schema.column_names)
        feature_names = [h for h in header if h not in outcome_cols]
        if not feature_names:
            raise DataError(f"{path}: no feature columns besides the outcome")
        rows = []
        for line_no, record in enumerate(reader, start=1):
            if not record or (len(record) == 1 and record[0].strip() == ""):
                continue  # tolerate blank trailing lines
            if len(record) != len(header):
                raise DataError(
                    f"{path}: row {line_no} has {len(record)} fields, expected {len(header)}"
                )
            rows.append([_parse_cell(cell, line_no, header[k]) for k, cell in enumerate(record)])
    if not rows:
        raise DataError(f"{path}: no data rows")

    table = np.asarray(rows, dtype=np.float64)
    col_index = {name: k for k, name in enumerate(header)}
    features = table[:, [col_index[name] for name in feature_names]]

    def column(name: str) -> np.ndarray:
        return table[:, col_index[name]]

    if schema.kind == "continuous":
        outcome: Outcome = Continuous(column(schema.target))
    elif schema.kind == "binary":
        labels = column(schema.target)
        bad = np.nonzero((labels != 0.0) & (labels != 1.0))[0]
        if bad.size:
            raise DataError(
                f"{path}: label {labels[bad[0]]!r} outside {{0, 1}} at row {bad[0] + 1}, "
                f"column {schema.target!r}"
            )
        outcome = Binary(labels)
    else:
        times = column(schema.time)
        bad = np.nonzero(times <= 0.0)[0]
        if bad.size:
            raise DataError(
                f"{path}: non-positive survival time {times[bad[0]]!r} at row {bad[0] + 1}, "
                f"column {schema.time!r}"
            )
        events = column(schema.event)
        bad = np.nonzero((events != 0.0) & (events != 1.0))[0]
        if bad.size:
            raise DataError(
                f"{path}: event indicator {events[bad[0]]!r} outside {{0, 1}} at row "
                f"{bad[0] + 1}, column {schema.event!r}"
            )
        outcome = Survival(times, events)
    return Dataset(features, tuple(feature_names), outcome)


def quantile_thresholds(dataset: Dataset, n_quantiles: int) -> ThresholdPlan:
    """Candidate cutoffs at the interior q/n_quantiles training quantiles.

    Quantiles use linear interpolation between closest ranks (numpy's
    default). Duplicates are removed, and cutoffs at or below the column
    minimum are dropped because ``x >= cutoff`` would hold for every row;
    constant columns therefore end up with no cutoffs at all.
    """
    if n_quantiles < 1:
        raise DataError("n_quantiles must be a positive integer")
    probs = np.arange(1, n_quantiles) / float(n_quantiles)
    cutoffs = []
    for j in range(dataset.n_features):
        col = dataset.features[:, j]
        if probs.size == 0:
            cutoffs.append(np.empty(0, dtype=np.float64))
            continue
        values = np.unique(np.quantile(col, probs, method="linear"))
        cutoffs.append(values[values > col.min()])
    return ThresholdPlan(dataset.feature_names, tuple(cutoffs), ("quantile",) * dataset.n_features)


def user_thresholds(
    dataset: Dataset,
    spec: Mapping[str, Iterable[float]],
    fill: ThresholdPlan | None = None,
) -> ThresholdPlan:
    """Build a plan from explicit per-feature cutoff lists.

    Lists are sorted and deduplicated. Features absent from ``spec`` take
    their cutoffs from ``fill`` (typically a quantile plan) when one is
    given; otherwise they get no cutoffs and are never split on.
    """
    known = set(dataset.feature_names)
    for name in spec:
        if name not in known:
            raise DataError(f"unknown feature {name!r} in threshold spec")
    if fill is not None and fill.feature_names != dataset.feature_names:
        raise DataError("fill plan does not match the dataset's features")
    cutoffs = []
    sources = []
    for j, name in enumerate(dataset.feature_names):
        if name in spec:
            arr = np.asarray(list(spec[name]), dtype=np.float64)
            if not np.all(np.isfinite(arr)):
                raise DataError(f"non-finite cutoff for feature {name!r}")
            cutoffs.append(np.unique(arr))
            sources.append("user")
        elif fill is not None:
            cutoffs.append(fill.cutoffs[j])
            sources.append(fill.sources[j])
        else:
            cutoffs.append(np.empty(0, dtype=np.float64))
            sources.append("user")
    return ThresholdPlan(dataset.feature_names, tuple(cutoffs), tuple(sources))


def plan_for(
    dataset: Dataset,
    n_quantiles: int,
    user_cutoffs: Mapping[str, Iterable[float]] | None = None,
    merge_quantiles: bool = True,
) -> ThresholdPlan:
    """Quantile plan, optionally overridden per feature by user cutoffs.

    With ``merge_quantiles`` (the default) features missing from
    ``user_cutoffs`` keep their quantile cutoffs; otherwise they are
    excluded from splitting.
    """
    if user_cutoffs is None:
        return quantile_thresholds(dataset, n_quantiles)
    fill = quantile_thresholds(dataset, n_quantiles) if merge_quantiles else None
    return user_thresholds(dataset, user_cutoffs, fill=fill)


def _take(outcome: Outcome, rows: np.ndarray) -> Outcome:
    if isinstance(outcome, Continuous):
        return Continuous(outcome.values[rows])
    if isinstance(outcome, Binary):
        return Binary(outcome.labels[rows])
    return Survival(outcome.times[rows], outcome.events[rows])


def subset_rows(dataset: Dataset, rows: Sequence[int]) -> Dataset:
    """New dataset holding the given rows (in the given order)."""
    idx = np.asarray(rows, dtype=np.intp)
    if idx.size == 0:
        raise DataError("row subset must be non-empty")
    return Dataset(dataset.features[idx], dataset.feature_names, _take(dataset.outcome, idx))
