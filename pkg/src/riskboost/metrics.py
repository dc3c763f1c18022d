"""Evaluation metrics (MSE, AUC, Harrell's C-index) and seeded splits.

AUC is the Mann-Whitney probability that a positive outranks a negative,
ties counting one half; the C-index applies the same convention over
comparable survival pairs (higher score should mean earlier event). Both
are plain pair statistics with no censoring-distribution weighting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset, subset_rows
from .errors import MetricError
from .losses import build_comparable_pairs

__all__ = ["EvalReport", "mse", "auc", "c_index", "split"]


@dataclass(frozen=True)
class EvalReport:
    """One metric value for one model on one dataset."""

    metric_name: str
    value: float
    n_samples: int
    rule_count: int | None = None


def mse(targets, predictions) -> float:
    """Mean squared difference."""
    y = np.asarray(targets, dtype=np.float64)
    f = np.asarray(predictions, dtype=np.float64)
    if y.size == 0:
        raise MetricError("mse of empty input")
    if y.shape != f.shape:
        raise MetricError("targets and predictions differ in length")
    return float(np.mean((y - f) ** 2))


def auc(labels, scores) -> float:
    """P(score of a positive > score of a negative) + 0.5 * P(tie).

    Computed from average ranks, which matches exhaustive pair counting
    exactly. Requires both classes present.
    """
    y = np.asarray(labels, dtype=np.float64)
    s = np.asarray(scores, dtype=np.float64)
    if y.shape != s.shape:
        raise MetricError("labels and scores differ in length")
    n_pos = int(np.sum(y == 1.0))
    n_neg = int(np.sum(y == 0.0))
    if n_pos + n_neg != y.size:
        raise MetricError("labels must be exactly 0 or 1")
    if n_pos == 0 or n_neg == 0:
        raise MetricError("AUC needs both classes present")
    # average 1-based ranks, ties sharing their group mean
    uniq, inverse, counts = np.unique(s, return_inverse=True, return_counts=True)
    starts = np.cumsum(counts) - counts
    mean_rank = starts + (counts + 1) / 2.0
    ranks = mean_rank[inverse]
    rank_sum_pos = float(np.sum(ranks[y == 1.0]))
    wins = rank_sum_pos - n_pos * (n_pos + 1) / 2.0
    return wins / (n_pos * n_neg)


def c_index(times, events, scores) -> float:
    """Harrell's concordance over comparable pairs.

    A pair is concordant when the earlier-event member has the higher
    score; tied scores count one half.
    """
    s = np.asarray(scores, dtype=np.float64)
    try:
        pairs = build_comparable_pairs(times, events)
    except Exception as exc:
        raise MetricError(str(exc)) from exc
    if s.shape[0] != pairs.n_samples:
        raise MetricError("scores length does not match times")
    earlier_scores = s[pairs.earlier]
    later_scores = s[pairs.later]
    concordant = float(np.count_nonzero(earlier_scores > later_scores))
    tied = float(np.count_nonzero(earlier_scores == later_scores))
    return (concordant + 0.5 * tied) / float(len(pairs))


def split(dataset: Dataset, fractions=(0.7, 0.3), seed: int = 0):
    """Seeded, reproducible two-way row partition (train, test).

    Row order within each part follows the original dataset. Fractions
    must be positive and sum to 1; both parts must be non-empty.
    """
    train_frac, test_frac = fractions
    if train_frac <= 0.0 or test_frac <= 0.0:
        raise MetricError("split fractions must be positive")
    if abs(train_frac + test_frac - 1.0) > 1e-9:
        raise MetricError("split fractions must sum to 1")
    n = dataset.n_samples
    if n < 2:
        raise MetricError("need at least 2 rows to split")
    n_train = int(round(train_frac * n))
    n_train = min(max(n_train, 1), n - 1)
    perm = np.random.default_rng(seed).permutation(n)
    train_rows = np.sort(perm[:n_train])
    test_rows = np.sort(perm[n_train:])
    return subset_rows(dataset, train_rows), subset_rows(dataset, test_rows)
