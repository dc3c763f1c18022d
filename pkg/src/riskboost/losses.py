"""Loss values, pseudo-residuals, and curvature weights for the three
objectives.

Pseudo-residuals are the negative gradient of the objective's loss with
respect to the raw scores; they are the regression targets of each boosting
step. The losses are:

* squared error      L = 1/2 * sum_i (y_i - f_i)^2
* logistic           L = sum_i [softplus(f_i) - y_i * f_i]
* pairwise ranking   L = mean over comparable pairs of softplus(f_later - f_earlier)

A survival pair (i, j) is comparable when i has an observed event strictly
before j's recorded time; the ranking loss pushes earlier-event subjects
toward higher scores. It is translation invariant, so its gradients sum to
zero over the sample.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Binary, Continuous, Outcome, Survival
from .errors import NoPairsError, RiskBoostError

__all__ = [
    "Objective",
    "PROB_CLAMP",
    "GradientBundle",
    "ComparablePairs",
    "sigmoid",
    "clamped_probabilities",
    "residuals_squared_error",
    "residuals_logistic",
    "build_comparable_pairs",
    "ranking_loss",
    "residuals_ranking",
    "loss_squared_error",
    "loss_logistic",
    "objective_for",
    "gradients",
    "training_loss",
]

# Probabilities are kept inside [PROB_CLAMP, 1 - PROB_CLAMP] before they
# enter a Newton denominator, so saturated scores cannot blow up leaf values.
PROB_CLAMP = 1e-12


class Objective:
    """Loss tags; each matches one outcome kind at fit time."""

    SQUARED_ERROR = "squared_error"
    LOGISTIC = "logistic"
    SURVIVAL_RANK = "survival_rank"

    ALL = (SQUARED_ERROR, LOGISTIC, SURVIVAL_RANK)


@dataclass(frozen=True, eq=False)
class GradientBundle:
    """Per-sample pseudo-residuals and second-order weights.

    Weights are identically 1 except for the logistic objective, where they
    are p * (1 - p).
    """

    pseudo_residuals: np.ndarray
    hessian_weights: np.ndarray


@dataclass(frozen=True, eq=False)
class ComparablePairs:
    """Index pairs (earlier, later) with an observed event at the earlier
    time; ``earlier[k]`` had its event strictly before ``later[k]``'s time."""

    earlier: np.ndarray
    later: np.ndarray
    n_samples: int

    def __len__(self) -> int:
        return int(self.earlier.size)


def sigmoid(x):
    """Numerically stable logistic function, elementwise."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def clamped_probabilities(raw_scores) -> np.ndarray:
    return np.clip(sigmoid(raw_scores), PROB_CLAMP, 1.0 - PROB_CLAMP)


def _softplus(x: np.ndarray) -> np.ndarray:
    # log(1 + e^x) without overflow for large |x|
    return np.maximum(x, 0.0) + np.log1p(np.exp(-np.abs(x)))


def residuals_squared_error(targets, predictions) -> GradientBundle:
    """Residuals y - f with unit weights."""
    y = np.asarray(targets, dtype=np.float64)
    f = np.asarray(predictions, dtype=np.float64)
    if y.shape != f.shape:
        raise RiskBoostError("targets and predictions differ in length")
    return GradientBundle(y - f, np.ones_like(y))


def residuals_logistic(labels, raw_scores) -> GradientBundle:
    """Residuals y - p and weights p(1-p), with p = sigmoid(score) clamped."""
    y = np.asarray(labels, dtype=np.float64)
    f = np.asarray(raw_scores, dtype=np.float64)
    if y.shape != f.shape:
        raise RiskBoostError("labels and scores differ in length")
    p = clamped_probabilities(f)
    return GradientBundle(y - p, p * (1.0 - p))


def build_comparable_pairs(times, events) -> ComparablePairs:
    """All ordered pairs (i, j) with an event for i and times[i] < times[j].

    Tied times never form a pair. Raises :class:`NoPairsError` when no pair
    exists, which makes the ranking objective unfittable on this data.
    """
    t = np.asarray(times, dtype=np.float64)
    e = np.asarray(events, dtype=np.float64)
    if t.shape != e.shape:
        raise RiskBoostError("times and events differ in length")
    mask = (e[:, None] == 1.0) & (t[:, None] < t[None, :])
    earlier, later = np.nonzero(mask)
    if earlier.size == 0:
        raise NoPairsError(
            "no comparable pairs: need at least one observed event with a strictly later time"
        )
    return ComparablePairs(earlier, later, int(t.shape[0]))


def ranking_loss(raw_scores, pairs: ComparablePairs) -> float:
    """Mean softplus(f_later - f_earlier) over comparable pairs."""
    f = np.asarray(raw_scores, dtype=np.float64)
    return float(np.mean(_softplus(f[pairs.later] - f[pairs.earlier])))


def residuals_ranking(raw_scores, pairs: ComparablePairs) -> GradientBundle:
    """Negative gradient of :func:`ranking_loss` with unit weights.

    Each pair (i, j) contributes +sigmoid(f_j - f_i)/|pairs| to sample i and
    the same amount negatively to sample j.
    """
    f = np.asarray(raw_scores, dtype=np.float64)
    s = sigmoid(f[pairs.later] - f[pairs.earlier])
    pull = np.bincount(pairs.earlier, weights=s, minlength=pairs.n_samples)
    push = np.bincount(pairs.later, weights=s, minlength=pairs.n_samples)
    g = (pull - push) / float(len(pairs))
    return GradientBundle(g, np.ones_like(g))


def loss_squared_error(targets, predictions) -> float:
    y = np.asarray(targets, dtype=np.float64)
    f = np.asarray(predictions, dtype=np.float64)
    return float(0.5 * np.sum((y - f) ** 2))


def loss_logistic(labels, raw_scores) -> float:
    y = np.asarray(labels, dtype=np.float64)
    f = np.asarray(raw_scores, dtype=np.float64)
    return float(np.sum(_softplus(f) - y * f))


def objective_for(outcome: Outcome) -> str:
    """The objective tag matching an outcome kind."""
    if isinstance(outcome, Continuous):
        return Objective.SQUARED_ERROR
    if isinstance(outcome, Binary):
        return Objective.LOGISTIC
    if isinstance(outcome, Survival):
        return Objective.SURVIVAL_RANK
    raise RiskBoostError(f"unsupported outcome type {type(outcome).__name__}")


def gradients(outcome: Outcome, predictions, pairs: ComparablePairs | None = None) -> GradientBundle:
    """Pseudo-residuals of the outcome's objective at the given predictions.

    For survival outcomes a prebuilt pair set may be passed to avoid
    recomputing it every boosting iteration.
    """
    if isinstance(outcome, Continuous):
        return residuals_squared_error(outcome.values, predictions)
    if isinstance(outcome, Binary):
        return residuals_logistic(outcome.labels, predictions)
    if pairs is None:
        pairs = build_comparable_pairs(outcome.times, outcome.events)
    return residuals_ranking(predictions, pairs)


def training_loss(outcome: Outcome, predictions, pairs: ComparablePairs | None = None) -> float:
    """Loss whose negative gradient is :func:`gradients`."""
    if isinstance(outcome, Continuous):
        return loss_squared_error(outcome.values, predictions)
    if isinstance(outcome, Binary):
        return loss_logistic(outcome.labels, predictions)
    if pairs is None:
        pairs = build_comparable_pairs(outcome.times, outcome.events)
    return ranking_loss(predictions, pairs)
