"""Gradient boosting over single-threshold decision stumps.

Each boosting iteration computes pseudo-residuals at the current
predictions, exhaustively scores every (feature, cutoff) candidate from a
:class:`~riskboost.data.ThresholdPlan`, and appends the best stump with its
leaf values scaled by the learning rate.

Split search maximizes the second-order gain (sum g)^2 / (sum w) summed
over both sides of the split, with leaf values (sum g) / (sum w) per side.
With unit weights this is the classic variance-reduction rule with
within-group-mean leaves; with logistic weights it is a two-leaf Newton
update. Ties are broken toward the lowest feature index, then the smallest
threshold, so results do not depend on enumeration internals.

Determinism: for a fixed dataset, plan, and config, ``fit`` is bit
reproducible. Row subsampling draws from numpy's PCG64 generator seeded
with ``FitConfig.seed``; streams are identical across platforms for a given
numpy version.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .data import Binary, Dataset, Outcome, Survival, ThresholdPlan
from .errors import DataError, ScoreCardError, UnfittableError
from .losses import (
    PROB_CLAMP,
    ComparablePairs,
    GradientBundle,
    Objective,
    build_comparable_pairs,
    gradients,
    objective_for,
    training_loss,
)

__all__ = [
    "Stump",
    "StumpEnsemble",
    "FitConfig",
    "FitHistory",
    "initial_score",
    "fit_stump",
    "fit",
    "predict_ensemble",
    "save_ensemble",
    "load_ensemble",
]

# Floor for Newton denominators after probability clamping.
MIN_HESSIAN = 1e-12


@dataclass(frozen=True)
class Stump:
    """One split: ``left_value`` applies when x < threshold, ``right_value``
    when x >= threshold. Values are already scaled by the learning rate once
    the stump is part of an ensemble."""

    feature_index: int
    threshold: float
    left_value: float
    right_value: float


@dataclass(frozen=True, eq=False)
class StumpEnsemble:
    """Raw boosting output: intercept plus an ordered list of stumps.

    The prediction for a row x is
    ``intercept + sum over stumps of (left or right value)``, on the
    objective's own scale (identity, log-odds, or log-risk).
    """

    intercept: float
    stumps: tuple
    objective: str
    learning_rate: float
    feature_names: tuple


@dataclass(frozen=True)
class FitConfig:
    """Boosting hyperparameters.

    ``n_quantiles`` is carried here so front ends can build the threshold
    plan from the same config object; it is ignored when a user-supplied
    plan already covers every feature.
    """

    n_iter: int = 500
    learning_rate: float = 0.05
    n_quantiles: int = 4
    subsample: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.n_iter < 0:
            raise DataError("n_iter must be >= 0")
        if not (0.0 < self.learning_rate <= 1.0):
            raise DataError("learning_rate must lie in (0, 1]")
        if self.n_quantiles < 1:
            raise DataError("n_quantiles must be >= 1")
        if not (0.0 < self.subsample <= 1.0):
            raise DataError("subsample must lie in (0, 1]")


@dataclass(frozen=True, eq=False)
class FitHistory:
    """Optional per-iteration trace: training loss before any stump and
    after each update, plus the final training predictions."""

    losses: np.ndarray
    train_predictions: np.ndarray


def initial_score(outcome: Outcome) -> float:
    """Base score before any stump.

    Mean target for regression; log-odds of the clamped event rate for
    binary labels; 0 for survival, whose ranking loss is translation
    invariant.
    """
    if isinstance(outcome, Binary):
        rate = float(np.mean(outcome.labels))
        rate = min(max(rate, PROB_CLAMP), 1.0 - PROB_CLAMP)
        return float(np.log(rate / (1.0 - rate)))
    if isinstance(outcome, Survival):
        return 0.0
    return float(np.mean(outcome.values))


def fit_stump(
    dataset: Dataset,
    plan: ThresholdPlan,
    grads: GradientBundle,
    active_rows: np.ndarray | None = None,
) -> Stump:
    """Best stump over every (feature, cutoff) candidate, unscaled.

    Candidates are scored on ``active_rows`` (all rows when omitted). A
    cutoff that puts every active row on one side is still allowed: the
    empty side gets leaf value 0 and contributes no gain. The returned leaf
    values are not yet multiplied by the learning rate.
    """
    if active_rows is None:
        rows = slice(None)
        n_active = dataset.n_samples
    else:
        rows = np.asarray(active_rows, dtype=np.intp)
        n_active = int(rows.size)
        if n_active == 0:
            raise UnfittableError("active row set is empty")
    g = grads.pseudo_residuals[rows]
    w = grads.hessian_weights[rows]
    unit_weights = bool(np.all(w == 1.0))

    best_gain = -np.inf
    best = None
    for j in range(dataset.n_features):
        cuts = plan.cutoffs[j]
        if cuts.size == 0:
            continue
        xj = dataset.features[rows, j]
        for tau in cuts:
            on_right = xj >= tau
            n_right = int(np.count_nonzero(on_right))
            n_left = n_active - n_right
            gain = 0.0
            left_value = 0.0
            right_value = 0.0
            if n_left > 0:
                sum_g = float(np.sum(g[~on_right]))
                sum_w = float(n_left) if unit_weights else float(np.sum(w[~on_right]))
                denom = max(sum_w, MIN_HESSIAN)
                left_value = sum_g / denom
                gain += sum_g * sum_g / denom
            if n_right > 0:
                sum_g = float(np.sum(g[on_right]))
                sum_w = float(n_right) if unit_weights else float(np.sum(w[on_right]))
                denom = max(sum_w, MIN_HESSIAN)
                right_value = sum_g / denom
                gain += sum_g * sum_g / denom
            if gain > best_gain:
                best_gain = gain
                best = Stump(j, float(tau), left_value, right_value)
    if best is None:
        raise UnfittableError("no feature has any candidate cutoff")
    return best


def _check_plan(dataset: Dataset, plan: ThresholdPlan) -> None:
    if plan.feature_names != dataset.feature_names:
        raise DataError("threshold plan does not match the dataset's features")


def fit(
    dataset: Dataset,
    plan: ThresholdPlan,
    config: FitConfig,
    with_history: bool = False,
):
    """Fit a stump ensemble by iterated pseudo-residual boosting.

    Runs exactly ``config.n_iter`` iterations. Gradients are always
    computed on the full training set; when ``config.subsample`` < 1 the
    stump itself is fit on a fresh row subsample (without replacement,
    ``floor(subsample * n)`` rows, at least one), and the update is then
    applied to all rows.

    With ``with_history`` the return value is ``(ensemble, history)`` where
    ``history.losses[0]`` is the loss of the intercept-only model.
    """
    _check_plan(dataset, plan)
    objective = objective_for(dataset.outcome)
    n = dataset.n_samples
    intercept = initial_score(dataset.outcome)
    predictions = np.full(n, intercept, dtype=np.float64)
    pairs: ComparablePairs | None = None
    if isinstance(dataset.outcome, Survival):
        pairs = build_comparable_pairs(dataset.outcome.times, dataset.outcome.events)
    rng = np.random.default_rng(config.seed)
    n_sub = max(1, int(config.subsample * n))

    losses = [training_loss(dataset.outcome, predictions, pairs)] if with_history else None
    stumps = []
    for _ in range(config.n_iter):
        bundle = gradients(dataset.outcome, predictions, pairs)
        if config.subsample < 1.0:
            active = np.sort(rng.permutation(n)[:n_sub])
        else:
            active = None
        raw = fit_stump(dataset, plan, bundle, active)
        stump = Stump(
            raw.feature_index,
            raw.threshold,
            config.learning_rate * raw.left_value,
            config.learning_rate * raw.right_value,
        )
        stumps.append(stump)
        column = dataset.features[:, stump.feature_index]
        predictions = predictions + np.where(
            column >= stump.threshold, stump.right_value, stump.left_value
        )
        if losses is not None:
            losses.append(training_loss(dataset.outcome, predictions, pairs))

    ensemble = StumpEnsemble(
        intercept=intercept,
        stumps=tuple(stumps),
        objective=objective,
        learning_rate=config.learning_rate,
        feature_names=dataset.feature_names,
    )
    if with_history:
        return ensemble, FitHistory(np.asarray(losses), predictions)
    return ensemble


def _check_matrix(features, feature_names, expected_names) -> np.ndarray:
    x = np.asarray(features, dtype=np.float64)
    if x.ndim == 1:
        x = x.reshape(1, -1)
    if x.ndim != 2:
        raise DataError("features must be a 2-D matrix")
    if x.shape[1] != len(expected_names):
        raise DataError(
            f"expected {len(expected_names)} feature columns, got {x.shape[1]}"
        )
    if feature_names is not None and tuple(feature_names) != tuple(expected_names):
        raise DataError("feature names do not match the training columns")
    return x


def predict_ensemble(ensemble: StumpEnsemble, features, feature_names=None) -> np.ndarray:
    """Raw scores for each row: intercept plus every stump's contribution.

    ``features`` must have the training column count (and the training
    names, when names are passed). A value exactly at a threshold takes the
    right branch.
    """
    x = _check_matrix(features, feature_names, ensemble.feature_names)
    scores = np.full(x.shape[0], ensemble.intercept, dtype=np.float64)
    for stump in ensemble.stumps:
        scores += np.where(
            x[:, stump.feature_index] >= stump.threshold,
            stump.right_value,
            stump.left_value,
        )
    return scores


ENSEMBLE_FORMAT_VERSION = 1


def save_ensemble(ensemble: StumpEnsemble, path) -> None:
    """Write the raw ensemble as JSON (full float precision, LF endings)."""
    doc = {
        "format_version": ENSEMBLE_FORMAT_VERSION,
        "model": "stump_ensemble",
        "objective": ensemble.objective,
        "learning_rate": ensemble.learning_rate,
        "intercept": ensemble.intercept,
        "feature_names": list(ensemble.feature_names),
        "stumps": [
            {
                "feature_index": s.feature_index,
                "threshold": s.threshold,
                "left_value": s.left_value,
                "right_value": s.right_value,
            }
            for s in ensemble.stumps
        ],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_ensemble(path) -> StumpEnsemble:
    """Read an ensemble written by :func:`save_ensemble`."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ScoreCardError(f"cannot read model file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScoreCardError(f"malformed model file {path}: {exc}") from exc
    try:
        if doc["format_version"] != ENSEMBLE_FORMAT_VERSION:
            raise ScoreCardError(f"unsupported format_version {doc['format_version']!r}")
        if doc.get("model") != "stump_ensemble":
            raise ScoreCardError("not a stump_ensemble document")
        objective = doc["objective"]
        if objective not in Objective.ALL:
            raise ScoreCardError(f"unknown objective {objective!r}")
        stumps = tuple(
            Stump(
                int(s["feature_index"]),
                float(s["threshold"]),
                float(s["left_value"]),
                float(s["right_value"]),
            )
            for s in doc["stumps"]
        )
        return StumpEnsemble(
            intercept=float(doc["intercept"]),
            stumps=stumps,
            objective=objective,
            learning_rate=float(doc["learning_rate"]),
            feature_names=tuple(str(n) for n in doc["feature_names"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ScoreCardError(f"malformed model file {path}: {exc}") from exc
