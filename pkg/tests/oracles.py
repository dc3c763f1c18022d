"""Independent brute-force oracles used to pin expected values.

Everything here is deliberately naive: explicit enumeration and direct
evaluation, no shared code with the library's fitting or metric paths.
"""

from __future__ import annotations

import numpy as np

MIN_HESSIAN = 1e-12


def finite_difference_residuals(loss_fn, scores, step=1e-6):
    """Central-difference negative gradient of a scalar loss."""
    scores = np.asarray(scores, dtype=np.float64)
    out = np.zeros_like(scores)
    for i in range(scores.size):
        up = scores.copy()
        up[i] += step
        down = scores.copy()
        down[i] -= step
        out[i] = -(loss_fn(up) - loss_fn(down)) / (2.0 * step)
    return out


def enumerate_comparable_pairs(times, events):
    """All ordered (i, j) with an event at i strictly before j's time."""
    pairs = []
    n = len(times)
    for i in range(n):
        for j in range(n):
            if events[i] == 1 and times[i] < times[j]:
                pairs.append((i, j))
    return pairs


def brute_force_stump(features, cutoffs_per_feature, residuals, weights, rows=None):
    """Exhaustive split search by direct post-update loss evaluation.

    Every (feature, cutoff) candidate is scored by computing its two leaf
    values and then the loss of the fitted values directly: the squared
    error to the residuals when all weights are 1, otherwise the quadratic
    form -g*v + w*v^2/2. Ties keep the first candidate in (feature
    ascending, cutoff ascending) order. Returns (feature, cutoff, left,
    right).
    """
    features = np.asarray(features, dtype=np.float64)
    if rows is None:
        rows = np.arange(features.shape[0])
    rows = np.asarray(rows, dtype=np.intp)
    x = features[rows]
    g = np.asarray(residuals, dtype=np.float64)[rows]
    w = np.asarray(weights, dtype=np.float64)[rows]
    unit = bool(np.all(w == 1.0))

    best = None
    best_loss = np.inf
    for j in range(x.shape[1]):
        for tau in cutoffs_per_feature[j]:
            left_idx = np.nonzero(x[:, j] < tau)[0]
            right_idx = np.nonzero(x[:, j] >= tau)[0]
            left = 0.0
            right = 0.0
            if left_idx.size:
                total = float(np.sum(g[left_idx]))
                denom = float(left_idx.size) if unit else max(float(np.sum(w[left_idx])), MIN_HESSIAN)
                left = total / denom
            if right_idx.size:
                total = float(np.sum(g[right_idx]))
                denom = float(right_idx.size) if unit else max(float(np.sum(w[right_idx])), MIN_HESSIAN)
                right = total / denom
            fitted = np.where(x[:, j] >= tau, right, left)
            if unit:
                loss = float(np.sum((g - fitted) ** 2))
            else:
                loss = float(np.sum(-g * fitted + 0.5 * w * fitted**2))
            if loss < best_loss:
                best_loss = loss
                best = (j, float(tau), left, right)
    return best


def pairwise_auc(labels, scores):
    """AUC by looping over every positive/negative pair."""
    pos = [s for y, s in zip(labels, scores) if y == 1]
    neg = [s for y, s in zip(labels, scores) if y == 0]
    total = 0.0
    for sp in pos:
        for sn in neg:
            if sp > sn:
                total += 1.0
            elif sp == sn:
                total += 0.5
    return total / (len(pos) * len(neg))


def pairwise_c_index(times, events, scores):
    """Harrell's C by looping over every comparable pair."""
    total = 0.0
    count = 0
    n = len(times)
    for i in range(n):
        for j in range(n):
            if events[i] == 1 and times[i] < times[j]:
                count += 1
                if scores[i] > scores[j]:
                    total += 1.0
                elif scores[i] == scores[j]:
                    total += 0.5
    return total / count


def naive_mse(targets, predictions):
    total = 0.0
    for y, f in zip(targets, predictions):
        total += (y - f) ** 2
    return total / len(targets)
