#!/usr/bin/env python3
"""Regenerate the bundled example datasets under datasets/.

Each file is a small synthetic cohort with genuinely piecewise effects, one
per outcome kind. The files are committed; rerunning this script reproduces
them byte for byte.
"""

from __future__ import annotations

import os

import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))
OUT_DIR = os.path.join(HERE, "..", "datasets")


def _fmt(value) -> str:
    if float(value) == int(value):
        return str(int(value))
    return repr(float(value))


def write_csv(path, header, columns):
    rows = np.stack(columns, axis=1)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def base_features(rng, n):
    age = np.round(rng.uniform(40, 82, n), 1)
    bmi = np.round(rng.uniform(19, 41, n), 1)
    sbp = np.round(rng.uniform(100, 185, n), 1)
    activity = np.round(rng.uniform(0, 10, n), 1)
    smoking = (rng.uniform(size=n) < 0.3).astype(float)
    return age, bmi, sbp, activity, smoking


def make_regression(path, n=320, seed=11):
    rng = np.random.default_rng(seed)
    age, bmi, sbp, activity, smoking = base_features(rng, n)
    chol = np.round(rng.uniform(130, 300, n), 1)
    y = (
        12.0
        + 2.5 * (age >= 60)
        + 0.8 * (bmi >= 25)
        + 1.5 * (bmi >= 30)
        + 1.2 * (sbp >= 140)
        - 1.0 * (activity >= 5)
        + 0.4 * (chol >= 240)
        + rng.normal(0.0, 0.8, n)
    )
    write_csv(
        path,
        ["age", "bmi", "sbp", "chol", "activity", "severity"],
        [age, bmi, sbp, chol, activity, np.round(y, 4)],
    )


def make_binary(path, n=400, seed=23):
    rng = np.random.default_rng(seed)
    age, bmi, sbp, activity, smoking = base_features(rng, n)
    logit = (
        -1.2
        + 1.1 * smoking
        + 0.9 * (age >= 60)
        + 0.7 * (bmi >= 30)
        + 0.5 * (sbp >= 140)
        - 0.6 * (activity >= 5)
    )
    y = (rng.uniform(size=n) < 1.0 / (1.0 + np.exp(-logit))).astype(float)
    write_csv(
        path,
        ["age", "bmi", "sbp", "activity", "smoking", "outcome"],
        [age, bmi, sbp, activity, smoking, y],
    )


def make_survival(path, n=300, seed=47):
    rng = np.random.default_rng(seed)
    age, bmi, sbp, activity, smoking = base_features(rng, n)
    lvef = np.round(rng.uniform(25, 70, n), 1)
    log_hazard = (
        1.2 * (lvef < 50)
        + 0.8 * smoking
        + 0.5 * (age >= 65)
        + 0.3 * (bmi >= 30)
    )
    latent = rng.exponential(scale=1.0, size=n) / (0.08 * np.exp(log_hazard))
    censor = rng.uniform(2.0, 15.0, n)
    time = np.round(np.minimum(latent, censor), 4)
    time = np.maximum(time, 0.0001)  # keep times strictly positive after rounding
    event = (latent <= censor).astype(float)
    write_csv(
        path,
        ["age", "bmi", "lvef", "sbp", "smoking", "time", "event"],
        [age, bmi, lvef, sbp, smoking, time, event],
    )


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    make_regression(os.path.join(OUT_DIR, "severity_regression.csv"))
    make_binary(os.path.join(OUT_DIR, "event_binary.csv"))
    make_survival(os.path.join(OUT_DIR, "followup_survival.csv"))
    print(f"wrote datasets to {os.path.normpath(OUT_DIR)}")


if __name__ == "__main__":
    main()
