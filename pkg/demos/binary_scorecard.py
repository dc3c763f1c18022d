#!/usr/bin/env python3
"""Walkthrough: a log-odds score card for a binary event.

Shows the two ways to control cutoffs: training-quantile bins and
user-chosen clinical bands (here BMI 25/30), and maps summed points to an
event probability. Points are additive on the log-odds scale.
"""

import os

import riskboost as rb

DATA = os.path.join(os.path.dirname(__file__), "..", "datasets", "event_binary.csv")


def main():
    dataset = rb.load_csv(DATA, rb.OutcomeSchema("binary", target="outcome"))
    train_set, test_set = rb.split(dataset, (0.7, 0.3), seed=1)

    # quantile bins for most variables, familiar bands for bmi
    plan = rb.plan_for(
        train_set,
        n_quantiles=4,
        user_cutoffs={"bmi": [25.0, 30.0], "smoking": [0.5]},
        merge_quantiles=True,
    )
    ensemble = rb.fit(train_set, plan, rb.FitConfig(n_iter=500, learning_rate=0.05, seed=1))
    card = rb.aggregate(ensemble)

    print(rb.render(card, bool_labels={"smoking": ("FALSE", "TRUE")}))

    scores = rb.predict_scorecard(card, test_set.features)
    print(f"held-out AUC: {rb.auc(test_set.outcome.labels, scores):.3f}")

    lowest = scores.min()
    highest = scores.max()
    print(f"probability range across the test set: "
          f"{rb.to_probability(card, lowest):.3f} .. {rb.to_probability(card, highest):.3f}")


if __name__ == "__main__":
    main()
