import os
import sys

import numpy as np
import pytest

import riskboost as rb

sys.path.insert(0, os.path.dirname(__file__))  # make oracles importable

DATASET_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "datasets")


def dataset_path(name: str) -> str:
    return os.path.join(DATASET_DIR, name)


@pytest.fixture(scope="session")
def regression_dataset():
    return rb.load_csv(
        dataset_path("severity_regression.csv"),
        rb.OutcomeSchema("continuous", target="severity"),
    )


@pytest.fixture(scope="session")
def binary_dataset():
    return rb.load_csv(
        dataset_path("event_binary.csv"), rb.OutcomeSchema("binary", target="outcome")
    )


@pytest.fixture(scope="session")
def survival_dataset():
    return rb.load_csv(
        dataset_path("followup_survival.csv"),
        rb.OutcomeSchema("survival", time="time", event="event"),
    )


@pytest.fixture
def toy_regression():
    """Four points with one perfect split at 2.5."""
    return rb.Dataset(
        np.array([[1.0], [2.0], [3.0], [4.0]]),
        ("x",),
        rb.Continuous([1.0, 2.0, 4.0, 7.0]),
    )


def random_survival(rng, n):
    """Times/events that always admit at least one comparable pair."""
    times = rng.uniform(0.5, 10.0, n)
    events = (rng.uniform(size=n) < 0.7).astype(float)
    events[int(np.argmin(times))] = 1.0  # earliest subject has an event
    return times, events
