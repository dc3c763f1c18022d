"""Exception hierarchy for the riskboost library.

Every exception carries a ``stage`` label naming the pipeline step that
raised it; the command-line front end uses it for one-line diagnostics.
"""


class RiskBoostError(Exception):
    """Base class for all errors raised by this library."""

    stage = "core"


class DataError(RiskBoostError):
    """Malformed input data: bad CSV cells, schema violations, shape or
    column-name mismatches, invalid threshold specifications."""

    stage = "data"


class NoPairsError(RiskBoostError):
    """The survival outcome admits no comparable (event, later-time) pair,
    so ranking-based fitting and concordance are undefined."""

    stage = "losses"


class UnfittableError(RiskBoostError):
    """No (feature, cutoff) candidate exists, so no stump can be fit."""

    stage = "boosting"


class ScoreCardError(RiskBoostError):
    """Invalid score-table operation or malformed model document."""

    stage = "scorecard"


class MetricError(RiskBoostError):
    """Metric preconditions violated (empty input, single class, bad split)."""

    stage = "metrics"
