"""riskboost: gradient-boosted decision stumps rendered as point tables.

Transparent risk scores for continuous, binary, and time-to-event
outcomes: boosting over single-threshold stumps, aggregated into compact
per-variable tables a human can evaluate by hand.
"""

from .boosting import (
    FitConfig,
    FitHistory,
    Stump,
    StumpEnsemble,
    fit,
    fit_stump,
    initial_score,
    load_ensemble,
    predict_ensemble,
    save_ensemble,
)
from .data import (
    Binary,
    Continuous,
    Dataset,
    OutcomeSchema,
    Survival,
    ThresholdPlan,
    load_csv,
    plan_for,
    quantile_thresholds,
    subset_rows,
    user_thresholds,
)
from .errors import (
    DataError,
    MetricError,
    NoPairsError,
    RiskBoostError,
    ScoreCardError,
    UnfittableError,
)
from .losses import (
    ComparablePairs,
    GradientBundle,
    Objective,
    build_comparable_pairs,
    gradients,
    objective_for,
    ranking_loss,
    residuals_logistic,
    residuals_ranking,
    residuals_squared_error,
    training_loss,
)
from .metrics import EvalReport, auc, c_index, mse, split
from .scorecard import (
    ScoreCard,
    VariableTable,
    aggregate,
    count_rules,
    dump_scorecard,
    indicator_form,
    load_scorecard,
    predict_scorecard,
    render,
    save_scorecard,
    table_from_indicator,
    to_hazard_ratio,
    to_probability,
)

__version__ = "0.1.0"

__all__ = [
    "Binary",
    "ComparablePairs",
    "Continuous",
    "DataError",
    "Dataset",
    "EvalReport",
    "FitConfig",
    "FitHistory",
    "GradientBundle",
    "MetricError",
    "NoPairsError",
    "Objective",
    "OutcomeSchema",
    "RiskBoostError",
    "ScoreCard",
    "ScoreCardError",
    "Stump",
    "StumpEnsemble",
    "Survival",
    "ThresholdPlan",
    "UnfittableError",
    "VariableTable",
    "aggregate",
    "auc",
    "build_comparable_pairs",
    "c_index",
    "count_rules",
    "dump_scorecard",
    "fit",
    "fit_stump",
    "gradients",
    "indicator_form",
    "initial_score",
    "load_csv",
    "load_ensemble",
    "load_scorecard",
    "mse",
    "objective_for",
    "plan_for",
    "predict_ensemble",
    "predict_scorecard",
    "quantile_thresholds",
    "ranking_loss",
    "render",
    "residuals_logistic",
    "residuals_ranking",
    "residuals_squared_error",
    "save_ensemble",
    "save_scorecard",
    "split",
    "subset_rows",
    "table_from_indicator",
    "to_hazard_ratio",
    "to_probability",
    "training_loss",
    "user_thresholds",
]
