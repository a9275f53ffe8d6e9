from .features import (
    CATEGORIES,
    FEATURE_NAMES,
    FeatureVector,
    ModelDescriptor,
    RunRecord,
    encode_features,
    load_registry,
    size_bucket,
)
from .forest import Forest, ForestParams, fit_forest
from .shapley import (
    Attribution,
    PermutationReport,
    ShapleySummary,
    permutation_check,
    shapley,
    shapley_summary,
)
from .aggregate import (
    AggregateRow,
    MetricAggregate,
    ModuleEffectReport,
    aggregate_runs,
    iso_f1_curve,
    module_effect,
)

__all__ = [
    "CATEGORIES",
    "FEATURE_NAMES",
    "FeatureVector",
    "ModelDescriptor",
    "RunRecord",
    "encode_features",
    "load_registry",
    "size_bucket",
    "Forest",
    "ForestParams",
    "fit_forest",
    "Attribution",
    "PermutationReport",
    "ShapleySummary",
    "permutation_check",
    "shapley",
    "shapley_summary",
    "AggregateRow",
    "MetricAggregate",
    "ModuleEffectReport",
    "aggregate_runs",
    "iso_f1_curve",
    "module_effect",
]
