from .spanning import SpanningElement, adjoint, isometry, spanning_product, unit
from .trace import TraceSpec, trace_eval
from .zeta import ThresholdResult, ZetaResult, beta_threshold, class_counting_partition, zeta
from .engine import (
    KmsCheckReport,
    KmsEngine,
    KmsResult,
    ground_value,
    kms_condition_check,
    kms_value,
    positivity_check,
    random_spanning,
    zero_temperature_check,
)

__all__ = [
    "SpanningElement",
    "spanning_product",
    "adjoint",
    "isometry",
    "unit",
    "TraceSpec",
    "trace_eval",
    "ZetaResult",
    "ThresholdResult",
    "zeta",
    "beta_threshold",
    "class_counting_partition",
    "KmsEngine",
    "KmsResult",
    "KmsCheckReport",
    "kms_value",
    "ground_value",
    "kms_condition_check",
    "positivity_check",
    "zero_temperature_check",
    "random_spanning",
]
