"""Input/output formats: circuit JSON, tabular logs, metric reports."""

from .circuit_io import parse_angle, parse_circuit, serialize_angle, serialize_circuit
from .report import (
    MetricReport,
    circuit_block,
    features_block,
    make_meta,
    merge_reports,
    metric_value,
    model_block,
    parse_report,
    relative_block,
    render_json,
    render_markdown,
    render_report,
    round6,
    training_block,
)
from .tabular import (
    TRAINING_HEADER,
    parse_feature_csv,
    parse_gradient_log,
    parse_training_log,
    serialize_feature_csv,
    serialize_gradient_log,
    serialize_training_log,
)

__all__ = [
    "MetricReport",
    "TRAINING_HEADER",
    "circuit_block",
    "features_block",
    "make_meta",
    "merge_reports",
    "metric_value",
    "model_block",
    "parse_angle",
    "parse_circuit",
    "parse_feature_csv",
    "parse_gradient_log",
    "parse_report",
    "parse_training_log",
    "relative_block",
    "render_json",
    "render_markdown",
    "render_report",
    "round6",
    "serialize_angle",
    "serialize_circuit",
    "serialize_feature_csv",
    "serialize_gradient_log",
    "serialize_training_log",
    "training_block",
]
