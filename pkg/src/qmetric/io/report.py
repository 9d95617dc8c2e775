"""Metric report: structure, JSON/markdown rendering, parsing, merging.

A report has a ``meta`` header and up to three blocks (circuit,
features, training); empty blocks are omitted. Every metric value is an
explicit status object::

    {"status": "value", "value": 0.636364}
    {"status": "unreached"}
    {"status": "inf", "detail": "hybrid_unreached"}

so a report never smuggles NaN or IEEE infinities through JSON. Metric
values are rounded to 6 significant digits when the report is built,
which makes serialize/parse an identity on the structure. JSON
rendering is canonical (fixed key order, stable float formatting):
equal reports render to identical bytes.

Markdown rendering mirrors the JSON: one table per block with columns
Metric, Value, Interpretation; values at 4 decimal places; unreached
shown as a cross, diverging ratios as the infinity sign. The
interpretation column is a fixed rule set over the values (thresholds
documented in the README), not free text.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

from .. import __version__
from ..circuit_metrics import CircuitMetricsReport
from ..errors import ParseError
from ..training_metrics import (
    BOTH_UNREACHED,
    CLASSICAL_UNREACHED,
    HYBRID_UNREACHED,
    RATIO,
    RelativeEfficiency,
    TrainingMetricsReport,
)

STATUS_VALUE = "value"
STATUS_UNDEFINED = "undefined"
STATUS_UNREACHED = "unreached"
STATUS_INF = "inf"
_STATUSES = (STATUS_VALUE, STATUS_UNDEFINED, STATUS_UNREACHED, STATUS_INF)

_CIRCUIT_KEYS = ("qce", "qcf", "qlr", "eee", "qmi", "qvc", "config")
_FEATURE_KEYS = ("fmcr", "edqfs", "qlad", "qos", "config")
_MODEL_KEYS = ("tsi", "tei", "qgn", "bpi", "num_params")
_TRAINING_KEYS = ("model", "hybrid", "classical", "relative", "config")
_RELATIVE_KEYS = ("rqlsi", "rqtei")
_META_KEYS = ("tool", "version", "seed", "timestamp")


def round6(x: float) -> float:
    """Round to 6 significant digits (report value precision)."""
    return float(f"{float(x):.6g}")


def metric_value(
    value: float | None,
    none_status: str = STATUS_UNDEFINED,
    detail: str | None = None,
    series: list[tuple[int, float]] | None = None,
) -> dict:
    """Build one status object; ``none_status`` labels a missing value."""
    if value is None:
        out: dict[str, Any] = {"status": none_status}
    else:
        if not math.isfinite(value):
            raise ParseError(f"metric value {value} is not finite")
        out = {"status": STATUS_VALUE, "value": round6(value)}
    if detail is not None:
        out["detail"] = detail
    if series is not None:
        out["series"] = [[int(e), round6(v)] for e, v in series]
    return out


@dataclass(frozen=True)
class MetricReport:
    """One report document; at least one metric block must be present."""

    meta: dict
    circuit: dict | None = None
    features: dict | None = None
    training: dict | None = None

    def __post_init__(self) -> None:
        if self.circuit is None and self.features is None and self.training is None:
            raise ParseError("report needs at least one metric block")

    def to_dict(self) -> dict:
        doc: dict[str, Any] = {"meta": _order(self.meta, _META_KEYS)}
        if self.circuit is not None:
            doc["circuit"] = _order(self.circuit, _CIRCUIT_KEYS)
        if self.features is not None:
            doc["features"] = _order(self.features, _FEATURE_KEYS)
        if self.training is not None:
            training = _order(self.training, _TRAINING_KEYS)
            for name in ("model", "hybrid", "classical"):
                if name in training:
                    training[name] = _order(training[name], _MODEL_KEYS)
            if "relative" in training:
                training["relative"] = _order(training["relative"], _RELATIVE_KEYS)
            doc["training"] = training
        return doc


def _order(block: dict, known: tuple[str, ...]) -> dict:
    ordered = {k: block[k] for k in known if k in block}
    for k in sorted(block):
        if k not in ordered:
            ordered[k] = block[k]
    return ordered


def make_meta(seed: int, timestamp: str | None = None) -> dict:
    return {
        "tool": "qmetric",
        "version": __version__,
        "seed": int(seed),
        "timestamp": timestamp,
    }


def circuit_block(metrics: CircuitMetricsReport) -> dict:
    noise = metrics.noise
    return {
        "qce": metric_value(metrics.qce),
        "qcf": metric_value(metrics.qcf),
        "qlr": metric_value(metrics.qlr),
        "eee": metric_value(metrics.eee),
        "qmi": metric_value(metrics.qmi),
        "config": {
            "seed": metrics.seed,
            "num_samples": metrics.num_samples,
            "subsystem_a": list(metrics.subsystem_a),
            "subsystem_b": list(metrics.subsystem_b),
            "noise": {
                "depolarizing_1q": noise.depolarizing_1q,
                "depolarizing_2q": noise.depolarizing_2q,
                "amplitude_damping": noise.amplitude_damping,
            },
            "bound_params": [round6(v) for v in metrics.bound_params],
        },
    }


def features_block(
    fmcr: float | None = None,
    edqfs: float | None = None,
    qlad: float | None = None,
    qos: float | None = None,
    config: dict | None = None,
) -> dict:
    """Feature block; metrics that were not computed are omitted."""
    block: dict[str, Any] = {}
    if fmcr is not None:
        block["fmcr"] = metric_value(fmcr)
    if edqfs is not None:
        block["edqfs"] = metric_value(edqfs)
    if qlad is not None:
        block["qlad"] = metric_value(qlad)
    if qos is not None:
        block["qos"] = metric_value(qos)
    if not block:
        raise ParseError("features block needs at least one metric")
    block["config"] = config or {}
    return block


def model_block(metrics: TrainingMetricsReport) -> dict:
    block: dict[str, Any] = {
        "tsi": metric_value(metrics.tsi, none_status=STATUS_UNDEFINED),
        "tei": metric_value(metrics.tei, none_status=STATUS_UNREACHED),
    }
    if metrics.qgn is not None:
        block["qgn"] = metric_value(
            metrics.qgn,
            series=None if metrics.qgn_series is None else list(metrics.qgn_series),
        )
    if metrics.bpi is not None:
        block["bpi"] = metric_value(metrics.bpi)
    block["num_params"] = metrics.num_params
    return block


def relative_block(rqlsi: float | None, rqtei: RelativeEfficiency) -> dict:
    if rqtei.status == RATIO:
        rel = metric_value(rqtei.value)
    elif rqtei.status == HYBRID_UNREACHED:
        rel = metric_value(None, none_status=STATUS_INF, detail=HYBRID_UNREACHED)
    else:
        # classical or both unreached: the ratio has no defined value
        rel = metric_value(None, none_status=STATUS_UNDEFINED, detail=rqtei.status)
    return {
        "rqlsi": metric_value(rqlsi, none_status=STATUS_UNDEFINED),
        "rqtei": rel,
    }


def training_block(
    primary: TrainingMetricsReport,
    compare: TrainingMetricsReport | None = None,
    rqlsi: float | None = None,
    rqtei: RelativeEfficiency | None = None,
    tail_fraction: float = 0.10,
    accuracy_threshold: float = 0.90,
) -> dict:
    """Training block: one model, or hybrid/classical plus relative."""
    block: dict[str, Any] = {}
    if compare is None:
        block["model"] = model_block(primary)
    else:
        block["hybrid"] = model_block(primary)
        block["classical"] = model_block(compare)
        if rqtei is not None:
            block["relative"] = relative_block(rqlsi, rqtei)
    block["config"] = {
        "tail_fraction": tail_fraction,
        "accuracy_threshold": accuracy_threshold,
    }
    return block


# --- rendering ---


def render_report(report: MetricReport, fmt: str = "json") -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "markdown":
        return render_markdown(report)
    raise ParseError(f"unknown format {fmt!r}; expected 'json' or 'markdown'")


def render_json(report: MetricReport) -> str:
    return json.dumps(report.to_dict(), indent=2, allow_nan=False) + "\n"


_DISPLAY = {
    "qce": "Quantum Circuit Expressibility (QCE)",
    "qcf": "Quantum Circuit Fidelity (QCF)",
    "qlr": "Quantum Locality Ratio (QLR)",
    "eee": "Effective Entanglement Entropy (EEE)",
    "qmi": "Quantum Mutual Information (QMI)",
    "qvc": "Quantum Variational Capacity (QVC)",
    "fmcr": "Feature Map Compression Ratio (FMCR)",
    "edqfs": "Effective Dimension of the Quantum Feature Space (EDQFS)",
    "qlad": "Quantum Layer Activation Diversity (QLAD)",
    "qos": "Quantum Output Sensitivity (QOS)",
    "tsi": "Training Stability Index (TSI)",
    "tei": "Training Efficiency Index (TEI)",
    "qgn": "Quantum Gradient Norm (QGN)",
    "bpi": "Barren Plateau Indicator (BPI)",
    "rqlsi": "Relative Quantum Learning Stability Index (RQLSI)",
    "rqtei": "Relative Quantum Training Efficiency Index (r-QTEI)",
}

_BLOCK_TITLES = {
    "circuit": "Quantum Circuit Metrics",
    "features": "Quantum Feature Space Metrics",
    "training": "Training Dynamics Metrics",
}


def _cell(entry: dict) -> str:
    status = entry.get("status")
    if status == STATUS_VALUE:
        return f"{entry['value']:.4f}"
    if status == STATUS_UNREACHED:
        return "×"
    if status == STATUS_INF:
        return "∞"
    return "undefined"


def render_markdown(report: MetricReport) -> str:
    doc = report.to_dict()
    meta = doc["meta"]
    lines = [
        "# Model Diagnostics Report",
        "",
        f"Generated by {meta.get('tool', 'qmetric')} {meta.get('version', '')}"
        f" (seed {meta.get('seed')}).",
    ]
    for name in ("circuit", "features", "training"):
        block = doc.get(name)
        if not block:
            continue
        lines += ["", f"## {_BLOCK_TITLES[name]}", ""]
        lines += ["| Metric | Value | Interpretation |", "| --- | --- | --- |"]
        if name == "training":
            lines += _training_rows(block)
        else:
            for key, entry in block.items():
                if key == "config" or not isinstance(entry, dict) or "status" not in entry:
                    continue
                lines.append(
                    f"| {_DISPLAY.get(key, key)} | {_cell(entry)} "
                    f"| {interpret(key, entry)} |"
                )
    return "\n".join(lines) + "\n"


def _training_rows(block: dict) -> list[str]:
    rows = []
    labeled = [(n, block[n]) for n in ("model", "hybrid", "classical") if n in block]
    suffix = {"model": "", "hybrid": " — hybrid", "classical": " — classical"}
    for key in ("tsi", "tei", "qgn", "bpi"):
        for label, model in labeled:
            if key in model:
                rows.append(
                    f"| {_DISPLAY[key]}{suffix[label]} | {_cell(model[key])} "
                    f"| {interpret(key, model[key], side=label)} |"
                )
    relative = block.get("relative", {})
    for key in _RELATIVE_KEYS:
        if key in relative:
            rows.append(
                f"| {_DISPLAY[key]} | {_cell(relative[key])} "
                f"| {interpret(key, relative[key])} |"
            )
    return rows


def interpret(key: str, entry: dict, side: str = "") -> str:
    """Fixed rule set mapping a metric value onto a one-line reading."""
    status = entry.get("status")
    value = entry.get("value")
    if key == "qce":
        if value is None:
            return "expressibility not computed"
        if value >= 0.8:
            return "high state diversity across parameter draws"
        if value >= 0.4:
            return "moderate state diversity across parameter draws"
        return "low state diversity; parameters barely move the state"
    if key == "qcf":
        if value is None:
            return "fidelity not computed"
        if value >= 0.999:
            return "no visible degradation under the configured noise"
        if value >= 0.9:
            return "mild degradation under the configured noise"
        return "strong degradation under the configured noise"
    if key == "qlr":
        if value is None:
            return "gate census not computed"
        if value >= 0.8:
            return "dominated by single-qubit gates"
        if value <= 0.3:
            return "dominated by entangling gates"
        return "balanced mix of local and entangling gates"
    if key == "eee":
        if value is None:
            return "entanglement not computed"
        if value < 0.05:
            return "subsystem nearly unentangled from the rest"
        if value >= 0.8:
            return "strong entanglement across the cut"
        return "partial entanglement across the cut"
    if key == "qmi":
        if value is None:
            return "mutual information not computed"
        if value < 0.05:
            return "subsystems nearly uncorrelated"
        if value >= 1.5:
            return "strong correlations between the subsystems"
        return "moderate correlations between the subsystems"
    if key == "qvc":
        return "reserved metric; no interpretation rule"
    if key == "fmcr":
        if value is None:
            return "compression not computed"
        if value > 1.5:
            return "inputs compress into fewer effective dimensions"
        if value >= 0.75:
            return "effective dimension tracks the input dimension"
        return "inputs spread over more dimensions than supplied"
    if key == "edqfs":
        if value is None:
            return "effective dimension not computed"
        if value <= 1.5:
            return "variance concentrated on a single direction"
        return f"variance spread over about {value:.0f} directions"
    if key == "qlad":
        if value is None:
            return "activation diversity not computed"
        if value <= 1e-9:
            return "outputs collapsed to uniform; no activation diversity"
        if value < 0.01:
            return "low activation diversity"
        return "diverse activation patterns"
    if key == "qos":
        if value is None:
            return "sensitivity not computed"
        if value < 0.5:
            return "outputs damp input perturbations"
        if value <= 2.0:
            return "outputs track input perturbations at about unit gain"
        return "outputs amplify input perturbations"
    if key == "tsi":
        if status == STATUS_UNDEFINED:
            return "training tail flat to machine precision; ratio undefined"
        if value is None:
            return "stability not computed"
        if value < 1.0:
            return "validation loss steadier than training loss in the tail"
        return "validation loss noisier than training loss in the tail"
    if key == "tei":
        if status == STATUS_UNREACHED:
            return "never crossed the accuracy threshold"
        if value is None:
            return "efficiency not computed"
        if value <= 0.5:
            return "reached the accuracy target cheaply relative to model size"
        return "slow to reach the accuracy target relative to model size"
    if key == "qgn":
        if value is None:
            return "gradient norm not computed"
        if value < 1e-3:
            return "vanishing gradient magnitude"
        if value > 10.0:
            return "unusually large gradient magnitude"
        return "healthy gradient magnitude"
    if key == "bpi":
        if value is None:
            return "plateau indicator not computed"
        if value < 1e-6:
            return "gradient power collapsing; plateau risk"
        return "no plateau signature in the gradient trace"
    if key == "rqlsi":
        if status == STATUS_UNDEFINED:
            return "stability ratio undefined for these logs"
        if value is None:
            return "relative stability not computed"
        if value < 1.0:
            return "hybrid validation loss is the steadier"
        return "classical validation loss is the steadier"
    if key == "rqtei":
        if status == STATUS_INF:
            return "hybrid never reached the accuracy target"
        if status == STATUS_UNDEFINED:
            detail = entry.get("detail")
            if detail == BOTH_UNREACHED:
                return "neither model reached the accuracy target"
            if detail == CLASSICAL_UNREACHED:
                return "classical never reached the accuracy target"
            return "efficiency ratio undefined for these logs"
        if value is None:
            return "relative efficiency not computed"
        if value < 1.0:
            return "hybrid reaches the target with fewer epochs per parameter"
        return "classical reaches the target with fewer epochs per parameter"
    return ""


# --- parsing ---


def _reject_constant(token: str) -> Any:
    raise ParseError(f"non-finite literal {token!r} is not allowed")


def parse_report(text: str) -> MetricReport:
    """Parse and validate a report JSON document."""
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as err:
        raise ParseError(f"invalid JSON: {err.msg}", path=f"line {err.lineno}") from err
    if not isinstance(doc, dict):
        raise ParseError("report must be a JSON object")
    extra = set(doc) - {"meta", "circuit", "features", "training"}
    if extra:
        raise ParseError(f"unknown top-level key(s) {sorted(extra)}")
    meta = doc.get("meta")
    if not isinstance(meta, dict):
        raise ParseError("meta must be an object", path="meta")
    blocks: dict[str, dict | None] = {}
    for name in ("circuit", "features", "training"):
        block = doc.get(name)
        if block is None:
            blocks[name] = None
            continue
        if not isinstance(block, dict):
            raise ParseError("block must be an object", path=name)
        _validate_block(block, name)
        blocks[name] = block
    if all(b is None for b in blocks.values()):
        raise ParseError("report needs at least one metric block")
    _walk_finite(doc, "$")
    return MetricReport(meta=meta, **blocks)


def _validate_block(block: dict, name: str) -> None:
    if name == "training":
        allowed = set(_TRAINING_KEYS)
        extra = set(block) - allowed
        if extra:
            raise ParseError(f"unknown key(s) {sorted(extra)}", path=name)
        for model_name in ("model", "hybrid", "classical"):
            model = block.get(model_name)
            if model is None:
                continue
            if not isinstance(model, dict):
                raise ParseError("model block must be an object", path=f"{name}.{model_name}")
            for key, entry in model.items():
                if key in ("num_params",):
                    continue
                _validate_status(entry, f"{name}.{model_name}.{key}")
        relative = block.get("relative")
        if relative is not None:
            for key, entry in relative.items():
                _validate_status(entry, f"{name}.relative.{key}")
        return
    allowed = set(_CIRCUIT_KEYS if name == "circuit" else _FEATURE_KEYS)
    extra = set(block) - allowed
    if extra:
        raise ParseError(f"unknown key(s) {sorted(extra)}", path=name)
    for key, entry in block.items():
        if key == "config":
            continue
        _validate_status(entry, f"{name}.{key}")


def _validate_status(entry: Any, path: str) -> None:
    if not isinstance(entry, dict):
        raise ParseError("metric value must be a status object", path=path)
    status = entry.get("status")
    if status not in _STATUSES:
        raise ParseError(
            f"status must be one of {_STATUSES}, got {status!r}", path=path
        )
    extra = set(entry) - {"status", "value", "detail", "series"}
    if extra:
        raise ParseError(f"unknown key(s) {sorted(extra)}", path=path)
    has_value = "value" in entry
    if (status == STATUS_VALUE) != has_value:
        raise ParseError(
            "a numeric value is present exactly when status is 'value'", path=path
        )
    if has_value:
        value = entry["value"]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"value must be a number, got {value!r}", path=path)
        if not math.isfinite(float(value)):
            raise ParseError("value must be finite", path=path)


def _walk_finite(node: Any, path: str) -> None:
    if isinstance(node, float) and not math.isfinite(node):
        raise ParseError("non-finite number", path=path)
    if isinstance(node, dict):
        for k, v in node.items():
            _walk_finite(v, f"{path}.{k}")
    elif isinstance(node, list):
        for i, v in enumerate(node):
            _walk_finite(v, f"{path}[{i}]")


def merge_reports(reports: list[MetricReport]) -> MetricReport:
    """Combine reports: the first meta wins, later blocks override earlier."""
    if not reports:
        raise ParseError("nothing to merge")
    meta = reports[0].meta
    circuit = features = training = None
    for r in reports:
        circuit = r.circuit if r.circuit is not None else circuit
        features = r.features if r.features is not None else features
        training = r.training if r.training is not None else training
    return MetricReport(meta=meta, circuit=circuit, features=features, training=training)
