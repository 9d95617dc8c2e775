"""Tabular codecs: training-log CSV, feature-matrix CSV, gradient JSONL.

Training logs use the fixed header ``epoch,train_loss,val_loss,
val_accuracy``. Gradient traces are JSON Lines, one object per line:
``{"epoch": 5, "grads": [0.01, -0.02]}``. Parsers reject NaN/Inf
literals and report the offending line in the error.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any

from ..errors import InvalidArgumentError, ParseError
from ..feature_metrics import GENERIC, PROBABILITY, FeatureMatrix
from ..training_metrics import EpochRecord, GradientEntry, GradientLog, TrainingLog

TRAINING_HEADER = ("epoch", "train_loss", "val_loss", "val_accuracy")


def _parse_float(cell: str, path: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise ParseError(f"not a number: {cell!r}", path=path) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite value {cell!r}", path=path)
    return value


def _parse_int(cell: str, path: str) -> int:
    try:
        return int(cell)
    except ValueError:
        raise ParseError(f"not an integer: {cell!r}", path=path) from None


def parse_training_log(text: str, num_params: int) -> TrainingLog:
    """Parse a training-log CSV; ``num_params`` comes from the caller
    (the log format does not carry it)."""
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row]
    if not rows:
        raise ParseError("empty document", path="line 1")
    if tuple(cell.strip() for cell in rows[0]) != TRAINING_HEADER:
        raise ParseError(
            f"header must be exactly {','.join(TRAINING_HEADER)!r}", path="line 1"
        )
    records = []
    for lineno, row in enumerate(rows[1:], start=2):
        path = f"line {lineno}"
        if len(row) != 4:
            raise ParseError(f"expected 4 cells, got {len(row)}", path=path)
        epoch = _parse_int(row[0].strip(), path)
        values = [_parse_float(cell.strip(), path) for cell in row[1:]]
        try:
            records.append(EpochRecord(epoch, *values))
        except InvalidArgumentError as err:
            raise ParseError(str(err), path=path) from err
    try:
        return TrainingLog(records, num_params)
    except InvalidArgumentError as err:
        raise ParseError(str(err)) from err


def serialize_training_log(log: TrainingLog) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TRAINING_HEADER)
    for r in log.records:
        writer.writerow([r.epoch, repr(r.train_loss), repr(r.val_loss), repr(r.val_accuracy)])
    return out.getvalue()


def parse_feature_csv(text: str, semantics: str = GENERIC) -> FeatureMatrix:
    """Parse a feature matrix CSV with header ``f0,f1,...``."""
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row]
    if not rows:
        raise ParseError("empty document", path="line 1")
    header = [cell.strip() for cell in rows[0]]
    expected = [f"f{i}" for i in range(len(header))]
    if header != expected:
        raise ParseError(
            f"header must be f0..f{len(header) - 1} in order", path="line 1"
        )
    width = len(header)
    data = []
    for lineno, row in enumerate(rows[1:], start=2):
        path = f"line {lineno}"
        if len(row) != width:
            raise ParseError(f"expected {width} cells, got {len(row)}", path=path)
        data.append([_parse_float(cell.strip(), path) for cell in row])
    if not data:
        raise ParseError("no data rows", path="line 2")
    try:
        return FeatureMatrix(data, semantics=semantics)
    except InvalidArgumentError as err:
        raise ParseError(str(err)) from err


def serialize_feature_csv(features: FeatureMatrix) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([f"f{i}" for i in range(features.num_dims)])
    for row in features.data:
        writer.writerow([repr(float(v)) for v in row])
    return out.getvalue()


def parse_gradient_log(text: str) -> GradientLog:
    """Parse a JSONL gradient trace."""
    entries = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        path = f"line {lineno}"
        try:
            obj: Any = json.loads(
                line, parse_constant=lambda tok: _raise_nonfinite(tok, path)
            )
        except json.JSONDecodeError as err:
            raise ParseError(f"invalid JSON: {err.msg}", path=path) from err
        if not isinstance(obj, dict) or set(obj) != {"epoch", "grads"}:
            raise ParseError('expected {"epoch": ..., "grads": [...]}', path=path)
        epoch = obj["epoch"]
        if isinstance(epoch, bool) or not isinstance(epoch, int):
            raise ParseError(f"epoch must be an integer, got {epoch!r}", path=path)
        grads = obj["grads"]
        if not isinstance(grads, list) or not grads:
            raise ParseError("grads must be a non-empty array", path=path)
        values = []
        for j, g in enumerate(grads):
            if isinstance(g, bool) or not isinstance(g, (int, float)):
                raise ParseError(f"grads[{j}] is not a number", path=path)
            if not math.isfinite(float(g)):
                raise ParseError(f"grads[{j}] is non-finite", path=path)
            values.append(float(g))
        entries.append(GradientEntry(epoch, values))
    if not entries:
        raise ParseError("empty document", path="line 1")
    try:
        return GradientLog(entries)
    except InvalidArgumentError as err:
        raise ParseError(str(err)) from err


def serialize_gradient_log(grads: GradientLog) -> str:
    lines = [
        json.dumps({"epoch": e.epoch, "grads": list(e.grads)}, allow_nan=False)
        for e in grads.entries
    ]
    return "\n".join(lines) + "\n"


def _raise_nonfinite(token: str, path: str) -> Any:
    raise ParseError(f"non-finite literal {token!r} is not allowed", path=path)
