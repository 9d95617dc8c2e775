"""Circuit JSON codec.

Document shape::

    {"qubits": 3, "params": 15, "gates": [
        {"g": "h",  "q": [0]},
        {"g": "p",  "q": [1], "angle": {"expr": "scale", "factor": 2.0,
                                         "inner": {"expr": "var", "index": 1}}},
        {"g": "cx", "q": [0, 1]}
    ]}

Gate names are the lowercase kind spellings; two-qubit gates list the
control first. ``params`` must equal the parameter census derived from
the angles. Parsing is strict: unknown keys, unknown gates, NaN/Inf
literals, and shape violations all raise ParseError with the offending
field path; serialize/parse round-trips to an equal circuit.
"""

from __future__ import annotations

import json
import math
from typing import Any

from ..errors import InvalidArgumentError, ParseError
from ..qsim import expr as ex
from ..qsim.circuit import Circuit, Gate
from ..qsim.gates import PARAMETERIZED_KINDS, GateKind, gate_arity

_EXPR_KEYS = {
    "const": {"value"},
    "var": {"index"},
    "pi_minus_var": {"index"},
    "scale": {"factor", "inner"},
    "sum": {"terms"},
    "product": {"terms"},
}


def _reject_constant(token: str) -> Any:
    raise ParseError(f"non-finite literal {token!r} is not allowed")


def _load_json(text: str) -> Any:
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as err:
        raise ParseError(f"invalid JSON: {err.msg}", path=f"line {err.lineno}") from err


def _require_object(value: Any, path: str, keys: set[str]) -> dict:
    if not isinstance(value, dict):
        raise ParseError(f"expected an object, got {type(value).__name__}", path=path)
    extra = set(value) - keys
    if extra:
        raise ParseError(f"unknown key(s) {sorted(extra)}", path=path)
    missing = keys - set(value)
    if missing:
        raise ParseError(f"missing key(s) {sorted(missing)}", path=path)
    return value


def _require_int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", path=path)
    return value


def _require_number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"expected a number, got {value!r}", path=path)
    out = float(value)
    if not math.isfinite(out):
        raise ParseError(f"non-finite number {value!r}", path=path)
    return out


def parse_angle(obj: Any, path: str = "angle") -> ex.AngleExpr:
    """Parse one angle-expression object (recursive)."""
    if not isinstance(obj, dict):
        raise ParseError(f"expected an object, got {type(obj).__name__}", path=path)
    kind = obj.get("expr")
    if kind not in _EXPR_KEYS:
        raise ParseError(
            f"unknown expression kind {kind!r}; expected one of "
            f"{sorted(_EXPR_KEYS)}",
            path=f"{path}.expr",
        )
    _require_object(obj, path, _EXPR_KEYS[kind] | {"expr"})
    if kind == "const":
        return ex.Const(_require_number(obj["value"], f"{path}.value"))
    if kind == "var":
        index = _require_int(obj["index"], f"{path}.index")
        if index < 0:
            raise ParseError("slot index must be non-negative", path=f"{path}.index")
        return ex.Var(index)
    if kind == "pi_minus_var":
        index = _require_int(obj["index"], f"{path}.index")
        if index < 0:
            raise ParseError("slot index must be non-negative", path=f"{path}.index")
        return ex.PiMinusVar(index)
    if kind == "scale":
        return ex.Scale(
            _require_number(obj["factor"], f"{path}.factor"),
            parse_angle(obj["inner"], f"{path}.inner"),
        )
    terms = obj["terms"]
    if not isinstance(terms, list) or not terms:
        raise ParseError("terms must be a non-empty array", path=f"{path}.terms")
    parsed = [parse_angle(t, f"{path}.terms[{i}]") for i, t in enumerate(terms)]
    return ex.Sum(parsed) if kind == "sum" else ex.Product(parsed)


def serialize_angle(angle: ex.AngleExpr) -> dict:
    if isinstance(angle, ex.Const):
        return {"expr": "const", "value": angle.value}
    if isinstance(angle, ex.Var):
        return {"expr": "var", "index": angle.index}
    if isinstance(angle, ex.PiMinusVar):
        return {"expr": "pi_minus_var", "index": angle.index}
    if isinstance(angle, ex.Scale):
        return {"expr": "scale", "factor": angle.factor, "inner": serialize_angle(angle.inner)}
    if isinstance(angle, ex.Sum):
        return {"expr": "sum", "terms": [serialize_angle(t) for t in angle.terms]}
    if isinstance(angle, ex.Product):
        return {"expr": "product", "terms": [serialize_angle(t) for t in angle.terms]}
    raise InvalidArgumentError(f"not an angle expression: {angle!r}")


def parse_circuit(text: str) -> Circuit:
    """Parse a circuit JSON document."""
    doc = _load_json(text)
    _require_object(doc, "$", {"qubits", "params", "gates"})
    num_qubits = _require_int(doc["qubits"], "qubits")
    if num_qubits < 1:
        raise ParseError("qubits must be at least 1", path="qubits")
    declared_params = _require_int(doc["params"], "params")
    if declared_params < 0:
        raise ParseError("params must be non-negative", path="params")
    raw_gates = doc["gates"]
    if not isinstance(raw_gates, list):
        raise ParseError("gates must be an array", path="gates")
    gates = []
    for i, raw in enumerate(raw_gates):
        gates.append(_parse_gate(raw, f"gates[{i}]"))
    try:
        circuit = Circuit(num_qubits, gates)
    except InvalidArgumentError as err:
        raise ParseError(str(err), path="gates") from err
    if circuit.num_params != declared_params:
        raise ParseError(
            f"declared params {declared_params} but the angles reference "
            f"{circuit.num_params} slot(s)",
            path="params",
        )
    return circuit


def _parse_gate(raw: Any, path: str) -> Gate:
    if not isinstance(raw, dict):
        raise ParseError(f"expected an object, got {type(raw).__name__}", path=path)
    name = raw.get("g")
    try:
        kind = GateKind(name)
    except ValueError:
        raise ParseError(f"unknown gate {name!r}", path=f"{path}.g") from None
    keys = {"g", "q"}
    if kind in PARAMETERIZED_KINDS:
        keys.add("angle")
    _require_object(raw, path, keys)
    q = raw["q"]
    if not isinstance(q, list):
        raise ParseError("q must be an array of qubit indices", path=f"{path}.q")
    qubits = tuple(_require_int(v, f"{path}.q[{j}]") for j, v in enumerate(q))
    if len(qubits) != gate_arity(kind):
        raise ParseError(
            f"gate {kind.value} takes {gate_arity(kind)} qubit(s), got {len(qubits)}",
            path=f"{path}.q",
        )
    angle = None
    if kind in PARAMETERIZED_KINDS:
        angle = parse_angle(raw["angle"], f"{path}.angle")
    try:
        return Gate(kind, qubits, angle)
    except InvalidArgumentError as err:
        raise ParseError(str(err), path=path) from err


def serialize_circuit(circuit: Circuit) -> str:
    """Serialize to the canonical single-line JSON form."""
    gates = []
    for gate in circuit.gates:
        entry: dict[str, Any] = {"g": gate.kind.value, "q": list(gate.qubits)}
        if gate.angle is not None:
            entry["angle"] = serialize_angle(gate.angle)
        gates.append(entry)
    doc = {"qubits": circuit.num_qubits, "params": circuit.num_params, "gates": gates}
    return json.dumps(doc, separators=(",", ":"), allow_nan=False)
