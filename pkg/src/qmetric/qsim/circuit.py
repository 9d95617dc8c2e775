"""Circuit description: gates, parameter binding, composition, and counts.

A circuit is a flat, ordered gate list over ``num_qubits`` qubits; the
list order is application order (the first gate acts first on |0...0>).
The parameter census is derived, never declared: ``num_params`` is one
plus the largest slot any angle references, or zero for fully bound
circuits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..errors import InvalidArgumentError
from . import expr as ex
from .gates import PARAMETERIZED_KINDS, GateKind, gate_arity


@dataclass(frozen=True)
class Gate:
    """One gate application: a kind, target qubits, and optional angle.

    ``qubits`` holds distinct indices; for two-qubit kinds the control
    comes first.
    """

    kind: GateKind
    qubits: tuple[int, ...]
    angle: ex.AngleExpr | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        arity = gate_arity(self.kind)
        if len(self.qubits) != arity:
            raise InvalidArgumentError(
                f"gate {self.kind.value} acts on {arity} qubit(s), got {len(self.qubits)}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise InvalidArgumentError("gate qubits must be distinct")
        if any(q < 0 for q in self.qubits):
            raise InvalidArgumentError("qubit indices must be non-negative")
        if self.kind in PARAMETERIZED_KINDS:
            if self.angle is None:
                raise InvalidArgumentError(f"gate {self.kind.value} requires an angle")
        elif self.angle is not None:
            raise InvalidArgumentError(f"gate {self.kind.value} takes no angle")

    def is_bound(self) -> bool:
        return self.angle is None or ex.max_slot(self.angle) < 0


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over a fixed qubit register."""

    num_qubits: int
    gates: tuple[Gate, ...]
    num_params: int = field(init=False)

    def __init__(self, num_qubits: int, gates: Iterable[Gate]) -> None:
        object.__setattr__(self, "num_qubits", int(num_qubits))
        object.__setattr__(self, "gates", tuple(gates))
        if self.num_qubits < 1:
            raise InvalidArgumentError("circuit needs at least one qubit")
        top = -1
        for i, gate in enumerate(self.gates):
            if not isinstance(gate, Gate):
                raise InvalidArgumentError(f"gates[{i}] is not a Gate")
            if any(q >= self.num_qubits for q in gate.qubits):
                raise InvalidArgumentError(
                    f"gates[{i}] touches qubit {max(gate.qubits)} "
                    f"but the circuit has {self.num_qubits} qubits"
                )
            if gate.angle is not None:
                top = max(top, ex.max_slot(gate.angle))
        object.__setattr__(self, "num_params", top + 1)

    def is_bound(self) -> bool:
        return self.num_params == 0


@dataclass(frozen=True)
class GateStats:
    """Gate census of a circuit."""

    total: int
    single_qubit: int
    two_qubit: int
    parameterized: int
    depth: int


def gate_stats(circuit: Circuit) -> GateStats:
    """Count gates by arity and compute circuit depth.

    Depth is the length of the longest chain of gates sharing qubits:
    each gate lands one level above the deepest frontier among the
    qubits it touches. The empty circuit has depth zero.
    """
    frontier = [0] * circuit.num_qubits
    single = two = parameterized = 0
    for gate in circuit.gates:
        if len(gate.qubits) == 1:
            single += 1
        else:
            two += 1
        if gate.kind in PARAMETERIZED_KINDS:
            parameterized += 1
        level = 1 + max(frontier[q] for q in gate.qubits)
        for q in gate.qubits:
            frontier[q] = level
    depth = max(frontier) if circuit.gates else 0
    return GateStats(
        total=len(circuit.gates),
        single_qubit=single,
        two_qubit=two,
        parameterized=parameterized,
        depth=depth,
    )


def bind(circuit: Circuit, params: Sequence[float]) -> Circuit:
    """Substitute a full parameter vector, yielding a bound circuit.

    ``params`` must supply exactly ``circuit.num_params`` values.
    """
    values = [float(p) for p in params]
    if len(values) != circuit.num_params:
        raise InvalidArgumentError(
            f"circuit takes {circuit.num_params} parameters, got {len(values)}"
        )
    bound = []
    for gate in circuit.gates:
        if gate.angle is None:
            bound.append(gate)
        else:
            bound.append(
                Gate(gate.kind, gate.qubits, ex.Const(ex.evaluate(gate.angle, values)))
            )
    return Circuit(circuit.num_qubits, bound)


def compose(first: Circuit, second: Circuit) -> Circuit:
    """Concatenate two circuits on the same register.

    The second circuit's parameter slots are shifted up by
    ``first.num_params`` so the composite exposes one flat parameter
    vector: the first circuit's slots followed by the second's.
    """
    if first.num_qubits != second.num_qubits:
        raise InvalidArgumentError(
            f"cannot compose circuits on {first.num_qubits} and "
            f"{second.num_qubits} qubits"
        )
    offset = first.num_params
    shifted = []
    for gate in second.gates:
        if gate.angle is None or offset == 0:
            shifted.append(gate)
        else:
            shifted.append(
                Gate(gate.kind, gate.qubits, ex.shift_slots(gate.angle, offset))
            )
    return Circuit(first.num_qubits, first.gates + tuple(shifted))
