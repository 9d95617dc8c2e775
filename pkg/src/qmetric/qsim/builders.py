"""Builders for the standard data-encoding and variational circuits."""

from __future__ import annotations

from ..errors import InvalidArgumentError
from .circuit import Circuit, Gate, compose
from .expr import PiMinusVar, Product, Scale, Var
from .gates import GateKind

ENTANGLEMENT_PATTERNS = ("reverse_linear", "linear", "full")


def build_zz_feature_map(num_qubits: int, reps: int = 1) -> Circuit:
    """Second-order Pauli-Z data-encoding circuit.

    Each repetition applies a Hadamard wall, the single-feature phases
    P(2*x_i), and for every pair j < k the entangled phase
    CX(j,k) P_k(2*(pi-x_j)*(pi-x_k)) CX(j,k). Feature i binds to
    parameter slot i in every repetition.
    """
    if num_qubits < 2:
        raise InvalidArgumentError("feature map needs at least 2 qubits")
    if reps < 1:
        raise InvalidArgumentError("reps must be at least 1")
    gates: list[Gate] = []
    for _ in range(reps):
        for i in range(num_qubits):
            gates.append(Gate(GateKind.H, (i,)))
        for i in range(num_qubits):
            gates.append(Gate(GateKind.P, (i,), Scale(2.0, Var(i))))
        for j in range(num_qubits):
            for k in range(j + 1, num_qubits):
                gates.append(Gate(GateKind.CX, (j, k)))
                gates.append(
                    Gate(
                        GateKind.P,
                        (k,),
                        Scale(2.0, Product((PiMinusVar(j), PiMinusVar(k)))),
                    )
                )
                gates.append(Gate(GateKind.CX, (j, k)))
    return Circuit(num_qubits, gates)


def build_real_amplitudes(
    num_qubits: int, reps: int = 3, entanglement: str = "reverse_linear"
) -> Circuit:
    """Hardware-efficient RY ansatz with CX entangling layers.

    ``reps`` rounds of [RY layer, entangling layer] followed by a final
    RY layer; slot r*n + i drives the RY on qubit i in round r, so the
    circuit takes n*(reps+1) parameters.

    Entanglement patterns: ``reverse_linear`` applies CX(i, i+1) for i
    descending (the default), ``linear`` the same pairs ascending, and
    ``full`` CX(j, k) for every pair j < k.
    """
    if num_qubits < 1:
        raise InvalidArgumentError("ansatz needs at least 1 qubit")
    if reps < 1:
        raise InvalidArgumentError("reps must be at least 1")
    if entanglement not in ENTANGLEMENT_PATTERNS:
        raise InvalidArgumentError(
            f"unknown entanglement pattern {entanglement!r}; "
            f"expected one of {ENTANGLEMENT_PATTERNS}"
        )
    gates: list[Gate] = []

    def ry_layer(r: int) -> None:
        for i in range(num_qubits):
            gates.append(Gate(GateKind.RY, (i,), Var(r * num_qubits + i)))

    def entangling_layer() -> None:
        if entanglement == "reverse_linear":
            for i in reversed(range(num_qubits - 1)):
                gates.append(Gate(GateKind.CX, (i, i + 1)))
        elif entanglement == "linear":
            for i in range(num_qubits - 1):
                gates.append(Gate(GateKind.CX, (i, i + 1)))
        else:
            for j in range(num_qubits):
                for k in range(j + 1, num_qubits):
                    gates.append(Gate(GateKind.CX, (j, k)))

    for r in range(reps):
        ry_layer(r)
        entangling_layer()
    ry_layer(reps)
    return Circuit(num_qubits, gates)


def build_case_study(num_qubits: int = 3) -> Circuit:
    """Reference hybrid model circuit: ZZ feature map into an RY ansatz.

    One feature-map repetition followed by a three-round reverse-linear
    RY ansatz. The first ``num_qubits`` parameter slots carry the data
    features; the remaining slots are the trainable angles.
    """
    feature_map = build_zz_feature_map(num_qubits, reps=1)
    ansatz = build_real_amplitudes(num_qubits, reps=3, entanglement="reverse_linear")
    return compose(feature_map, ansatz)
