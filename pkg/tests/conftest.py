"""Shared fixtures and random generators for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from qmetric.qsim import (
    Circuit,
    Const,
    Gate,
    GateKind,
    PiMinusVar,
    Product,
    Scale,
    Sum,
    Var,
)

BOUND_KINDS = [
    GateKind.H,
    GateKind.X,
    GateKind.Y,
    GateKind.Z,
    GateKind.S,
    GateKind.T,
    GateKind.RX,
    GateKind.RY,
    GateKind.RZ,
    GateKind.P,
    GateKind.CX,
    GateKind.CZ,
]


def random_bound_circuit(rng: np.random.Generator, max_qubits: int = 4,
                         max_gates: int = 20) -> Circuit:
    """Random circuit with all angles already numeric."""
    n = int(rng.integers(1, max_qubits + 1))
    num_gates = int(rng.integers(0, max_gates + 1))
    gates = []
    for _ in range(num_gates):
        kind = BOUND_KINDS[int(rng.integers(len(BOUND_KINDS)))]
        if kind in (GateKind.CX, GateKind.CZ):
            if n < 2:
                kind = GateKind.H
        if kind in (GateKind.CX, GateKind.CZ):
            a, b = rng.choice(n, size=2, replace=False)
            qubits = (int(a), int(b))
        else:
            qubits = (int(rng.integers(n)),)
        if kind in (GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.P):
            angle = Const(float(rng.uniform(-2.0 * np.pi, 2.0 * np.pi)))
        else:
            angle = None
        gates.append(Gate(kind, qubits, angle))
    return Circuit(n, gates)


def random_angle_expr(rng: np.random.Generator, num_slots: int, depth: int = 0):
    """Random angle expression tree, at most three levels deep."""
    leaf_only = depth >= 3 or num_slots == 0
    choice = int(rng.integers(3 if leaf_only else 6))
    if num_slots == 0 and choice > 0:
        choice = 0
    if choice == 0:
        return Const(float(rng.uniform(-4.0, 4.0)))
    if choice == 1:
        return Var(int(rng.integers(num_slots)))
    if choice == 2:
        return PiMinusVar(int(rng.integers(num_slots)))
    if choice == 3:
        return Scale(float(rng.uniform(-2.0, 2.0)),
                     random_angle_expr(rng, num_slots, depth + 1))
    terms = [random_angle_expr(rng, num_slots, depth + 1)
             for _ in range(int(rng.integers(1, 4)))]
    return Sum(terms) if choice == 4 else Product(terms)


def random_parameterized_circuit(rng: np.random.Generator, max_qubits: int = 4,
                                 max_gates: int = 20) -> Circuit:
    """Random circuit whose rotation angles are expression trees."""
    n = int(rng.integers(1, max_qubits + 1))
    num_slots = int(rng.integers(0, 5))
    num_gates = int(rng.integers(0, max_gates + 1))
    gates = []
    for _ in range(num_gates):
        kind = BOUND_KINDS[int(rng.integers(len(BOUND_KINDS)))]
        if kind in (GateKind.CX, GateKind.CZ) and n < 2:
            kind = GateKind.H
        if kind in (GateKind.CX, GateKind.CZ):
            a, b = rng.choice(n, size=2, replace=False)
            qubits = (int(a), int(b))
        else:
            qubits = (int(rng.integers(n)),)
        if kind in (GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.P):
            angle = random_angle_expr(rng, num_slots)
        else:
            angle = None
        gates.append(Gate(kind, qubits, angle))
    return Circuit(n, gates)


@pytest.fixture
def bell_circuit() -> Circuit:
    return Circuit(2, [Gate(GateKind.H, (0,)), Gate(GateKind.CX, (0, 1))])


@pytest.fixture
def ghz_circuit() -> Circuit:
    return Circuit(3, [
        Gate(GateKind.H, (0,)),
        Gate(GateKind.CX, (0, 1)),
        Gate(GateKind.CX, (1, 2)),
    ])
