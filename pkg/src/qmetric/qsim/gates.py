"""Gate matrices, Pauli operators, and Kraus sets for noise channels.

Two-qubit matrices are written in the basis ``|q_first, q_second>`` with
the first listed qubit as the most significant bit, so CX below is the
textbook controlled-NOT with the control listed first.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from ..errors import InvalidArgumentError

_SQ2 = 1.0 / math.sqrt(2.0)

I2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

PAULIS = {"I": I2, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}


class GateKind(str, Enum):
    """Supported gate vocabulary; values double as the JSON spellings."""

    H = "h"
    X = "x"
    Y = "y"
    Z = "z"
    S = "s"
    T = "t"
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    P = "p"
    CX = "cx"
    CZ = "cz"


PARAMETERIZED_KINDS = frozenset({GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.P})
TWO_QUBIT_KINDS = frozenset({GateKind.CX, GateKind.CZ})

_FIXED_1Q = {
    GateKind.H: np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    GateKind.X: PAULI_X,
    GateKind.Y: PAULI_Y,
    GateKind.Z: PAULI_Z,
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.T: np.array([[1, 0], [0, np.exp(1j * math.pi / 4)]], dtype=complex),
}

_FIXED_2Q = {
    GateKind.CX: np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    GateKind.CZ: np.diag([1, 1, 1, -1]).astype(complex),
}


def gate_arity(kind: GateKind) -> int:
    return 2 if kind in TWO_QUBIT_KINDS else 1


def gate_matrix(kind: GateKind, angle: float | None = None) -> np.ndarray:
    """Unitary matrix for a gate kind, given its angle when parameterized."""
    if kind in PARAMETERIZED_KINDS:
        if angle is None:
            raise InvalidArgumentError(f"gate {kind.value} requires an angle")
        half = 0.5 * angle
        c, s = math.cos(half), math.sin(half)
        if kind is GateKind.RX:
            return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
        if kind is GateKind.RY:
            return np.array([[c, -s], [s, c]], dtype=complex)
        if kind is GateKind.RZ:
            return np.array(
                [[np.exp(-0.5j * angle), 0], [0, np.exp(0.5j * angle)]], dtype=complex
            )
        return np.array([[1, 0], [0, np.exp(1j * angle)]], dtype=complex)
    if angle is not None:
        raise InvalidArgumentError(f"gate {kind.value} takes no angle")
    if kind in _FIXED_1Q:
        return _FIXED_1Q[kind]
    return _FIXED_2Q[kind]


def depolarizing_kraus_1q(p: float) -> list[np.ndarray]:
    """Single-qubit depolarizing channel.

    With probability ``p`` the qubit is replaced by the maximally mixed
    state; at p = 1 every input collapses to I/2.
    """
    _check_prob(p, "p1")
    return [
        math.sqrt(1.0 - 0.75 * p) * I2,
        math.sqrt(0.25 * p) * PAULI_X,
        math.sqrt(0.25 * p) * PAULI_Y,
        math.sqrt(0.25 * p) * PAULI_Z,
    ]


def depolarizing_kraus_2q(p: float) -> list[np.ndarray]:
    """Two-qubit depolarizing channel as a uniform 16-Pauli twirl."""
    _check_prob(p, "p2")
    ops = [
        math.sqrt(1.0 - 15.0 * p / 16.0) * np.kron(I2, I2),
    ]
    letters = [I2, PAULI_X, PAULI_Y, PAULI_Z]
    for a in range(4):
        for b in range(4):
            if a == 0 and b == 0:
                continue
            ops.append(math.sqrt(p / 16.0) * np.kron(letters[a], letters[b]))
    return ops


def amplitude_damping_kraus(gamma: float) -> list[np.ndarray]:
    """Amplitude damping channel with decay probability ``gamma``."""
    _check_prob(gamma, "gamma")
    k0 = np.array([[1, 0], [0, math.sqrt(1.0 - gamma)]], dtype=complex)
    k1 = np.array([[0, math.sqrt(gamma)], [0, 0]], dtype=complex)
    return [k0, k1]


def _check_prob(p: float, name: str) -> None:
    if not 0.0 <= p <= 1.0:
        raise InvalidArgumentError(f"{name} must lie in [0, 1], got {p}")
