"""Statevector and density-matrix simulation of bound circuits.

Basis convention: little-endian. Qubit q is bit q of the basis index,
so |0...0> is index 0 and a state on qubits (0, 1) has amplitude
order |q1 q0> = 00, 01, 10, 11 reading indices 0..3. Gate lists are
applied in order, leftmost gate first.

The density path evolves the full 2^n x 2^n matrix and applies the
configured noise channels after every gate: single-qubit depolarizing
and amplitude damping after one-qubit gates, two-qubit depolarizing
after two-qubit gates. Size guards keep accidental large registers from
exhausting memory; both limits are per-call configurable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgumentError, ResourceLimitError
from .circuit import Circuit
from .gates import (
    amplitude_damping_kraus,
    depolarizing_kraus_1q,
    depolarizing_kraus_2q,
    gate_matrix,
)
from . import expr as ex

STATEVECTOR_MAX_QUBITS = 20
DENSITY_MAX_QUBITS = 10

_NORM_TOL = 1e-10
_HERM_TOL = 1e-10
_TRACE_TOL = 1e-10
_PSD_TOL = 1e-9


@dataclass(frozen=True)
class QuantumState:
    """A normalized pure state over ``num_qubits`` qubits.

    ``amplitudes`` has length 2**num_qubits and unit norm within 1e-10.
    """

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amps)
        if self.num_qubits < 1:
            raise InvalidArgumentError("state needs at least one qubit")
        if amps.shape != (1 << self.num_qubits,):
            raise InvalidArgumentError(
                f"state over {self.num_qubits} qubits needs "
                f"{1 << self.num_qubits} amplitudes, got {amps.shape}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > _NORM_TOL:
            raise InvalidArgumentError(f"state norm {norm} deviates from 1")

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def to_density(self) -> "DensityMatrix":
        return DensityMatrix(self.num_qubits, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """A density operator: Hermitian, unit trace, positive semidefinite.

    Hermiticity and trace are checked within 1e-10, positivity within
    1e-9 (eigenvalue dust from simulation roundoff is tolerated).
    """

    num_qubits: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", mat)
        if self.num_qubits < 1:
            raise InvalidArgumentError("density matrix needs at least one qubit")
        dim = 1 << self.num_qubits
        if mat.shape != (dim, dim):
            raise InvalidArgumentError(
                f"density matrix over {self.num_qubits} qubits must be "
                f"{dim}x{dim}, got {mat.shape}"
            )
        if float(np.max(np.abs(mat - mat.conj().T))) > _HERM_TOL:
            raise InvalidArgumentError("density matrix is not Hermitian")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > _TRACE_TOL:
            raise InvalidArgumentError(f"density matrix trace {trace} deviates from 1")
        low = float(np.min(np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))))
        if low < -_PSD_TOL:
            raise InvalidArgumentError(
                f"density matrix has negative eigenvalue {low}"
            )

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


@dataclass(frozen=True)
class NoiseModel:
    """Per-gate noise strengths; all zero means ideal evolution."""

    depolarizing_1q: float = 0.0
    depolarizing_2q: float = 0.0
    amplitude_damping: float = 0.0

    def __post_init__(self) -> None:
        for name in ("depolarizing_1q", "depolarizing_2q", "amplitude_damping"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise InvalidArgumentError(f"{name} must lie in [0, 1], got {p}")

    def is_zero(self) -> bool:
        return (
            self.depolarizing_1q == 0.0
            and self.depolarizing_2q == 0.0
            and self.amplitude_damping == 0.0
        )


def _apply_unitary(psi: np.ndarray, u: np.ndarray, qubits: tuple[int, ...], n: int) -> np.ndarray:
    """Apply a k-qubit unitary to a statevector tensor of 2**n amplitudes.

    The matrix index packs the listed qubits with the first as the most
    significant bit, matching the gate-matrix convention.
    """
    k = len(qubits)
    t = psi.reshape([2] * n)
    # numpy axis for qubit q is n-1-q (axis 0 is the most significant bit)
    axes = [n - 1 - q for q in qubits]
    t = np.moveaxis(t, axes, range(k))
    shape = t.shape
    t = u @ t.reshape(1 << k, -1)
    t = np.moveaxis(t.reshape(shape), range(k), axes)
    return t.reshape(-1)


def _apply_matrix_axes(
    t: np.ndarray, m: np.ndarray, axes: list[int]
) -> np.ndarray:
    """Contract matrix ``m`` into tensor ``t`` along the given axes."""
    k = len(axes)
    t = np.moveaxis(t, axes, range(k))
    shape = t.shape
    t = m @ t.reshape(1 << k, -1)
    return np.moveaxis(t.reshape(shape), range(k), axes)


def _apply_unitary_density(
    rho: np.ndarray, u: np.ndarray, qubits: tuple[int, ...], n: int
) -> np.ndarray:
    """rho -> U rho U^dagger on the given qubits of a 2**n density tensor."""
    t = rho.reshape([2] * (2 * n))
    row_axes = [n - 1 - q for q in qubits]
    col_axes = [2 * n - 1 - q for q in qubits]
    t = _apply_matrix_axes(t, u, row_axes)
    t = _apply_matrix_axes(t, u.conj(), col_axes)
    return t.reshape(1 << n, 1 << n)


def _apply_kraus_density(
    rho: np.ndarray, kraus: list[np.ndarray], qubits: tuple[int, ...], n: int
) -> np.ndarray:
    """rho -> sum_m K_m rho K_m^dagger on the given qubits."""
    out = np.zeros_like(rho)
    for k in kraus:
        out += _apply_unitary_density(rho, k, qubits, n)
    return out


def simulate_statevector(
    circuit: Circuit, max_qubits: int = STATEVECTOR_MAX_QUBITS
) -> QuantumState:
    """Evolve |0...0> through a bound circuit.

    Raises InvalidArgumentError if any gate still references a
    parameter slot, and ResourceLimitError beyond ``max_qubits``.
    """
    if circuit.num_qubits > max_qubits:
        raise ResourceLimitError(
            f"statevector simulation limited to {max_qubits} qubits, "
            f"circuit has {circuit.num_qubits}"
        )
    if not circuit.is_bound():
        raise InvalidArgumentError(
            f"circuit still takes {circuit.num_params} parameters; bind it first"
        )
    n = circuit.num_qubits
    psi = np.zeros(1 << n, dtype=complex)
    psi[0] = 1.0
    for gate in circuit.gates:
        angle = None if gate.angle is None else ex.evaluate(gate.angle, ())
        u = gate_matrix(gate.kind, angle)
        psi = _apply_unitary(psi, u, gate.qubits, n)
    return QuantumState(n, psi)


def simulate_density(
    circuit: Circuit,
    noise: NoiseModel | None = None,
    max_qubits: int = DENSITY_MAX_QUBITS,
) -> DensityMatrix:
    """Evolve |0...0><0...0| through a bound circuit under a noise model.

    Every gate is applied as rho -> U rho U^dagger followed by the
    noise channels on the qubits it touched. With a zero noise model
    the result equals the pure outer product of the statevector path
    up to roundoff.
    """
    if circuit.num_qubits > max_qubits:
        raise ResourceLimitError(
            f"density simulation limited to {max_qubits} qubits, "
            f"circuit has {circuit.num_qubits}"
        )
    if not circuit.is_bound():
        raise InvalidArgumentError(
            f"circuit still takes {circuit.num_params} parameters; bind it first"
        )
    noise = noise or NoiseModel()
    n = circuit.num_qubits
    dim = 1 << n
    rho = np.zeros((dim, dim), dtype=complex)
    rho[0, 0] = 1.0
    dep1 = depolarizing_kraus_1q(noise.depolarizing_1q) if noise.depolarizing_1q else None
    dep2 = depolarizing_kraus_2q(noise.depolarizing_2q) if noise.depolarizing_2q else None
    damp = (
        amplitude_damping_kraus(noise.amplitude_damping)
        if noise.amplitude_damping
        else None
    )
    for gate in circuit.gates:
        angle = None if gate.angle is None else ex.evaluate(gate.angle, ())
        u = gate_matrix(gate.kind, angle)
        rho = _apply_unitary_density(rho, u, gate.qubits, n)
        if len(gate.qubits) == 1:
            if dep1 is not None:
                rho = _apply_kraus_density(rho, dep1, gate.qubits, n)
            if damp is not None:
                rho = _apply_kraus_density(rho, damp, gate.qubits, n)
        else:
            if dep2 is not None:
                rho = _apply_kraus_density(rho, dep2, gate.qubits, n)
    # channels preserve Hermiticity only up to roundoff; resymmetrize
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(n, rho)
