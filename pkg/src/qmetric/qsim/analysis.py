"""State analysis: reduction, entropy, fidelity, and observables.

Entropy is reported in bits (base-2 logarithm) throughout, so one
maximally entangled qubit contributes exactly 1.0.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ..errors import InvalidArgumentError
from .simulate import DensityMatrix, QuantumState

_EIG_FLOOR = 1e-12
_PURITY_TOL = 1e-9


def _normalize_keep(keep: Sequence[int], num_qubits: int) -> tuple[int, ...]:
    idx = tuple(int(q) for q in keep)
    if not idx:
        raise InvalidArgumentError("keep set must be non-empty")
    if len(set(idx)) != len(idx):
        raise InvalidArgumentError("keep set has duplicate qubit indices")
    if any(q < 0 or q >= num_qubits for q in idx):
        raise InvalidArgumentError(
            f"keep set {idx} out of range for {num_qubits} qubits"
        )
    return tuple(sorted(idx))


def partial_trace(
    state: QuantumState | DensityMatrix, keep: Sequence[int]
) -> DensityMatrix:
    """Reduced density matrix over the ``keep`` qubits.

    The reduced matrix indexes the kept qubits little-endian in sorted
    order: the smallest kept qubit is bit 0 of the reduced basis index.
    """
    if isinstance(state, QuantumState):
        n = state.num_qubits
        kept = _normalize_keep(keep, n)
        if len(kept) == n:
            return state.to_density()
        t = state.amplitudes.reshape([2] * n)
        # flatten kept axes (descending qubit -> most significant first)
        front = [n - 1 - q for q in reversed(kept)]
        t = np.moveaxis(t, front, range(len(kept)))
        a = t.reshape(1 << len(kept), -1)
        return DensityMatrix(len(kept), a @ a.conj().T)
    if isinstance(state, DensityMatrix):
        n = state.num_qubits
        kept = _normalize_keep(keep, n)
        if len(kept) == n:
            return state
        k = len(kept)
        t = state.matrix.reshape([2] * (2 * n))
        row_front = [n - 1 - q for q in reversed(kept)]
        col_front = [2 * n - 1 - q for q in reversed(kept)]
        # kept row axes lead, kept column axes start at position n, so the
        # traced axes pair up as (row block, column block) for the einsum
        dest = list(range(k)) + list(range(n, n + k))
        t = np.moveaxis(t, row_front + col_front, dest)
        t = t.reshape(1 << k, 1 << (n - k), 1 << k, 1 << (n - k))
        reduced = np.einsum("aibi->ab", t)
        return DensityMatrix(k, reduced)
    raise InvalidArgumentError("partial_trace takes a QuantumState or DensityMatrix")


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Entropy -sum(lambda * log2(lambda)) over eigenvalues above 1e-12.

    The matrix is resymmetrized before eigendecomposition; eigenvalue
    dust at or below the floor contributes nothing, implementing the
    0*log(0) = 0 convention.
    """
    mat = 0.5 * (rho.matrix + rho.matrix.conj().T)
    evals = np.linalg.eigvalsh(mat)
    evals = evals[evals > _EIG_FLOOR]
    if evals.size == 0:
        return 0.0
    return float(max(0.0, -np.sum(evals * np.log2(evals))))


def _psd_sqrt(mat: np.ndarray) -> np.ndarray:
    evals, vecs = np.linalg.eigh(0.5 * (mat + mat.conj().T))
    evals = np.clip(evals, 0.0, None)
    return (vecs * np.sqrt(evals)) @ vecs.conj().T


def state_fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Uhlmann fidelity F(rho, sigma) = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.

    When both inputs are pure within 1e-9 this reduces to the overlap
    tr(rho sigma) and is computed that way; the result is clamped into
    [0, 1] against roundoff.
    """
    if rho.num_qubits != sigma.num_qubits:
        raise InvalidArgumentError(
            f"fidelity needs equal registers, got {rho.num_qubits} "
            f"and {sigma.num_qubits} qubits"
        )
    if rho.purity() >= 1.0 - _PURITY_TOL and sigma.purity() >= 1.0 - _PURITY_TOL:
        f = float(np.real(np.trace(rho.matrix @ sigma.matrix)))
    else:
        sq = _psd_sqrt(rho.matrix)
        inner = sq @ sigma.matrix @ sq
        evals = np.linalg.eigvalsh(0.5 * (inner + inner.conj().T))
        f = float(np.sum(np.sqrt(np.clip(evals, 0.0, None))) ** 2)
    return min(1.0, max(0.0, f))


def expectation(state: QuantumState | DensityMatrix, pauli: str) -> float:
    """Expectation value of a Pauli string: <psi|P|psi> or tr(rho P).

    ``pauli`` has one letter from {I, X, Y, Z} per qubit; letter i acts
    on qubit i. The result is real by Hermiticity; the imaginary
    residue is discarded after an internal sanity check.
    """
    from .gates import PAULIS
    from .simulate import _apply_unitary

    n = state.num_qubits
    if len(pauli) != n:
        raise InvalidArgumentError(
            f"Pauli string length {len(pauli)} does not match {n} qubits"
        )
    for letter in pauli:
        if letter != "I" and letter not in PAULIS:
            raise InvalidArgumentError(f"unknown Pauli letter {letter!r}")
    if isinstance(state, DensityMatrix):
        # tr(rho P) with P built MSB-first (qubit n-1 leads the kron)
        op = np.eye(1, dtype=complex)
        for letter in reversed(pauli):
            factor = PAULIS.get(letter, np.eye(2, dtype=complex))
            op = np.kron(op, factor)
        val = complex(np.trace(state.matrix @ op))
    else:
        phi = state.amplitudes
        for q, letter in enumerate(pauli):
            if letter == "I":
                continue
            phi = _apply_unitary(phi, PAULIS[letter], (q,), n)
        val = complex(np.vdot(state.amplitudes, phi))
    if abs(val.imag) > 1e-9:
        raise InvalidArgumentError(
            f"expectation picked up imaginary part {val.imag}; state corrupt"
        )
    return float(val.real)


def binary_entropy_bits(p: float) -> float:
    """Entropy in bits of the distribution (p, 1-p)."""
    if not 0.0 <= p <= 1.0:
        raise InvalidArgumentError(f"probability {p} outside [0, 1]")
    out = 0.0
    for q in (p, 1.0 - p):
        if q > _EIG_FLOOR:
            out -= q * math.log2(q)
    return out
