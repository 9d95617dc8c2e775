"""Circuit-level diagnostics computed from the circuit description.

Five metrics:

- QCE, expressibility: one minus the mean pairwise fidelity of states
  prepared from random parameter draws. 0 means the parameters do not
  move the state at all; values near 1 - 1/2^n mean the ensemble
  spreads as evenly as an average state can.
- QCF, noise fidelity: Uhlmann fidelity between the ideal state and the
  state evolved under a noise model.
- QLR, locality ratio: fraction of gates acting on a single qubit.
- EEE, entanglement entropy of a subsystem of the prepared state, in bits.
- QMI, mutual information between two disjoint subsystems, in bits.

All functions are pure; sampling is driven by per-sample RNG streams
derived from (seed, sample index), so results do not depend on
evaluation order.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError
from .qsim.analysis import partial_trace, state_fidelity, von_neumann_entropy
from .qsim.circuit import Circuit, bind, gate_stats
from .qsim.simulate import (
    DENSITY_MAX_QUBITS,
    NoiseModel,
    simulate_density,
    simulate_statevector,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SamplingConfig:
    """How to draw random parameter vectors.

    ``ranges`` is either one (lo, hi) pair applied to every slot or a
    sequence with one pair per slot. A degenerate pair (lo == hi) pins
    that slot to a fixed value.
    """

    num_samples: int = 50
    ranges: tuple = (0.0, TWO_PI)
    seed: int = 0
    allow_parameterless: bool = False

    def __post_init__(self) -> None:
        if self.num_samples < 2:
            raise InvalidArgumentError("sampling needs at least 2 draws")

    def slot_ranges(self, num_params: int) -> np.ndarray:
        """Normalize to an array of shape (num_params, 2)."""
        ranges = self.ranges
        if (
            len(ranges) == 2
            and not isinstance(ranges[0], (tuple, list, np.ndarray))
            and not isinstance(ranges[1], (tuple, list, np.ndarray))
        ):
            ranges = [(float(ranges[0]), float(ranges[1]))] * num_params
        out = np.asarray(ranges, dtype=float)
        if out.shape != (num_params, 2):
            raise InvalidArgumentError(
                f"expected one (lo, hi) range per parameter slot "
                f"({num_params}), got shape {out.shape}"
            )
        if np.any(out[:, 0] > out[:, 1]):
            raise InvalidArgumentError("range lower bound exceeds upper bound")
        if not np.all(np.isfinite(out)):
            raise InvalidArgumentError("ranges must be finite")
        return out


def sample_parameters(
    ranges: np.ndarray, seed: int, sample_index: int
) -> np.ndarray:
    """Draw one parameter vector from its own (seed, index) RNG stream."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(sample_index,)))
    return rng.uniform(ranges[:, 0], ranges[:, 1])


def qce(circuit: Circuit, config: SamplingConfig | None = None) -> float:
    """Expressibility: 1 minus the mean pairwise state fidelity.

    Draws ``num_samples`` parameter vectors, prepares each state, and
    averages |<psi_i|psi_j>|^2 over unordered pairs i < j. Raises for
    parameterless circuits unless the config downgrades that to a
    warning (in which case all states coincide and QCE is exactly 0).
    """
    config = config or SamplingConfig()
    if circuit.num_params == 0:
        if not config.allow_parameterless:
            raise InvalidArgumentError(
                "circuit takes no parameters; expressibility is 0 by definition"
            )
        warnings.warn(
            "expressibility of a parameterless circuit is 0 by definition",
            stacklevel=2,
        )
        return 0.0
    ranges = config.slot_ranges(circuit.num_params)
    n_samples = config.num_samples
    states = np.empty((n_samples, 1 << circuit.num_qubits), dtype=complex)
    for i in range(n_samples):
        params = sample_parameters(ranges, config.seed, i)
        states[i] = simulate_statevector(bind(circuit, params)).amplitudes
    overlaps = states.conj() @ states.T
    sq = np.abs(overlaps) ** 2
    off_diagonal = float(np.sum(sq) - np.sum(np.diag(sq)))
    mean_fidelity = off_diagonal / (n_samples * (n_samples - 1))
    return float(min(1.0, max(0.0, 1.0 - mean_fidelity)))


def qcf(
    circuit: Circuit,
    noise: NoiseModel | None = None,
    max_qubits: int = DENSITY_MAX_QUBITS,
) -> float:
    """Noise fidelity: F(ideal state, state evolved under ``noise``).

    Requires a bound circuit. With a zero noise model the result is
    1.0 by construction and carries no information; a warning says so.
    """
    noise = noise or NoiseModel()
    if noise.is_zero():
        warnings.warn(
            "noise model is zero: fidelity is 1 by construction and "
            "carries no information",
            stacklevel=2,
        )
    ideal = simulate_statevector(circuit).to_density()
    noisy = simulate_density(circuit, noise, max_qubits=max_qubits)
    return state_fidelity(ideal, noisy)


def qlr(circuit: Circuit) -> float:
    """Locality ratio: single-qubit gates over total gates."""
    stats = gate_stats(circuit)
    if stats.total == 0:
        raise InvalidArgumentError("locality ratio of an empty circuit is undefined")
    return stats.single_qubit / stats.total


def eee(circuit: Circuit, subsystem: Sequence[int] = (0,)) -> float:
    """Entanglement entropy (bits) of ``subsystem`` in the prepared state.

    ``subsystem`` must be a non-empty strict subset of the qubits; the
    circuit must be bound.
    """
    kept = _strict_subset(subsystem, circuit.num_qubits, "subsystem")
    state = simulate_statevector(circuit)
    return von_neumann_entropy(partial_trace(state, kept))


def qmi(
    circuit: Circuit,
    subsystem_a: Sequence[int] = (0,),
    subsystem_b: Sequence[int] | None = None,
) -> float:
    """Mutual information S(A) + S(B) - S(AB) in bits.

    ``subsystem_b`` defaults to the complement of ``subsystem_a``. The
    subsystems must be disjoint and non-empty. For a pure state on
    A union B = everything, this equals twice the entanglement entropy
    of A.
    """
    n = circuit.num_qubits
    a = _strict_subset(subsystem_a, n, "subsystem_a")
    if subsystem_b is None:
        b = tuple(q for q in range(n) if q not in a)
    else:
        b = tuple(sorted(int(q) for q in subsystem_b))
        if not b:
            raise InvalidArgumentError("subsystem_b must be non-empty")
        if any(q < 0 or q >= n for q in b):
            raise InvalidArgumentError(f"subsystem_b {b} out of range")
        if len(set(b)) != len(b):
            raise InvalidArgumentError("subsystem_b has duplicate indices")
    if set(a) & set(b):
        raise InvalidArgumentError("subsystems must be disjoint")
    state = simulate_statevector(circuit)
    s_a = von_neumann_entropy(partial_trace(state, a))
    s_b = von_neumann_entropy(partial_trace(state, b))
    s_ab = von_neumann_entropy(partial_trace(state, tuple(sorted(a + b))))
    return s_a + s_b - s_ab


def _strict_subset(subsystem: Sequence[int], n: int, name: str) -> tuple[int, ...]:
    idx = tuple(sorted(int(q) for q in subsystem))
    if not idx:
        raise InvalidArgumentError(f"{name} must be non-empty")
    if len(set(idx)) != len(idx):
        raise InvalidArgumentError(f"{name} has duplicate indices")
    if any(q < 0 or q >= n for q in idx):
        raise InvalidArgumentError(f"{name} {idx} out of range for {n} qubits")
    if len(idx) >= n:
        raise InvalidArgumentError(f"{name} must be a strict subset of the qubits")
    return idx


@dataclass(frozen=True)
class CircuitMetricsReport:
    """All five circuit metrics plus the configuration that produced them."""

    qce: float
    qcf: float
    qlr: float
    eee: float
    qmi: float
    seed: int
    num_samples: int
    subsystem_a: tuple[int, ...]
    subsystem_b: tuple[int, ...]
    noise: NoiseModel
    bound_params: tuple[float, ...]


def compute_circuit_metrics(
    circuit: Circuit,
    sampling: SamplingConfig | None = None,
    noise: NoiseModel | None = None,
    subsystem: Sequence[int] = (0,),
    bound_params: Sequence[float] | None = None,
) -> CircuitMetricsReport:
    """Run the full circuit-metric battery.

    Unbound circuits are bound for QCF/EEE/QMI with ``bound_params`` if
    given, otherwise with uniform draws on [0, 2pi) from the sampling
    seed; the binding used is echoed in the report.
    """
    sampling = sampling or SamplingConfig(allow_parameterless=True)
    noise = noise or NoiseModel()
    n = circuit.num_qubits
    a = _strict_subset(subsystem, n, "subsystem")
    b = tuple(q for q in range(n) if q not in a)

    if circuit.num_params > 0:
        if bound_params is None:
            rng = np.random.default_rng(
                np.random.SeedSequence(sampling.seed, spawn_key=(0xB1D,))
            )
            values = tuple(float(v) for v in rng.uniform(0.0, TWO_PI, circuit.num_params))
        else:
            values = tuple(float(v) for v in bound_params)
        bound = bind(circuit, values)
    else:
        if bound_params:
            raise InvalidArgumentError("circuit takes no parameters to bind")
        values = ()
        bound = circuit
    return CircuitMetricsReport(
        qce=qce(circuit, sampling),
        qcf=qcf(bound, noise),
        qlr=qlr(circuit),
        eee=eee(bound, a),
        qmi=qmi(bound, a, b),
        seed=sampling.seed,
        num_samples=sampling.num_samples,
        subsystem_a=a,
        subsystem_b=b,
        noise=noise,
        bound_params=values,
    )
