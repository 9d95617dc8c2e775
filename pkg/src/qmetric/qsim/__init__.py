"""Self-contained simulator for small parameterized circuits."""

from .analysis import (
    binary_entropy_bits,
    expectation,
    partial_trace,
    state_fidelity,
    von_neumann_entropy,
)
from .builders import (
    ENTANGLEMENT_PATTERNS,
    build_case_study,
    build_real_amplitudes,
    build_zz_feature_map,
)
from .circuit import Circuit, Gate, GateStats, bind, compose, gate_stats
from .expr import (
    AngleExpr,
    Const,
    PiMinusVar,
    Product,
    Scale,
    Sum,
    Var,
    evaluate,
    max_slot,
    shift_slots,
)
from .gates import (
    GateKind,
    amplitude_damping_kraus,
    depolarizing_kraus_1q,
    depolarizing_kraus_2q,
)
from .simulate import (
    DENSITY_MAX_QUBITS,
    STATEVECTOR_MAX_QUBITS,
    DensityMatrix,
    NoiseModel,
    QuantumState,
    simulate_density,
    simulate_statevector,
)

__all__ = [
    "AngleExpr",
    "Circuit",
    "Const",
    "DENSITY_MAX_QUBITS",
    "DensityMatrix",
    "ENTANGLEMENT_PATTERNS",
    "Gate",
    "GateKind",
    "GateStats",
    "NoiseModel",
    "PiMinusVar",
    "Product",
    "QuantumState",
    "STATEVECTOR_MAX_QUBITS",
    "Scale",
    "Sum",
    "Var",
    "amplitude_damping_kraus",
    "bind",
    "binary_entropy_bits",
    "depolarizing_kraus_1q",
    "depolarizing_kraus_2q",
    "build_case_study",
    "build_real_amplitudes",
    "build_zz_feature_map",
    "compose",
    "evaluate",
    "expectation",
    "gate_stats",
    "max_slot",
    "partial_trace",
    "shift_slots",
    "simulate_density",
    "simulate_statevector",
    "state_fidelity",
    "von_neumann_entropy",
]
