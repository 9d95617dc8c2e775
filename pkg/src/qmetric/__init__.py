"""qmetric: interpretable diagnostics for hybrid quantum-classical models.

Three metric families over three kinds of evidence:

- circuit metrics (expressibility, noise fidelity, locality,
  entanglement) computed by simulating the circuit description itself,
- feature-space metrics (compression, effective dimension, activation
  diversity, output sensitivity) computed from feature matrices,
- training-dynamics metrics (stability, efficiency, gradient health)
  computed from epoch logs and gradient traces.

Everything is pure-Python + numpy; no quantum framework is required.
"""

from .circuit_metrics import (
    CircuitMetricsReport,
    SamplingConfig,
    compute_circuit_metrics,
    eee,
    qce,
    qcf,
    qlr,
    qmi,
)
from .errors import (
    DegenerateDataError,
    InvalidArgumentError,
    ParseError,
    QMetricError,
    ResourceLimitError,
)
from .feature_metrics import (
    CircuitEvaluator,
    FeatureMatrix,
    PcaSpectrum,
    QosConfig,
    edqfs,
    effective_dimension,
    extract_quantum_features,
    fmcr,
    pca_spectrum,
    qlad,
    qos,
)
from .training_metrics import (
    EpochRecord,
    GradientEntry,
    GradientLog,
    RelativeEfficiency,
    TrainingLog,
    TrainingMetricsReport,
    bpi,
    compute_training_metrics,
    qgn,
    qgn_series,
    rqlsi,
    rqtei,
    tei,
    tsi,
)
from .qsim import (
    Circuit,
    Const,
    DensityMatrix,
    Gate,
    GateKind,
    GateStats,
    NoiseModel,
    PiMinusVar,
    Product,
    QuantumState,
    Scale,
    Sum,
    Var,
    bind,
    build_case_study,
    build_real_amplitudes,
    build_zz_feature_map,
    compose,
    expectation,
    gate_stats,
    partial_trace,
    simulate_density,
    simulate_statevector,
    state_fidelity,
    von_neumann_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "CircuitEvaluator",
    "CircuitMetricsReport",
    "Const",
    "DegenerateDataError",
    "DensityMatrix",
    "EpochRecord",
    "FeatureMatrix",
    "Gate",
    "GateKind",
    "GateStats",
    "GradientEntry",
    "GradientLog",
    "InvalidArgumentError",
    "NoiseModel",
    "ParseError",
    "PcaSpectrum",
    "PiMinusVar",
    "Product",
    "QMetricError",
    "QosConfig",
    "QuantumState",
    "RelativeEfficiency",
    "ResourceLimitError",
    "SamplingConfig",
    "Scale",
    "Sum",
    "TrainingLog",
    "TrainingMetricsReport",
    "Var",
    "__version__",
    "bind",
    "bpi",
    "build_case_study",
    "build_real_amplitudes",
    "build_zz_feature_map",
    "compose",
    "compute_circuit_metrics",
    "compute_training_metrics",
    "edqfs",
    "eee",
    "effective_dimension",
    "expectation",
    "extract_quantum_features",
    "fmcr",
    "gate_stats",
    "partial_trace",
    "pca_spectrum",
    "qce",
    "qcf",
    "qgn",
    "qgn_series",
    "qlad",
    "qlr",
    "qmi",
    "qos",
    "rqlsi",
    "rqtei",
    "simulate_density",
    "simulate_statevector",
    "state_fidelity",
    "tei",
    "tsi",
    "von_neumann_entropy",
]
