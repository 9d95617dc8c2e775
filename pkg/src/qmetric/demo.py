"""End-to-end demonstration: one report over all three metric families.

The demo is fully self-contained and deterministic per seed: the
reference 3-qubit circuit for the circuit metrics, a synthetic
two-cluster dataset pushed through the data-encoding map for the
feature metrics, and a bundled pair of training logs (one hybrid-style
run that never reaches the accuracy target, one classical-style run
that does) for the training metrics.
"""

from __future__ import annotations

import math
from importlib import resources

import numpy as np

from .circuit_metrics import SamplingConfig, compute_circuit_metrics
from .feature_metrics import (
    CircuitEvaluator,
    FeatureMatrix,
    QosConfig,
    edqfs,
    extract_quantum_features,
    fmcr,
    qlad,
    qos,
)
from .io.report import (
    MetricReport,
    circuit_block,
    features_block,
    make_meta,
    training_block,
)
from .io.tabular import parse_gradient_log, parse_training_log
from .qsim.builders import (
    build_case_study,
    build_real_amplitudes,
    build_zz_feature_map,
)
from .qsim.circuit import bind, compose
from .qsim.simulate import NoiseModel
from .training_metrics import compute_training_metrics, rqlsi, rqtei

DEMO_SAMPLES = 500
DEMO_DIMS = 3
DEMO_HYBRID_PARAMS = 14
DEMO_CLASSICAL_PARAMS = 51


def make_cluster_dataset(seed: int, num_samples: int = DEMO_SAMPLES) -> FeatureMatrix:
    """Two Gaussian clusters in 3-D, centered inside the encoding range."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0xDA7A,)))
    half = num_samples // 2
    lo = rng.normal(0.35 * math.pi, 0.12, size=(half, DEMO_DIMS))
    hi = rng.normal(0.65 * math.pi, 0.12, size=(num_samples - half, DEMO_DIMS))
    return FeatureMatrix(np.vstack([lo, hi]))


def _load_text(name: str) -> str:
    return (resources.files("qmetric") / "data" / name).read_text(encoding="utf-8")


def demo_report(
    seed: int = 42,
    noise: NoiseModel | None = None,
    timestamp: str | None = None,
) -> MetricReport:
    """Build the combined demo report."""
    circuit = build_case_study(DEMO_DIMS)
    sampling = SamplingConfig(num_samples=50, seed=seed)
    circuit_metrics = compute_circuit_metrics(circuit, sampling, noise)

    inputs = make_cluster_dataset(seed)
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0xA245,)))
    ansatz_params = rng.uniform(0.0, 2.0 * math.pi, circuit.num_params - DEMO_DIMS)
    # extract from the model's quantum layer (ansatz frozen at the demo
    # weights), not the bare encoding map: a first-order encoding circuit
    # is diagonal after its Hadamard wall, so its basis-state probabilities
    # are input-independent and the extracted matrix would be degenerate
    quantum_layer = compose(
        build_zz_feature_map(DEMO_DIMS, reps=1),
        bind(
            build_real_amplitudes(DEMO_DIMS, reps=3, entanglement="reverse_linear"),
            ansatz_params,
        ),
    )
    encoded = extract_quantum_features(quantum_layer, inputs)
    model = CircuitEvaluator(
        circuit,
        fixed_params=tuple(float(v) for v in ansatz_params),
        observables=("Z" * DEMO_DIMS,),
    )
    qos_config = QosConfig(seed=seed)
    features = features_block(
        fmcr=fmcr(encoded, d_in=DEMO_DIMS),
        edqfs=edqfs(encoded),
        qlad=qlad(encoded),
        qos=qos(model, inputs, qos_config),
        config={
            "d_in": DEMO_DIMS,
            "variance_threshold": 0.95,
            "qos_sigma": qos_config.sigma,
            "qos_num_perturbations": qos_config.num_perturbations,
            "num_samples": inputs.num_samples,
            "seed": seed,
        },
    )

    hybrid = parse_training_log(_load_text("demo_hybrid.csv"), DEMO_HYBRID_PARAMS)
    classical = parse_training_log(
        _load_text("demo_classical.csv"), DEMO_CLASSICAL_PARAMS
    )
    grads = parse_gradient_log(_load_text("demo_gradients.jsonl"))
    training = training_block(
        compute_training_metrics(hybrid, grads),
        compute_training_metrics(classical),
        rqlsi=rqlsi(hybrid, classical),
        rqtei=rqtei(hybrid, classical),
    )

    return MetricReport(
        meta=make_meta(seed, timestamp),
        circuit=circuit_block(circuit_metrics),
        features=features,
        training=training,
    )
