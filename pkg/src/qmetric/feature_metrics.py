"""Feature-space diagnostics computed from sample-by-dimension matrices.

The metrics operate on a FeatureMatrix (rows are samples). Rows can be
tagged as probability vectors, which is what the quantum feature
extractor produces (basis-state probabilities of the encoded state) and
what the activation-diversity metric requires.

- pca_spectrum: sample-covariance eigenvalues, descending.
- FMCR: input dimension over the number of principal components needed
  to reach a cumulative variance threshold.
- EDQFS: participation ratio (sum(lambda))^2 / sum(lambda^2), between 1
  and the rank.
- QLAD: mean per-row population variance of probability outputs; 0 means
  every row is uniform (collapsed, undiverse activations).
- QOS: mean squared output-vs-input perturbation ratio of a model under
  Gaussian input noise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateDataError, InvalidArgumentError
from .qsim.circuit import Circuit, bind
from .qsim.analysis import expectation
from .qsim.simulate import simulate_statevector

Evaluator = Callable[[np.ndarray], "np.ndarray | float | Sequence[float]"]

GENERIC = "generic"
PROBABILITY = "probability"

_PROB_ENTRY_TOL = 1e-9
_PROB_SUM_TOL = 1e-6


@dataclass(frozen=True)
class FeatureMatrix:
    """A 2-D float matrix of samples by feature dimensions.

    ``semantics`` is "generic" or "probability"; probability rows must
    be non-negative within 1e-9 and sum to 1 within 1e-6.
    """

    data: np.ndarray
    semantics: str = GENERIC

    def __post_init__(self) -> None:
        data = np.array(self.data, dtype=float, copy=True)
        if data.ndim != 2:
            raise InvalidArgumentError(f"feature matrix must be 2-D, got {data.ndim}-D")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise InvalidArgumentError("feature matrix must be non-empty")
        if not np.all(np.isfinite(data)):
            raise InvalidArgumentError("feature matrix contains non-finite values")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        if self.semantics not in (GENERIC, PROBABILITY):
            raise InvalidArgumentError(
                f"semantics must be '{GENERIC}' or '{PROBABILITY}', got {self.semantics!r}"
            )
        if self.semantics == PROBABILITY:
            if np.min(data) < -_PROB_ENTRY_TOL:
                raise InvalidArgumentError("probability rows must be non-negative")
            sums = np.sum(data, axis=1)
            if np.max(np.abs(sums - 1.0)) > _PROB_SUM_TOL:
                raise InvalidArgumentError("probability rows must sum to 1")

    @property
    def num_samples(self) -> int:
        return self.data.shape[0]

    @property
    def num_dims(self) -> int:
        return self.data.shape[1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FeatureMatrix):
            return NotImplemented
        return self.semantics == other.semantics and np.array_equal(
            self.data, other.data
        )

    def __hash__(self) -> int:  # frozen dataclass contract
        return hash((self.semantics, self.data.shape))


@dataclass(frozen=True)
class PcaSpectrum:
    """Descending, clamped eigenvalues of the sample covariance."""

    eigenvalues: np.ndarray
    total_variance: float
    cumulative_ratio: np.ndarray


def pca_spectrum(features: FeatureMatrix) -> PcaSpectrum:
    """Eigen-spectrum of the column-centered sample covariance (ddof 1).

    Eigenvalues are sorted descending and clamped at zero (roundoff can
    produce dust around -1e-10). Raises DegenerateDataError when the
    total variance is zero, i.e. all rows are identical.
    """
    x = features.data
    if features.num_samples < 2:
        raise InvalidArgumentError("covariance needs at least 2 samples")
    centered = x - np.mean(x, axis=0)
    cov = (centered.T @ centered) / (features.num_samples - 1)
    evals = np.linalg.eigvalsh(0.5 * (cov + cov.T))[::-1]
    evals = np.clip(evals, 0.0, None)
    csum = np.cumsum(evals)
    total = float(csum[-1])
    if total <= 0.0:
        raise DegenerateDataError("all samples identical: total variance is zero")
    return PcaSpectrum(
        eigenvalues=evals,
        total_variance=total,
        cumulative_ratio=csum / total,
    )


def effective_dimension(features: FeatureMatrix, threshold: float = 0.95) -> int:
    """Smallest number of leading components reaching ``threshold`` variance."""
    if not 0.0 < threshold <= 1.0:
        raise InvalidArgumentError(f"threshold must lie in (0, 1], got {threshold}")
    spectrum = pca_spectrum(features)
    # absorb cumulative-sum dust at exact boundaries; the last ratio is 1.0
    hits = np.nonzero(spectrum.cumulative_ratio >= threshold - 1e-12)[0]
    return int(hits[0]) + 1


def fmcr(features: FeatureMatrix, d_in: int, threshold: float = 0.95) -> float:
    """Compression ratio: input dimension over effective output dimension.

    ``d_in`` is the dimensionality of the data *before* the mapping that
    produced ``features``; it is the caller's to supply since the matrix
    itself no longer knows it.
    """
    if d_in < 1:
        raise InvalidArgumentError(f"d_in must be at least 1, got {d_in}")
    return d_in / effective_dimension(features, threshold)


def edqfs(features: FeatureMatrix) -> float:
    """Participation ratio of the covariance spectrum.

    1.0 when variance lives on a single direction, k when spread evenly
    over k directions; bounded by the rank.
    """
    spectrum = pca_spectrum(features)
    evals = spectrum.eigenvalues
    return float(np.sum(evals) ** 2 / np.sum(evals**2))


def qlad(features: FeatureMatrix) -> float:
    """Activation diversity: mean per-row population variance.

    Requires probability semantics and at least 2 entries per row.
    Uniform rows give exactly 0; a one-hot row of width K gives
    (K-1)/K^2.
    """
    if features.semantics != PROBABILITY:
        raise InvalidArgumentError(
            "activation diversity is defined on probability rows; "
            "tag the matrix semantics accordingly"
        )
    if features.num_dims < 2:
        raise InvalidArgumentError("rows need at least 2 entries")
    return float(np.mean(np.var(features.data, axis=1)))


@dataclass(frozen=True)
class QosConfig:
    """Perturbation schedule for the sensitivity metric."""

    sigma: float = 0.01
    num_perturbations: int = 10
    seed: int = 0

    def __post_init__(self) -> None:
        if self.sigma <= 0.0:
            raise InvalidArgumentError(f"sigma must be positive, got {self.sigma}")
        if self.num_perturbations < 1:
            raise InvalidArgumentError("need at least one perturbation per sample")


def qos(model: Evaluator, inputs: FeatureMatrix, config: QosConfig | None = None) -> float:
    """Output sensitivity: mean of ||f(x+eps) - f(x)||^2 / ||eps||^2.

    eps ~ N(0, sigma^2 I), drawn from an RNG stream keyed by
    (seed, sample index, perturbation index) so the result is
    independent of evaluation order. A zero-norm draw (astronomically
    unlikely) is resampled once from the same stream.

    The model must return a fixed-dimension vector for every input;
    a linear map f(x) = c*x scores exactly c^2.
    """
    config = config or QosConfig()
    x = inputs.data
    out_dim: int | None = None
    total = 0.0
    count = 0
    for i in range(inputs.num_samples):
        base = _eval_model(model, x[i], out_dim)
        out_dim = base.shape[0]
        for j in range(config.num_perturbations):
            rng = np.random.default_rng(
                np.random.SeedSequence(config.seed, spawn_key=(i, j))
            )
            eps = rng.normal(0.0, config.sigma, inputs.num_dims)
            norm_sq = float(eps @ eps)
            if norm_sq < 1e-24:
                eps = rng.normal(0.0, config.sigma, inputs.num_dims)
                norm_sq = float(eps @ eps)
            shifted = _eval_model(model, x[i] + eps, out_dim)
            diff = shifted - base
            total += float(diff @ diff) / norm_sq
            count += 1
    return total / count


def _eval_model(model: Evaluator, x: np.ndarray, out_dim: int | None) -> np.ndarray:
    y = np.atleast_1d(np.asarray(model(x), dtype=float))
    if y.ndim != 1:
        raise InvalidArgumentError(f"model output must be a vector, got shape {y.shape}")
    if not np.all(np.isfinite(y)):
        raise InvalidArgumentError("model output contains non-finite values")
    if out_dim is not None and y.shape[0] != out_dim:
        raise InvalidArgumentError(
            f"model output dimension changed from {out_dim} to {y.shape[0]}"
        )
    return y


def extract_quantum_features(feature_map: Circuit, inputs: FeatureMatrix) -> FeatureMatrix:
    """Encode each input row and return basis-state probabilities.

    Row i of the result is |amplitudes|^2 of the state prepared by the
    feature map bound to input row i: shape (n_samples, 2^n_qubits),
    probability semantics.
    """
    if feature_map.num_params != inputs.num_dims:
        raise InvalidArgumentError(
            f"feature map takes {feature_map.num_params} parameters but "
            f"inputs have {inputs.num_dims} dimensions"
        )
    rows = np.empty((inputs.num_samples, 1 << feature_map.num_qubits))
    for i in range(inputs.num_samples):
        state = simulate_statevector(bind(feature_map, inputs.data[i]))
        rows[i] = state.probabilities()
    return FeatureMatrix(rows, semantics=PROBABILITY)


@dataclass(frozen=True)
class CircuitEvaluator:
    """Wrap a parameterized circuit as an input -> expectations model.

    The circuit's first ``input_dim`` slots take the input vector; the
    remaining slots are frozen at ``fixed_params``. The output is one
    expectation value per observable (Pauli strings, letter i on
    qubit i).
    """

    circuit: Circuit
    fixed_params: tuple[float, ...]
    observables: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "fixed_params", tuple(float(v) for v in self.fixed_params)
        )
        object.__setattr__(self, "observables", tuple(self.observables))
        if not self.observables:
            raise InvalidArgumentError("need at least one observable")
        if len(self.fixed_params) > self.circuit.num_params:
            raise InvalidArgumentError(
                "more fixed parameters than the circuit has slots"
            )

    @property
    def input_dim(self) -> int:
        return self.circuit.num_params - len(self.fixed_params)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.input_dim,):
            raise InvalidArgumentError(
                f"evaluator takes {self.input_dim} inputs, got shape {x.shape}"
            )
        params = np.concatenate([x, np.asarray(self.fixed_params)])
        state = simulate_statevector(bind(self.circuit, params))
        return np.array([expectation(state, obs) for obs in self.observables])
