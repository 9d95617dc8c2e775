"""Feature-space metrics: PCA spectrum, compression, effective
dimension, activation diversity, output sensitivity, extraction."""

import math

import numpy as np
import pytest

from qmetric.errors import DegenerateDataError, InvalidArgumentError
from qmetric.feature_metrics import (
    PROBABILITY,
    CircuitEvaluator,
    FeatureMatrix,
    QosConfig,
    edqfs,
    effective_dimension,
    extract_quantum_features,
    fmcr,
    pca_spectrum,
    qlad,
    qos,
)
from qmetric.qsim import Circuit, Gate, GateKind, Var, build_zz_feature_map

# Columns of the 4x4 Hadamard matrix other than the all-ones column:
# exactly mean-free and pairwise orthogonal, so they give covariance
# matrices that are diagonal in exact floating-point arithmetic.
HADAMARD_COLS = np.array([
    [1.0, 1.0, 1.0],
    [-1.0, 1.0, -1.0],
    [1.0, -1.0, -1.0],
    [-1.0, -1.0, 1.0],
])


def diag_cov_matrix(scales):
    """Feature matrix whose covariance is exactly diag(s^2 * 4/3)."""
    cols = [HADAMARD_COLS[:, j] * s for j, s in enumerate(scales)]
    return FeatureMatrix(np.column_stack(cols))


class TestFeatureMatrix:
    def test_requires_2d(self):
        with pytest.raises(InvalidArgumentError):
            FeatureMatrix(np.arange(4.0))

    def test_rejects_nan(self):
        with pytest.raises(InvalidArgumentError):
            FeatureMatrix(np.array([[1.0, float("nan")]]))

    def test_data_is_read_only(self):
        fm = FeatureMatrix(np.ones((2, 2)))
        with pytest.raises(ValueError):
            fm.data[0, 0] = 2.0

    def test_probability_negative_entry(self):
        with pytest.raises(InvalidArgumentError):
            FeatureMatrix(np.array([[1.1, -0.1]]), semantics=PROBABILITY)

    def test_probability_bad_sum(self):
        with pytest.raises(InvalidArgumentError):
            FeatureMatrix(np.array([[0.5, 0.4]]), semantics=PROBABILITY)

    def test_probability_tolerates_dust(self):
        row = np.array([[0.5 - 1e-10, 0.5 + 1e-10]])
        fm = FeatureMatrix(row, semantics=PROBABILITY)
        assert fm.semantics == PROBABILITY

    def test_unknown_semantics(self):
        with pytest.raises(InvalidArgumentError):
            FeatureMatrix(np.ones((1, 1)), semantics="counts")

    def test_equality_is_by_content(self):
        a = FeatureMatrix(np.ones((2, 2)))
        b = FeatureMatrix(np.ones((2, 2)))
        assert a == b
        assert a != FeatureMatrix(np.zeros((2, 2)) + 2.0)


class TestPcaSpectrum:
    def test_two_column_hand_computation(self):
        x = FeatureMatrix(np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]))
        spectrum = pca_spectrum(x)
        # both columns are [0, 1, 2]: covariance is [[1, 1], [1, 1]]
        np.testing.assert_allclose(spectrum.eigenvalues, [2.0, 0.0],
                                   atol=1e-12)
        assert spectrum.total_variance == pytest.approx(2.0, abs=1e-12)

    def test_sum_matches_total_column_variance(self):
        rng = np.random.default_rng(41)
        x = FeatureMatrix(rng.normal(size=(40, 6)))
        spectrum = pca_spectrum(x)
        expected = float(np.sum(np.var(x.data, axis=0, ddof=1)))
        assert float(np.sum(spectrum.eigenvalues)) == pytest.approx(
            expected, abs=1e-9)

    def test_rotation_invariance(self):
        rng = np.random.default_rng(42)
        x = rng.normal(size=(30, 5))
        q, _ = np.linalg.qr(rng.normal(size=(5, 5)))
        a = pca_spectrum(FeatureMatrix(x)).eigenvalues
        b = pca_spectrum(FeatureMatrix(x @ q)).eigenvalues
        np.testing.assert_allclose(a, b, atol=1e-8)

    def test_descending_and_non_negative(self):
        rng = np.random.default_rng(43)
        x = FeatureMatrix(rng.normal(size=(10, 8)))
        evals = pca_spectrum(x).eigenvalues
        assert np.all(np.diff(evals) <= 0)
        assert np.all(evals >= 0)

    def test_identical_rows_are_degenerate(self):
        with pytest.raises(DegenerateDataError):
            pca_spectrum(FeatureMatrix(np.ones((5, 3))))

    def test_needs_two_samples(self):
        with pytest.raises(InvalidArgumentError):
            pca_spectrum(FeatureMatrix(np.ones((1, 3))))


class TestEffectiveDimension:
    def test_diagonal_spectrum(self):
        x = diag_cov_matrix([1.0, 1.0, 1.0])
        assert effective_dimension(x, 0.95) == 3
        assert effective_dimension(x, 0.5) == 2
        assert effective_dimension(x, 1.0 / 3.0) == 1

    def test_boundary_threshold_is_inclusive(self):
        # two equal components: the first reaches exactly 0.5
        x = FeatureMatrix(np.column_stack([
            HADAMARD_COLS[:, 0], HADAMARD_COLS[:, 1],
        ]))
        assert effective_dimension(x, 0.5) == 1

    def test_threshold_validation(self):
        x = diag_cov_matrix([1.0, 1.0, 1.0])
        with pytest.raises(InvalidArgumentError):
            effective_dimension(x, 0.0)
        with pytest.raises(InvalidArgumentError):
            effective_dimension(x, 1.5)


class TestFmcr:
    def test_rank_one_exact(self):
        x = FeatureMatrix(np.column_stack([
            np.array([0.0, 1.0, 2.0, 3.0]),
            np.full(4, 0.5),
            np.full(4, 0.25),
        ]))
        assert fmcr(x, d_in=3) == 3.0
        assert edqfs(x) == 1.0

    def test_half_spectrum(self):
        # variance split over 2 of 4 directions: d_eff 2 at 0.95
        x = FeatureMatrix(np.column_stack([
            HADAMARD_COLS[:, 0], HADAMARD_COLS[:, 1],
            np.full(4, 1.0), np.full(4, 2.0),
        ]))
        assert fmcr(x, d_in=4) == 2.0

    def test_threshold_monotonicity(self):
        rng = np.random.default_rng(44)
        x = FeatureMatrix(rng.normal(size=(25, 6)) * rng.uniform(0.1, 3.0, 6))
        dims = [effective_dimension(x, t) for t in (0.5, 0.7, 0.9, 0.99, 1.0)]
        assert dims == sorted(dims)
        ratios = [fmcr(x, d_in=6, threshold=t)
                  for t in (0.5, 0.7, 0.9, 0.99, 1.0)]
        assert ratios == sorted(ratios, reverse=True)

    def test_d_in_validation(self):
        x = diag_cov_matrix([1.0, 1.0, 1.0])
        with pytest.raises(InvalidArgumentError):
            fmcr(x, d_in=0)


class TestEdqfs:
    def test_even_spectrum_hits_rank(self):
        x = diag_cov_matrix([1.0, 1.0, 1.0])
        assert edqfs(x) == pytest.approx(3.0, abs=1e-9)

    def test_known_uneven_spectrum(self):
        # eigenvalues proportional to (4, 1, 1): (sum)^2 / sum of squares
        x = diag_cov_matrix([2.0, 1.0, 1.0])
        assert edqfs(x) == pytest.approx(36.0 / 18.0, abs=1e-9)

    def test_bounded_by_rank(self):
        rng = np.random.default_rng(45)
        for _ in range(10):
            x = FeatureMatrix(rng.normal(size=(20, 5)))
            value = edqfs(x)
            rank = int(np.sum(pca_spectrum(x).eigenvalues > 1e-12))
            assert 1.0 <= value <= rank + 1e-9


class TestQlad:
    def test_uniform_rows_exactly_zero(self):
        fm = FeatureMatrix(np.full((6, 4), 0.25), semantics=PROBABILITY)
        assert qlad(fm) == 0.0

    def test_one_hot_rows(self):
        rows = np.eye(8)[np.arange(8) % 8]
        fm = FeatureMatrix(rows, semantics=PROBABILITY)
        assert qlad(fm) == pytest.approx(7.0 / 64.0, abs=1e-15)

    def test_column_permutation_invariant(self):
        rng = np.random.default_rng(46)
        raw = rng.uniform(0.1, 1.0, size=(10, 8))
        raw /= raw.sum(axis=1, keepdims=True)
        fm = FeatureMatrix(raw, semantics=PROBABILITY)
        perm = rng.permutation(8)
        shuffled = FeatureMatrix(raw[:, perm], semantics=PROBABILITY)
        assert qlad(shuffled) == pytest.approx(qlad(fm), rel=1e-12)

    def test_requires_probability_semantics(self):
        with pytest.raises(InvalidArgumentError):
            qlad(FeatureMatrix(np.full((2, 4), 0.25)))

    def test_requires_two_entries(self):
        fm = FeatureMatrix(np.ones((3, 1)), semantics=PROBABILITY)
        with pytest.raises(InvalidArgumentError):
            qlad(fm)

    def test_zero_only_for_uniform(self):
        rows = np.array([[0.5, 0.25, 0.125, 0.125]] * 3)
        fm = FeatureMatrix(rows, semantics=PROBABILITY)
        assert qlad(fm) > 0.0


class TestQos:
    def test_identity_map(self):
        rng = np.random.default_rng(47)
        inputs = FeatureMatrix(rng.uniform(-1, 1, size=(6, 3)))
        assert qos(lambda x: x, inputs) == pytest.approx(1.0, abs=1e-10)

    def test_linear_scaling_by_three(self):
        rng = np.random.default_rng(48)
        inputs = FeatureMatrix(rng.uniform(-1, 1, size=(5, 4)))
        assert abs(qos(lambda x: 3.0 * x, inputs) - 9.0) < 1e-12

    def test_power_of_two_scaling_is_bit_exact(self):
        rng = np.random.default_rng(49)
        inputs = FeatureMatrix(rng.normal(size=(4, 3)))

        def f(x):
            return np.sin(x)

        def g(x):
            return 2.0 * np.sin(x)

        assert qos(g, inputs) == 4.0 * qos(f, inputs)

    def test_constant_model_is_zero(self):
        inputs = FeatureMatrix(np.ones((3, 2)))
        assert qos(lambda x: np.array([5.0, -1.0]), inputs) == 0.0

    def test_deterministic(self):
        rng = np.random.default_rng(50)
        inputs = FeatureMatrix(rng.normal(size=(4, 3)))
        model = lambda x: np.tanh(x)  # noqa: E731
        assert qos(model, inputs) == qos(model, inputs)

    def test_seed_changes_result(self):
        rng = np.random.default_rng(51)
        inputs = FeatureMatrix(rng.normal(size=(4, 3)))
        model = lambda x: np.tanh(x)  # noqa: E731
        a = qos(model, inputs, QosConfig(seed=0))
        b = qos(model, inputs, QosConfig(seed=1))
        assert a != b

    def test_output_dimension_must_be_stable(self):
        inputs = FeatureMatrix(np.zeros((2, 2)))
        calls = []

        def flaky(x):
            calls.append(1)
            return np.zeros(1 if len(calls) > 1 else 2)

        with pytest.raises(InvalidArgumentError):
            qos(flaky, inputs)

    def test_non_finite_output_rejected(self):
        inputs = FeatureMatrix(np.zeros((1, 2)))
        with pytest.raises(InvalidArgumentError):
            qos(lambda x: np.array([float("inf")]), inputs)

    def test_config_validation(self):
        with pytest.raises(InvalidArgumentError):
            QosConfig(sigma=0.0)
        with pytest.raises(InvalidArgumentError):
            QosConfig(num_perturbations=0)


class TestExtraction:
    def test_single_qubit_rotation_probabilities(self):
        feature_map = Circuit(1, [Gate(GateKind.RY, (0,), Var(0))])
        inputs = FeatureMatrix(np.array([[0.0], [math.pi]]))
        out = extract_quantum_features(feature_map, inputs)
        assert out.semantics == PROBABILITY
        np.testing.assert_allclose(out.data, [[1, 0], [0, 1]], atol=1e-12)

    def test_rows_are_normalized(self):
        feature_map = build_zz_feature_map(3, reps=1)
        rng = np.random.default_rng(52)
        inputs = FeatureMatrix(rng.uniform(0, 2 * math.pi, size=(8, 3)))
        out = extract_quantum_features(feature_map, inputs)
        assert out.data.shape == (8, 8)
        np.testing.assert_allclose(out.data.sum(axis=1), 1.0, atol=1e-10)

    def test_dimension_mismatch(self):
        feature_map = build_zz_feature_map(3, reps=1)
        inputs = FeatureMatrix(np.zeros((2, 2)))
        with pytest.raises(InvalidArgumentError):
            extract_quantum_features(feature_map, inputs)


class TestCircuitEvaluator:
    def test_expectation_of_rotation(self):
        circ = Circuit(1, [Gate(GateKind.RY, (0,), Var(0))])
        model = CircuitEvaluator(circ, fixed_params=(), observables=("Z",))
        assert model.input_dim == 1
        for theta in (0.0, 0.7, 2.1):
            assert model(np.array([theta]))[0] == pytest.approx(
                math.cos(theta), abs=1e-12)

    def test_fixed_parameters_fill_trailing_slots(self):
        circ = Circuit(1, [Gate(GateKind.RY, (0,), Var(0)),
                           Gate(GateKind.RY, (0,), Var(1))])
        model = CircuitEvaluator(circ, fixed_params=(0.5,), observables=("Z",))
        assert model.input_dim == 1
        assert model(np.array([0.7]))[0] == pytest.approx(math.cos(1.2),
                                                          abs=1e-12)

    def test_multiple_observables(self, bell_circuit):
        model = CircuitEvaluator(bell_circuit, fixed_params=(),
                                 observables=("ZZ", "XX"))
        out = model(np.zeros(0))
        np.testing.assert_allclose(out, [1.0, 1.0], atol=1e-10)

    def test_wrong_input_shape(self):
        circ = Circuit(1, [Gate(GateKind.RY, (0,), Var(0))])
        model = CircuitEvaluator(circ, fixed_params=(), observables=("Z",))
        with pytest.raises(InvalidArgumentError):
            model(np.zeros(2))

    def test_too_many_fixed(self):
        circ = Circuit(1, [Gate(GateKind.RY, (0,), Var(0))])
        with pytest.raises(InvalidArgumentError):
            CircuitEvaluator(circ, fixed_params=(1.0, 2.0), observables=("Z",))

    def test_works_with_qos(self):
        circ = Circuit(1, [Gate(GateKind.RY, (0,), Var(0))])
        model = CircuitEvaluator(circ, fixed_params=(), observables=("Z",))
        inputs = FeatureMatrix(np.array([[0.3], [1.1]]))
        value = qos(model, inputs, QosConfig(num_perturbations=3))
        # d/dtheta cos(theta) = -sin(theta): sensitivity ~ sin^2, bounded by 1
        assert 0.0 < value < 1.0
