"""Circuit container, gate statistics, binding, composition, builders."""

import math

import numpy as np
import pytest

from qmetric.errors import InvalidArgumentError
from qmetric.qsim import (
    Circuit,
    Const,
    Gate,
    GateKind,
    PiMinusVar,
    Product,
    Scale,
    Var,
    bind,
    build_case_study,
    build_real_amplitudes,
    build_zz_feature_map,
    compose,
    evaluate,
    gate_stats,
)


class TestGate:
    def test_two_qubit_arity(self):
        with pytest.raises(InvalidArgumentError):
            Gate(GateKind.CX, (0,))

    def test_single_qubit_arity(self):
        with pytest.raises(InvalidArgumentError):
            Gate(GateKind.H, (0, 1))

    def test_duplicate_qubits(self):
        with pytest.raises(InvalidArgumentError):
            Gate(GateKind.CX, (1, 1))

    def test_negative_qubit(self):
        with pytest.raises(InvalidArgumentError):
            Gate(GateKind.X, (-1,))

    def test_angle_required(self):
        with pytest.raises(InvalidArgumentError):
            Gate(GateKind.RY, (0,))

    def test_angle_forbidden(self):
        with pytest.raises(InvalidArgumentError):
            Gate(GateKind.H, (0,), Const(1.0))

    def test_is_bound(self):
        assert Gate(GateKind.RY, (0,), Const(1.0)).is_bound()
        assert not Gate(GateKind.RY, (0,), Var(0)).is_bound()
        assert Gate(GateKind.H, (0,)).is_bound()


class TestCircuit:
    def test_num_params_from_slots(self):
        circ = Circuit(2, [
            Gate(GateKind.RY, (0,), Var(4)),
            Gate(GateKind.RZ, (1,), Var(1)),
        ])
        assert circ.num_params == 5

    def test_num_params_zero_when_bound(self, bell_circuit):
        assert bell_circuit.num_params == 0

    def test_qubit_out_of_range(self):
        with pytest.raises(InvalidArgumentError):
            Circuit(1, [Gate(GateKind.X, (1,))])

    def test_num_qubits_positive(self):
        with pytest.raises(InvalidArgumentError):
            Circuit(0, [])

    def test_empty_circuit_allowed(self):
        circ = Circuit(3, [])
        assert circ.num_params == 0
        assert len(circ.gates) == 0


class TestGateStats:
    def test_empty(self):
        stats = gate_stats(Circuit(2, []))
        assert (stats.total, stats.single_qubit, stats.two_qubit) == (0, 0, 0)
        assert stats.depth == 0

    def test_bell(self, bell_circuit):
        stats = gate_stats(bell_circuit)
        assert stats.total == 2
        assert stats.single_qubit == 1
        assert stats.two_qubit == 1
        assert stats.parameterized == 0
        assert stats.depth == 2

    def test_parallel_gates_share_a_layer(self):
        circ = Circuit(3, [
            Gate(GateKind.H, (0,)),
            Gate(GateKind.H, (1,)),
            Gate(GateKind.CX, (0, 1)),
            Gate(GateKind.X, (2,)),
        ])
        assert gate_stats(circ).depth == 2

    def test_sequential_on_one_qubit(self):
        circ = Circuit(1, [Gate(GateKind.H, (0,)), Gate(GateKind.X, (0,))])
        assert gate_stats(circ).depth == 2

    def test_parameterized_count(self):
        circ = Circuit(2, [
            Gate(GateKind.RY, (0,), Var(0)),
            Gate(GateKind.RY, (1,), Const(0.5)),
            Gate(GateKind.H, (0,)),
        ])
        assert gate_stats(circ).parameterized == 2


class TestBind:
    def test_wrong_length(self):
        circ = Circuit(1, [Gate(GateKind.RY, (0,), Var(0))])
        with pytest.raises(InvalidArgumentError):
            bind(circ, (1.0, 2.0))

    def test_values_substituted(self):
        circ = Circuit(1, [
            Gate(GateKind.RY, (0,), Scale(2.0, Var(0))),
            Gate(GateKind.RZ, (0,), PiMinusVar(1)),
        ])
        bound = bind(circ, (0.25, 1.0))
        assert bound.num_params == 0
        assert bound.gates[0].angle == Const(0.5)
        assert bound.gates[1].angle == Const(math.pi - 1.0)

    def test_non_finite_params(self):
        circ = Circuit(1, [Gate(GateKind.RY, (0,), Var(0))])
        with pytest.raises(InvalidArgumentError):
            bind(circ, (float("nan"),))

    def test_bind_parameterless(self, bell_circuit):
        assert bind(bell_circuit, ()) == bell_circuit


class TestCompose:
    def test_slot_offset(self):
        first = Circuit(2, [Gate(GateKind.RY, (0,), Var(1))])
        second = Circuit(2, [Gate(GateKind.RZ, (1,), Var(0))])
        combined = compose(first, second)
        assert combined.num_params == 3
        assert combined.gates[1].angle == Var(2)

    def test_gate_order(self, bell_circuit):
        tail = Circuit(2, [Gate(GateKind.X, (0,))])
        combined = compose(bell_circuit, tail)
        assert [g.kind for g in combined.gates] == [GateKind.H, GateKind.CX,
                                                   GateKind.X]

    def test_register_mismatch(self, bell_circuit):
        with pytest.raises(InvalidArgumentError):
            compose(bell_circuit, Circuit(3, []))


class TestZzFeatureMap:
    def test_gate_census(self):
        circ = build_zz_feature_map(3, reps=1)
        stats = gate_stats(circ)
        assert stats.total == 15
        assert stats.single_qubit == 9
        assert stats.two_qubit == 6
        assert circ.num_params == 3

    def test_structure(self):
        circ = build_zz_feature_map(2, reps=1)
        kinds = [g.kind for g in circ.gates]
        assert kinds == [GateKind.H, GateKind.H, GateKind.P, GateKind.P,
                        GateKind.CX, GateKind.P, GateKind.CX]
        assert circ.gates[2].angle == Scale(2.0, Var(0))
        assert circ.gates[4].qubits == (0, 1)
        assert circ.gates[5].qubits == (1,)

    def test_pair_angle_value(self):
        circ = build_zz_feature_map(2, reps=1)
        pair = circ.gates[5].angle
        assert pair == Scale(2.0, Product([PiMinusVar(0), PiMinusVar(1)]))
        x = (0.4, 1.7)
        expected = 2.0 * (math.pi - 0.4) * (math.pi - 1.7)
        assert evaluate(pair, x) == pytest.approx(expected, abs=1e-14)

    def test_pair_order(self):
        circ = build_zz_feature_map(3, reps=1)
        cx_targets = [g.qubits for g in circ.gates if g.kind == GateKind.CX]
        assert cx_targets == [(0, 1), (0, 1), (0, 2), (0, 2), (1, 2), (1, 2)]

    def test_reps_repeat_the_block(self):
        one = build_zz_feature_map(3, reps=1)
        two = build_zz_feature_map(3, reps=2)
        assert len(two.gates) == 2 * len(one.gates)
        assert two.gates[:15] == one.gates
        assert two.num_params == 3

    def test_needs_two_qubits(self):
        with pytest.raises(InvalidArgumentError):
            build_zz_feature_map(1, reps=1)


class TestRealAmplitudes:
    def test_gate_census(self):
        circ = build_real_amplitudes(3, reps=3)
        stats = gate_stats(circ)
        assert stats.total == 18
        assert stats.single_qubit == 12
        assert stats.two_qubit == 6
        assert circ.num_params == 12

    def test_slot_layout(self):
        circ = build_real_amplitudes(2, reps=1)
        ry_angles = [g.angle for g in circ.gates if g.kind == GateKind.RY]
        assert ry_angles == [Var(0), Var(1), Var(2), Var(3)]

    def test_reverse_linear_order(self):
        circ = build_real_amplitudes(3, reps=1)
        cx = [g.qubits for g in circ.gates if g.kind == GateKind.CX]
        assert cx == [(1, 2), (0, 1)]

    def test_linear_order(self):
        circ = build_real_amplitudes(3, reps=1, entanglement="linear")
        cx = [g.qubits for g in circ.gates if g.kind == GateKind.CX]
        assert cx == [(0, 1), (1, 2)]

    def test_full_pairs(self):
        circ = build_real_amplitudes(3, reps=1, entanglement="full")
        cx = [g.qubits for g in circ.gates if g.kind == GateKind.CX]
        assert cx == [(0, 1), (0, 2), (1, 2)]

    def test_single_qubit_has_no_entanglers(self):
        circ = build_real_amplitudes(1, reps=2)
        assert all(g.kind == GateKind.RY for g in circ.gates)
        assert len(circ.gates) == 3

    def test_unknown_entanglement(self):
        with pytest.raises(InvalidArgumentError):
            build_real_amplitudes(3, entanglement="ring")


class TestCaseStudy:
    def test_census(self):
        circ = build_case_study()
        stats = gate_stats(circ)
        assert circ.num_qubits == 3
        assert stats.total == 33
        assert stats.single_qubit == 21
        assert stats.two_qubit == 12
        assert circ.num_params == 15

    def test_ansatz_slots_follow_encoder_slots(self):
        circ = build_case_study()
        ry_angles = [g.angle for g in circ.gates if g.kind == GateKind.RY]
        assert ry_angles[0] == Var(3)
        assert ry_angles[-1] == Var(14)

    def test_matches_composition(self):
        expected = compose(build_zz_feature_map(3, reps=1),
                           build_real_amplitudes(3, reps=3))
        assert build_case_study() == expected


class TestRandomCircuits:
    def test_slot_count_matches_manual_recount(self):
        from conftest import random_parameterized_circuit
        from qmetric.qsim import max_slot

        rng = np.random.default_rng(7)
        for _ in range(50):
            circ = random_parameterized_circuit(rng)
            slots = [max_slot(g.angle) for g in circ.gates
                     if g.angle is not None]
            expected = max(slots, default=-1) + 1
            assert circ.num_params == expected
