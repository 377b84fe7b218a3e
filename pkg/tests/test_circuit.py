"""Tests for the circuit IR: validation, composition, inversion."""
from __future__ import annotations

import pytest

from cnzsynth import (
    Circuit,
    CircuitBuilder,
    CircuitError,
    Gate,
    Op,
    cccz_6t,
    compose,
    inverse_unitary_segment,
    remap_qubits,
    validate,
)


def empty(qubit_count: int = 0, data=()) -> Circuit:
    return Circuit(qubit_count, 0, (), frozenset(data))


def test_validate_empty_circuit():
    assert validate(empty()) == []


def test_validate_accepts_synthesized_circuit():
    assert validate(cccz_6t()) == []


def test_validate_identical_cx_operands():
    circuit = Circuit(2, 0, (Op(Gate.CX, (0, 0)),), frozenset({0, 1}))
    violations = validate(circuit)
    assert len(violations) == 1
    assert violations[0].op_index == 0
    assert "identical operands" in violations[0].message


def test_validate_condition_precedes_write():
    ops = (
        Op(Gate.CZ, (0, 1), None, (0, 1)),
        Op(Gate.MEASURE, (2,), 0),
    )
    circuit = Circuit(3, 1, ops, frozenset({0, 1}))
    messages = [v.message for v in validate(circuit)]
    assert any("precedes its write" in m for m in messages)


def test_validate_out_of_range_operand():
    circuit = Circuit(1, 0, (Op(Gate.H, (3,)),), frozenset({0}))
    assert any("out of range" in v.message for v in validate(circuit))


def test_validate_double_written_bit():
    ops = (Op(Gate.MEASURE, (0,), 0), Op(Gate.MEASURE, (1,), 0))
    circuit = Circuit(2, 1, ops, frozenset())
    assert any("already written" in v.message for v in validate(circuit))


def test_validate_condition_on_measurement():
    ops = (Op(Gate.MEASURE, (0,), 0), Op(Gate.MEASURE, (1,), 1, (0, 1)))
    circuit = Circuit(2, 2, ops, frozenset())
    assert any("condition on a measurement" in v.message for v in validate(circuit))


def test_validate_measured_data_qubit_needs_reset():
    bare = Circuit(1, 1, (Op(Gate.MEASURE, (0,), 0),), frozenset({0}))
    assert any("never reset" in v.message for v in validate(bare))
    fixed = Circuit(
        1, 1, (Op(Gate.MEASURE, (0,), 0), Op(Gate.RESET, (0,))), frozenset({0}))
    assert validate(fixed) == []


def test_validate_measured_ancilla_without_reset_is_fine():
    circuit = Circuit(1, 1, (Op(Gate.MEASURE, (0,), 0),), frozenset())
    assert validate(circuit) == []


def test_ancilla_qubits_complement_data():
    circuit = cccz_6t()
    assert circuit.data_qubits == frozenset({0, 1, 2, 3})
    assert circuit.ancilla_qubits == frozenset({4})


def test_compose_with_empty_is_identity():
    c = cccz_6t()
    blank = Circuit(5, 0, (), c.data_qubits)
    assert compose(blank, c) == c
    assert compose(c, blank) == c


def test_compose_shifts_bits_of_second():
    first = cccz_6t()
    combined = compose(first, first)
    assert combined.bit_count == 2
    measures = [op for op in combined.ops if op.gate is Gate.MEASURE]
    assert [op.bit for op in measures] == [0, 1]
    conditions = [op.condition for op in combined.ops if op.condition is not None]
    assert conditions == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_compose_rejects_mismatched_qubit_counts():
    with pytest.raises(CircuitError, match="mismatched qubit counts"):
        compose(empty(2, {0, 1}), empty(3, {0, 1}))


def test_compose_rejects_conflicting_designation():
    with pytest.raises(CircuitError, match="designation"):
        compose(empty(2, {0}), empty(2, {1}))


def test_compose_is_associative():
    bld = CircuitBuilder(2, (0,))
    bld.h(0)
    bld.measure(1)
    bld.reset(1)
    a = bld.build()
    left = compose(compose(a, a), a)
    right = compose(a, compose(a, a))
    assert left == right


def test_inverse_swaps_adjoint_pairs():
    bld = CircuitBuilder(1, (0,))
    bld.t(0)
    inv = inverse_unitary_segment(bld.build())
    assert [op.gate for op in inv.ops] == [Gate.TDG]


def test_inverse_reverses_self_inverse_gates():
    bld = CircuitBuilder(2, (0, 1))
    bld.h(0)
    bld.cx(0, 1)
    inv = inverse_unitary_segment(bld.build())
    assert [(op.gate, op.qubits) for op in inv.ops] == [
        (Gate.CX, (0, 1)),
        (Gate.H, (0,)),
    ]


def test_inverse_preserves_t_count():
    bld = CircuitBuilder(2, (0, 1))
    bld.t(0)
    bld.tdg(1)
    bld.sx(0)
    bld.cz(0, 1)
    circuit = bld.build()
    inv = inverse_unitary_segment(circuit)
    t_of = lambda c: sum(op.gate in (Gate.T, Gate.TDG) for op in c.ops)
    assert t_of(inv) == t_of(circuit) == 2


def test_inverse_rejects_measurement_and_conditions():
    with pytest.raises(CircuitError, match="cannot invert m"):
        inverse_unitary_segment(
            Circuit(1, 1, (Op(Gate.MEASURE, (0,), 0),), frozenset()))
    with pytest.raises(CircuitError, match="conditioned"):
        inverse_unitary_segment(
            Circuit(1, 1, (Op(Gate.Z, (0,), None, (0, 1)),), frozenset({0})))


def test_remap_qubits_permutes_operands_and_designation():
    swapped = remap_qubits(cccz_6t(), {0: 3, 3: 0})
    assert swapped.data_qubits == frozenset({0, 1, 2, 3})
    assert swapped.ops[4].qubits == (3, 4)  # the CX formerly controlled by 0


def test_remap_qubits_rejects_non_bijection():
    with pytest.raises(CircuitError, match="bijection"):
        remap_qubits(cccz_6t(), {0: 1})
