import pytest
from hypothesis import given
from hypothesis import strategies as st

from nuwalk.errors import InvalidMode
from nuwalk.experiments import (
    Cycle,
    Line,
    classical_equivalent_steps,
    classical_estimate,
    resource_estimate,
)
from nuwalk.experiments.resources import expected_measurements, register_width


def test_line_noiseless_counts():
    est = resource_estimate(Line(100), "coin", 0.0)
    assert est.register_width == 8
    assert (est.quantum_gates, est.qubits, est.ancillae) == (900, 9, 0)
    assert est.note == ""


def test_line_full_coin_noise_ancillae():
    est = resource_estimate(Line(100), "coin", 1.0)
    assert est.ancillae == 100
    assert est.measurements == 100
    assert est.quantum_gates == 1000
    assert est.qubits == 109


def test_line_position_noise_counts():
    est = resource_estimate(Line(100), "position", 0.5)
    assert est.ancillae == 50 * 8
    assert est.quantum_gates == 900 + 400
    assert est.note


def test_both_costs_coin_plus_register():
    est = resource_estimate(Line(10), "both", 1.0)
    s = register_width(Line(10))
    assert s == 5
    assert est.ancillae == 10 * (s + 1)


def test_cycle_counts():
    est = resource_estimate(Cycle(29, 100), "coin", 0.03)
    assert est.register_width == 5
    assert est.measurements == 3
    assert est.quantum_gates == 100 * 6 + 3
    assert est.qubits == 1 + 5 + 3


def test_classical_comparison():
    assert classical_equivalent_steps(100) == 5000
    assert classical_estimate(100).steps == 5000


@pytest.mark.parametrize(
    "mode, target, gates, qubits",
    [
        (Line(10), "coin", "O(T log T + pT)", "O(log T + pT)"),
        (Line(10), "position", "O(T log T + pT log T)", "O(log T + pT log T)"),
        (Line(10), "both", "O(T log T + pT log T)", "O(log T + pT log T)"),
        (Cycle(9, 20), "coin", "O(M(ε) log N + pM(ε))", "O(log N + pM(ε))"),
        (Cycle(9, 20), "position", "O(M(ε) log N + pM(ε) log N)", "O(log N + pM(ε) log N)"),
    ],
)
def test_class_strings(mode, target, gates, qubits):
    est = resource_estimate(mode, target, 0.1)
    assert est.gate_class == gates
    assert est.qubit_class == qubits


def test_expected_measurements_rounding():
    assert expected_measurements(0.07, 100) == 7
    assert expected_measurements(0.071, 100) == 8
    assert expected_measurements(0.0, 100) == 0


@given(
    st.integers(1, 500),
    st.integers(0, 200),
    st.floats(0, 1),
    st.floats(0, 1),
    st.sampled_from(["coin", "position", "both"]),
)
def test_line_monotone(T, dT, p1, p2, target):
    lo, hi = min(p1, p2), max(p1, p2)
    a = resource_estimate(Line(T), target, lo)
    for b in (resource_estimate(Line(T + dT), target, lo), resource_estimate(Line(T), target, hi)):
        assert b.quantum_gates >= a.quantum_gates
        assert b.qubits >= a.qubits
        assert b.ancillae >= a.ancillae


@given(st.integers(3, 300), st.integers(0, 100), st.integers(1, 500), st.floats(0, 1))
def test_cycle_monotone_in_size(N, dN, M, p):
    a = resource_estimate(Cycle(N, M), "position", p)
    b = resource_estimate(Cycle(N + dN, M), "position", p)
    assert b.quantum_gates >= a.quantum_gates and b.qubits >= a.qubits


@pytest.mark.parametrize(
    "mode, p",
    [(Line(0), 0.1), (Cycle(2, 10), 0.1), (Cycle(9, 0), 0.1), (Line(5), 1.5), ("line", 0.1)],
)
def test_invalid_mode(mode, p):
    with pytest.raises(InvalidMode):
        resource_estimate(mode, "coin", p)
