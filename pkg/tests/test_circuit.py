import numpy as np
import pytest

from helpers import random_circuit, random_mct_circuit
from revflow.boolfn import Permutation
from revflow.circuit import Circuit, Control, Gate, GateKind, compute_uncompute, dagger, simplify, stats
from revflow.mapping import toffoli_network
from revflow.sim import StateVector, build_unitary, extract_permutation, run, unitary_equiv


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate.cx(1, 1)
    with pytest.raises(ValueError):
        Gate.mct([0, 1, 0], 2)
    with pytest.raises(ValueError):
        Gate(GateKind.H, 0, (Control(1),))
    with pytest.raises(ValueError):
        Gate(GateKind.CX, 1, (Control(0, False),))
    with pytest.raises(ValueError):
        Gate.mcz([])
    with pytest.raises(ValueError):
        Circuit(2, (Gate.cx(0, 2),))


def test_mct_with_no_controls_is_x():
    assert Gate.mct([], 3) == Gate.x(3)


def test_mcz_is_an_unordered_set():
    assert Gate.mcz([2, 0, 1]) == Gate.mcz([0, 1, 2])
    assert Gate.mcz([2, 0, 1]).qubits == (0, 1, 2)


def test_dagger_example():
    c = Circuit(1, (Gate.h(0), Gate.t(0)))
    assert dagger(c).gates == (Gate.tdg(0), Gate.h(0))
    assert dagger(dagger(c)) == c


def test_dagger_involution_random(rng):
    for _ in range(20):
        c = random_circuit(rng, 4, 15)
        assert dagger(dagger(c)) == c


def test_circuit_then_dagger_is_identity_on_states(rng):
    for _ in range(20):
        c = random_circuit(rng, 4, 20)
        psi = StateVector.random(4, rng)
        out = run(c + dagger(c), psi)
        assert out.allclose(psi, atol=1e-10)


def test_mct_circuit_then_dagger_extracts_identity(rng):
    for n in (2, 5, 8):
        c = random_mct_circuit(rng, n, 25)
        assert extract_permutation(c + dagger(c)) == Permutation.identity(n)


def test_compute_uncompute_structure():
    compute = Circuit(2, (Gate.h(0), Gate.h(1), Gate.x(0)))
    action = Circuit(2, (Gate.cz(0, 1),))
    out = compute_uncompute(compute, action)
    assert out.gates == compute.gates + action.gates + (Gate.x(0), Gate.h(1), Gate.h(0))
    assert compute_uncompute(Circuit(2), action) == action
    with pytest.raises(ValueError):
        compute_uncompute(Circuit(3), action)


def test_compute_uncompute_with_empty_action_is_identity(rng):
    for _ in range(10):
        compute = random_circuit(rng, 4, 12)
        u = build_unitary(compute_uncompute(compute, Circuit(4)))
        assert np.allclose(u, np.eye(16), atol=1e-10)
        psi = StateVector.random(4, rng)
        assert run(compute_uncompute(compute, Circuit(4)), psi).allclose(psi, atol=1e-10)


def test_stats_examples(rng):
    empty = stats(Circuit(3))
    assert (empty.total_gates, empty.t_count, empty.h_count, empty.cnot_count,
            empty.mct_count, empty.mcz_count) == (0, 0, 0, 0, 0, 0)
    tof = stats(toffoli_network())
    assert tof.t_count == 7 and tof.h_count == 2 and tof.cnot_count == 6 and tof.total_gates == 15
    c, d = random_circuit(rng, 4, 9), random_circuit(rng, 4, 13)
    assert stats(c + d).total_gates == stats(c).total_gates + stats(d).total_gates
    st = stats(c)
    assert st.total_gates == len(c.gates) == sum(st.by_kind.values())


def test_simplify_examples():
    assert simplify(Circuit(1, (Gate.x(0), Gate.x(0)))).gates == ()
    c = Circuit(2, (Gate.x(0), Gate.h(1), Gate.x(0)))
    assert simplify(c).gates == (Gate.h(1),)


def test_simplify_cascades_and_respects_overlap():
    c = Circuit(2, (Gate.t(0), Gate.h(0), Gate.cx(0, 1), Gate.cx(0, 1), Gate.h(0), Gate.tdg(0)))
    assert simplify(c).gates == ()
    blocked = Circuit(2, (Gate.x(0), Gate.cx(0, 1), Gate.x(0)))
    assert simplify(blocked) == blocked
    # CX written as a one-control MCT still cancels
    mixed = Circuit(2, (Gate.cx(0, 1), Gate.mct([0], 1)))
    assert simplify(mixed).gates == ()
    # CZ is symmetric
    assert simplify(Circuit(2, (Gate.cz(0, 1), Gate.cz(1, 0)))).gates == ()
    # polarity matters
    pol = Circuit(3, (Gate.mct([(0, False), 1], 2), Gate.mct([0, 1], 2)))
    assert simplify(pol) == pol


def test_simplify_preserves_unitary_exactly(rng):
    for _ in range(60):
        c = random_circuit(rng, 4, 30)
        # seed cancellation opportunities
        c = c + dagger(random_circuit(rng, 4, 5)) + c
        s = simplify(c)
        assert len(s) <= len(c)
        assert unitary_equiv(build_unitary(c), build_unitary(s), 1e-10)
        assert np.allclose(build_unitary(c), build_unitary(s), atol=1e-10)


def test_simplify_keeps_global_phase():
    c = Circuit(1, (Gate.x(0), Gate.x(0)), 3.141592653589793)
    assert simplify(c).global_phase == c.global_phase


def test_remap_and_widen():
    c = Circuit(2, (Gate.cx(0, 1),))
    assert c.remap([3, 1], 4).gates == (Gate.cx(3, 1),)
    assert c.widen(5).num_qubits == 5
