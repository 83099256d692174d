import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from revflow.boolfn import (Cube, Esop, Permutation, TruthTable, hwb, parse_expression, pprm,
                            random_permutation, random_truth_table)
from revflow.circuit import Circuit, GateKind, simplify
from revflow.sim import StateVector, build_unitary, extract_permutation, extract_phase_function, run
from revflow.synth import dbs, esop_synth, permutation_oracle, phase_oracle, tbs

PI_EX = [0, 2, 3, 5, 7, 1, 4, 6]
SYNTH = {"tbs": tbs, "dbs": dbs}


def permutations(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.permutations(list(range(1 << n))).map(lambda m: Permutation(n, tuple(m))))


@pytest.mark.parametrize("name", SYNTH)
def test_identity_gives_empty_circuit(name):
    assert SYNTH[name](Permutation.identity(3)).gates == ()


@pytest.mark.parametrize("name", SYNTH)
def test_example_permutation_round_trip(name):
    pi = Permutation.from_list(PI_EX)
    c = SYNTH[name](pi)
    assert extract_permutation(c) == pi
    assert {g.kind for g in c.gates} <= {GateKind.X, GateKind.CX, GateKind.MCT}


@pytest.mark.parametrize("name", SYNTH)
def test_exhaustive_two_bit(name):
    for images in itertools.permutations(range(4)):
        pi = Permutation(2, images)
        assert extract_permutation(SYNTH[name](pi)) == pi


@pytest.mark.parametrize("name", SYNTH)
def test_exhaustive_three_bit(name):
    # all 40320 permutations would be slow; every 7th one covers a broad sample
    for k, images in enumerate(itertools.permutations(range(8))):
        if k % 7:
            continue
        pi = Permutation(3, images)
        assert extract_permutation(SYNTH[name](pi)) == pi


@settings(max_examples=80, deadline=None)
@given(permutations(4), st.sampled_from(sorted(SYNTH)))
def test_round_trip_property(pi, name):
    c = SYNTH[name](pi)
    assert c.num_qubits == pi.n
    assert extract_permutation(c) == pi
    assert extract_permutation(permutation_oracle(pi, name)) == pi


@pytest.mark.parametrize("name", SYNTH)
def test_hwb_round_trip(name):
    for n in range(1, 7):
        assert extract_permutation(SYNTH[name](hwb(n))) == hwb(n)


def test_larger_random_round_trip(rng):
    for n in (6, 8):
        pi = random_permutation(n, rng)
        assert extract_permutation(tbs(pi)) == pi
        assert extract_permutation(dbs(pi)) == pi


def test_synthesis_width_limit():
    big = Permutation.identity(13)
    with pytest.raises(ValueError):
        tbs(big)
    with pytest.raises(ValueError):
        dbs(big)


def test_permutation_oracle_defaults_and_strategy_check():
    pi = hwb(3)
    assert permutation_oracle(pi) == simplify(tbs(pi))
    with pytest.raises(ValueError):
        permutation_oracle(pi, "nope")


def test_tbs_single_swap_is_one_gate():
    # swapping the two top rows is a single doubly controlled flip of bit 0
    c = tbs(Permutation(2, (0, 1, 3, 2)))
    assert len(c) == 1 and c.gates[0].target == 0


# --- Bennett embedding ------------------------------------------------------------

def _embedding_ok(c, tables, n):
    m = len(tables)
    for x in range(1 << n):
        for y in range(1 << m):
            fx = sum(t(x) << j for j, t in enumerate(tables))
            out = run(c, x | (y << n)).amplitudes
            target = x | ((y ^ fx) << n)
            if abs(out[target] - 1) > 1e-9:
                return False
    return True


def test_esop_and_gate():
    f = parse_expression("a & b")
    c = esop_synth([f])
    assert c.num_qubits == 3 and len(c) == 1
    assert _embedding_ok(c, [f], 2)


def test_esop_constant_one_is_x():
    c = esop_synth([TruthTable.constant(2, 1)])
    assert [g.kind for g in c.gates] == [GateKind.X]


def test_esop_random_multi_output(rng):
    for _ in range(10):
        tables = [random_truth_table(4, rng) for _ in range(2)]
        assert _embedding_ok(esop_synth(tables), tables, 4)


def test_esop_accepts_mixed_polarity_cubes():
    esop = Esop(2, (Cube(positive_mask=0b10, negative_mask=0b01),))
    c = esop_synth([esop])
    assert _embedding_ok(c, [esop.to_truth_table()], 2)


def test_esop_validation():
    with pytest.raises(ValueError):
        esop_synth([])
    with pytest.raises(ValueError):
        esop_synth([TruthTable.constant(2), TruthTable.constant(3)])
    with pytest.raises(ValueError):
        esop_synth([TruthTable.constant(16)] * 5)


# --- phase oracles ----------------------------------------------------------------

def test_phase_oracle_inner_product_gates():
    f = parse_expression("(a&b)^(c&d)")
    c = phase_oracle(f)
    assert [(g.kind, g.qubits) for g in c.gates] == [(GateKind.CZ, (0, 1)), (GateKind.CZ, (2, 3))]
    assert extract_phase_function(c) == f


def test_phase_oracle_constant_one_is_global_phase():
    c = phase_oracle(TruthTable.constant(3, 1))
    assert c.gates == ()
    assert np.allclose(build_unitary(c), -np.eye(8))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8).flatmap(
    lambda n: st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n)
    .map(lambda bits: TruthTable(n, tuple(bits)))))
def test_phase_oracle_extracts_back(f):
    c = phase_oracle(f)
    assert extract_phase_function(c) == f
    assert len(c) == sum(1 for cube in pprm(f).cubes if cube.positive_mask)


def test_phase_oracle_signs_on_states(rng):
    f = random_truth_table(4, rng)
    psi = StateVector.random(4, rng)
    out = run(phase_oracle(f), psi).amplitudes
    signs = np.array([(-1) ** b for b in f.bits])
    assert np.allclose(out, signs * psi.amplitudes, atol=1e-12)


def test_phase_oracle_empty_for_zero():
    assert phase_oracle(TruthTable.constant(4)) == Circuit(4)


def test_esop_inner_product_two_toffolis():
    f = parse_expression("(a&b)^(c&d)")
    c = esop_synth([f])
    assert [(tuple(x.qubit for x in g.controls), g.target) for g in c.gates] == [((0, 1), 4), ((2, 3), 4)]
    assert esop_synth([TruthTable.constant(3)]).gates == ()
