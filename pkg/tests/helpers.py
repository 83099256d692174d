"""Shared generators and brute-force oracles for the test suite."""

import numpy as np

from revflow.circuit import Circuit, Control, Gate

SINGLE = (Gate.h, Gate.t, Gate.tdg, Gate.s, Gate.sdg, Gate.x, Gate.z)


def random_gate(rng: np.random.Generator, n: int, kinds=("single", "cx", "cz", "mct", "mcz")) -> Gate:
    kind = kinds[rng.integers(len(kinds))]
    if n == 1 and kind in ("cx", "cz"):
        kind = "single"
    if kind == "single":
        return SINGLE[rng.integers(len(SINGLE))](int(rng.integers(n)))
    qubits = [int(q) for q in rng.permutation(n)]
    if kind == "cx":
        return Gate.cx(qubits[0], qubits[1])
    if kind == "cz":
        return Gate.cz(qubits[0], qubits[1])
    if kind == "mcz":
        return Gate.mcz(qubits[: rng.integers(1, n + 1)])
    k = int(rng.integers(0, n))
    controls = [Control(q, bool(rng.integers(2))) for q in qubits[1: 1 + k]]
    return Gate.mct(controls, qubits[0])


def random_circuit(rng: np.random.Generator, n: int, length: int, **kw) -> Circuit:
    return Circuit(n, tuple(random_gate(rng, n, **kw) for _ in range(length)))


def random_mct_circuit(rng: np.random.Generator, n: int, length: int) -> Circuit:
    return random_circuit(rng, n, length, kinds=("mct",))


def brute_walsh(bits, n):
    """W(w) = sum_x (-1)^(f(x) + w.x) by direct double enumeration."""
    out = []
    for w in range(1 << n):
        total = 0
        for x in range(1 << n):
            total += (-1) ** (bits[x] ^ (bin(w & x).count("1") & 1))
        out.append(total)
    return out


def brute_anf(bits, n):
    """Reed-Muller coefficient of monomial m is the XOR of f over all subsets of m."""
    coeffs = []
    for m in range(1 << n):
        acc = 0
        for x in range(1 << n):
            if x & ~m == 0:
                acc ^= bits[x]
        coeffs.append(acc)
    return coeffs


def classical_image(c: Circuit, x: int) -> int:
    """Evaluate an MCT/X/CX circuit on one bit pattern by hand."""
    for g in c.gates:
        if all(((x >> ctl.qubit) & 1) == int(ctl.positive) for ctl in g.controls):
            x ^= 1 << g.target
    return x
