"""Reversible and oracle synthesis.

* ``tbs``: transformation-based synthesis (output side only).
* ``dbs``: decomposition-based synthesis through single-target gates.
* ``esop_synth``: Bennett embedding |x>|y> -> |x>|y xor f(x)> from ESOP cubes.
* ``phase_oracle``: diagonal (-1)^f(x) from Z/CZ/MCZ gates.
"""

from __future__ import annotations

import math
from typing import Sequence

from .boolfn import Esop, Permutation, TruthTable, pprm, variables_of
from .circuit import Circuit, Control, Gate, simplify

MAX_SYNTH_BITS = 12
MAX_ESOP_LINES = 20


def _check_width(pi: Permutation) -> None:
    if pi.n > MAX_SYNTH_BITS:
        raise ValueError(f"explicit-table synthesis supports at most {MAX_SYNTH_BITS} bits, got {pi.n}")


def _bits(x: int) -> list[int]:
    return list(variables_of(x))


def tbs(pi: Permutation) -> Circuit:
    """Transformation-based synthesis of ``pi`` into MCT gates.

    Rows are fixed in ascending order by gates applied on the output side, each
    leaving all smaller rows untouched; the collected gates, reversed, realize ``pi``.
    """
    _check_width(pi)
    f = list(pi.map)
    size = len(f)
    collected: list[tuple[int, int]] = []  # (control mask, target bit)

    def apply(ctrl: int, target: int, start: int) -> None:
        collected.append((ctrl, target))
        flip = 1 << target
        for j in range(start, size):
            if f[j] & ctrl == ctrl:
                f[j] ^= flip

    for i in range(size):
        v = f[i]
        if v == i:
            continue
        for p in _bits(i & ~v):
            apply(f[i], p, i)
        for p in _bits(f[i] & ~i):
            apply(i, p, i)
        assert f[i] == i

    gates = [Gate.mct(_bits(ctrl), target) for ctrl, target in reversed(collected)]
    return Circuit(pi.n, tuple(gates))


def _single_target_gates(func: Sequence[int], target: int, others: Sequence[int]) -> list[Gate]:
    """MCT gates realizing x_target ^= func(rest), where ``func`` is indexed by the packed other bits."""
    n_rest = len(others)
    if n_rest == 0:
        return [Gate.x(target)] if func[0] else []
    esop = pprm(TruthTable(n_rest, tuple(func)))
    return [Gate.mct([others[v] for v in variables_of(cube.positive_mask)], target)
            for cube in esop.cubes]


def _pack(x: int, p: int) -> int:
    """Remove bit p from x."""
    low = x & ((1 << p) - 1)
    return low | ((x >> (p + 1)) << p)


def _two_color(perm: list[int], p: int) -> list[int]:
    """Colour elements so each input pair {x, x^bit} and each output pair gets one of each colour."""
    size = len(perm)
    bit = 1 << p
    inverse = [0] * size
    for x, y in enumerate(perm):
        inverse[y] = x
    color = [-1] * size
    for start in range(size):
        if color[start] != -1:
            continue
        x, c = start, 0
        while color[x] == -1:
            color[x] = c
            partner = inverse[perm[x] ^ bit]  # shares x's output pair
            color[partner] = 1 - c
            x = partner ^ bit  # shares partner's input pair
    return color


def dbs(pi: Permutation) -> Circuit:
    """Decomposition-based synthesis.

    For each bit p in ascending order, factor the remaining permutation as
    L o P' o R where L and R only flip bit p (controlled by the other bits)
    and P' preserves bit p. After every bit is processed the remainder is the
    identity. Control functions are lowered through their PPRM forms.
    """
    _check_width(pi)
    n = pi.n
    perm = list(pi.map)
    size = len(perm)
    left: list[list[Gate]] = []
    right: list[list[Gate]] = []
    for p in range(n):
        bit = 1 << p
        color = _two_color(perm, p)
        others = [q for q in range(n) if q != p]
        r_func = [0] * (size >> 1)
        l_func = [0] * (size >> 1)
        for x in range(size):
            r_func[_pack(x, p)] = ((x >> p) & 1) ^ color[x]
            l_func[_pack(perm[x], p)] = ((perm[x] >> p) & 1) ^ color[x]
        remainder = [0] * size
        for x in range(size):
            z = (x & ~bit) | (color[x] << p)  # R(x)
            remainder[z] = (perm[x] & ~bit) | (color[x] << p)  # L^-1(pi(x))
        perm = remainder
        right.append(_single_target_gates(r_func, p, others))
        left.append(_single_target_gates(l_func, p, others))
    assert perm == list(range(size))
    gates = [g for block in right for g in block]
    gates += [g for block in reversed(left) for g in block]
    return Circuit(n, tuple(gates))


def _as_esop(f) -> Esop:
    return f if isinstance(f, Esop) else pprm(f)


def esop_synth(outputs: Sequence[TruthTable | Esop]) -> Circuit:
    """Bennett-embedded circuit on n + m lines: |x>|y> -> |x>|y xor f(x)>.

    Each cube becomes one MCT (polarity per mask) targeting its output line;
    an empty cube becomes an X.
    """
    if not outputs:
        raise ValueError("need at least one output function")
    esops = [_as_esop(f) for f in outputs]
    n = esops[0].n
    if any(e.n != n for e in esops):
        raise ValueError("all outputs must share the same variable count")
    m = len(esops)
    if n + m > MAX_ESOP_LINES:
        raise ValueError(f"n + m = {n + m} exceeds {MAX_ESOP_LINES} lines")
    gates = []
    for j, esop in enumerate(esops):
        for cube in esop.cubes:
            controls = [Control(v, True) for v in variables_of(cube.positive_mask)]
            controls += [Control(v, False) for v in variables_of(cube.negative_mask)]
            gates.append(Gate.mct(controls, n + j))
    return Circuit(n + m, tuple(gates))


def phase_oracle(f: TruthTable) -> Circuit:
    """Diagonal circuit applying (-1)^f(x), one Z/CZ/MCZ per PPRM cube.

    A constant cube has no gate; it is carried as ``global_phase = pi``.
    """
    gates = []
    phase = 0.0
    for cube in pprm(f).cubes:
        qs = _bits(cube.positive_mask)
        if not qs:
            phase += math.pi
        elif len(qs) == 1:
            gates.append(Gate.z(qs[0]))
        elif len(qs) == 2:
            gates.append(Gate.cz(qs[0], qs[1]))
        else:
            gates.append(Gate.mcz(qs))
    return Circuit(f.n, tuple(gates), phase)


def phase_gates(f: TruthTable, qubits: Sequence[int], num_qubits: int) -> Circuit:
    """Phase oracle of ``f`` with variable i placed on ``qubits[i]`` of a wider register."""
    return phase_oracle(f).remap(list(qubits), num_qubits)


STRATEGIES = {"tbs": tbs, "dbs": dbs}


def permutation_oracle(pi: Permutation, strategy: str = "tbs") -> Circuit:
    try:
        synth = STRATEGIES[strategy]
    except KeyError:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {sorted(STRATEGIES)}") from None
    return simplify(synth(pi))

