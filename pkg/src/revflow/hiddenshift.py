"""Hidden-shift circuits for bent functions.

Both builders produce H, U_g, H, U_dual, H on |0...0>, where U_g applies
(-1)^f(x xor s) and U_dual applies (-1)^dual(f)(x). The final state is the
basis state |s>, read with qubit i as bit i of the shift.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .boolfn import (NotBent, Permutation, TruthTable, dual, invert, is_bent, mm_construct,
                     parse_permutation, parse_truth_table, shift)
from .circuit import Circuit, Gate, compute_uncompute, dagger
from .sim import BASIS_TOL, StateVector, basis_state_of, measure_all, run
from .synth import permutation_oracle, phase_gates, phase_oracle


class NonDeterministicOutcome(RuntimeError):
    """The final state is not a basis state; the instance circuit is wrong."""


@dataclass(frozen=True)
class HiddenShiftInstance:
    n: int
    f: TruthTable
    s: int
    circuit: Circuit
    layout: dict[str, int]
    kind: str = "generic"
    # (label, first gate index, end gate index) of the oracle sections
    blocks: tuple[tuple[str, int, int], ...] = field(default=(), compare=False)

    def with_circuit(self, circuit: Circuit) -> HiddenShiftInstance:
        return HiddenShiftInstance(self.n, self.f, self.s, circuit,
                                   dict(self.layout), self.kind, self.blocks)


def _hadamards(n: int, width: int | None = None) -> Circuit:
    return Circuit(width or n, tuple(Gate.h(q) for q in range(n)))


def _x_gates(s: int, width: int) -> Circuit:
    return Circuit(width, tuple(Gate.x(q) for q in range(width) if (s >> q) & 1))


def _check_shift(s: int, n: int) -> None:
    if not 0 <= s < (1 << n):
        raise ValueError(f"shift {s} out of range for {n} variables")


def build_generic(f: TruthTable, s: int, inject: str = "table") -> HiddenShiftInstance:
    """Hidden-shift circuit from monolithic phase oracles of f(x xor s) and dual(f).

    ``inject='table'`` shifts the truth table of the first oracle;
    ``inject='xgates'`` wraps the unshifted oracle in X gates instead.
    """
    if not is_bent(f):
        raise NotBent("hidden shift needs a bent function")
    n = f.n
    _check_shift(s, n)
    hs = _hadamards(n)
    if inject == "table":
        u_g = phase_oracle(shift(f, s))
    elif inject == "xgates":
        u_g = compute_uncompute(_x_gates(s, n), phase_oracle(f))
    else:
        raise ValueError(f"inject must be 'table' or 'xgates', got {inject!r}")
    u_dual = phase_oracle(dual(f))
    circuit = hs + u_g + hs + u_dual + hs
    start_g, start_d = n, 2 * n + len(u_g)
    blocks = (("U_g", start_g, start_g + len(u_g)), ("U_dual", start_d, start_d + len(u_dual)))
    layout = {f"x{i + 1}": i for i in range(n)}
    return HiddenShiftInstance(n, f, s, circuit, layout, "generic", blocks)


def build_mm(pi: Permutation, h: TruthTable, s: int, strategy: str = "tbs") -> HiddenShiftInstance:
    """Hidden-shift circuit for f(x, y) = <x, pi(y)> xor h(y), assembled from its parts.

    Registers are contiguous: x on qubits 0..n-1, y on n..2n-1. The first block
    permutes y by pi (after H and the shift X gates), applies the CZ ladder and
    the phase of h o pi^-1 on the permuted y, then uncomputes. The second block
    applies pi^-1 to x through the adjoint of pi's circuit, the CZ ladder and
    the phase of h on the transformed x, then uncomputes.
    """
    n = pi.n
    if h.n != n:
        raise ValueError(f"h has {h.n} variables but pi acts on {n} bits")
    width = 2 * n
    _check_shift(s, width)
    xs = list(range(n))
    ys = list(range(n, width))

    p_circ = permutation_oracle(pi, strategy)
    p_on_y = p_circ.remap(ys, width)
    p_inv_on_x = dagger(p_circ).remap(xs, width)
    ladder = Circuit(width, tuple(Gate.cz(x, y) for x, y in zip(xs, ys)))
    # y register holds pi(y) inside block 1, so h(y) = (h o pi^-1)(register)
    h_after_pi = TruthTable(n, tuple(h(v) for v in invert(pi).map))

    compute_1 = _hadamards(width) + _x_gates(s, width) + p_on_y
    block_1 = compute_uncompute(compute_1, ladder + phase_gates(h_after_pi, ys, width))
    block_2 = compute_uncompute(p_inv_on_x, ladder + phase_gates(h, xs, width))
    circuit = block_1 + block_2 + _hadamards(width)

    g_start = width
    g_end = len(block_1) - width
    blocks = (("U_g", g_start, g_end), ("U_dual", len(block_1), len(block_1) + len(block_2)))
    layout = {f"x{i + 1}": q for i, q in enumerate(xs)}
    layout.update({f"y{i + 1}": q for i, q in enumerate(ys)})
    return HiddenShiftInstance(width, mm_construct(pi, h), s, circuit, layout, "mm", blocks)


def final_state(inst: HiddenShiftInstance) -> StateVector:
    return run(inst.circuit, 0)


def decode(outcome: int, inst: HiddenShiftInstance) -> int:
    """Measured bits to shift: qubit i carries bit i (ancillas above n are dropped)."""
    return outcome & ((1 << inst.n) - 1)


def recover_shift(inst: HiddenShiftInstance, seed: int = 0) -> int:
    state = final_state(inst)
    if basis_state_of(state, BASIS_TOL) is None:
        raise NonDeterministicOutcome(
            f"final state is not a basis state (max probability {state.probabilities.max():.6f})")
    return decode(measure_all(state, seed), inst)


# --- instance description files ----------------------------------------------------

def parse_h(text: str, n: int) -> TruthTable:
    """Truth table for h; the single characters '0' and '1' denote constants over n variables."""
    text = text.strip()
    if text in ("0", "1"):
        return TruthTable.constant(n, int(text))
    return parse_truth_table(text)


def parse_instance(text: str) -> HiddenShiftInstance:
    """Build an instance from a ``key value`` file (kind, n, f | pi + h, shift, strategy)."""
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition(" ")
        if key in fields:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        if key not in ("kind", "n", "f", "pi", "h", "shift", "strategy"):
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        fields[key] = value.strip()
    kind = fields.get("kind", "generic")
    if "shift" not in fields:
        raise ValueError("instance file needs a 'shift' line")
    s = int(fields["shift"])
    if kind == "generic":
        if "f" not in fields:
            raise ValueError("generic instance needs an 'f' line")
        inst = build_generic(parse_truth_table(fields["f"]), s)
    elif kind == "mm":
        if "pi" not in fields:
            raise ValueError("mm instance needs a 'pi' line")
        pi = parse_permutation(fields["pi"])
        h = parse_h(fields.get("h", "0"), pi.n)
        inst = build_mm(pi, h, s, fields.get("strategy", "tbs"))
    else:
        raise ValueError(f"unknown instance kind {kind!r}")
    if "n" in fields and int(fields["n"]) != inst.n:
        raise ValueError(f"declared n = {fields['n']} but the instance has {inst.n} variables")
    return inst


def format_instance(inst: HiddenShiftInstance, pi: Permutation | None = None,
                    h: TruthTable | None = None, strategy: str = "tbs") -> str:
    lines = [f"kind {inst.kind}", f"n {inst.n}"]
    if inst.kind == "mm":
        if pi is None or h is None:
            raise ValueError("mm instances need pi and h to be written")
        lines += [f"pi {' '.join(map(str, pi.map))}", f"h {''.join(map(str, h.bits))}",
                  f"strategy {strategy}"]
    else:
        lines.append(f"f {''.join(map(str, inst.f.bits))}")
    lines.append(f"shift {inst.s}")
    return "\n".join(lines) + "\n"
