"""Lowering of MCT/MCZ circuits to {H, T, Tdg, S, Sdg, X, Z, CX, CZ}."""

from __future__ import annotations

import math
from typing import Sequence

from .circuit import CLIFFORD_T_KINDS, Circuit, Gate, GateKind

POLICIES = ("none", "auto")


class AncillaRequired(ValueError):
    """An MCT with three or more controls was met under ancilla policy 'none'."""


def _toffoli_gates(a: int, b: int, c: int) -> list[Gate]:
    # 7-T network: 2 H, 7 T/Tdg, 6 CX; exact (no global phase)
    H, T, Tdg, CX = Gate.h, Gate.t, Gate.tdg, Gate.cx
    return [
        H(c),
        CX(b, c), Tdg(c),
        CX(a, c), T(c),
        CX(b, c), Tdg(c),
        CX(a, c), T(b), T(c),
        H(c),
        CX(a, b), T(a), Tdg(b),
        CX(a, b),
    ]


def toffoli_network() -> Circuit:
    """Clifford+T realization of the Toffoli gate with controls q0, q1 and target q2."""
    return Circuit(3, tuple(_toffoli_gates(0, 1, 2)))


def _small_mct(controls: Sequence[int], target: int) -> list[Gate]:
    if not controls:
        return [Gate.x(target)]
    if len(controls) == 1:
        return [Gate.cx(controls[0], target)]
    if len(controls) == 2:
        return _toffoli_gates(controls[0], controls[1], target)
    raise AssertionError("unreachable")


def _mct_dirty(controls: Sequence[int], target: int, dirty: Sequence[int]) -> list[Gate]:
    """MCT using m - 2 borrowed qubits in arbitrary states, 4(m - 2) Toffolis; borrowed qubits are restored."""
    m = len(controls)
    if m <= 2:
        return _small_mct(controls, target)
    if len(dirty) < m - 2:
        raise ValueError("not enough borrowed qubits")
    c, a = list(controls), list(dirty[: m - 2])

    def ladder() -> list[tuple[int, int, int]]:
        down = [(c[i], a[i - 2], a[i - 1]) for i in range(m - 2, 1, -1)]
        up = [(c[i], a[i - 2], a[i - 1]) for i in range(2, m - 1)]
        return down + [(c[0], c[1], a[0])] + up

    top = (c[m - 1], a[m - 3], target)
    sequence = [top] + ladder() + [top] + ladder()
    return [g for x, y, z in sequence for g in _toffoli_gates(x, y, z)]


def _lower_mct(controls: Sequence[int], target: int, ancilla: int | None) -> list[Gate]:
    k = len(controls)
    if k <= 2:
        return _small_mct(controls, target)
    if ancilla is None:
        raise AncillaRequired(f"MCT with {k} controls needs an ancilla; use ancilla policy 'auto'")
    # compute AND of the first half into the clean ancilla, use it as one control, uncompute
    half = math.ceil(k / 2)
    first, second = list(controls[:half]), list(controls[half:])
    into_ancilla = _mct_dirty(first, ancilla, second + [target])
    return into_ancilla + _mct_dirty(second + [ancilla], target, first) + into_ancilla


def _needs_ancilla(gate: Gate) -> bool:
    if gate.kind is GateKind.MCT:
        return len(gate.controls) >= 3
    if gate.kind is GateKind.MCZ:
        return len(gate.controls) >= 4
    return False


def _lower(gate: Gate, ancilla: int | None) -> list[Gate]:
    if gate.kind in CLIFFORD_T_KINDS:
        return [gate]
    if gate.kind is GateKind.MCT:
        flips = [Gate.x(c.qubit) for c in gate.controls if not c.positive]
        controls = [c.qubit for c in gate.controls]
        return flips + _lower_mct(controls, gate.target, ancilla) + flips
    # MCZ: H-conjugate the highest member and lower the resulting MCT
    members = list(gate.qubits)
    if len(members) == 1:
        return [Gate.z(members[0])]
    if len(members) == 2:
        return [Gate.cz(members[0], members[1])]
    pivot = members[-1]
    return [Gate.h(pivot)] + _lower_mct(members[:-1], pivot, ancilla) + [Gate.h(pivot)]


def map_to_clifford_t(c: Circuit, ancilla_policy: str = "none") -> Circuit:
    """Lower every gate to Clifford+T.

    Under policy 'auto' a single clean ancilla is appended (as the highest
    qubit) when some gate needs one; it is returned to |0> after every use.
    """
    if ancilla_policy not in POLICIES:
        raise ValueError(f"ancilla policy must be one of {POLICIES}, got {ancilla_policy!r}")
    needs = [g for g in c.gates if _needs_ancilla(g)]
    if needs and ancilla_policy == "none":
        raise AncillaRequired(f"gate {needs[0]} needs an ancilla; use ancilla policy 'auto'")
    ancilla = c.num_qubits if needs else None
    width = c.num_qubits + (1 if needs else 0)
    gates = [low for g in c.gates for low in _lower(g, ancilla)]
    return Circuit(width, tuple(gates), c.global_phase)
