"""Gate-level circuit IR: gates, circuits, adjoints, statistics, peephole simplification."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, NamedTuple, Sequence


class GateKind(str, Enum):
    H = "h"
    T = "t"
    TDG = "tdg"
    S = "s"
    SDG = "sdg"
    X = "x"
    Z = "z"
    CX = "cx"
    CZ = "cz"
    MCT = "mct"
    MCZ = "mcz"


SINGLE_QUBIT_KINDS = frozenset({GateKind.H, GateKind.T, GateKind.TDG, GateKind.S,
                                GateKind.SDG, GateKind.X, GateKind.Z})
CLIFFORD_T_KINDS = SINGLE_QUBIT_KINDS | {GateKind.CX, GateKind.CZ}
DIAGONAL_KINDS = frozenset({GateKind.T, GateKind.TDG, GateKind.S, GateKind.SDG,
                            GateKind.Z, GateKind.CZ, GateKind.MCZ})

_ADJOINT_KIND = {GateKind.T: GateKind.TDG, GateKind.TDG: GateKind.T,
                 GateKind.S: GateKind.SDG, GateKind.SDG: GateKind.S}


class Control(NamedTuple):
    qubit: int
    positive: bool = True


def _as_control(c) -> Control:
    if isinstance(c, Control):
        return c
    if isinstance(c, tuple):
        return Control(int(c[0]), bool(c[1]))
    return Control(int(c), True)


@dataclass(frozen=True)
class Gate:
    """A unitary gate.

    Single-qubit kinds use ``target`` only. CX/CZ carry one positive control.
    MCT carries any number of signed controls plus a target; zero controls
    normalizes to X. MCZ has no target and lists its (sorted) members as
    positive controls.
    """

    kind: GateKind
    target: int | None = None
    controls: tuple[Control, ...] = ()

    def __post_init__(self):
        kind = GateKind(self.kind)
        controls = tuple(_as_control(c) for c in self.controls)
        target = self.target
        if kind is GateKind.MCT and not controls:
            kind = GateKind.X
        if kind is GateKind.MCZ:
            if target is not None:
                controls = controls + (Control(target),)
                target = None
            if not controls:
                raise ValueError("mcz needs at least one qubit")
            if not all(c.positive for c in controls):
                raise ValueError("mcz members cannot be negative")
            controls = tuple(sorted(controls))
        else:
            if target is None:
                raise ValueError(f"{kind.value} needs a target")
            target = int(target)
            if kind in SINGLE_QUBIT_KINDS and controls:
                raise ValueError(f"{kind.value} takes no controls")
            if kind in (GateKind.CX, GateKind.CZ):
                if len(controls) != 1 or not controls[0].positive:
                    raise ValueError(f"{kind.value} takes exactly one positive control")
            if kind is GateKind.MCT:
                controls = tuple(sorted(controls))
        qubits = [c.qubit for c in controls] + ([] if target is None else [target])
        if any(q < 0 for q in qubits):
            raise ValueError("qubit indices must be non-negative")
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"repeated qubit in {kind.value} gate: {qubits}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "controls", controls)

    # constructors
    @classmethod
    def h(cls, q: int) -> Gate:
        return cls(GateKind.H, q)

    @classmethod
    def t(cls, q: int) -> Gate:
        return cls(GateKind.T, q)

    @classmethod
    def tdg(cls, q: int) -> Gate:
        return cls(GateKind.TDG, q)

    @classmethod
    def s(cls, q: int) -> Gate:
        return cls(GateKind.S, q)

    @classmethod
    def sdg(cls, q: int) -> Gate:
        return cls(GateKind.SDG, q)

    @classmethod
    def x(cls, q: int) -> Gate:
        return cls(GateKind.X, q)

    @classmethod
    def z(cls, q: int) -> Gate:
        return cls(GateKind.Z, q)

    @classmethod
    def cx(cls, control: int, target: int) -> Gate:
        return cls(GateKind.CX, target, (Control(control),))

    @classmethod
    def cz(cls, control: int, target: int) -> Gate:
        return cls(GateKind.CZ, target, (Control(control),))

    @classmethod
    def mct(cls, controls: Iterable, target: int) -> Gate:
        """Controls may be ints (positive) or ``(qubit, positive)`` pairs."""
        return cls(GateKind.MCT, target, tuple(_as_control(c) for c in controls))

    @classmethod
    def mcz(cls, qubits: Iterable[int]) -> Gate:
        return cls(GateKind.MCZ, None, tuple(Control(int(q)) for q in qubits))

    @property
    def qubits(self) -> tuple[int, ...]:
        qs = tuple(c.qubit for c in self.controls)
        return qs if self.target is None else qs + (self.target,)

    @property
    def is_diagonal(self) -> bool:
        return self.kind in DIAGONAL_KINDS

    def adjoint(self) -> Gate:
        kind = _ADJOINT_KIND.get(self.kind)
        return self if kind is None else Gate(kind, self.target)

    def cancel_key(self) -> tuple:
        """Identity of the represented operator up to syntax (CX == MCT with one positive control, etc.)."""
        if self.kind in (GateKind.X, GateKind.CX, GateKind.MCT):
            return ("not", self.target, frozenset(self.controls))
        if self.kind in (GateKind.Z, GateKind.CZ, GateKind.MCZ):
            return ("phase", frozenset(self.qubits))
        return (self.kind, self.target)

    def remap(self, mapping: Sequence[int]) -> Gate:
        controls = tuple(Control(mapping[c.qubit], c.positive) for c in self.controls)
        target = None if self.target is None else mapping[self.target]
        return Gate(self.kind, target, controls)

    def __str__(self) -> str:
        from .interchange import format_gate
        return format_gate(self)


@dataclass(frozen=True)
class Circuit:
    """An ordered (left-to-right) list of gates over ``num_qubits`` qubits.

    ``global_phase`` (radians) records phase factors that have no gate, e.g.
    the constant term of a phase oracle. Simulation applies it.
    """

    num_qubits: int
    gates: tuple[Gate, ...] = ()
    global_phase: float = 0.0

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("a circuit needs at least one qubit")
        gates = tuple(self.gates)
        for g in gates:
            if not isinstance(g, Gate):
                raise TypeError(f"not a gate: {g!r}")
            if max(g.qubits) >= self.num_qubits:
                raise ValueError(f"gate {g} uses a qubit outside 0..{self.num_qubits - 1}")
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "global_phase", _wrap_phase(self.global_phase))

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if not isinstance(other, Circuit):
            return NotImplemented
        if other.num_qubits != self.num_qubits:
            raise ValueError(f"width mismatch: {self.num_qubits} vs {other.num_qubits}")
        return Circuit(self.num_qubits, self.gates + other.gates,
                       self.global_phase + other.global_phase)

    def with_gates(self, gates: Iterable[Gate]) -> Circuit:
        return Circuit(self.num_qubits, tuple(gates), self.global_phase)

    def remap(self, mapping: Sequence[int], num_qubits: int) -> Circuit:
        """Relabel qubit ``q`` as ``mapping[q]`` inside a register of ``num_qubits``."""
        if len(mapping) != self.num_qubits:
            raise ValueError("mapping must list a destination for every qubit")
        return Circuit(num_qubits, tuple(g.remap(mapping) for g in self.gates), self.global_phase)

    def widen(self, num_qubits: int) -> Circuit:
        return self.remap(range(self.num_qubits), num_qubits)

    def dagger(self) -> Circuit:
        return dagger(self)


def _wrap_phase(phi: float) -> float:
    phi = math.remainder(float(phi), 2 * math.pi)
    # keep pi rather than -pi so printed circuits stay stable
    if math.isclose(phi, -math.pi):
        phi = math.pi
    return 0.0 if phi == 0 else phi


@dataclass(frozen=True)
class GateStats:
    num_qubits: int
    total_gates: int
    t_count: int
    h_count: int
    cnot_count: int
    mct_count: int
    mcz_count: int
    by_kind: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "num_qubits": self.num_qubits,
            "total_gates": self.total_gates,
            "t_count": self.t_count,
            "h_count": self.h_count,
            "cnot_count": self.cnot_count,
            "mct_count": self.mct_count,
            "mcz_count": self.mcz_count,
            "by_kind": dict(sorted(self.by_kind.items())),
        }


def dagger(c: Circuit) -> Circuit:
    return Circuit(c.num_qubits, tuple(g.adjoint() for g in reversed(c.gates)), -c.global_phase)


def compute_uncompute(compute: Circuit, action: Circuit) -> Circuit:
    """compute, then action, then the adjoint of compute."""
    return compute + action + dagger(compute)


def stats(c: Circuit) -> GateStats:
    kinds = Counter(g.kind.value for g in c.gates)
    return GateStats(
        num_qubits=c.num_qubits,
        total_gates=len(c.gates),
        t_count=kinds["t"] + kinds["tdg"],
        h_count=kinds["h"],
        cnot_count=kinds["cx"],
        mct_count=kinds["mct"],
        mcz_count=kinds["mcz"],
        by_kind=dict(kinds),
    )


def simplify(c: Circuit) -> Circuit:
    """Cancel adjacent mutually adjoint gate pairs, commuting only across disjoint supports.

    Runs to a fixed point; the unitary is preserved exactly.
    """
    gates = list(c.gates)
    while True:
        out: list[Gate] = []
        for g in gates:
            support = set(g.qubits)
            undo = g.adjoint().cancel_key()
            for j in range(len(out) - 1, -1, -1):
                prev = out[j]
                if prev.cancel_key() == undo:
                    del out[j]
                    break
                if support.intersection(prev.qubits):
                    out.append(g)
                    break
            else:
                out.append(g)
        if len(out) == len(gates):
            return c.with_gates(out)
        gates = out
