"""Circuit text format and OPENQASM 2.0 export.

Circuit text format, one gate per line::

    # comment
    qubits 3
    gphase 3.141592653589793     (optional, radians)
    h q0
    cx q0 q1                     (control first)
    mct ~q0 q1 : q2              (~ marks a negative control)
    mcz q0 q1 q2
"""

from __future__ import annotations

import re

from .circuit import CLIFFORD_T_KINDS, Circuit, Control, Gate, GateKind


class CircuitSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class UnsupportedGate(ValueError):
    pass


_QUBIT = re.compile(r"(~?)q(\d+)")
_SINGLE = {k.value: k for k in (GateKind.H, GateKind.T, GateKind.TDG, GateKind.S,
                                 GateKind.SDG, GateKind.X, GateKind.Z)}


def format_gate(g: Gate) -> str:
    kind = g.kind
    if kind.value in _SINGLE:
        return f"{kind.value} q{g.target}"
    if kind in (GateKind.CX, GateKind.CZ):
        return f"{kind.value} q{g.controls[0].qubit} q{g.target}"
    if kind is GateKind.MCZ:
        return "mcz " + " ".join(f"q{q}" for q in g.qubits)
    controls = " ".join(("" if c.positive else "~") + f"q{c.qubit}" for c in g.controls)
    return f"mct {controls} : q{g.target}"


def print_circuit(c: Circuit) -> str:
    lines = [f"qubits {c.num_qubits}"]
    if c.global_phase:
        lines.append(f"gphase {c.global_phase!r}")
    lines.extend(format_gate(g) for g in c.gates)
    return "\n".join(lines) + "\n"


def _qubit(token: str, lineno: int, width: int, allow_negative: bool = False) -> Control:
    m = _QUBIT.fullmatch(token)
    if m is None or (m.group(1) and not allow_negative):
        raise CircuitSyntaxError(f"bad qubit operand {token!r}", lineno)
    q = int(m.group(2))
    if q >= width:
        raise CircuitSyntaxError(f"qubit q{q} outside declared width {width}", lineno)
    return Control(q, not m.group(1))


def _parse_gate(tokens: list[str], lineno: int, width: int) -> Gate:
    name, args = tokens[0], tokens[1:]
    if name in _SINGLE:
        if len(args) != 1:
            raise CircuitSyntaxError(f"{name} takes one qubit", lineno)
        return Gate(_SINGLE[name], _qubit(args[0], lineno, width).qubit)
    if name in ("cx", "cz"):
        if len(args) != 2:
            raise CircuitSyntaxError(f"{name} takes two qubits", lineno)
        ctl, tgt = (_qubit(a, lineno, width).qubit for a in args)
        return Gate.cx(ctl, tgt) if name == "cx" else Gate.cz(ctl, tgt)
    if name == "mcz":
        if not args:
            raise CircuitSyntaxError("mcz needs at least one qubit", lineno)
        return Gate.mcz(_qubit(a, lineno, width).qubit for a in args)
    if name == "mct":
        if args.count(":") != 1 or args[-2:-1] != [":"]:
            raise CircuitSyntaxError("mct expects 'controls : target'", lineno)
        controls = [_qubit(a, lineno, width, allow_negative=True) for a in args[:-2]]
        return Gate.mct(controls, _qubit(args[-1], lineno, width).qubit)
    raise CircuitSyntaxError(f"unknown gate {name!r}", lineno)


def parse_circuit(text: str) -> Circuit:
    width = None
    phase = 0.0
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.replace(":", " : ").split()
        if width is None:
            if tokens[0] != "qubits" or len(tokens) != 2 or not tokens[1].isdigit() or int(tokens[1]) < 1:
                raise CircuitSyntaxError("expected 'qubits N' as the first statement", lineno)
            width = int(tokens[1])
            continue
        if tokens[0] == "gphase":
            if len(tokens) != 2 or gates:
                raise CircuitSyntaxError("'gphase <radians>' must directly follow 'qubits'", lineno)
            try:
                phase = float(tokens[1])
            except ValueError:
                raise CircuitSyntaxError(f"bad phase {tokens[1]!r}", lineno) from None
            continue
        try:
            gates.append(_parse_gate(tokens, lineno, width))
        except CircuitSyntaxError:
            raise
        except ValueError as exc:
            raise CircuitSyntaxError(str(exc), lineno) from None
    if width is None:
        raise CircuitSyntaxError("missing 'qubits N' header", 1)
    return Circuit(width, tuple(gates), phase)


def _qasm_gate(g: Gate) -> str:
    if g.kind in CLIFFORD_T_KINDS:
        if g.kind in (GateKind.CX, GateKind.CZ):
            return f"{g.kind.value} q[{g.controls[0].qubit}],q[{g.target}];"
        return f"{g.kind.value} q[{g.target}];"
    if g.kind is GateKind.MCT and len(g.controls) <= 2 and all(c.positive for c in g.controls):
        ops = ",".join(f"q[{q}]" for q in g.qubits)
        return f"{'cx' if len(g.controls) == 1 else 'ccx'} {ops};"
    raise UnsupportedGate(f"cannot export '{format_gate(g)}' to OPENQASM 2.0; "
                          "run map_to_clifford_t first")


def export_qasm(c: Circuit, measure: bool = False) -> str:
    body = [_qasm_gate(g) for g in c.gates]
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";']
    if c.global_phase:
        lines.append(f"// global phase {c.global_phase!r}")
    lines.append(f"qreg q[{c.num_qubits}];")
    if measure:
        lines.append(f"creg c[{c.num_qubits}];")
    lines.extend(body)
    if measure:
        lines.extend(f"measure q[{i}] -> c[{i}];" for i in range(c.num_qubits))
    return "\n".join(lines) + "\n"
