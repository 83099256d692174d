"""Command-line front end.

Exit codes: 0 success, 1 domain error (parse, width, synthesis), 2 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import boolfn
from .circuit import Circuit, stats
from .hiddenshift import build_generic, build_mm, final_state, parse_h, parse_instance, recover_shift
from .interchange import export_qasm, parse_circuit, print_circuit
from .mapping import map_to_clifford_t
from .sim import NoiseConfig, run, sample_noisy_shots, sample_shots
from .synth import STRATEGIES, esop_synth, permutation_oracle, phase_oracle


class DomainError(Exception):
    pass


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def _inline_or_file(value: str) -> str:
    return _read(value) if os.path.isfile(value) else value


def _load_circuit(path: str) -> Circuit:
    return parse_circuit(_read(path))


def _format_stats(c: Circuit) -> str:
    st = stats(c)
    lines = [
        f"qubits: {st.num_qubits}",
        f"gates: {st.total_gates}",
        f"t-count: {st.t_count}",
        f"h: {st.h_count}",
        f"cnot: {st.cnot_count}",
        f"mct: {st.mct_count}",
        f"mcz: {st.mcz_count}",
    ]
    lines += [f"  {kind}: {count}" for kind, count in sorted(st.by_kind.items())]
    return "\n".join(lines) + "\n"


def _vars(text: str | None) -> list[str] | None:
    return None if text is None else [v.strip() for v in text.split(",") if v.strip()]


def cmd_synth(args) -> int:
    if args.what == "perm":
        pi = boolfn.parse_permutation(_inline_or_file(args.pi))
        circ = permutation_oracle(pi, args.strategy) if args.simplify else _synth_raw(pi, args.strategy)
    elif args.what == "hwb":
        pi = boolfn.hwb(args.n)
        circ = permutation_oracle(pi, args.strategy) if args.simplify else _synth_raw(pi, args.strategy)
    elif args.what == "esop":
        names = _vars(args.vars)
        tables = [boolfn.parse_expression(e, names) for e in args.expr]
        if names is None and len({t.n for t in tables}) > 1:
            raise DomainError("outputs use different variable sets; pass --vars")
        circ = esop_synth(tables)
    else:
        if len(args.expr) != 1:
            raise DomainError("phase synthesis takes exactly one --expr")
        circ = phase_oracle(boolfn.parse_expression(args.expr[0], _vars(args.vars)))
    _write(args.output, print_circuit(circ))
    sys.stdout.write(_format_stats(circ))
    return 0


def _synth_raw(pi, strategy: str) -> Circuit:
    return STRATEGIES[strategy](pi)


def cmd_map(args) -> int:
    if args.tpar:
        print("tpar: not implemented: out of scope", file=sys.stderr)
        return 1
    circ = map_to_clifford_t(_load_circuit(args.input), args.ancilla)
    _write(args.output, print_circuit(circ))
    sys.stdout.write(_format_stats(circ))
    return 0


def cmd_stats(args) -> int:
    circ = _load_circuit(args.input)
    if args.json:
        sys.stdout.write(json.dumps(stats(circ).to_dict(), sort_keys=True) + "\n")
    else:
        sys.stdout.write(_format_stats(circ))
    return 0


def cmd_export(args) -> int:
    _write(args.output, export_qasm(_load_circuit(args.input), args.measure))
    return 0


def _noise(text: str | None) -> NoiseConfig | None:
    if text is None:
        return None
    try:
        p1, p2 = (float(v) for v in text.split(","))
    except ValueError:
        raise DomainError(f"--noise expects 'p1,p2', got {text!r}") from None
    return NoiseConfig(p1, p2)


def _emit_histogram(hist, path: str | None) -> None:
    _write(path, hist.to_csv())


def cmd_run(args) -> int:
    if args.threads is not None and args.threads < 1:
        raise DomainError("--threads must be >= 1")
    noise = _noise(args.noise)
    if args.mode == "circuit":
        circ = _load_circuit(args.input)
        if noise is None:
            hist = sample_shots(run(circ), args.shots, args.seed)
        else:
            hist = sample_noisy_shots(circ, noise, args.shots, args.seed)
        _emit_histogram(hist, args.hist)
        return 0

    inst = _hidden_shift_instance(args)
    if args.clifford_t:
        inst = inst.with_circuit(map_to_clifford_t(inst.circuit, "auto"))
    print(f"Shift is {recover_shift(inst, args.seed)}")
    if args.shots is not None:
        if noise is None:
            hist = sample_shots(final_state(inst), args.shots, args.seed)
        else:
            hist = sample_noisy_shots(inst.circuit, noise, args.shots, args.seed)
        _emit_histogram(hist, args.hist)
    return 0


def _hidden_shift_instance(args):
    if args.instance is not None:
        return parse_instance(_read(args.instance))
    if args.shift is None:
        raise DomainError("--shift is required without --instance")
    if args.pi is not None:
        pi = boolfn.parse_permutation(_inline_or_file(args.pi))
        h = parse_h(args.h or "0", pi.n)
        return build_mm(pi, h, args.shift, args.strategy)
    if args.f is not None:
        return build_generic(boolfn.parse_truth_table(args.f), args.shift)
    if args.expr is not None:
        return build_generic(boolfn.parse_expression(args.expr), args.shift)
    raise DomainError("give --instance, --pi/--h, --f or --expr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="revflow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="synthesize a circuit")
    synth_sub = synth.add_subparsers(dest="what", required=True)
    for name in ("perm", "hwb"):
        p = synth_sub.add_parser(name)
        if name == "perm":
            p.add_argument("--pi", required=True, help="permutation file or inline '0 2 3 ...'")
        else:
            p.add_argument("--n", type=int, required=True)
        p.add_argument("--strategy", choices=("tbs", "dbs"), default="tbs")
        p.add_argument("--simplify", action="store_true")
        p.add_argument("-o", "--output", required=True)
    for name in ("esop", "phase"):
        p = synth_sub.add_parser(name)
        p.add_argument("--expr", action="append", required=True,
                       help="Boolean expression; repeat for several esop outputs")
        p.add_argument("--vars", help="comma-separated variable order")
        p.add_argument("-o", "--output", required=True)
    synth.set_defaults(func=cmd_synth)

    mp = sub.add_parser("map", help="lower to Clifford+T")
    mp.add_argument("--in", dest="input", required=True)
    mp.add_argument("--ancilla", choices=("none", "auto"), default="none")
    mp.add_argument("--tpar", action="store_true", help="T-par optimization (not implemented)")
    mp.add_argument("-o", "--output", required=True)
    mp.set_defaults(func=cmd_map)

    st = sub.add_parser("stats", help="print gate statistics")
    st.add_argument("--in", dest="input", required=True)
    st.add_argument("--json", action="store_true")
    st.set_defaults(func=cmd_stats)

    ex = sub.add_parser("export", help="export a circuit")
    ex_sub = ex.add_subparsers(dest="format", required=True)
    qasm = ex_sub.add_parser("qasm")
    qasm.add_argument("--in", dest="input", required=True)
    qasm.add_argument("--measure", action="store_true")
    qasm.add_argument("-o", "--output")
    ex.set_defaults(func=cmd_export)

    rn = sub.add_parser("run", help="simulate")
    rn_sub = rn.add_subparsers(dest="mode", required=True)
    hs = rn_sub.add_parser("hidden-shift")
    hs.add_argument("--instance")
    hs.add_argument("--pi")
    hs.add_argument("--h")
    hs.add_argument("--f", help="truth table string of a bent function")
    hs.add_argument("--expr", help="bent function as a Boolean expression")
    hs.add_argument("--shift", type=int)
    hs.add_argument("--strategy", choices=("tbs", "dbs"), default="tbs")
    hs.add_argument("--shots", type=int)
    hs.add_argument("--clifford-t", action="store_true", help="lower the circuit before running")
    circ = rn_sub.add_parser("circuit")
    circ.add_argument("--in", dest="input", required=True)
    circ.add_argument("--shots", type=int, required=True)
    for p in (hs, circ):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--noise", help="depolarizing probabilities 'p1,p2'")
        p.add_argument("--hist", help="histogram CSV output path")
        p.add_argument("--threads", type=int, help="accepted for scripting; results never depend on it")
    rn.set_defaults(func=cmd_run)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
