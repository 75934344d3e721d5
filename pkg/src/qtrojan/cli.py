"""Command-line front end: ``qtrojan analyze|inject|evaluate|bench``.

Exit codes: 0 success, 2 parse error, 3 insertion infeasible, 4 simulation error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import bench
from .circuit import Circuit, layerize
from .metrics import overhead
from .qasm import QasmError, emit_qasm, parse_qasm
from .sim import NoiseModel, SimulationError, ideal_distribution, sample
from .trojan import TrojanConfig, TrojanError, insert_trojan, set_activation


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _default_seed() -> int:
    return int(os.environ.get("QTROJAN_SEED", "0"))


def _load(path: str) -> Circuit:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}", bench.EXIT_PARSE) from exc
    try:
        return parse_qasm(text)
    except QasmError as exc:
        raise CliError(f"{path}:{exc}", bench.EXIT_PARSE) from exc


def _noise(args) -> NoiseModel | None:
    if args.noiseless:
        return None
    return NoiseModel.parse(args.noise) if args.noise else NoiseModel()


def cmd_analyze(args) -> int:
    circuit = _load(args.path)
    sched = layerize(circuit)
    layers = [
        {
            "index": i,
            "gates": [str(circuit.gates[g]) for g in idx],
            "empty": list(sched.empty_positions[i]),
        }
        for i, idx in enumerate(sched.layers)
    ]
    if args.json:
        doc = {
            "num_qubits": circuit.num_qubits,
            "gate_count": len(circuit.gates),
            "depth": len(layers),
            "measured": list(circuit.measured_qubits),
            "layers": layers,
        }
        print(json.dumps(doc, indent=2))
        return 0
    print(f"{args.path}: {circuit.num_qubits} qubits, {len(circuit.gates)} gates, {len(layers)} layers")
    for lay in layers:
        empty = " ".join(map(str, lay["empty"])) or "-"
        print(f"layer {lay['index']:3d}: {' '.join(lay['gates'])}  | empty: {empty}")
    return 0


def cmd_inject(args) -> int:
    circuit = _load(args.path)
    try:
        config = TrojanConfig(
            control_pos=args.control_pos,
            gate_limit=args.gate_limit,
            seed=args.seed,
            activated=not args.deactivated,
        )
        inserted, report = insert_trojan(circuit, config)
    except (TrojanError, ValueError) as exc:
        raise CliError(f"{type(exc).__name__}: {exc}", bench.EXIT_INSERT) from exc

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(args.path).stem
    written = []
    if args.both:
        for state in (True, False):
            variant = set_activation(inserted, report, state)
            path = out / f"{stem}.{'activated' if state else 'deactivated'}.qasm"
            path.write_text(emit_qasm(variant), newline="\n")
            written.append(path)
    else:
        path = out / f"{stem}.trojan.qasm"
        path.write_text(emit_qasm(inserted), newline="\n")
        written.append(path)
    report_path = out / f"{stem}.report.json"
    report_path.write_text(report.to_json(), newline="\n")
    written.append(report_path)

    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(
        f"{stem}: control q[{report.control_pos}], {len(report.payloads)} payload(s), "
        f"{report.gates_added} gate(s) added"
    )
    for path in written:
        print(f"wrote {path}")
    return 0


def cmd_evaluate(args) -> int:
    original, inserted = _load(args.original), _load(args.inserted)
    noise = _noise(args)  # a bad flag is a usage error, not a simulation one
    try:
        if args.exact:
            d0, d1 = ideal_distribution(original), ideal_distribution(inserted)
        else:
            d0 = sample(original, args.shots, args.seed, noise)
            d1 = sample(inserted, args.shots, args.seed + 1, noise)
        report = overhead(original, inserted, d0, d1, args.expected)
    except SimulationError as exc:
        raise CliError(f"simulation error: {exc}", bench.EXIT_SIM) from exc
    except ValueError as exc:
        raise CliError(str(exc), bench.EXIT_SIM) from exc
    if args.format == "csv":
        sys.stdout.write(report.to_csv(Path(args.original).stem))
    else:
        print(report.to_json())
    return 0


def cmd_bench(args) -> int:
    if args.config:
        run = bench.RunManifest.from_json(Path(args.config).read_text())
    else:
        run = bench.RunManifest(
            inputs=[args.dir],
            control_pos=args.control_pos,
            gate_limit=args.gate_limit,
            seed=args.seed,
            shots=args.shots,
            noise=_noise(args),
            out=args.out,
            format=args.format,
            iterations=args.iterations,
            exact=args.exact,
            jobs=args.jobs,
        )
    directory = Path(run.inputs[0])
    if not directory.is_dir():
        raise CliError(f"{directory}: not a directory", bench.EXIT_PARSE)
    suite = bench.run_suite(directory, run)
    for f in suite["failures"]:
        print(f"error: {f['circuit']}: {f['error']}", file=sys.stderr)

    if run.format == "csv":
        table = bench.table_csv(suite)
        sys.stdout.write(table)
        if run.out:
            out = Path(run.out)
            out.mkdir(parents=True, exist_ok=True)
            (out / "overhead.csv").write_text(table, newline="\n")
            (out / "tvd.csv").write_text(bench.tvd_csv(suite), newline="\n")
    else:
        doc = bench.suite_json(suite, run)
        if run.out:
            out = Path(run.out)
            out.mkdir(parents=True, exist_ok=True)
            (out / "report.json").write_text(doc, newline="\n")
        else:
            sys.stdout.write(doc)
    return bench.exit_code(suite)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qtrojan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="print ASAP layers and empty slots")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    def add_seed(p):
        p.add_argument("--seed", type=int, default=_default_seed(), help="default: $QTROJAN_SEED or 0")

    def add_noise(p):
        p.add_argument("--noise", metavar="P1,P2,PREAD", help="depolarizing/readout probabilities")
        p.add_argument("--noiseless", action="store_true")

    p = sub.add_parser("inject", help="insert a switch-controlled Trojan")
    p.add_argument("path")
    p.add_argument("--control-pos", type=int)
    p.add_argument("--gate-limit", type=int, default=1)
    add_seed(p)
    state = p.add_mutually_exclusive_group()
    state.add_argument("--activated", action="store_true", default=True)
    state.add_argument("--deactivated", action="store_true")
    state.add_argument("--both", action="store_true", help="write activated and deactivated variants")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_inject)

    p = sub.add_parser("evaluate", help="compare an original and an altered circuit")
    p.add_argument("original")
    p.add_argument("inserted")
    p.add_argument("--shots", type=int, default=1000)
    add_noise(p)
    add_seed(p)
    p.add_argument("--exact", action="store_true", help="use exact distributions instead of sampling")
    p.add_argument("--expected", help="expected output bitstring (default: most likely original outcome)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("bench", help="run the benchmark suite over a fixture directory")
    p.add_argument("dir", nargs="?")
    p.add_argument("--config", help="RunManifest JSON; overrides the other flags")
    p.add_argument("--iterations", type=int, default=20)
    p.add_argument("--shots", type=int, default=1000)
    p.add_argument("--control-pos", type=int)
    p.add_argument("--gate-limit", type=int, default=1, help="for circuits without a manifest entry")
    add_noise(p)
    add_seed(p)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bench" and not (args.dir or args.config):
        parser.error("bench needs a directory or --config")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:  # bad flag values, e.g. a malformed --noise
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
