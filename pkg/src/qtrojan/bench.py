"""
Benchmark harness: insert, simulate and score every circuit in a fixture
directory, averaging over seeded insertion iterations.

Per iteration the insertion seed and the three sampling seeds are derived
from ``(seed, circuit name, iteration)`` through numpy's SeedSequence, so
results do not depend on the order circuits are processed in.
"""
from __future__ import annotations

import csv
import io
import json
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .circuit import depth, gate_count
from .metrics import CSV_HEADER, accuracy, argmax, tvd
from .qasm import QasmError, parse_qasm
from .sim import NoiseModel, SimulationError, ideal_distribution, sample
from .trojan import TrojanConfig, TrojanError, insert_trojan, set_activation

EXIT_OK, EXIT_PARSE, EXIT_INSERT, EXIT_SIM = 0, 2, 3, 4


@dataclass
class RunManifest:
    inputs: list[str]
    control_pos: int | None = None
    gate_limit: int = 1  # used when the fixture manifest has no entry
    seed: int = 0
    shots: int = 1000
    noise: NoiseModel | None = field(default_factory=NoiseModel)
    out: str | None = None
    format: str = "csv"
    iterations: int = 20
    exact: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError("shots must be at least 1")
        if self.iterations < 1:
            raise ValueError("iterations must be at least 1")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown report format {self.format!r}")
        if isinstance(self.noise, dict):
            self.noise = NoiseModel(**self.noise)

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        return cls(**json.loads(text))

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def derive_seed(seed: int, name: str, iteration: int, stream: int) -> int:
    ss = np.random.SeedSequence([seed, zlib.crc32(name.encode()), iteration, stream])
    return int(ss.generate_state(1, dtype=np.uint32)[0])


def _load_fixture_manifest(directory: Path) -> dict:
    path = directory / "manifest.json"
    return json.loads(path.read_text()) if path.exists() else {}


def discover(directory: str | Path) -> list[tuple[str, Path, dict]]:
    directory = Path(directory)
    meta = _load_fixture_manifest(directory)
    return [(p.stem, p, meta.get(p.stem, {})) for p in sorted(directory.glob("*.qasm"))]


def run_circuit(name: str, path: Path, entry: dict, run: RunManifest) -> dict:
    """Benchmark one circuit. Returns a result dict; failures are reported in
    it rather than raised."""
    try:
        circuit = parse_qasm(Path(path).read_text())
    except QasmError as exc:
        return {"circuit": name, "error": f"{path}:{exc}", "exit_code": EXIT_PARSE}
    except OSError as exc:
        return {"circuit": name, "error": str(exc), "exit_code": EXIT_PARSE}

    gate_limit = entry.get("gate_limit", run.gate_limit)
    control = entry.get("control_pos", run.control_pos)
    try:
        ideal = ideal_distribution(circuit)
        expected = entry.get("expected") or argmax(ideal)
        iterations = []
        for it in range(run.iterations):
            cfg = TrojanConfig(control, gate_limit, derive_seed(run.seed, name, it, 0), activated=True)
            active, report = insert_trojan(circuit, cfg)
            dormant = set_activation(active, report, False)
            if run.exact:
                d_orig, d_dormant, d_active = ideal, ideal_distribution(dormant), ideal_distribution(active)
            else:
                d_orig, d_dormant, d_active = (
                    sample(c, run.shots, derive_seed(run.seed, name, it, k), run.noise)
                    for k, c in ((1, circuit), (2, dormant), (3, active))
                )
            acc, acc_dormant = accuracy(d_orig, expected), accuracy(d_dormant, expected)
            iterations.append(
                {
                    "iteration": it,
                    "seed": cfg.seed,
                    "control": report.control_pos,
                    "payloads": len(report.payloads),
                    "depth": depth(circuit),
                    "depth_obfuscated": depth(active),
                    "gate_count": gate_count(circuit),
                    "gate_obfuscated": gate_count(active),
                    "gate_difference": gate_count(active) - gate_count(circuit),
                    "accuracy": acc,
                    "accuracy_deactivated": acc_dormant,
                    "accuracy_change_pct": 100.0 * (acc_dormant - acc),
                    "tvd_activated": float(tvd(ideal, d_active)),
                    "tvd_deactivated": float(tvd(ideal, d_dormant)),
                    "warnings": list(report.warnings),
                }
            )
    except TrojanError as exc:
        return {"circuit": name, "error": f"{type(exc).__name__}: {exc}", "exit_code": EXIT_INSERT}
    except SimulationError as exc:
        return {"circuit": name, "error": f"{type(exc).__name__}: {exc}", "exit_code": EXIT_SIM}

    row = {"circuit": name}
    for col in CSV_HEADER[1:]:
        row[col] = sum(r[col] for r in iterations) / len(iterations)
    row["tvd_deactivated"] = sum(r["tvd_deactivated"] for r in iterations) / len(iterations)
    return {"circuit": name, "expected": expected, "row": row, "iterations": iterations, "exit_code": EXIT_OK}


def _run_one(args):
    return run_circuit(*args)


def run_suite(directory: str | Path, run: RunManifest) -> dict:
    jobs = [(name, path, entry, run) for name, path, entry in discover(directory)]
    if run.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=run.jobs) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    ok = [r for r in results if r["exit_code"] == EXIT_OK]
    failures = [{"circuit": r["circuit"], "error": r["error"], "exit_code": r["exit_code"]}
                for r in results if r["exit_code"] != EXIT_OK]
    return {"results": ok, "failures": failures, "summary": summarize(ok)}


def summarize(results: list[dict]) -> dict:
    rows = [r["row"] for r in results]
    if not rows:
        return {"circuits": 0}
    g0 = sum(r["gate_count"] for r in rows)
    g1 = sum(r["gate_obfuscated"] for r in rows)
    return {
        "circuits": len(rows),
        "depth_unchanged": all(r["depth"] == r["depth_obfuscated"] for r in rows),
        "gate_increase_pct_pooled": 100.0 * (g1 - g0) / g0,
        "gate_increase_pct_mean": sum(100.0 * r["gate_difference"] / r["gate_count"] for r in rows) / len(rows),
        "tvd_activated_mean": sum(r["tvd_activated"] for r in rows) / len(rows),
        "tvd_deactivated_mean": sum(r["tvd_deactivated"] for r in rows) / len(rows),
    }


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if float(x).is_integer():
        return str(int(x))
    return f"{x:.6f}".rstrip("0")


def table_csv(suite: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in suite["results"]:
        w.writerow([_fmt(r["row"][c]) for c in CSV_HEADER])
    return buf.getvalue()


def tvd_csv(suite: dict) -> str:
    """Per-iteration TVD values, one line per (circuit, iteration)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["circuit", "iteration", "seed", "tvd_activated", "tvd_deactivated"])
    for r in suite["results"]:
        for it in r["iterations"]:
            w.writerow([r["circuit"], it["iteration"], it["seed"], _fmt(it["tvd_activated"]), _fmt(it["tvd_deactivated"])])
    return buf.getvalue()


def suite_json(suite: dict, run: RunManifest | None = None) -> str:
    data = dict(suite)
    if run is not None:
        settings = asdict(run)
        for key in ("out", "jobs", "inputs", "format"):
            settings.pop(key)
        data["settings"] = settings
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def exit_code(suite: dict) -> int:
    return suite["failures"][0]["exit_code"] if suite["failures"] else EXIT_OK
