"""Generate the benchmark fixture corpus in ``benchmarks/``.

The circuits are synthetic reversible (X/CX/CCX/MCX) networks named after the
usual RevLib benchmarks and sized to their usual gate counts and
depths. They are not the RevLib netlists themselves. Each candidate is drawn
layer by layer and kept only if

* ASAP depth and gate count hit the target,
* the default Trojan placement reaches ``gate_limit`` payloads for seeds 0..19
  without touching a control qubit that original gates use earlier,
* the ideal output over the measured qubits is a single bitstring,
* whenever a payload victim structurally reaches a measured qubit (forward
  causal cone), the activated Trojan really changes the output. Toffoli
  networks often mask a flipped line behind a zero co-control, and the corpus
  is meant to contain circuits on which the attack is observable.

Run from the repository root:  python scripts/make_fixtures.py
"""
from __future__ import annotations

import json
import random
from pathlib import Path

from qtrojan import (
    Circuit,
    Gate,
    GateKind,
    Role,
    TrojanConfig,
    depth,
    emit_qasm,
    ideal_distribution,
    insert_trojan,
)
from qtrojan.circuit import causal_cone, gates

OUT = Path(__file__).resolve().parent.parent / "benchmarks"

# name: (qubits, gates, depth, outputs, gate_limit)
TARGETS = {
    "mini_ALU": (10, 7, 7, 2, 1),
    "4mod5": (5, 7, 6, 1, 3),
    "4gt11": (5, 13, 13, 1, 1),
    "4gt13": (5, 4, 4, 1, 1),
    "rd53": (7, 16, 16, 3, 5),
    "rd73": (10, 20, 13, 3, 4),
    "rd84": (12, 28, 15, 4, 5),
    "ALU": (5, 7, 7, 1, 1),
    "sym6": (7, 22, 13, 1, 4),
}


def one_bit_adder() -> Circuit:
    # a=q0, b=q1, cin=q2, carry ancilla=q3; sum lands on q2
    return Circuit(
        4,
        gates([("ccx", 0, 1, 3), ("cx", 0, 1), ("ccx", 1, 2, 3), ("cx", 1, 2), ("cx", 0, 1)]),
        measured_qubits=(2,),
    )


def _random_gate(rng: random.Random, must: set[int], free: list[int]) -> Gate | None:
    kind = rng.choices(["cx", "ccx", "mcx", "x"], weights=[45, 35, 10, 10])[0]
    arity = {"cx": 2, "ccx": 3, "mcx": 4, "x": 1}[kind]
    anchors = sorted(must.intersection(free))
    if not anchors or len(free) < arity:
        return None
    first = rng.choice(anchors)
    rest = rng.sample([q for q in free if q != first], arity - 1)
    qs = [first] + rest
    rng.shuffle(qs)
    return Gate(GateKind(kind), tuple(qs))


def _candidate(rng: random.Random, n: int, g: int, d: int, outputs: int) -> Circuit | None:
    sizes = [1] * d
    for _ in range(g - d):
        sizes[rng.randrange(d)] += 1
    layers: list[list[Gate]] = []
    prev = set(range(n))
    for i, size in enumerate(sizes):
        free = list(range(n))
        layer = []
        for _ in range(size):
            gate = None
            for _ in range(20):
                gate = _random_gate(rng, prev, free)
                if gate is not None:
                    break
            if gate is None:
                return None
            layer.append(gate)
            free = [q for q in free if q not in gate.qubits]
        layers.append(layer)
        prev = {q for gt in layer for q in gt.qubits}
    flat = [gt for layer in layers for gt in layer]
    # outputs: targets of the last gates, most recent first
    measured = []
    for gt in reversed(flat):
        if gt.target not in measured:
            measured.append(gt.target)
        if len(measured) == outputs:
            break
    if len(measured) < outputs:
        return None
    return Circuit(n, tuple(flat), tuple(sorted(measured)))


def _reaches_output(inserted: Circuit) -> bool:
    measured = set(inserted.measured_qubits)
    return any(
        causal_cone(inserted, g.target, start=i + 1) & measured
        for i, g in enumerate(inserted.gates)
        if g.role is Role.TROJAN_PAYLOAD
    )


def _acceptable(c: Circuit, d: int, gate_limit: int) -> bool:
    if depth(c) != d:
        return False
    ideal = ideal_distribution(c)
    if len(ideal) != 1:
        return False
    for seed in range(20):
        try:
            inserted, rep = insert_trojan(c, TrojanConfig(gate_limit=gate_limit, seed=seed))
        except Exception:
            return False
        if len(rep.payloads) != gate_limit or rep.warnings:
            return False
        if _reaches_output(inserted) and ideal_distribution(inserted) == ideal:
            return False
    return True


def generate(name: str, seed: int) -> Circuit:
    n, g, d, outputs, gate_limit = TARGETS[name]
    rng = random.Random(seed)
    for _ in range(200000):
        c = _candidate(rng, n, g, d, outputs)
        if c is not None and _acceptable(c, d, gate_limit):
            return c
    raise RuntimeError(f"no acceptable candidate for {name}")


def main():
    OUT.mkdir(exist_ok=True)
    manifest = {}
    corpus = {"1bit_adder": (one_bit_adder(), 1)}
    for i, name in enumerate(TARGETS):
        corpus[name] = (generate(name, seed=1000 + i), TARGETS[name][4])
    for name, (c, gate_limit) in corpus.items():
        (expected,) = ideal_distribution(c)
        header = (
            f"// {name}: synthetic stand-in sized like RevLib {name}, "
            f"{c.num_qubits} qubits, {len(c.gates)} gates, depth {depth(c)}\n"
            f"// generated by scripts/make_fixtures.py; expected output {expected}\n"
        )
        (OUT / f"{name}.qasm").write_text(header + emit_qasm(c))
        manifest[name] = {"file": f"{name}.qasm", "gate_limit": gate_limit, "expected": expected}
        print(f"{name:12s} n={c.num_qubits:2d} gates={len(c.gates):2d} depth={depth(c):2d} expected={expected}")
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
