"""Independent reference computations used to check the package.

Nothing here calls into qtrojan's scheduling, simulation or metric code.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx
import numpy as np

_H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)


def gate_unitary(kind: str, qubits: tuple[int, ...], n: int) -> np.ndarray:
    """Dense 2^n x 2^n matrix, qubit 0 = least significant bit."""
    dim = 2**n
    if kind == "h":
        (q,) = qubits
        # kron ordering: most significant qubit first
        mats = [_H if k == q else np.eye(2) for k in reversed(range(n))]
        u = mats[0]
        for m in mats[1:]:
            u = np.kron(u, m)
        return u
    u = np.zeros((dim, dim))
    for col in range(dim):
        bits = [(col >> k) & 1 for k in range(n)]
        if kind == "swap":
            a, b = qubits
            bits[a], bits[b] = bits[b], bits[a]
        else:  # x, cx, ccx, mcx
            *ctrl, tgt = qubits
            if all(bits[c] for c in ctrl):
                bits[tgt] ^= 1
        row = sum(b << k for k, b in enumerate(bits))
        u[row, col] = 1
    return u


def dense_distribution(circuit) -> dict[str, float]:
    n = circuit.num_qubits
    u = np.eye(2**n)
    for g in circuit.gates:
        u = gate_unitary(g.kind.value, g.qubits, n) @ u
    amp = u[:, 0]
    out: dict[str, float] = {}
    for idx, a in enumerate(amp):
        p = abs(a) ** 2
        bits = [(idx >> q) & 1 for q in circuit.measured_qubits]
        key = "".join(str(b) for b in reversed(bits))
        out[key] = out.get(key, 0.0) + p
    return {k: v for k, v in out.items() if v > 1e-14}


def dependency_graph(circuit) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(len(circuit.gates)))
    for j, gj in enumerate(circuit.gates):
        for i in range(j):
            if set(circuit.gates[i].qubits) & set(gj.qubits):
                g.add_edge(i, j)
    return g


def longest_chain(circuit) -> int:
    if not circuit.gates:
        return 0
    return nx.dag_longest_path_length(dependency_graph(circuit)) + 1


def brute_force_asap(circuit) -> list[int]:
    """Enumerate every layer assignment respecting dependencies and return
    the componentwise minimum (which must itself be feasible)."""
    g = dependency_graph(circuit)
    n = len(circuit.gates)
    feasible = [
        a
        for a in itertools.product(range(n), repeat=n)
        if all(a[i] < a[j] for i, j in g.edges)
    ]
    best = [min(a[k] for a in feasible) for k in range(n)]
    assert tuple(best) in set(feasible)
    return best


def reachable_qubits(circuit, qubit: int) -> set[int]:
    """Forward reachability over a (gate, qubit) event graph."""
    g = nx.DiGraph()
    last = {q: ("in", q) for q in range(circuit.num_qubits)}
    for i, gate in enumerate(circuit.gates):
        for q in gate.qubits:
            g.add_edge(last[q], ("g", i))
        for q in gate.qubits:
            last[q] = ("g", i)
    g.add_nodes_from(last.values())
    for q, node in last.items():
        g.add_edge(node, ("out", q))
    return {node[1] for node in nx.descendants(g, ("in", qubit)) if node[0] == "out"}


def tvd_brute(a: dict[str, int], b: dict[str, int], width: int) -> float:
    na, nb = sum(a.values()), sum(b.values())
    total = 0.0
    for i in range(2**width):
        key = format(i, f"0{width}b")
        total += abs(a.get(key, 0) / na - b.get(key, 0) / nb)
    return total / 2


def eq1_tvd(a: dict[str, int], b: dict[str, int], shots: int) -> Fraction:
    keys = set(a) | set(b)
    return Fraction(sum(abs(a.get(k, 0) - b.get(k, 0)) for k in keys), 2 * shots)
