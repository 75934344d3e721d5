"""
Statevector simulation and shot sampling.

Bit convention: qubit 0 is the least significant bit of the basis index.
Outcome keys are rendered with classical bit 0 rightmost, where classical bit
``j`` holds ``circuit.measured_qubits[j]`` (so a Bell pair reads "00"/"11").

Noisy sampling unravels depolarizing noise into Pauli trajectories: after each
gate every operand independently suffers X, Y or Z (uniformly) with
probability ``p1`` (1-qubit gates) or ``p2`` (larger gates), and each measured
bit is flipped with probability ``p_read``. Shots that draw the same error
pattern share one statevector run.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, Gate, GateKind

MAX_QUBITS = 20
_SQRT1_2 = 1 / math.sqrt(2)
_PREFIX_CACHE_QUBITS = 16


class SimulationError(ValueError):
    pass


@dataclass(frozen=True)
class NoiseModel:
    p1: float = 0.001
    p2: float = 0.01
    p_read: float = 0.02

    def __post_init__(self):
        for name in ("p1", "p2", "p_read"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name}={p} is not a probability")

    @classmethod
    def parse(cls, text: str) -> "NoiseModel":
        """Parse ``"p1,p2,p_read"``."""
        parts = [float(x) for x in text.split(",")]
        if len(parts) != 3:
            raise ValueError("noise must be given as p1,p2,p_read")
        return cls(*parts)


@dataclass(frozen=True)
class OutcomeDistribution:
    counts: dict[str, int]
    shots: int
    width: int = field(init=False)

    def __post_init__(self):
        counts = {k: int(v) for k, v in sorted(self.counts.items())}
        object.__setattr__(self, "counts", counts)
        widths = {len(k) for k in counts}
        if len(widths) > 1:
            raise ValueError(f"outcome keys have mixed widths {sorted(widths)}")
        if any(v < 0 for v in counts.values()):
            raise ValueError("negative count")
        if any(set(k) - {"0", "1"} for k in counts):
            raise ValueError("outcome keys must be bitstrings")
        if sum(counts.values()) != self.shots:
            raise ValueError(f"counts sum to {sum(counts.values())}, expected {self.shots} shots")
        object.__setattr__(self, "width", widths.pop() if widths else 0)

    def probabilities(self) -> dict[str, float]:
        return {k: v / self.shots for k, v in self.counts.items()}

    def to_json(self) -> str:
        return json.dumps({"counts": self.counts, "shots": self.shots}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "OutcomeDistribution":
        data = json.loads(text)
        return cls(data["counts"], data["shots"])


def zero_state(num_qubits: int) -> np.ndarray:
    state = np.zeros(2**num_qubits, dtype=complex)
    state[0] = 1.0
    return state


def _num_qubits(state: np.ndarray) -> int:
    n = state.size.bit_length() - 1
    if state.size != 1 << n:
        raise SimulationError("state length is not a power of two")
    return n


def _slices(n: int, fixed: dict[int, int]) -> tuple:
    idx = [slice(None)] * n
    for q, v in fixed.items():
        idx[n - 1 - q] = v
    return tuple(idx)


def apply_gate(state: np.ndarray, gate: Gate) -> np.ndarray:
    """Return a new state with ``gate`` applied."""
    n = _num_qubits(state)
    if max(gate.qubits) >= n:
        raise SimulationError(f"{gate} out of range for {n} qubits")
    t = state.reshape((2,) * n)
    if gate.kind is GateKind.SWAP:
        a, b = (n - 1 - q for q in gate.qubits)
        return np.swapaxes(t, a, b).reshape(-1).copy()

    ctrl = {c: 1 for c in gate.controls}
    i0 = _slices(n, {**ctrl, gate.target: 0})
    i1 = _slices(n, {**ctrl, gate.target: 1})
    out = t.copy()
    if gate.kind is GateKind.H:
        a0, a1 = t[i0], t[i1]
        out[i0] = (a0 + a1) * _SQRT1_2
        out[i1] = (a0 - a1) * _SQRT1_2
    else:  # X, CX, CCX, MCX
        out[i0] = t[i1]
        out[i1] = t[i0]
    return out.reshape(-1)


def apply_pauli(state: np.ndarray, qubit: int, pauli: int) -> np.ndarray:
    """Apply X (1), Y (2) or Z (3) to ``qubit``."""
    n = _num_qubits(state)
    t = state.reshape((2,) * n)
    i0, i1 = _slices(n, {qubit: 0}), _slices(n, {qubit: 1})
    out = t.copy()
    if pauli == 1:
        out[i0], out[i1] = t[i1], t[i0]
    elif pauli == 2:
        out[i0], out[i1] = -1j * t[i1], 1j * t[i0]
    elif pauli == 3:
        out[i1] = -t[i1]
    else:
        raise ValueError(f"unknown Pauli code {pauli}")
    return out.reshape(-1)


def run(circuit: Circuit) -> np.ndarray:
    if circuit.num_qubits > MAX_QUBITS:
        raise SimulationError(f"{circuit.num_qubits} qubits exceeds the {MAX_QUBITS}-qubit limit")
    state = zero_state(circuit.num_qubits)
    for g in circuit.gates:
        state = apply_gate(state, g)
    return state


def _measured_values(circuit: Circuit) -> np.ndarray:
    """For each basis index, the integer formed by the measured bits."""
    idx = np.arange(2**circuit.num_qubits)
    vals = np.zeros_like(idx)
    for j, q in enumerate(circuit.measured_qubits):
        vals |= ((idx >> q) & 1) << j
    return vals


def _key(value: int, width: int) -> str:
    return format(value, f"0{width}b")


def ideal_distribution(circuit: Circuit, cutoff: float = 1e-14) -> dict[str, float]:
    """Exact outcome probabilities over the measured qubits.

    Outcomes below ``cutoff`` are dropped (they are numerical residue of
    interference, not real support).
    """
    probs = np.abs(run(circuit)) ** 2
    m = len(circuit.measured_qubits)
    marg = np.bincount(_measured_values(circuit), weights=probs, minlength=2**m)
    return {_key(v, m): float(p) for v, p in enumerate(marg) if p > cutoff}


def _error_slots(circuit: Circuit, noise: NoiseModel):
    gate_of, qubit_of, prob = [], [], []
    for i, g in enumerate(circuit.gates):
        p = noise.p1 if len(g.qubits) == 1 else noise.p2
        for q in g.qubits:
            gate_of.append(i)
            qubit_of.append(q)
            prob.append(p)
    return np.array(gate_of, dtype=int), np.array(qubit_of, dtype=int), np.array(prob)


def sample(
    circuit: Circuit,
    shots: int,
    seed: int = 0,
    noise: NoiseModel | None = None,
) -> OutcomeDistribution:
    """Draw ``shots`` measurement outcomes. Deterministic for a given seed."""
    if shots < 1:
        raise SimulationError("shots must be at least 1")
    if circuit.num_qubits > MAX_QUBITS:
        raise SimulationError(f"{circuit.num_qubits} qubits exceeds the {MAX_QUBITS}-qubit limit")
    rng = np.random.default_rng(seed)
    m = len(circuit.measured_qubits)
    values = _measured_values(circuit)

    if noise is None:
        ideal = ideal_distribution(circuit, cutoff=0.0)
        keys = list(ideal)
        p = np.array([ideal[k] for k in keys])
        draws = rng.multinomial(shots, p / p.sum())
        return OutcomeDistribution({k: int(c) for k, c in zip(keys, draws) if c}, shots)

    outcomes = _noisy_outcomes(circuit, shots, rng, noise, values)
    if noise.p_read > 0:
        flips = rng.random((shots, m)) < noise.p_read
        mask = (flips.astype(np.int64) << np.arange(m)).sum(axis=1)
        outcomes = outcomes ^ mask
    uniq, cnt = np.unique(outcomes, return_counts=True)
    return OutcomeDistribution({_key(int(v), m): int(c) for v, c in zip(uniq, cnt)}, shots)


def _noisy_outcomes(circuit, shots, rng, noise, values) -> np.ndarray:
    gate_of, qubit_of, prob = _error_slots(circuit, noise)
    hits = rng.random((shots, len(prob))) < prob
    paulis = rng.integers(1, 4, size=hits.shape)

    # group shots by error pattern, keeping first-seen order
    groups: dict[tuple, int] = {}
    clean = ~hits.any(axis=1)
    n_clean = int(clean.sum())
    if n_clean:
        groups[()] = n_clean
    for row in np.flatnonzero(~clean):
        slots = np.flatnonzero(hits[row])
        pattern = tuple((int(s), int(paulis[row, s])) for s in slots)
        groups[pattern] = groups.get(pattern, 0) + 1

    prefix = _Prefix(circuit)
    chunks = []
    for pattern, k in groups.items():
        state = prefix.trajectory(pattern, gate_of, qubit_of)
        p = np.abs(state) ** 2
        draws = rng.multinomial(k, p / p.sum())
        nz = np.flatnonzero(draws)
        chunks.append(np.repeat(values[nz], draws[nz]))
    return np.concatenate(chunks)


class _Prefix:
    """Ideal states after each gate prefix, computed on demand."""

    def __init__(self, circuit: Circuit):
        self.circuit = circuit
        self.cache = circuit.num_qubits <= _PREFIX_CACHE_QUBITS
        self.states = [zero_state(circuit.num_qubits)]

    def after(self, k: int) -> np.ndarray:
        if not self.cache:
            state = self.states[0]
            for g in self.circuit.gates[:k]:
                state = apply_gate(state, g)
            return state
        while len(self.states) <= k:
            self.states.append(apply_gate(self.states[-1], self.circuit.gates[len(self.states) - 1]))
        return self.states[k]

    def trajectory(self, pattern, gate_of, qubit_of) -> np.ndarray:
        if not pattern:
            return self.after(len(self.circuit.gates))
        errors: dict[int, list[tuple[int, int]]] = {}
        for slot, pauli in pattern:
            errors.setdefault(int(gate_of[slot]), []).append((int(qubit_of[slot]), pauli))
        first = min(errors)
        state = self.after(first + 1)
        for i in range(first, len(self.circuit.gates)):
            if i > first:
                state = apply_gate(state, self.circuit.gates[i])
            for q, pauli in errors.get(i, ()):
                state = apply_pauli(state, q, pauli)
        return state
