"""
Circuit IR and ASAP layer scheduling.

A circuit is an ordered gate list over qubits ``0..n-1`` plus the list of
measured qubits (position in that list = classical bit index). Layers are
computed greedily: a gate lands one layer after the latest earlier gate that
shares an operand with it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence


class GateKind(str, Enum):
    X = "x"
    H = "h"
    CX = "cx"
    SWAP = "swap"
    CCX = "ccx"
    MCX = "mcx"


class Role(str, Enum):
    ORIGINAL = "original"
    TROJAN_SWITCH = "trojan-switch"
    TROJAN_PAYLOAD = "trojan-payload"


_FIXED_ARITY = {GateKind.X: 1, GateKind.H: 1, GateKind.CX: 2, GateKind.SWAP: 2, GateKind.CCX: 3}


@dataclass(frozen=True)
class Gate:
    """A gate application. Controls come first, the target last."""

    kind: GateKind
    qubits: tuple[int, ...]
    role: Role = Role.ORIGINAL

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        object.__setattr__(self, "role", Role(self.role))
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        arity = _FIXED_ARITY.get(self.kind)
        if arity is not None and len(self.qubits) != arity:
            raise ValueError(f"{self.kind.value} takes {arity} operand(s), got {len(self.qubits)}")
        if self.kind is GateKind.MCX and len(self.qubits) < 2:
            raise ValueError("mcx needs at least one control and a target")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"duplicate operand in {self.kind.value}{list(self.qubits)}")
        if any(q < 0 for q in self.qubits):
            raise ValueError("negative qubit index")

    @property
    def controls(self) -> tuple[int, ...]:
        if self.kind in (GateKind.X, GateKind.H, GateKind.SWAP):
            return ()
        return self.qubits[:-1]

    @property
    def target(self) -> int:
        return self.qubits[-1]

    def __str__(self):
        tag = "" if self.role is Role.ORIGINAL else f"[{self.role.value}]"
        return f"{self.kind.name}({','.join(map(str, self.qubits))}){tag}"


@dataclass(frozen=True)
class Circuit:
    """Immutable circuit. ``measured_qubits=None`` means measure every qubit in index order."""

    num_qubits: int
    gates: tuple[Gate, ...] = ()
    measured_qubits: tuple[int, ...] | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("a circuit needs at least one qubit")
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.measured_qubits is None:
            object.__setattr__(self, "measured_qubits", tuple(range(self.num_qubits)))
        else:
            object.__setattr__(self, "measured_qubits", tuple(int(q) for q in self.measured_qubits))
        for g in self.gates:
            if max(g.qubits) >= self.num_qubits:
                raise ValueError(f"{g} references a qubit outside 0..{self.num_qubits - 1}")
        m = self.measured_qubits
        if not m:
            raise ValueError("at least one qubit must be measured")
        if len(set(m)) != len(m):
            raise ValueError("measured_qubits has duplicates")
        if any(not 0 <= q < self.num_qubits for q in m):
            raise ValueError("measured qubit out of range")

    def replace_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.num_qubits, tuple(gates), self.measured_qubits, name=self.name)


@dataclass(frozen=True)
class LayerSchedule:
    """ASAP layering of a circuit.

    ``layers[i]`` holds indices into ``circuit.gates``; ``empty_positions[i]``
    is the sorted tuple of qubits no gate in layer ``i`` touches.
    """

    num_qubits: int
    layers: tuple[tuple[int, ...], ...]
    empty_positions: tuple[tuple[int, ...], ...]
    gate_layer: tuple[int, ...]

    def __len__(self):
        return len(self.layers)

    def used(self, layer: int) -> set[int]:
        return set(range(self.num_qubits)) - set(self.empty_positions[layer])


def layerize(circuit: Circuit) -> LayerSchedule:
    frontier = [-1] * circuit.num_qubits  # last occupied layer per qubit
    gate_layer = []
    layers: list[list[int]] = []
    for i, g in enumerate(circuit.gates):
        lay = 1 + max(frontier[q] for q in g.qubits)
        for q in g.qubits:
            frontier[q] = lay
        if lay == len(layers):
            layers.append([])
        layers[lay].append(i)
        gate_layer.append(lay)

    all_q = set(range(circuit.num_qubits))
    empties = []
    for idx in layers:
        used = {q for i in idx for q in circuit.gates[i].qubits}
        empties.append(tuple(sorted(all_q - used)))
    return LayerSchedule(
        num_qubits=circuit.num_qubits,
        layers=tuple(tuple(x) for x in layers),
        empty_positions=tuple(empties),
        gate_layer=tuple(gate_layer),
    )


def flatten(circuit: Circuit, schedule: LayerSchedule | None = None) -> Circuit:
    """Reorder gates layer by layer (stable within a layer)."""
    schedule = schedule or layerize(circuit)
    order = [i for layer in schedule.layers for i in layer]
    return circuit.replace_gates(circuit.gates[i] for i in order)


def depth(circuit: Circuit) -> int:
    return len(layerize(circuit).layers)


def measured_depth(circuit: Circuit) -> int:
    """Depth with the final measurements counted as one more operation on each
    measured wire, the convention used by Qiskit's ``QuantumCircuit.depth()``."""
    frontier = [0] * circuit.num_qubits
    for g in circuit.gates:
        lay = 1 + max(frontier[q] for q in g.qubits)
        for q in g.qubits:
            frontier[q] = lay
    for q in circuit.measured_qubits:
        frontier[q] += 1
    return max(frontier, default=0)


def gate_count(circuit: Circuit) -> int:
    return len(circuit.gates)


def causal_cone(circuit: Circuit, qubit: int, start: int = 0) -> set[int]:
    """Qubits whose final state may depend on ``qubit``, propagating forward
    from gate index ``start``. Any gate sharing an operand with the cone pulls
    all of its operands in."""
    if not 0 <= qubit < circuit.num_qubits:
        raise IndexError(f"qubit {qubit} out of range for {circuit.num_qubits} qubits")
    cone = {qubit}
    for g in circuit.gates[start:]:
        if cone.intersection(g.qubits):
            cone.update(g.qubits)
    return cone


def qubit_layers(schedule: LayerSchedule, circuit: Circuit, qubit: int) -> list[int]:
    """Layers in which original gates touch ``qubit``, ascending."""
    return sorted(
        schedule.gate_layer[i] for i, g in enumerate(circuit.gates) if qubit in g.qubits
    )


def gates(spec: Sequence[tuple]) -> tuple[Gate, ...]:
    """Shorthand builder: ``gates([("cx", 0, 1), ("x", 2)])``."""
    return tuple(Gate(GateKind(s[0]), tuple(s[1:])) for s in spec)
