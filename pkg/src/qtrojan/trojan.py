"""
Switch-controlled Trojan insertion into empty schedule slots.

The Trojan is one X gate (the switch) on a control qubit in layer 0 plus up
to ``gate_limit`` CX payload gates from that control qubit into randomly
chosen victims. Payloads go only into layers where both the control and the
victim are idle, so the inserted circuit keeps the original depth. With the
switch omitted the control stays in |0> and every payload is an identity.

Victims are drawn with numpy's PCG64 generator seeded by ``config.seed``;
each victim is picked as ``candidates[rng.integers(len(candidates))]`` over
the sorted candidate list, which makes reports reproducible across platforms.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .circuit import Circuit, Gate, GateKind, LayerSchedule, Role, layerize, qubit_layers

ZERO_PAYLOAD = "ZeroPayloadPlaced"


class TrojanError(Exception):
    """Insertion is infeasible for this circuit/config."""


class NoSwitchSlot(TrojanError):
    pass


class TooFewQubits(TrojanError):
    pass


class InconsistentReport(TrojanError):
    pass


@dataclass(frozen=True)
class TrojanConfig:
    control_pos: int | None = None  # None: pick a safe default
    gate_limit: int = 1
    seed: int = 0
    activated: bool = True

    def __post_init__(self):
        if self.gate_limit < 1:
            raise ValueError("gate_limit must be at least 1")
        if self.control_pos is not None and self.control_pos < 0:
            raise ValueError("control_pos must be a qubit index")


class Payload(NamedTuple):
    layer: int
    control: int
    target: int


@dataclass(frozen=True)
class TrojanReport:
    control_pos: int
    switch: tuple[int, int] | None  # (layer, qubit)
    payloads: tuple[Payload, ...]
    skipped_layers: tuple[int, ...]
    gates_added: int
    seed: int
    warnings: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "switch": None if self.switch is None else {"layer": self.switch[0], "qubit": self.switch[1]},
            "payloads": [p._asdict() for p in self.payloads],
            "skipped": list(self.skipped_layers),
            "gates_added": self.gates_added,
            "seed": self.seed,
            "control": self.control_pos,
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "TrojanReport":
        d = json.loads(text)
        sw = d["switch"]
        payloads = tuple(Payload(p["layer"], p["control"], p["target"]) for p in d["payloads"])
        control = d.get("control")
        if control is None:
            control = sw["qubit"] if sw else payloads[0].control
        return cls(
            control_pos=control,
            switch=None if sw is None else (sw["layer"], sw["qubit"]),
            payloads=payloads,
            skipped_layers=tuple(d["skipped"]),
            gates_added=d["gates_added"],
            seed=d["seed"],
            warnings=tuple(d.get("warnings", ())),
        )


def _plan(schedule: LayerSchedule, control: int, gate_limit: int, seed: int):
    rng = np.random.default_rng(seed)
    available = set(range(schedule.num_qubits)) - {control}
    payloads, skipped = [], []
    for layer in range(1, len(schedule)):
        if len(payloads) >= gate_limit:
            break
        empty = schedule.empty_positions[layer]
        cands = sorted(available.intersection(empty)) if control in empty else []
        if not cands:
            skipped.append(layer)
            continue
        target = cands[int(rng.integers(len(cands)))]
        payloads.append(Payload(layer, control, target))
        available.discard(target)
    return payloads, skipped


def _first_use(circuit: Circuit, schedule: LayerSchedule, qubit: int) -> float:
    used = qubit_layers(schedule, circuit, qubit)
    return used[0] if used else math.inf


def _is_safe(payloads, first_use) -> bool:
    # control must still be |0> (deactivated) at every payload
    return not payloads or payloads[-1].layer < first_use


def default_control(circuit: Circuit, config: TrojanConfig, schedule: LayerSchedule | None = None) -> int:
    """Lowest qubit that is idle in layer 0 and untouched by original gates
    up to the last payload layer, preferring qubits that receive at least one
    payload. Falls back to the lowest idle qubit in layer 0."""
    schedule = schedule or layerize(circuit)
    if not schedule.layers or not schedule.empty_positions[0]:
        raise NoSwitchSlot("layer 0 has no idle qubit for the switch gate")
    candidates = schedule.empty_positions[0]
    safe_empty = []
    for c in candidates:
        payloads, _ = _plan(schedule, c, config.gate_limit, config.seed)
        if _is_safe(payloads, _first_use(circuit, schedule, c)):
            if payloads:
                return c
            safe_empty.append(c)
    return safe_empty[0] if safe_empty else candidates[0]


def _build(circuit: Circuit, schedule: LayerSchedule, payloads, control: int, activated: bool) -> Circuit:
    work = [(g, schedule.gate_layer[i]) for i, g in enumerate(circuit.gates)]
    for p in payloads:
        ops = {p.control, p.target}
        pos = 0
        for i, (g, lay) in enumerate(work):
            if lay < p.layer and ops.intersection(g.qubits):
                pos = i + 1
        work.insert(pos, (Gate(GateKind.CX, (p.control, p.target), Role.TROJAN_PAYLOAD), p.layer))
    gates = [g for g, _ in work]
    if activated:
        gates.insert(0, Gate(GateKind.X, (control,), Role.TROJAN_SWITCH))
    return circuit.replace_gates(gates)


def insert_trojan(circuit: Circuit, config: TrojanConfig) -> tuple[Circuit, TrojanReport]:
    """Insert the switch and payload gates; returns the new circuit and a
    record of where everything went."""
    if circuit.num_qubits < 2:
        raise TooFewQubits("a Trojan needs a control qubit and at least one victim")
    schedule = layerize(circuit)
    control = config.control_pos
    if control is None:
        control = default_control(circuit, config, schedule)
    if control >= circuit.num_qubits:
        raise ValueError(f"control_pos {control} out of range for {circuit.num_qubits} qubits")
    if not schedule.layers or control not in schedule.empty_positions[0]:
        raise NoSwitchSlot(f"qubit {control} is not idle in layer 0, no room for the switch gate")

    payloads, skipped = _plan(schedule, control, config.gate_limit, config.seed)
    warnings = []
    if not payloads:
        warnings.append(f"{ZERO_PAYLOAD}: no layer had qubit {control} and a victim idle")
    elif not _is_safe(payloads, _first_use(circuit, schedule, control)):
        warnings.append(
            f"control qubit {control} is used by original gates before the last payload "
            "layer; the deactivated circuit may not match the original"
        )
    inserted = _build(circuit, schedule, payloads, control, config.activated)
    report = TrojanReport(
        control_pos=control,
        switch=(0, control) if config.activated else None,
        payloads=tuple(payloads),
        skipped_layers=tuple(skipped),
        gates_added=len(payloads) + (1 if config.activated else 0),
        seed=config.seed,
        warnings=tuple(warnings),
    )
    return inserted, report


def set_activation(circuit: Circuit, report: TrojanReport, activated: bool) -> Circuit:
    """Add or remove the switch gate of a circuit produced by insert_trojan."""
    found = [(g.qubits[0], g.qubits[1]) for g in circuit.gates if g.role is Role.TROJAN_PAYLOAD]
    if found != [(p.control, p.target) for p in report.payloads]:
        raise InconsistentReport("payload gates in the circuit do not match the report")
    switches = [i for i, g in enumerate(circuit.gates) if g.role is Role.TROJAN_SWITCH]
    if len(switches) > 1:
        raise InconsistentReport("more than one switch gate")
    if switches and circuit.gates[switches[0]].qubits != (report.control_pos,):
        raise InconsistentReport("switch gate is not on the reported control qubit")

    if activated:
        if switches:
            return circuit
        switch = Gate(GateKind.X, (report.control_pos,), Role.TROJAN_SWITCH)
        return circuit.replace_gates((switch,) + circuit.gates)
    if not switches:
        return circuit
    return circuit.replace_gates(g for i, g in enumerate(circuit.gates) if i != switches[0])
