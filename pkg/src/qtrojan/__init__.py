"""Controllable Trojan insertion into quantum circuits, plus the simulation
and metrics needed to measure what the Trojan does."""

from .circuit import (
    Circuit,
    Gate,
    GateKind,
    LayerSchedule,
    Role,
    causal_cone,
    depth,
    flatten,
    gate_count,
    layerize,
    measured_depth,
)
from .metrics import OverheadReport, accuracy, overhead, tvd
from .qasm import ParseDiagnostic, QasmError, emit_qasm, parse_qasm
from .sim import NoiseModel, OutcomeDistribution, apply_gate, ideal_distribution, sample
from .trojan import (
    NoSwitchSlot,
    TooFewQubits,
    TrojanConfig,
    TrojanError,
    TrojanReport,
    insert_trojan,
    set_activation,
)

__all__ = [
    "Circuit",
    "Gate",
    "GateKind",
    "LayerSchedule",
    "NoSwitchSlot",
    "NoiseModel",
    "OutcomeDistribution",
    "OverheadReport",
    "ParseDiagnostic",
    "QasmError",
    "Role",
    "TooFewQubits",
    "TrojanConfig",
    "TrojanError",
    "TrojanReport",
    "accuracy",
    "apply_gate",
    "causal_cone",
    "depth",
    "emit_qasm",
    "flatten",
    "gate_count",
    "ideal_distribution",
    "insert_trojan",
    "layerize",
    "measured_depth",
    "overhead",
    "parse_qasm",
    "sample",
    "set_activation",
    "tvd",
]
