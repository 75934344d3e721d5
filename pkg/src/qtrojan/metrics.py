"""
Distances and overhead figures for comparing an original circuit with its
Trojan-inserted variants.

Distributions may be given either as :class:`OutcomeDistribution` (counts and
shots) or as a plain ``{bitstring: probability}`` mapping, which is how exact
simulator output is represented.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Mapping, Union

from .circuit import Circuit, depth, gate_count
from .sim import OutcomeDistribution

Distribution = Union[OutcomeDistribution, Mapping[str, float]]

CSV_HEADER = (
    "circuit",
    "depth",
    "depth_obfuscated",
    "gate_count",
    "gate_obfuscated",
    "gate_difference",
    "accuracy",
    "accuracy_deactivated",
    "accuracy_change_pct",
    "tvd_activated",
)


def _probs(d: Distribution, exact: bool = False) -> dict[str, float | Fraction]:
    if isinstance(d, OutcomeDistribution):
        if exact:
            return {k: Fraction(v, d.shots) for k, v in d.counts.items()}
        return d.probabilities()
    if exact:
        return {k: Fraction(v) for k, v in d.items()}
    return dict(d)


def width(d: Distribution) -> int:
    if isinstance(d, OutcomeDistribution):
        return d.width
    widths = {len(k) for k in d}
    if len(widths) > 1:
        raise ValueError(f"mixed key widths {sorted(widths)}")
    return widths.pop() if widths else 0


def _check_widths(a: Distribution, b: Distribution) -> None:
    wa, wb = width(a), width(b)
    if wa and wb and wa != wb:
        raise ValueError(f"bit-width mismatch: {wa} vs {wb}")


def tvd(a: Distribution, b: Distribution, exact: bool = False) -> float | Fraction:
    """Total variation distance, half the L1 distance between normalized
    distributions. Keys missing on one side count as zero.

    With equal shot counts this equals ``sum(|y_a - y_b|) / (2 * shots)``.
    ``exact=True`` evaluates in rational arithmetic and returns a Fraction.
    """
    _check_widths(a, b)
    pa, pb = _probs(a, exact), _probs(b, exact)
    keys = pa.keys() | pb.keys()
    if exact:
        return sum((abs(pa.get(k, 0) - pb.get(k, 0)) for k in keys), Fraction(0)) / 2
    d = 0.5 * math.fsum(abs(pa.get(k, 0.0) - pb.get(k, 0.0)) for k in keys)
    return min(1.0, max(0.0, d))


def accuracy(dist: Distribution, expected: str) -> float:
    """Fraction of probability mass on ``expected``."""
    w = width(dist)
    if w and len(expected) != w:
        raise ValueError(f"expected outcome {expected!r} has width {len(expected)}, distribution has {w}")
    return float(_probs(dist).get(expected, 0.0))


def argmax(dist: Distribution) -> str:
    p = _probs(dist)
    # ties broken by smallest key
    return min(p, key=lambda k: (-p[k], k))


@dataclass(frozen=True)
class OverheadReport:
    depth_before: int
    depth_after: int
    gates_before: int
    gates_after: int
    depth_delta_pct: float
    gate_delta_pct: float
    accuracy_before: float
    accuracy_after: float
    tvd: float
    expected: str
    expected_from_argmax: bool = False

    @property
    def gate_difference(self) -> int:
        return self.gates_after - self.gates_before

    @property
    def accuracy_change_pct(self) -> float:
        # percentage points, not a relative change
        return 100.0 * (self.accuracy_after - self.accuracy_before)

    def to_json(self) -> str:
        data = asdict(self)
        data["gate_difference"] = self.gate_difference
        data["accuracy_change_pct"] = self.accuracy_change_pct
        return json.dumps(data, sort_keys=True)

    def csv_row(self, circuit: str) -> list:
        return [
            circuit,
            self.depth_before,
            self.depth_after,
            self.gates_before,
            self.gates_after,
            self.gate_difference,
            self.accuracy_before,
            self.accuracy_after,
            self.accuracy_change_pct,
            self.tvd,
        ]

    def to_csv(self, circuit: str) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerow(self.csv_row(circuit))
        return buf.getvalue()


def _pct(before: int, after: int) -> float:
    if before == 0:
        return 0.0 if after == 0 else math.inf
    return 100.0 * (after - before) / before


def overhead(
    original: Circuit,
    inserted: Circuit,
    orig_dist: Distribution,
    ins_dist: Distribution,
    expected: str | None = None,
) -> OverheadReport:
    """Compare an original circuit with an altered one.

    Without ``expected`` the accuracy reference is the most likely outcome of
    ``orig_dist`` and the report is flagged ``expected_from_argmax``.
    """
    if original.num_qubits != inserted.num_qubits:
        raise ValueError("circuits act on different numbers of qubits")
    if original.measured_qubits != inserted.measured_qubits:
        raise ValueError("circuits measure different qubits")
    from_argmax = expected is None
    if from_argmax:
        expected = argmax(orig_dist)
    d0, d1 = depth(original), depth(inserted)
    g0, g1 = gate_count(original), gate_count(inserted)
    return OverheadReport(
        depth_before=d0,
        depth_after=d1,
        gates_before=g0,
        gates_after=g1,
        depth_delta_pct=_pct(d0, d1),
        gate_delta_pct=_pct(g0, g1),
        accuracy_before=accuracy(orig_dist, expected),
        accuracy_after=accuracy(ins_dist, expected),
        tvd=float(tvd(orig_dist, ins_dist)),
        expected=expected,
        expected_from_argmax=from_argmax,
    )
