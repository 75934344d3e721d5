import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CORPUS, load_data
from oracles import dense_distribution
from qtrojan import Circuit, NoiseModel, OutcomeDistribution, apply_gate, ideal_distribution, sample, tvd
from qtrojan.circuit import GateKind, gates
from qtrojan.sim import SimulationError, apply_pauli, run, zero_state
from strategies import circuits, gates_on


def test_single_gates():
    assert ideal_distribution(Circuit(1, gates([("x", 0)]))) == {"1": 1.0}
    hh = ideal_distribution(Circuit(1, gates([("h", 0), ("h", 0)])))
    assert hh.keys() == {"0"} and hh["0"] == pytest.approx(1.0)
    # |q1 q0> = |01>: control q0 set, so q1 flips to give |11>
    cx = Circuit(2, gates([("x", 0), ("cx", 0, 1)]))
    assert ideal_distribution(cx) == {"11": 1.0}


def test_bell_pair():
    d = ideal_distribution(load_data("bell.qasm"))
    assert d.keys() == {"00", "11"}
    assert d["00"] == pytest.approx(0.5) and d["11"] == pytest.approx(0.5)


def test_bit_order_follows_measure_list():
    c = Circuit(3, gates([("x", 2)]), measured_qubits=(2, 0))
    # classical bit 0 holds q2 and is rightmost
    assert ideal_distribution(c) == {"01": 1.0}


def test_empty_circuit_is_all_zero():
    assert ideal_distribution(Circuit(3)) == {"000": 1.0}
    assert sample(Circuit(3), 50, seed=1).counts == {"000": 50}


def test_swap_and_paulis():
    s = apply_gate(zero_state(2), Circuit(2, gates([("x", 0)])).gates[0])
    s = apply_gate(s, Circuit(2, gates([("swap", 0, 1)])).gates[0])
    assert np.isclose(abs(s[0b10]), 1.0)
    y = apply_pauli(zero_state(1), 0, 2)
    assert np.isclose(abs(y[1]), 1.0)
    z = apply_pauli(np.array([0, 1], dtype=complex), 0, 3)
    assert np.allclose(z, [0, -1])
    with pytest.raises(ValueError):
        apply_pauli(zero_state(1), 0, 4)


@pytest.mark.parametrize("name", ["1bit_adder", "4gt13", "4mod5", "ALU"])
def test_small_fixtures_against_dense_oracle(name):
    c, entry = CORPUS[name]
    got, want = ideal_distribution(c), dense_distribution(c)
    assert got.keys() == want.keys()
    assert all(abs(got[k] - want[k]) < 1e-10 for k in want)
    assert got == {entry["expected"]: 1.0}


@given(circuits(max_qubits=4, max_gates=15))
def test_matches_dense_oracle(c):
    got, want = ideal_distribution(c), dense_distribution(c)
    assert got.keys() == want.keys()
    assert all(abs(got[k] - want[k]) < 1e-10 for k in want)


@given(circuits(max_qubits=6, max_gates=20))
def test_norm_preserved(c):
    assert np.isclose(np.linalg.norm(run(c)), 1.0)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), gates_on(n))))
def test_gates_are_self_inverse(case):
    n, g = case
    rng = np.random.default_rng(0)
    psi = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    psi /= np.linalg.norm(psi)
    assert np.allclose(apply_gate(apply_gate(psi, g), g), psi)


@given(circuits(max_qubits=6, max_gates=20, classical=True))
def test_classical_circuits_are_deterministic(c):
    # reversible circuits map a basis state to a basis state
    d = ideal_distribution(c)
    assert len(d) == 1 and list(d.values()) == [1.0]


@pytest.mark.parametrize("name", ["rd53", "mini_ALU"])
def test_noiseless_sampling_converges(name):
    c, _ = CORPUS[name]
    h = Circuit(c.num_qubits, gates([("h", q) for q in c.measured_qubits]) + c.gates, c.measured_qubits)
    d = sample(h, 100_000, seed=3)
    assert tvd(d, ideal_distribution(h)) < 0.01


def test_readout_flip_rate():
    c = Circuit(1)
    d = sample(c, 100_000, seed=5, noise=NoiseModel(0.0, 0.0, 0.05))
    assert d.counts["1"] / d.shots == pytest.approx(0.05, abs=0.005)


def test_noise_monotone():
    c, _ = CORPUS["4gt11"]
    ideal = ideal_distribution(c)
    dists = [
        tvd(sample(c, 5000, seed=2, noise=NoiseModel(p, 10 * p, 2 * p)), ideal)
        for p in (0.0, 0.002, 0.01, 0.05)
    ]
    assert dists[0] == 0.0
    assert dists == sorted(dists)


def test_zero_noise_model_matches_ideal():
    c, entry = CORPUS["sym6"]
    d = sample(c, 500, seed=9, noise=NoiseModel(0.0, 0.0, 0.0))
    assert d.counts == {entry["expected"]: 500}


def test_seed_determinism():
    c, _ = CORPUS["rd84"]
    noise = NoiseModel()
    a = sample(c, 2000, seed=42, noise=noise)
    assert a == sample(c, 2000, seed=42, noise=noise)
    assert a != sample(c, 2000, seed=43, noise=noise)
    assert sum(a.counts.values()) == 2000


def test_bad_inputs():
    c = Circuit(2, gates([("h", 0)]))
    with pytest.raises(SimulationError):
        sample(c, 0)
    with pytest.raises(SimulationError):
        ideal_distribution(Circuit(21))
    with pytest.raises(ValueError):
        NoiseModel(p1=1.5)
    with pytest.raises(ValueError):
        NoiseModel.parse("0.1,0.2")
    assert NoiseModel.parse("0.001,0.02,0.03") == NoiseModel(0.001, 0.02, 0.03)


def test_outcome_distribution_validation_and_json():
    d = OutcomeDistribution({"10": 3, "01": 1}, 4)
    assert list(d.counts) == ["01", "10"] and d.width == 2
    assert OutcomeDistribution.from_json(d.to_json()) == d
    assert d.probabilities() == {"01": 0.25, "10": 0.75}
    with pytest.raises(ValueError):
        OutcomeDistribution({"1": 1, "10": 1}, 2)
    with pytest.raises(ValueError):
        OutcomeDistribution({"1": 1}, 2)
    with pytest.raises(ValueError):
        OutcomeDistribution({"2": 1}, 1)


def test_gate_kinds_cover_enum():
    # every kind the parser accepts has a simulator rule
    for kind in GateKind:
        n = 4
        qubits = (0, 1, 2, 3) if kind is GateKind.MCX else tuple(range({"x": 1, "h": 1, "ccx": 3}.get(kind.value, 2)))
        c = Circuit(n, gates([(kind.value, *qubits)]))
        assert np.isclose(sum(ideal_distribution(c).values()), 1.0)
