import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CORPUS, load_data
from oracles import brute_force_asap, longest_chain, reachable_qubits
from qtrojan import Circuit, Gate, GateKind, causal_cone, depth, flatten, gate_count, layerize, measured_depth
from qtrojan.circuit import gates
from strategies import circuits


def test_gate_arity_and_operands():
    with pytest.raises(ValueError):
        Gate(GateKind.CX, (0,))
    with pytest.raises(ValueError):
        Gate(GateKind.CX, (1, 1))
    with pytest.raises(ValueError):
        Gate(GateKind.MCX, (0,))
    g = Gate(GateKind.MCX, (0, 1, 2, 3))
    assert g.controls == (0, 1, 2) and g.target == 3
    assert Gate(GateKind.SWAP, (0, 1)).controls == ()


def test_circuit_invariants():
    with pytest.raises(ValueError):
        Circuit(2, gates([("cx", 0, 2)]))
    with pytest.raises(ValueError):
        Circuit(2, (), measured_qubits=(0, 0))
    with pytest.raises(ValueError):
        Circuit(2, (), measured_qubits=(2,))
    assert Circuit(3).measured_qubits == (0, 1, 2)


def test_sparse4_layers():
    c = load_data("sparse4.qasm")
    s = layerize(c)
    assert len(s) == 7
    assert s.used(0) == {0, 2}
    assert s.empty_positions[0] == (1, 3)
    assert s.empty_positions[1] == (2,)
    assert 0 in s.empty_positions[5]
    # the columns drawn without empty slots
    for layer in (2, 3, 4, 6):
        assert s.empty_positions[layer] == ()


def test_empty_circuit():
    s = layerize(Circuit(3))
    assert s.layers == () and s.empty_positions == ()
    assert depth(Circuit(3)) == 0
    assert gate_count(Circuit(3)) == 0


def test_chain_example():
    c = Circuit(3, gates([("cx", 0, 1), ("cx", 1, 2), ("x", 0)]))
    s = layerize(c)
    assert s.layers == ((0,), (1, 2))
    assert s.empty_positions == ((2,), ())
    assert list(s.gate_layer) == brute_force_asap(c)


def test_single_x_depth():
    assert depth(Circuit(1, gates([("x", 0)]))) == 1


@pytest.mark.parametrize(
    "name, expected_depth, expected_gates",
    [("4gt13", 4, 4), ("1bit_adder", 5, 5), ("rd53", 16, 16), ("rd84", 15, 28), ("4gt11", 13, 13)],
)
def test_fixture_sizes(name, expected_depth, expected_gates):
    c, _ = CORPUS[name]
    assert depth(c) == expected_depth
    assert gate_count(c) == expected_gates


def test_mini_alu_depth_conventions():
    # 7 gates cannot fill 8 gate layers; a depth of 8 only arises when counting the
    # measurement as a final layer
    c, _ = CORPUS["mini_ALU"]
    assert gate_count(c) == 7
    assert depth(c) == 7
    assert measured_depth(c) == 8


def test_causal_cone_examples():
    assert causal_cone(Circuit(3), 2) == {2}
    chain = Circuit(3, gates([("cx", 0, 1), ("cx", 1, 2)]))
    assert causal_cone(chain, 0) == {0, 1, 2} == reachable_qubits(chain, 0)
    disjoint = Circuit(2, gates([("x", 0), ("x", 1)]))
    assert causal_cone(disjoint, 0) == {0}
    with pytest.raises(IndexError):
        causal_cone(chain, 3)


@given(circuits(max_gates=30))
def test_empty_positions_are_complement(c):
    s = layerize(c)
    everything = set(range(c.num_qubits))
    for i, layer in enumerate(s.layers):
        used = [q for g in layer for q in c.gates[g].qubits]
        assert len(used) == len(set(used))  # disjoint within a layer
        assert s.empty_positions[i] == tuple(sorted(everything - set(used)))


@given(circuits(max_gates=30))
def test_depth_is_longest_dependency_chain(c):
    assert depth(c) == longest_chain(c)


@given(circuits(max_gates=5, max_qubits=4))
def test_layering_matches_brute_force(c):
    assert list(layerize(c).gate_layer) == brute_force_asap(c)


@given(circuits(max_gates=30))
def test_asap_and_flatten_idempotent(c):
    s = layerize(c)
    for i, g in enumerate(c.gates):
        lay = s.gate_layer[i]
        if lay:
            # some earlier gate sharing an operand sits in the previous layer
            assert any(
                s.gate_layer[j] == lay - 1 and set(c.gates[j].qubits) & set(g.qubits) for j in range(i)
            )
    f = flatten(c, s)
    s2 = layerize(f)
    assert [[f.gates[i] for i in layer] for layer in s2.layers] == [[c.gates[i] for i in layer] for layer in s.layers]


@given(circuits(max_gates=25), st.data())
def test_causal_cone_matches_reachability(c, data):
    q = data.draw(st.integers(0, c.num_qubits - 1))
    assert causal_cone(c, q) == reachable_qubits(c, q)
