from hypothesis import strategies as st

from qtrojan import Circuit, Gate, GateKind, Role

_ARITY = {"x": 1, "h": 1, "cx": 2, "swap": 2, "ccx": 3}


@st.composite
def gates_on(draw, n: int, kinds=("x", "h", "cx", "swap", "ccx", "mcx"), roles=False):
    usable = [k for k in kinds if _ARITY.get(k, 2) <= n]
    kind = draw(st.sampled_from(usable))
    arity = _ARITY.get(kind) or draw(st.integers(2, n))
    qubits = draw(st.permutations(range(n)))[:arity]
    role = draw(st.sampled_from(list(Role))) if roles else Role.ORIGINAL
    return Gate(GateKind(kind), tuple(qubits), role)


@st.composite
def circuits(draw, min_qubits=1, max_qubits=6, max_gates=20, classical=False, roles=False):
    n = draw(st.integers(min_qubits, max_qubits))
    kinds = ("x", "cx", "swap", "ccx", "mcx") if classical else ("x", "h", "cx", "swap", "ccx", "mcx")
    gs = draw(st.lists(gates_on(n, kinds, roles), max_size=max_gates))
    measured = draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=n, unique=True))
    return Circuit(n, tuple(gs), tuple(measured))


@st.composite
def count_dists(draw, width=None, max_shots=200):
    """Pair-friendly random count dictionaries of a fixed bit width."""
    w = width if width is not None else draw(st.integers(1, 4))
    keys = [format(i, f"0{w}b") for i in range(2**w)]
    counts = draw(st.lists(st.integers(0, max_shots), min_size=len(keys), max_size=len(keys)))
    if sum(counts) == 0:
        counts[0] = 1
    return {k: c for k, c in zip(keys, counts) if c}
