import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from multichsh import qstate
from multichsh.qstate import DensityMatrix, GraphSpec, Observable, X, Y, Z, I2

from conftest import kron_all, random_density


def test_ghz_and_w_amplitudes():
    g = qstate.ghz_state(3).amplitudes
    assert g[0] == pytest.approx(1 / math.sqrt(2))
    assert g[7] == pytest.approx(1 / math.sqrt(2))
    assert np.count_nonzero(g) == 2
    w = qstate.w_state(4).amplitudes
    assert sorted(np.flatnonzero(w)) == [1, 2, 4, 8]
    assert np.allclose(w[[1, 2, 4, 8]], 0.5)


def test_basis_state_msb_convention():
    psi = qstate.basis_state([1, 0, 0])
    assert np.flatnonzero(psi.amplitudes).tolist() == [4]


def test_tensor_product_of_pure_states():
    a, b = qstate.basis_state([1]), qstate.ghz_state(2)
    assert np.allclose((a @ b).amplitudes, np.kron(a.amplitudes, b.amplitudes))


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix(1, np.array([[1, 1], [0, 0]], dtype=complex))
    with pytest.raises(ValueError):
        DensityMatrix(1, np.eye(2, dtype=complex))
    with pytest.raises(ValueError):
        DensityMatrix(1, np.diag([1.5, -0.5]).astype(complex))
    with pytest.raises(ValueError):
        qstate.PureState(1, np.array([1.0, 1.0]))


def test_size_cap_from_environment(monkeypatch):
    monkeypatch.setenv("NONLOCAL_MAX_QUBITS", "3")
    assert qstate.max_qubits() == 3
    with pytest.raises(ValueError):
        qstate.ghz_state(4)
    monkeypatch.setenv("NONLOCAL_MAX_QUBITS", "zero")
    with pytest.raises(ValueError):
        qstate.max_qubits()


def test_expectation_matches_kron(rng):
    rho = random_density(3, rng)
    ops = [X, Y, Z]
    brute = np.trace(kron_all(ops) @ rho.data).real
    assert qstate.expectation(rho, ops) == pytest.approx(brute, abs=1e-12)


def test_correlation_tensor_matches_kron(rng):
    rho = random_density(2, rng)
    t = qstate.correlation_tensor(rho)
    for a in range(4):
        for b in range(4):
            want = np.trace(np.kron(qstate.PAULIS[a], qstate.PAULIS[b]) @ rho.data).real
            assert t[a, b] == pytest.approx(want, abs=1e-12)
    assert t[0, 0] == pytest.approx(1.0)


def test_apply_local_matches_kron(rng):
    rho = random_density(3, rng)
    got = qstate.apply_local(rho, X, 1)
    big = kron_all([I2, X, I2])
    assert np.allclose(got, big @ rho.data @ big.conj().T)


def test_partial_trace_matches_kron():
    rng = np.random.default_rng(5)
    a, b, c = (random_density(1, rng) for _ in range(3))
    rho = DensityMatrix(3, kron_all([a.data, b.data, c.data]))
    assert np.allclose(qstate.partial_trace(rho, [0, 2]).data, np.kron(a.data, c.data))
    assert np.allclose(qstate.partial_trace(rho, [1]).data, b.data)


def test_partial_trace_of_ghz_is_classical():
    rho = qstate.pure_to_density(qstate.ghz_state(4))
    red = qstate.partial_trace(rho, [0, 1]).data
    assert np.allclose(red, np.diag([0.5, 0, 0, 0.5]))


def test_observable_eigenvectors():
    o = Observable.from_angles(0.7, 1.9)
    for s in (1, -1):
        v = o.eigenvector(s)
        assert np.allclose(o.matrix @ v, s * v)
    with pytest.raises(ValueError):
        Observable((0, 0, 0))


def test_projection_matches_kron_projector():
    rho = qstate.pure_to_density(qstate.ghz_state(3))
    cond = qstate.project_and_condition(rho, [(2, qstate.OBS_X, 1)])
    proj = kron_all([I2, I2, (I2 + X) / 2])
    full = proj @ rho.data @ proj
    prob = np.trace(full).real
    assert cond.probability == pytest.approx(prob)
    # reduce the projected block on the first two qubits by hand
    red = full.reshape(4, 2, 4, 2).trace(axis1=1, axis2=3) / prob
    assert np.allclose(cond.state.data, red)
    assert cond.kept == (0, 1)


def test_impossible_outcome():
    rho = qstate.pure_to_density(qstate.basis_state([0, 0, 0]))
    cond = qstate.project_and_condition(rho, [(0, qstate.OBS_Z, -1)])
    assert cond.impossible and cond.state is None and cond.probability == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_outcome_probabilities_sum_to_one(seed, k):
    rng = np.random.default_rng(seed)
    rho = random_density(4, rng)
    obs = [Observable(v / np.linalg.norm(v)) for v in rng.normal(size=(k, 3))]
    total = 0.0
    for outs in itertools.product((1, -1), repeat=k):
        spec = [(q, o, s) for q, o, s in zip(range(k), obs, outs)]
        total += qstate.project_and_condition(rho, spec).probability
    assert total == pytest.approx(1.0, abs=1e-12)


def test_graph_state_stabilized():
    g = GraphSpec.ring(4)
    psi = qstate.graph_state(g).amplitudes
    paulis = {"I": I2, "X": X, "Y": Y, "Z": Z}
    for i in range(4):
        s = g.stabilizer(i)
        op = kron_all([paulis[c] for c in s])
        assert np.allclose(op @ psi, psi)


def test_graph_spec_validation_and_builders():
    with pytest.raises(ValueError):
        GraphSpec(3, [(0, 0)])
    with pytest.raises(ValueError):
        GraphSpec(3, [(0, 5)])
    star = GraphSpec.star(4)
    assert star.neighbors(0) == [1, 2, 3]
    assert star.stabilizer(0) == "XZZZ"
    assert len(GraphSpec.complete(4).edges) == 6
    assert GraphSpec.line(3).adjacent(0, 1) and not GraphSpec.line(3).adjacent(0, 2)


def test_graph_file_roundtrip(tmp_path):
    g = GraphSpec.ring(5)
    path = tmp_path / "ring.txt"
    qstate.write_graph(g, path)
    h = qstate.read_graph(path)
    assert h.n_vertices == 5 and sorted(h.edges) == sorted(g.edges)


def test_graph_file_is_one_based(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("# a line\nn 3\ne 1 2\ne 2 3\n")
    g = qstate.read_graph(path)
    assert g.adjacent(0, 1) and g.adjacent(1, 2)


def test_graph_file_errors_name_the_line(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("n 3\ne 1 9\n")
    with pytest.raises(ValueError, match=":2"):
        qstate.read_graph(path)


def test_partial_trace_of_product_pure_state(rng):
    def rand_pure(n):
        v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
        return qstate.PureState(n, v / np.linalg.norm(v))
    psi, phi = rand_pure(2), rand_pure(1)
    red = qstate.partial_trace(qstate.pure_to_density(psi @ phi), [0, 1])
    assert np.allclose(red.data, qstate.pure_to_density(psi).data, atol=1e-12)


@pytest.mark.parametrize("g", [GraphSpec.star(6), GraphSpec.line(5), GraphSpec.complete(4),
                               GraphSpec(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (6, 7), (0, 7)])])
def test_every_stabilizer_has_unit_expectation(g):
    rho = qstate.pure_to_density(qstate.graph_state(g))
    paulis = {"I": I2, "X": X, "Y": Y, "Z": Z}
    for i in range(g.n_vertices):
        ops = [paulis[c] for c in g.stabilizer(i)]
        assert qstate.expectation(rho, ops) == pytest.approx(1.0, abs=1e-10)
