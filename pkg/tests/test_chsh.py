import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from multichsh import chsh, qstate
from multichsh.chsh import ChshSettings
from multichsh.qstate import DensityMatrix, Observable

from conftest import random_density, random_unitary

seeds = st.integers(0, 2**32 - 1)


def brute_chsh(rho, s):
    e = lambda a, b: np.trace(np.kron(a.matrix, b.matrix) @ rho.data).real
    return e(s.a0, s.b0) + e(s.a0, s.b1) + e(s.a1, s.b0) - e(s.a1, s.b1)


def test_bell_state_reaches_tsirelson():
    rho = qstate.pure_to_density(qstate.ghz_state(2))
    assert chsh.m_chsh(rho) == pytest.approx(math.sqrt(2))
    s, v = chsh.optimal_chsh_settings(rho)
    assert v == pytest.approx(2 * math.sqrt(2))
    assert brute_chsh(rho, s) == pytest.approx(v)


def test_product_and_mixed_states_do_not_violate():
    assert chsh.m_chsh(qstate.maximally_mixed(2)) == 0
    prod = qstate.pure_to_density(qstate.basis_state([0, 1]))
    assert chsh.m_chsh(prod) == pytest.approx(1.0)
    assert chsh.chsh_margin(prod) == pytest.approx(0.0, abs=1e-15)


def test_werner_state_value():
    bell = qstate.pure_to_density(qstate.ghz_state(2)).data
    v = 0.6
    rho = DensityMatrix(2, v * bell + (1 - v) * np.eye(4) / 4)
    assert chsh.m_chsh(rho) == pytest.approx(v * math.sqrt(2))


def test_rejects_wrong_size():
    with pytest.raises(ValueError):
        chsh.m_chsh(qstate.maximally_mixed(3))


def test_chsh_value_matches_kron(rng):
    rho = random_density(2, rng)
    obs = [Observable(v / np.linalg.norm(v)) for v in rng.normal(size=(4, 3))]
    s = ChshSettings(*obs)
    assert chsh.chsh_value(rho, s) == pytest.approx(brute_chsh(rho, s), abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_optimal_settings_reach_twice_m(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(2, rng, rank=int(rng.integers(1, 5)))
    s, v = chsh.optimal_chsh_settings(rho)
    assert v == pytest.approx(2 * chsh.m_chsh(rho), abs=1e-9)
    assert brute_chsh(rho, s) == pytest.approx(v, abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_no_settings_beat_twice_m(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(2, rng)
    obs = [Observable(v / np.linalg.norm(v)) for v in rng.normal(size=(4, 3))]
    assert chsh.chsh_value(rho, ChshSettings(*obs)) <= 2 * chsh.m_chsh(rho) + 1e-12


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_m_is_local_unitary_invariant(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(2, rng)
    u = np.kron(random_unitary(rng), random_unitary(rng))
    rotated = DensityMatrix(2, u @ rho.data @ u.conj().T)
    assert chsh.m_chsh(rotated) == pytest.approx(chsh.m_chsh(rho), abs=1e-10)


def test_conditioned_value_of_ghz():
    rho = qstate.pure_to_density(qstate.ghz_state(3))
    m, prob = chsh.conditioned_m_chsh(rho, [(2, qstate.OBS_X, 1)])
    assert m == pytest.approx(math.sqrt(2)) and prob == pytest.approx(0.5)
    m, prob = chsh.conditioned_m_chsh(qstate.pure_to_density(qstate.ghz_state(5)),
                                      [(k, qstate.OBS_X, 1) for k in (2, 3, 4)])
    # one outcome pattern out of 2^(n-2) equally likely ones
    assert prob == pytest.approx(1 / 8)


def test_conditioned_impossible_and_wrong_count():
    rho = qstate.pure_to_density(qstate.basis_state([0, 0, 0]))
    m, prob = chsh.conditioned_m_chsh(rho, [(2, qstate.OBS_Z, -1)])
    assert math.isnan(m) and prob == 0
    assert chsh.conditioned_margin(rho, [(2, qstate.OBS_Z, -1)]) == -1.0
    with pytest.raises(ValueError):
        chsh.conditioned_m_chsh(qstate.maximally_mixed(4), [(3, qstate.OBS_Z, 1)])


def test_margin_resolves_tiny_violations():
    from multichsh.channels import dephased_ghz_z
    rho = dephased_ghz_z(8, 0.99)
    margin = chsh.conditioned_margin(rho, [(k, qstate.OBS_X, 1) for k in range(2, 8)])
    assert margin == pytest.approx(0.01**16, rel=1e-6)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_all_x_outcome_patterns_are_equivalent(n):
    import itertools
    from multichsh.channels import dephased_ghz_z
    rho = dephased_ghz_z(n, 0.3)
    values = [chsh.conditioned_m_chsh(rho, [(k, qstate.OBS_X, s) for k, s in zip(range(2, n), c)])[0]
              for c in itertools.product((1, -1), repeat=n - 2)]
    assert np.ptp(values) < 1e-10
