import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from multichsh import channels, qstate
from multichsh.channels import PauliChannel
from multichsh.qstate import I2, X, Y, Z

from conftest import kron_all, random_density

simplex = st.tuples(st.floats(0, 1), st.floats(0, 1), st.floats(0, 1)).filter(
    lambda t: sum(t) > 1e-3).map(lambda t: tuple(np.array(t) / sum(t)))


def kraus_brute(rho, ch, qubit):
    n = rho.n_qubits
    out = np.zeros_like(rho.data)
    for pk, s in zip(ch.probabilities, (I2, X, Y, Z)):
        ops = [I2] * n
        ops[qubit] = s
        k = kron_all(ops)
        out += pk * k @ rho.data @ k.conj().T
    return out


def test_probabilities_and_shrinking():
    ch = PauliChannel(0.4, (0.2, 0.3, 0.5))
    p = ch.probabilities
    assert p.sum() == pytest.approx(1)
    assert p[0] == pytest.approx(0.8)
    assert np.allclose(p[1:], [0.04, 0.06, 0.1])
    lx, ly, lz = ch.shrinking
    assert lx == pytest.approx(0.8 + 0.04 - 0.06 - 0.1)
    assert PauliChannel.named("dephasing-z", 0.3).shrinking == pytest.approx([0.7, 0.7, 1.0])


def test_kind_labels_and_validation():
    assert PauliChannel(0.1, (1, 0, 0)).kind == "dephasing-x"
    assert PauliChannel(0.1, (0.5, 0.5, 0)).kind == "custom"
    with pytest.raises(ValueError):
        PauliChannel(1.2)
    with pytest.raises(ValueError):
        PauliChannel(0.1, (0.5, 0.6, 0))
    with pytest.raises(ValueError):
        PauliChannel(0.1, (1, 0, 0), "dephasing-z")
    with pytest.raises(ValueError):
        PauliChannel.named("amplitude-damping", 0.1)


def test_from_config_forms():
    assert PauliChannel.from_config("dephasing-x").alpha == (1.0, 0.0, 0.0)
    ch = PauliChannel.from_config('{"p": 0.3, "alpha": [0.2, 0.3, 0.5]}')
    assert ch.p == 0.3 and ch.kind == "custom"
    assert PauliChannel.from_config({"kind": "depolarizing", "p": 0.5}).kind == "depolarizing"
    with pytest.raises(ValueError):
        PauliChannel.from_config({"p": 0.1})
    with pytest.raises(ValueError):
        PauliChannel.from_config({"alpha": [1, 0, 0], "strength": 1})


def test_approx_transversal():
    ch = PauliChannel.approx_transversal(0.2, 0.1)
    assert ch.alpha == pytest.approx((0.9, 0.05, 0.05))


def test_two_qubit_ghz_coherence_shrinks():
    rho = channels.noisy(qstate.ghz_state(2), PauliChannel.named("dephasing-z", 0.4))
    # each qubit scales the coherence by 1 - p
    assert rho.data[0, 3].real == pytest.approx(0.5 * 0.6**2)
    assert rho.data[0, 0].real == pytest.approx(0.5)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0, 1), simplex, st.integers(0, 2))
def test_fast_path_matches_kraus(seed, p, alpha, qubit):
    rho = random_density(3, np.random.default_rng(seed))
    ch = PauliChannel(p, alpha)
    fast = channels.apply_channel(rho, ch, qubit).data
    assert np.allclose(fast, kraus_brute(rho, ch, qubit), atol=1e-13)
    assert np.allclose(channels.apply_channel_kraus(rho, ch, qubit).data, fast, atol=1e-13)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0, 1), simplex, st.floats(0, 1), simplex)
def test_channels_commute_and_preserve_trace(seed, p, a, q, b):
    rho = random_density(2, np.random.default_rng(seed))
    c1, c2 = PauliChannel(p, a), PauliChannel(q, b)
    one = channels.apply_channel(channels.apply_channel(rho, c1, 0), c2, 1)
    two = channels.apply_channel(channels.apply_channel(rho, c2, 1), c1, 0)
    assert np.allclose(one.data, two.data, atol=1e-13)
    assert np.trace(one.data).real == pytest.approx(1, abs=1e-12)
    assert np.linalg.eigvalsh(one.data).min() > -1e-12


def test_full_noise_on_z_dephasing_kills_coherence():
    rho = channels.noisy(qstate.ghz_state(3), PauliChannel.named("dephasing-z", 1.0))
    assert abs(rho.data[0, 7]) < 1e-15


def test_depolarizing_at_full_strength_is_not_maximally_mixed():
    # p = 1 leaves weight 1/2 on the identity, so Bloch vectors shrink to 1/3
    assert PauliChannel.named("depolarizing", 1.0).shrinking == pytest.approx([1 / 3] * 3)


@pytest.mark.parametrize("n", [2, 3, 5])
@pytest.mark.parametrize("p", [0.0, 0.37, 1.0])
def test_closed_forms_match_kraus(n, p):
    z, x = PauliChannel.named("dephasing-z", p), PauliChannel.named("dephasing-x", p)
    assert np.allclose(channels.dephased_ghz_z(n, p).data,
                       channels.noisy(qstate.ghz_state(n), z).data, atol=1e-13)
    assert np.allclose(channels.dephased_ghz_x(n, p).data,
                       channels.noisy(qstate.ghz_state(n), x).data, atol=1e-13)
    assert np.allclose(channels.dephased_w_z(n, p).data,
                       channels.noisy(qstate.w_state(n), z).data, atol=1e-13)


def test_closed_form_argument_checks():
    with pytest.raises(ValueError):
        channels.dephased_ghz_z(1, 0.1)
    with pytest.raises(ValueError):
        channels.dephased_w_z(3, -0.1)
    with pytest.raises(ValueError):
        channels.apply_channel(qstate.maximally_mixed(2), PauliChannel(0.1), 2)


def test_z_dephasing_keeps_the_diagonal():
    rho = random_density(3, np.random.default_rng(4))
    out = channels.noisy(rho, PauliChannel.named("dephasing-z", 0.7))
    assert np.allclose(np.diag(out.data), np.diag(rho.data), atol=1e-15)
