"""Local Pauli channels and closed-form noisy GHZ and W states.

``apply_channel`` is the generic route (a sum over Pauli conjugations); the
``dephased_*`` constructors build the same states directly from their
mixture formulas so the two can be checked against each other.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .qstate import ATOL_BUILD, PAULIS, DensityMatrix, apply_local, pure_to_density, w_state

KINDS = {
    "dephasing-z": (0.0, 0.0, 1.0),
    "dephasing-x": (1.0, 0.0, 0.0),
    "depolarizing": (1 / 3, 1 / 3, 1 / 3),
}


@dataclass(frozen=True)
class PauliChannel:
    """``rho -> sum_i p_i s_i rho s_i`` with ``p_0 = 1 - p/2`` and ``p_i = alpha_i p / 2``.

    ``kind`` is a label only; it is ``"custom"`` unless ``alpha`` matches one
    of the named directions.
    """

    p: float
    alpha: tuple = (0.0, 0.0, 1.0)
    kind: str = field(default="custom", compare=False)

    def __post_init__(self):
        p = float(self.p)
        a = tuple(float(x) for x in self.alpha)
        if not 0 <= p <= 1:
            raise ValueError(f"noise strength must lie in [0, 1], got {p}")
        if len(a) != 3 or min(a) < 0:
            raise ValueError(f"alpha must be three non-negative weights, got {a}")
        if abs(sum(a) - 1) > ATOL_BUILD:
            raise ValueError(f"alpha must sum to 1, got {sum(a)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "alpha", a)
        if self.kind == "custom":
            for name, ref in KINDS.items():
                if np.allclose(a, ref, rtol=0, atol=ATOL_BUILD):
                    object.__setattr__(self, "kind", name)
        elif self.kind in KINDS:
            if not np.allclose(a, KINDS[self.kind], rtol=0, atol=ATOL_BUILD):
                raise ValueError(f"{self.kind} requires alpha={KINDS[self.kind]}")
        else:
            raise ValueError(f"unknown channel kind {self.kind!r}")

    @classmethod
    def named(cls, kind: str, p: float) -> PauliChannel:
        if kind not in KINDS:
            raise ValueError(f"unknown channel kind {kind!r}; choose from {sorted(KINDS)}")
        return cls(p, KINDS[kind], kind)

    @classmethod
    def approx_transversal(cls, p: float, eps: float) -> PauliChannel:
        """Bit-flip noise leaking a fraction ``eps`` equally into Y and Z."""
        return cls(p, (1 - eps, eps / 2, eps / 2))

    @classmethod
    def from_config(cls, cfg: dict | str) -> PauliChannel:
        """Build from ``{"p": .3, "alpha": [1,0,0]}`` or ``{"kind": "dephasing-z", "p": .3}``.

        A bare kind name or a JSON string is also accepted; ``p`` defaults to 0.
        """
        if isinstance(cfg, str):
            text = cfg.strip()
            cfg = json.loads(text) if text.startswith("{") else {"kind": text}
        if not isinstance(cfg, dict):
            raise ValueError(f"channel config must be an object, got {cfg!r}")
        unknown = set(cfg) - {"p", "alpha", "kind"}
        if unknown:
            raise ValueError(f"unknown channel keys {sorted(unknown)}")
        p = cfg.get("p", 0.0)
        if "kind" in cfg and cfg["kind"] != "custom":
            if "alpha" in cfg:
                return cls(p, cfg["alpha"], cfg["kind"])
            return cls.named(cfg["kind"], p)
        if "alpha" not in cfg:
            raise ValueError("custom channel needs an 'alpha' entry")
        return cls(p, cfg["alpha"])

    def with_p(self, p: float) -> PauliChannel:
        return PauliChannel(p, self.alpha, self.kind)

    @property
    def probabilities(self) -> np.ndarray:
        a1, a2, a3 = self.alpha
        h = self.p / 2
        return np.array([1 - h, a1 * h, a2 * h, a3 * h])

    @property
    def shrinking(self) -> np.ndarray:
        """Factors by which the channel scales the X, Y, Z Bloch components."""
        p0, p1, p2, p3 = self.probabilities
        return np.array([p0 + p1 - p2 - p3, p0 - p1 + p2 - p3, p0 - p1 - p2 + p3])


def pauli_conjugate(data: np.ndarray, n: int, which: int, qubit: int) -> np.ndarray:
    """``s rho s`` for ``s`` = I, X, Y, Z (``which`` = 0..3) on one qubit.

    X permutes basis indices, Z flips signs, and ``Y rho Y = X Z rho Z X``.
    """
    if which == 0:
        return data
    mask = 1 << (n - 1 - qubit)
    idx = np.arange(data.shape[0])
    out = data
    if which in (2, 3):
        s = 1 - 2 * ((idx & mask) != 0)
        out = out * np.outer(s, s)
    if which in (1, 2):
        perm = idx ^ mask
        out = out[np.ix_(perm, perm)]
    return out


def apply_channel(rho: DensityMatrix, ch: PauliChannel, qubit: int) -> DensityMatrix:
    if not 0 <= qubit < rho.n_qubits:
        raise ValueError(f"qubit {qubit} out of range for {rho.n_qubits} qubits")
    out = np.zeros_like(rho.data)
    for which, pi in enumerate(ch.probabilities):
        if pi:
            out += pi * pauli_conjugate(rho.data, rho.n_qubits, which, qubit)
    return DensityMatrix(rho.n_qubits, out, check=False)


def apply_channel_kraus(rho: DensityMatrix, ch: PauliChannel, qubit: int) -> DensityMatrix:
    """Same map as :func:`apply_channel`, via explicit Kraus matrix products."""
    if not 0 <= qubit < rho.n_qubits:
        raise ValueError(f"qubit {qubit} out of range for {rho.n_qubits} qubits")
    out = np.zeros_like(rho.data)
    for pi, sigma in zip(ch.probabilities, PAULIS):
        if pi:
            out += pi * apply_local(rho, sigma, qubit)
    return DensityMatrix(rho.n_qubits, out, check=False)


def apply_channel_all(rho: DensityMatrix, ch: PauliChannel) -> DensityMatrix:
    for q in range(rho.n_qubits):
        rho = apply_channel(rho, ch, q)
    return rho


def noisy(psi, ch: PauliChannel) -> DensityMatrix:
    """Pure state (or density matrix) after the same channel on every qubit."""
    rho = psi if isinstance(psi, DensityMatrix) else pure_to_density(psi)
    return apply_channel_all(rho, ch)


def _check(n: int, p: float) -> None:
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")


def dephased_ghz_z(n: int, p: float) -> DensityMatrix:
    """GHZ state after Z-dephasing of strength ``p`` on every qubit.

    ``(1-p)^n |GHZ><GHZ| + (1 - (1-p)^n) (|0..0><0..0| + |1..1><1..1|)/2``
    """
    _check(n, p)
    dim = 2**n
    coh = (1 - p) ** n
    data = np.zeros((dim, dim), dtype=complex)
    data[0, 0] = data[-1, -1] = 0.5
    data[0, -1] = data[-1, 0] = coh / 2
    return DensityMatrix(n, data)


def dephased_ghz_x(n: int, p: float) -> DensityMatrix:
    """GHZ state after bit-flip noise of strength ``p`` on every qubit.

    Binomial mixture over flip patterns ``k``: weight ``(1-p/2)^(n-|k|) (p/2)^|k|``
    on ``X^k |GHZ>``.
    """
    _check(n, p)
    dim = 2**n
    data = np.zeros((dim, dim), dtype=complex)
    for k in range(dim):
        flips = bin(k).count("1")
        w = (1 - p / 2) ** (n - flips) * (p / 2) ** flips
        if w == 0:
            continue
        # X^k maps |0..0> -> |k> and |1..1> -> |~k>
        a, b = k, (dim - 1) ^ k
        data[a, a] += w / 2
        data[b, b] += w / 2
        data[a, b] += w / 2
        data[b, a] += w / 2
    return DensityMatrix(n, data)


def dephased_w_z(n: int, p: float) -> DensityMatrix:
    """W state after Z-dephasing: ``p'|W><W| + (1-p')/n sum_k |e_k><e_k|``, ``p' = (1-p)^2``."""
    _check(n, p)
    pp = (1 - p) ** 2
    w = pure_to_density(w_state(n)).data
    diag = np.zeros((2**n, 2**n), dtype=complex)
    for k in range(n):
        diag[1 << k, 1 << k] = 1 / n
    return DensityMatrix(n, pp * w + (1 - pp) * diag)
