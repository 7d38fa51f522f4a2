"""Two-qubit CHSH tools: correlation matrix, Horodecki value, optimal settings."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .qstate import (DensityMatrix, Observable, correlation_tensor, project,
                     project_and_condition)


@dataclass(frozen=True)
class ChshSettings:
    a0: Observable
    a1: Observable
    b0: Observable
    b1: Observable


def _require_two_qubits(rho: DensityMatrix) -> None:
    if rho.n_qubits != 2:
        raise ValueError(f"expected a two-qubit state, got {rho.n_qubits} qubits")


def correlation_matrix(rho2: DensityMatrix) -> np.ndarray:
    """``T[i, j] = tr[(s_i (x) s_j) rho]`` for ``i, j`` in X, Y, Z."""
    _require_two_qubits(rho2)
    return correlation_tensor(rho2)[1:, 1:]


def _top_two(t: np.ndarray) -> np.ndarray:
    # Exactly diagonal T skips the eigensolver; keeps tiny entries like (1-p)^16 intact.
    if not np.any(t - np.diag(np.diag(t))):
        ev = np.diag(t) ** 2
    else:
        ev = np.linalg.eigvalsh(t.T @ t)
    return np.sort(ev)[::-1][:2].clip(min=0)


def m_chsh(rho2: DensityMatrix) -> float:
    """Horodecki value ``sqrt(t11^2 + t22^2)``; the state violates CHSH iff it exceeds 1.

    The maximal CHSH expression is ``2 * m_chsh``.
    """
    e1, e2 = _top_two(correlation_matrix(rho2))
    return float(np.sqrt(e1 + e2))


def chsh_margin(rho2: DensityMatrix) -> float:
    """``m_chsh**2 - 1`` computed as ``(e1 - 1) + e2`` to keep tiny violations visible."""
    e1, e2 = _top_two(correlation_matrix(rho2))
    return float((e1 - 1) + e2)


def chsh_value(rho2: DensityMatrix, s: ChshSettings) -> float:
    """``<a0 b0> + <a0 b1> + <a1 b0> - <a1 b1>``."""
    t = correlation_matrix(rho2)
    a0, a1, b0, b1 = (np.array(o.bloch) for o in (s.a0, s.a1, s.b0, s.b1))
    return float(a0 @ t @ (b0 + b1) + a1 @ t @ (b0 - b1))


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(np.abs(v) > 1e-12)
    return -v if nz.size and v[nz[0]] < 0 else v


def optimal_chsh_settings(rho2: DensityMatrix) -> tuple[ChshSettings, float]:
    """Settings reaching ``2 * m_chsh(rho2)``.

    Bob's settings ``b0, b1 = cos(th) v1 +- sin(th) v2`` straddle the two
    dominant right singular vectors of ``T``; Alice measures along their
    images ``u1, u2`` with ``tan(th) = s2 / s1``.
    """
    t = correlation_matrix(rho2)
    u, s, vt = np.linalg.svd(t)
    v1, v2 = _canonical_sign(vt[0]), _canonical_sign(vt[1])
    # left vectors follow the sign-fixed right vectors
    u1 = t @ v1 / s[0] if s[0] > 1e-12 else u[:, 0]
    u2 = t @ v2 / s[1] if s[1] > 1e-12 else _complete(u1, u[:, 1])
    th = np.arctan2(s[1], s[0])
    b0 = np.cos(th) * v1 + np.sin(th) * v2
    b1 = np.cos(th) * v1 - np.sin(th) * v2
    unit = lambda v: Observable(v / np.linalg.norm(v))
    settings = ChshSettings(unit(u1), unit(u2), unit(b0), unit(b1))
    return settings, chsh_value(rho2, settings)


def _complete(u1: np.ndarray, guess: np.ndarray) -> np.ndarray:
    w = guess - (guess @ u1) * u1
    if np.linalg.norm(w) < 1e-9:
        w = np.eye(3)[np.argmin(np.abs(u1))]
        w = w - (w @ u1) * u1
    return w / np.linalg.norm(w)


Projection = Sequence[tuple[int, Observable, int]]


def conditioned_m_chsh(rho: DensityMatrix, projections: Projection) -> tuple[float, float]:
    """Horodecki value of the two qubits left after projecting the others.

    Returns ``(m, prob)``; ``m`` is ``nan`` when the outcome pattern is impossible.
    """
    cond = project_and_condition(rho, projections)
    if len(cond.kept) != 2:
        raise ValueError(f"projections must leave exactly two qubits, left {cond.kept}")
    if cond.impossible:
        return float("nan"), cond.probability
    return m_chsh(cond.state), cond.probability


def conditioned_margin(rho: DensityMatrix, projections: Projection) -> float:
    """Unnormalized-state version of :func:`chsh_margin`; ``-1`` on impossible outcomes."""
    sub, kept = project(rho, projections)
    if len(kept) != 2:
        raise ValueError(f"projections must leave exactly two qubits, left {kept}")
    prob = np.trace(sub).real
    if prob <= 1e-14:
        return -1.0
    t = correlation_tensor(DensityMatrix(2, sub, check=False))
    e1, e2 = _top_two(t[1:, 1:] / t[0, 0])
    return float((e1 - 1) + e2)
