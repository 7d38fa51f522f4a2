"""Multi-start Nelder-Mead maximization over projective measurement angles.

Observables are parametrized by spherical angles ``(theta, phi)``; an angle
vector is an array of shape ``(k, 2)``. Restarts draw their starting points
from seeded child generators, so results are reproducible bit for bit.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from .bell import CorrelatorInequality, correlator_table, mk_inequality, mk_xy_settings
from .chsh import conditioned_m_chsh
from .qstate import DensityMatrix, Observable, correlation_tensor


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 32
    max_evals: int = 2000
    tol: float = 1e-9
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.restarts < 1 or self.max_evals < 1 or self.tol <= 0 or self.workers < 1:
            raise ValueError("optimizer settings must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def canonicalize(angles: np.ndarray) -> np.ndarray:
    """Map angles into ``theta in [0, pi]``, ``phi in [0, 2 pi)`` without moving the point."""
    a = np.array(angles, dtype=float).reshape(-1, 2)
    if not np.all(np.isfinite(a)):
        raise ValueError("angles must be finite")
    theta = np.mod(a[:, 0], 2 * np.pi)
    phi = a[:, 1].copy()
    flip = theta > np.pi
    theta[flip] = 2 * np.pi - theta[flip]
    phi[flip] += np.pi
    phi = np.mod(phi, 2 * np.pi)
    phi[phi >= 2 * np.pi] = 0.0
    return np.column_stack([theta, phi])


def to_bloch(angles: np.ndarray) -> np.ndarray:
    a = np.asarray(angles, dtype=float).reshape(-1, 2)
    th, ph = a[:, 0], a[:, 1]
    return np.column_stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])


def from_bloch(vectors) -> np.ndarray:
    v = np.asarray([o.bloch if isinstance(o, Observable) else o for o in vectors], dtype=float)
    v = v / np.linalg.norm(v, axis=1, keepdims=True)
    return canonicalize(np.column_stack([np.arccos(np.clip(v[:, 2], -1, 1)),
                                         np.arctan2(v[:, 1], v[:, 0])]))


class NonFiniteObjective(ArithmeticError):
    pass


def _local_search(f, x0, cfg: OptimizerConfig):
    def neg(x):
        v = f(x.reshape(-1, 2))
        if not math.isfinite(v):
            raise NonFiniteObjective(v)
        return -v

    x, best = np.asarray(x0, dtype=float).ravel(), None
    # restart the simplex from its own optimum until it stops improving
    for _ in range(4):
        res = minimize(neg, x, method="Nelder-Mead",
                       options={"maxfev": cfg.max_evals, "xatol": 1e-10,
                                "fatol": cfg.tol * 1e-2, "adaptive": x.size > 4})
        if best is not None and best - res.fun <= cfg.tol:
            if res.fun < best:
                x, best = res.x, res.fun
            break
        x, best = res.x, res.fun
    return x, -best


def maximize(objective: Callable[[np.ndarray], float], dim: int, cfg: OptimizerConfig = OptimizerConfig(),
             initial: Optional[Sequence[np.ndarray]] = None) -> tuple[np.ndarray, float]:
    """Best value of ``objective`` over ``dim`` measurement directions.

    Parameters
    ----------
    objective : callable
        Maps a ``(dim, 2)`` angle array to a real number.
    dim : int
        Number of observables being optimized.
    cfg : OptimizerConfig
    initial : sequence of angle arrays, optional
        Starting points used for the first restarts, in order; the remaining
        restarts start at seeded random angles.

    Returns
    -------
    angles : ndarray, shape (dim, 2)
        Canonicalized maximizer.
    value : float
        Objective at ``angles``.
    """
    initial = [canonicalize(a) for a in (initial or [])]
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    starts = []
    for k in range(cfg.restarts):
        if k < len(initial):
            if initial[k].shape != (dim, 2):
                raise ValueError(f"initial point {k} has shape {initial[k].shape}, want {(dim, 2)}")
            starts.append(initial[k])
        else:
            rng = np.random.default_rng(seeds[k])
            starts.append(np.column_stack([np.arccos(rng.uniform(-1, 1, dim)),
                                           rng.uniform(0, 2 * np.pi, dim)]))

    def run(x0):
        try:
            return _local_search(objective, x0, cfg)
        except NonFiniteObjective:
            return None

    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(run, starts))
    else:
        results = [run(x0) for x0 in starts]
    best_x, best_v = None, -np.inf
    for r in results:  # strict > keeps the lowest restart index on ties
        if r is not None and r[1] > best_v:
            best_x, best_v = r
    if best_x is None:
        raise ArithmeticError("objective was non-finite in every restart")
    x = canonicalize(best_x)
    return x, float(objective(x))


def optimize_inequality(rho: DensityMatrix, ineq: CorrelatorInequality,
                        cfg: OptimizerConfig = OptimizerConfig(),
                        initial: Optional[Sequence] = None) -> tuple[list, float]:
    """Maximize a correlator inequality over projective measurements on ``rho``.

    ``initial`` holds per-party observable lists to seed the first restart.
    Returns per-party lists of Bloch vectors and the value.
    """
    if rho.n_qubits != ineq.n_parties:
        raise ValueError("state and inequality disagree on the number of parties")
    corr = correlation_tensor(rho)
    coef = ineq.coefficient_tensor()
    sizes = list(ineq.settings_per_party)
    split = np.cumsum(sizes)[:-1]

    def unpack(angles):
        return np.split(to_bloch(angles), split)

    def f(angles):
        return float(np.sum(correlator_table(corr, unpack(angles)) * coef))

    starts = None
    if initial is not None:
        starts = [from_bloch([v for party in initial for v in party])]
    x, val = maximize(f, sum(sizes), cfg, starts)
    return [list(map(tuple, b)) for b in unpack(x)], val


def optimize_mk(rho: DensityMatrix, cfg: OptimizerConfig = OptimizerConfig()) -> tuple[list, float]:
    """Maximize the MK expression; the X/Y settings seed the first restart."""
    n = rho.n_qubits
    return optimize_inequality(rho, mk_inequality(n), cfg, initial=mk_xy_settings(n))


def optimize_conditioning(rho: DensityMatrix, pair: tuple, cfg: OptimizerConfig = OptimizerConfig(),
                          initial: Optional[Sequence] = None) -> tuple[list, float]:
    """Projection directions on the other qubits (outcome ``+1``) maximizing the Horodecki value.

    Defaults to seeding the first restart with X projections. Returns
    ``([(qubit, Observable), ...], m)``.
    """
    n = rho.n_qubits
    if n < 3:
        raise ValueError("need at least three qubits")
    others = [k for k in range(n) if k not in pair]
    if len(others) != n - 2:
        raise ValueError(f"invalid pair {pair}")

    def f(angles):
        obs = [Observable(v) for v in to_bloch(angles)]
        m, _ = conditioned_m_chsh(rho, [(q, o, 1) for q, o in zip(others, obs)])
        return 0.0 if math.isnan(m) else m

    if initial is None:
        initial = [(1.0, 0.0, 0.0)] * len(others)
    x, val = maximize(f, len(others), cfg, [from_bloch(initial)])
    return [(q, Observable(v)) for q, v in zip(others, to_bloch(x))], val
