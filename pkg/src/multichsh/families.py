"""State families with their designated conditioning measurements.

Each family fixes which pair of qubits runs the CHSH test, which basis the
other ``n - 2`` qubits are measured in (outcome ``+1``), how the resulting
Horodecki value is turned into a content bound, and, where one exists, the
closed-form Horodecki value for a given channel.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .channels import PauliChannel, noisy
from .chsh import Projection, conditioned_m_chsh, conditioned_margin
from .qstate import (OBS_X, OBS_Z, DensityMatrix, GraphSpec, ghz_state,
                     graph_state, w_state)

FAMILIES = ("ghz", "w", "graph")


def ghz_pauli_m(n: int, ch: PauliChannel) -> float:
    """Horodecki value of noisy GHZ after X projections, any Pauli channel.

    The conditional correlation matrix is diagonal with entries
    ``lx^n``, ``-lx^(n-2) ly^2`` and ``lz^2`` (Bloch shrinking factors ``l``);
    the value takes the two largest squares.
    """
    lx, ly, lz = ch.shrinking
    sq = sorted([lx ** (2 * n), lx ** (2 * n - 4) * ly**4, lz**4], reverse=True)
    return float(np.sqrt(sq[0] + sq[1]))


def ghz_pauli_m_two_term(n: int, ch: PauliChannel) -> float:
    """``sqrt((p0+p1-p2-p3)^(2n) + (p0-p1-p2+p3)^4)``.

    Drops the Y-Y correlator, so it only agrees with :func:`ghz_pauli_m`
    when that entry is not among the two largest.
    """
    p0, p1, p2, p3 = ch.probabilities
    return float(np.sqrt((p0 + p1 - p2 - p3) ** (2 * n) + (p0 - p1 - p2 + p3) ** 4))


@dataclass(frozen=True)
class Family:
    """A noisy state family together with its conditioning recipe.

    ``method`` is ``"chsh-paired"`` when every outcome pattern yields a
    locally equivalent two-qubit state, ``"chsh-weighted"`` otherwise.
    """

    name: str
    n: int
    pair: tuple
    projections: tuple
    method: str
    prepare: Callable[[PauliChannel], DensityMatrix]
    closed_form: Callable[[PauliChannel], Optional[float]]

    def state(self, ch: PauliChannel) -> DensityMatrix:
        return self.prepare(ch)

    def conditioned(self, ch: PauliChannel) -> tuple[float, float]:
        return conditioned_m_chsh(self.prepare(ch), self.projections)

    def margin(self, ch: PauliChannel) -> float:
        return conditioned_margin(self.prepare(ch), self.projections)


def _projection(n: int, pair: tuple, obs) -> Projection:
    return tuple((k, obs, 1) for k in range(n) if k not in pair)


def ghz_family(n: int) -> Family:
    if n < 3:
        raise ValueError("GHZ family needs n >= 3")
    psi = ghz_state(n)

    def closed(ch):
        return ghz_pauli_m(n, ch)

    return Family("ghz", n, (0, 1), _projection(n, (0, 1), OBS_X), "chsh-paired",
                  lambda ch: noisy(psi, ch), closed)


def w_family(n: int) -> Family:
    if n < 3:
        raise ValueError("W family needs n >= 3")
    psi = w_state(n)
    pair = (n - 2, n - 1)

    def closed(ch):
        if ch.kind == "dephasing-z":
            return float(np.sqrt(1 + (1 - ch.p) ** 4))
        return None

    return Family("w", n, pair, _projection(n, pair, OBS_Z), "chsh-weighted",
                  lambda ch: noisy(psi, ch), closed)


def default_graph_pair(g: GraphSpec) -> tuple:
    """Highest-degree vertex (lowest index on ties) and its first neighbour."""
    degrees = [len(g.neighbors(v)) for v in range(g.n_vertices)]
    center = int(np.argmax(degrees))
    nbrs = g.neighbors(center)
    if not nbrs:
        raise ValueError("graph has no edges; nothing to test")
    return (center, nbrs[0])


def graph_family(g: GraphSpec, pair: tuple | None = None) -> Family:
    """Graph state with every vertex outside ``pair`` measured in Z.

    Z measurements delete vertices, so an adjacent pair is left in a two-qubit
    graph state up to local Z flips; under Z-dephasing its value is
    ``(1-p) sqrt(2)``.
    """
    n = g.n_vertices
    if n < 3:
        raise ValueError("graph family needs at least 3 vertices")
    pair = tuple(sorted(pair)) if pair is not None else tuple(sorted(default_graph_pair(g)))
    psi = graph_state(g)
    adjacent = g.adjacent(*pair)

    def closed(ch):
        if ch.kind == "dephasing-z" and adjacent:
            return float((1 - ch.p) * np.sqrt(2))
        return None

    return Family("graph", n, pair, _projection(n, pair, OBS_Z), "chsh-paired",
                  lambda ch: noisy(psi, ch), closed)


def make_family(name: str, n: int | None = None, graph: GraphSpec | None = None,
                pair: tuple | None = None) -> Family:
    if name == "ghz":
        return ghz_family(n)
    if name == "w":
        return w_family(n)
    if name == "graph":
        if graph is None:
            if n is None:
                raise ValueError("graph family needs a graph or a vertex count")
            graph = GraphSpec.star(n)
        if n is not None and n != graph.n_vertices:
            raise ValueError(f"n={n} disagrees with graph of {graph.n_vertices} vertices")
        return graph_family(graph, pair)
    raise ValueError(f"unknown family {name!r}; choose from {FAMILIES}")


class NonMonotoneError(RuntimeError):
    def __init__(self, grid, values):
        self.grid = grid
        self.values = values
        super().__init__("conditioned CHSH value is not monotone in p on the grid:\n"
                         + "\n".join(f"  p={p:.4f}  m^2-1={v:.6e}" for p, v in zip(grid, values)))


def noise_threshold(family: Family, channel: PauliChannel, steps: int = 101,
                    tol: float = 1e-8) -> float:
    """Largest noise strength at which the conditioned CHSH test still fires.

    The violation margin ``m^2 - 1`` is sampled on a ``steps``-point grid over
    ``[0, 1]`` and must be nonincreasing there. Returns ``1.0`` when every grid
    point below ``p = 1`` is violating; otherwise bisects to ``tol`` between the
    last violating and first non-violating grid point.
    """
    grid = np.linspace(0, 1, steps)
    margin = lambda p: family.margin(channel.with_p(float(p)))
    values = np.array([margin(p) for p in grid])
    # relative slack for roundoff in values that should be equal
    if np.any(np.diff(values) > 1e-12 * np.maximum(1, np.abs(values[:-1]))):
        raise NonMonotoneError(grid, values)
    bad = np.flatnonzero(values[:-1] <= 0)
    if bad.size == 0:
        return 1.0
    k = bad[0]
    if k == 0:
        return 0.0
    lo, hi = grid[k - 1], grid[k]
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if margin(mid) > 0:
            lo = mid
        else:
            hi = mid
    return float(lo)
