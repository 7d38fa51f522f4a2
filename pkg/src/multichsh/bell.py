"""Bell operators: conditioned and paired CHSH, Mermin-Klyshko, graph-state
inequalities, generic correlator inequalities and an exhaustive LHV search.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional, Sequence

import numpy as np

from .channels import PauliChannel
from .chsh import ChshSettings
from .qstate import (DensityMatrix, GraphSpec, Observable, correlation_tensor,
                     project)

MAX_STRATEGIES = 2**24

# ---------------------------------------------------------------------------
# Correlator inequalities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorrelatorInequality:
    """Linear combination of (partial) correlators ``<A^1_{s1} ... A^N_{sN}>``.

    Keys of ``coefficients`` are tuples with one entry per party: a setting
    index, or ``None`` when that party does not appear in the term. The
    all-``None`` key is a constant offset.
    """

    n_parties: int
    settings_per_party: tuple
    coefficients: Mapping
    local_bound: float
    ns_bound: Optional[float] = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        m = tuple(int(k) for k in self.settings_per_party)
        if len(m) != self.n_parties or min(m, default=0) < 1:
            raise ValueError("need a positive setting count for every party")
        if not self.coefficients:
            raise ValueError("inequality has no terms")
        coeffs = {}
        for key, c in self.coefficients.items():
            key = tuple(None if s is None else int(s) for s in key)
            if len(key) != self.n_parties:
                raise ValueError(f"term {key} does not have {self.n_parties} entries")
            for s, mk in zip(key, m):
                if s is not None and not 0 <= s < mk:
                    raise ValueError(f"setting {s} out of range in term {key}")
            coeffs[key] = coeffs.get(key, 0.0) + float(c)
        if not math.isfinite(self.local_bound):
            raise ValueError("local bound must be finite")
        if self.ns_bound is not None and not self.ns_bound > self.local_bound:
            raise ValueError("no-signalling bound must exceed the local bound")
        object.__setattr__(self, "settings_per_party", m)
        object.__setattr__(self, "coefficients", coeffs)

    def coefficient_tensor(self) -> np.ndarray:
        """Dense tensor with axis ``k`` of length ``m_k + 1``; index 0 means absent."""
        t = np.zeros([mk + 1 for mk in self.settings_per_party])
        for key, c in self.coefficients.items():
            t[tuple(0 if s is None else s + 1 for s in key)] += c
        return t


def _strategy_matrix(m: int) -> np.ndarray:
    """Rows are deterministic strategies: ``[1, a_0, ..., a_{m-1}]`` with ``a = +-1``."""
    signs = np.array(list(itertools.product((1.0, -1.0), repeat=m)))
    return np.hstack([np.ones((len(signs), 1)), signs])


def lhv_local_bound(ineq: CorrelatorInequality, absolute: bool = False,
                    max_strategies: int = MAX_STRATEGIES) -> float:
    """Exact maximum over all local deterministic strategies.

    With ``absolute=True`` the maximum of ``|value|`` is returned instead.
    """
    count = 2 ** sum(ineq.settings_per_party)
    if count > max_strategies:
        raise ValueError(f"{count} deterministic strategies exceed the limit {max_strategies}")
    t = ineq.coefficient_tensor()
    mats = [_strategy_matrix(m) for m in ineq.settings_per_party]
    # loop over the first party's strategies to bound peak memory
    best = -np.inf
    for row in mats[0]:
        v = np.tensordot(row, t, axes=(0, 0))
        for s in mats[1:]:
            v = np.tensordot(v, s, axes=(0, 1))
        v = np.abs(v) if absolute else v
        best = max(best, float(np.max(v)))
    return best


def _bloch_rows(settings: Sequence) -> np.ndarray:
    """Per-party matrix ``[[1,0,0,0], [0, n_0], [0, n_1], ...]``."""
    rows = [np.array([1.0, 0, 0, 0])]
    for o in settings:
        v = np.asarray(o.bloch if isinstance(o, Observable) else o, dtype=float)
        rows.append(np.concatenate([[0.0], v]))
    return np.array(rows)


def correlator_table(corr: np.ndarray, observables: Sequence[Sequence]) -> np.ndarray:
    """All (partial) correlators of the given per-party observables.

    ``corr`` is a :func:`~multichsh.qstate.correlation_tensor`. Entry
    ``[s1+1, ..., sN+1]`` of the result is ``<A^1_{s1} ... A^N_{sN}>``; index 0
    leaves that party out.
    """
    v = corr
    for obs in observables:
        v = np.tensordot(v, _bloch_rows(obs), axes=(0, 1))
    return v


def quantum_value(ineq: CorrelatorInequality, rho: DensityMatrix,
                  observables: Sequence[Sequence]) -> float:
    """Bell expression evaluated on ``rho`` with ``observables[k][s]`` for party ``k``."""
    if rho.n_qubits != ineq.n_parties:
        raise ValueError("state and inequality disagree on the number of parties")
    for k, (obs, m) in enumerate(zip(observables, ineq.settings_per_party)):
        if len(obs) != m:
            raise ValueError(f"party {k} needs {m} observables, got {len(obs)}")
    table = correlator_table(correlation_tensor(rho), observables)
    return float(np.sum(table * ineq.coefficient_tensor()))


def chsh_inequality() -> CorrelatorInequality:
    return CorrelatorInequality(
        2, (2, 2), {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): -1},
        local_bound=2.0, ns_bound=4.0, name="CHSH")


def conditioned_chsh_inequality(n: int, pair: tuple = (0, 1),
                                outcomes: Sequence[int] | None = None) -> CorrelatorInequality:
    """CHSH on ``pair`` conditioned on outcomes ``c`` of the other parties, minus ``2 p(c)``.

    The other parties measure one setting each. Expanding the projector
    ``prod_k (1 + c_k C_k)/2`` turns every weighted term into a sum of partial
    correlators. Local bound 0.
    """
    if n < 3:
        raise ValueError("need at least three parties")
    a, b = pair
    others = [k for k in range(n) if k not in pair]
    outcomes = [1] * len(others) if outcomes is None else list(outcomes)
    if len(outcomes) != len(others) or any(c not in (1, -1) for c in outcomes):
        raise ValueError(f"need {len(others)} outcomes of +-1")
    scale = 2.0 ** -len(others)
    chsh = {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): -1}
    coeffs: dict = {}
    for r in range(len(others) + 1):
        for subset in itertools.combinations(range(len(others)), r):
            sign = math.prod(outcomes[i] for i in subset)
            base = [None] * n
            for i in subset:
                base[others[i]] = 0
            for (x, y), s in chsh.items():
                key = list(base)
                key[a], key[b] = x, y
                coeffs[tuple(key)] = s * sign * scale
            coeffs[tuple(base)] = coeffs.get(tuple(base), 0.0) - 2 * sign * scale
    settings = tuple(2 if k in pair else 1 for k in range(n))
    return CorrelatorInequality(n, settings, coeffs, local_bound=0.0,
                                name=f"conditioned CHSH n={n}")


# ---------------------------------------------------------------------------
# Conditioned and paired CHSH on quantum states
# ---------------------------------------------------------------------------


def _pair_correlators(sub: np.ndarray, s: ChshSettings) -> np.ndarray:
    """``E[x, y] = tr[(a_x (x) b_y) sub]`` for an unnormalized two-qubit block."""
    t = correlation_tensor(DensityMatrix(2, sub, check=False))[1:, 1:]
    a = np.array([s.a0.bloch, s.a1.bloch])
    b = np.array([s.b0.bloch, s.b1.bloch])
    return a @ t @ b.T


def _orient(pair: tuple, projections) -> tuple:
    qubits = [q for q, *_ in projections]
    if len(set(qubits) | set(pair)) != len(qubits) + 2:
        raise ValueError("pair and projected qubits must be disjoint")
    return tuple(pair)


def conditioned_chsh_value(rho: DensityMatrix, settings: ChshSettings, pair: tuple,
                           projections: Sequence[tuple[int, Observable, int]]) -> float:
    """``sum_xy +-<a_x b_y>_c - 2 p(c)`` with correlators weighted by ``p(c)``.

    Nonpositive for every local model.
    """
    _orient(pair, projections)
    if len(projections) != rho.n_qubits - 2:
        raise ValueError("project every qubit outside the pair")
    sub, kept = project(rho, projections)
    if kept != tuple(sorted(pair)):
        raise ValueError(f"pair {pair} does not match unprojected qubits {kept}")
    if tuple(pair) != kept:
        sub = _swap(sub)
    e = _pair_correlators(sub, settings)
    prob = np.trace(sub).real
    return float(e[0, 0] + e[0, 1] + e[1, 0] - e[1, 1] - 2 * prob)


def _swap(m: np.ndarray) -> np.ndarray:
    return m.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)


@dataclass(frozen=True)
class PairedChsh:
    chsh1: float
    chsh2: float
    p1: float
    p2: float

    @property
    def total(self) -> float:
        return self.chsh1 + self.chsh2


def paired_chsh_events(rho: DensityMatrix, settings: ChshSettings, pair: tuple,
                       observables: Mapping[int, Observable] | Sequence[tuple[int, Observable]],
                       events: Mapping[tuple, int] | None = None) -> PairedChsh:
    """Both halves of the summed inequality ``CHSH_1 + CHSH_2 <= 0``.

    Every outcome pattern of the measured qubits is assigned to event 1 or 2
    (default: product of outcomes +1 or -1). Event 2 uses the combination
    with the sign on ``<a_1 b_0>`` instead of ``<a_1 b_1>``.

    The sum reaches ``2 m - 2`` only when the settings suit both events:
    for GHZ with X projections, odd parity leaves a Z flip on the first pair
    qubit, so ``a_0`` should lie along Z and ``a_1`` in the X-Y plane.
    """
    obs = dict(observables)
    qubits = sorted(obs)
    _orient(pair, [(q,) for q in qubits])
    if len(qubits) != rho.n_qubits - 2:
        raise ValueError("give an observable for every qubit outside the pair")
    patterns = list(itertools.product((1, -1), repeat=len(qubits)))
    if events is None:
        events = {c: 1 if math.prod(c) == 1 else 2 for c in patterns}
    else:
        events = {tuple(k): v for k, v in events.items()}
        missing = [c for c in patterns if c not in events]
        if missing or any(v not in (1, 2) for v in events.values()):
            raise ValueError(f"partition must map every pattern to event 1 or 2; missing {missing}")
    acc = {1: 0.0, 2: 0.0}
    prob = {1: 0.0, 2: 0.0}
    for c in patterns:
        spec = [(q, obs[q], s) for q, s in zip(qubits, c)]
        sub, kept = project(rho, spec)
        if tuple(pair) != kept:
            sub = _swap(sub)
        e = _pair_correlators(sub, settings)
        ev = events[c]
        if ev == 1:
            acc[1] += e[0, 0] + e[0, 1] + e[1, 0] - e[1, 1]
        else:
            acc[2] += e[0, 0] + e[0, 1] - e[1, 0] + e[1, 1]
        prob[ev] += np.trace(sub).real
    return PairedChsh(float(acc[1] - 2 * prob[1]), float(acc[2] - 2 * prob[2]),
                      float(prob[1]), float(prob[2]))


def paired_chsh_value(rho, settings, pair, observables, events=None) -> float:
    """``CHSH_1 + CHSH_2``; see :func:`paired_chsh_events`."""
    return paired_chsh_events(rho, settings, pair, observables, events).total


# ---------------------------------------------------------------------------
# Mermin-Klyshko
# ---------------------------------------------------------------------------


def mk_coefficients(n: int) -> dict:
    """Full-correlator expansion of the MK polynomial, normalized to local bound 1.

    ``M_k = (M_{k-1}(A_k + A'_k) + M'_{k-1}(A_k - A'_k)) / 2`` and ``M'_k`` with
    primed and unprimed settings exchanged; ``M_1 = A_1``. Setting 0 is ``A``,
    setting 1 is ``A'``.
    """
    if n < 1:
        raise ValueError("need at least one party")
    m, mp = {(0,): 1.0}, {(1,): 1.0}
    for _ in range(1, n):
        new_m: dict = {}
        new_mp: dict = {}
        for poly, other, target, sgn in ((m, mp, new_m, 1), (mp, m, new_mp, -1)):
            # target = (poly (A + A') + sgn * other (A - A')) / 2, with A<->A' in the primed copy
            first, second = (0, 1) if sgn == 1 else (1, 0)
            for key, c in poly.items():
                for s in (0, 1):
                    target[key + (s,)] = target.get(key + (s,), 0.0) + c / 2
            for key, c in other.items():
                target[key + (first,)] = target.get(key + (first,), 0.0) + c / 2
                target[key + (second,)] = target.get(key + (second,), 0.0) - c / 2
        m, mp = new_m, new_mp
    return {k: v for k, v in m.items() if v != 0}


def mk_inequality(n: int, ns_bound: float | None = None) -> CorrelatorInequality:
    return CorrelatorInequality(n, (2,) * n, mk_coefficients(n), local_bound=1.0,
                                ns_bound=ns_bound, name=f"MK n={n}")


def mk_operator_value(rho: DensityMatrix, observables: Sequence[tuple]) -> float:
    """MK expression with ``observables[k] = (A_k, A'_k)``."""
    return quantum_value(mk_inequality(rho.n_qubits), rho, observables)


def mk_xy_settings(n: int) -> list:
    """X/Y settings maximizing the MK value of ``|GHZ_n>``.

    With ``a_k = A_k + i A'_k`` the recursion gives
    ``M_n = Re[e^{-i pi (n-1)/4} 2^{-(n-1)/2} prod_k a_k]``. Using ``(-Y, X)``
    instead of ``(X, Y)`` multiplies ``a_k`` by ``i``, so ``(n-1)/2 mod 4``
    such parties cancel the phase for odd ``n``.
    """
    xy = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0))
    yx = ((0.0, -1.0, 0.0), (1.0, 0.0, 0.0))
    k = ((n - 1) // 2) % 4
    return [yx] * k + [xy] * (n - k)


def mk_threshold_z(n: int) -> float:
    """Z-dephasing strength at which the GHZ value ``2^((n-1)/2)(1-p)^n`` drops to 1."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"closed form holds for odd n >= 3, got {n}")
    return 1 - (1 / math.sqrt(2)) ** ((n - 1) / n)


def mk_ghz_z_value(n: int, p: float) -> float:
    if n % 2 == 0:
        raise ValueError("closed form holds for odd n")
    return 2 ** ((n - 1) / 2) * (1 - p) ** n


# ---------------------------------------------------------------------------
# Graph-state Bell operators
# ---------------------------------------------------------------------------

_PAULI_INDEX = {"I": 0, "X": 1, "Y": 2, "Z": 3}
_MUL = {  # (a, b) -> (phase, product) for single-qubit Paulis
    ("X", "Y"): (1j, "Z"), ("Y", "X"): (-1j, "Z"),
    ("Y", "Z"): (1j, "X"), ("Z", "Y"): (-1j, "X"),
    ("Z", "X"): (1j, "Y"), ("X", "Z"): (-1j, "Y"),
}


def pauli_product(a: str, b: str) -> tuple[complex, str]:
    """Product of two Pauli strings as ``(phase, string)``."""
    phase = 1 + 0j
    out = []
    for x, y in zip(a, b):
        if x == "I":
            out.append(y)
        elif y == "I":
            out.append(x)
        elif x == y:
            out.append("I")
        else:
            ph, z = _MUL[(x, y)]
            phase *= ph
            out.append(z)
    return phase, "".join(out)


@dataclass(frozen=True)
class GraphBellOperator:
    """``B(i, I) = K_i prod_{j in I} (1 + K_j)`` for non-adjacent neighbours ``I`` of ``i``."""

    graph: GraphSpec
    vertex: int
    subset: tuple

    def __init__(self, graph: GraphSpec, vertex: int, subset: Sequence[int]):
        subset = tuple(sorted(int(j) for j in subset))
        if not subset:
            raise ValueError("neighbour subset must be non-empty")
        if len(set(subset)) != len(subset):
            raise ValueError("duplicate vertices in subset")
        nbrs = graph.neighbors(vertex)
        if any(j not in nbrs for j in subset):
            raise ValueError(f"{subset} is not a subset of the neighbours {nbrs} of {vertex}")
        if any(graph.adjacent(a, b) for a, b in itertools.combinations(subset, 2)):
            raise ValueError("vertices in the subset must be pairwise non-adjacent")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "vertex", int(vertex))
        object.__setattr__(self, "subset", subset)

    def terms(self) -> list[tuple[float, str]]:
        """The ``2^|I|`` signed Pauli strings ``K_i prod_{j in S} K_j``, ``S`` in ``I``."""
        g = self.graph
        out = []
        for r in range(len(self.subset) + 1):
            for s in itertools.combinations(self.subset, r):
                phase, string = 1 + 0j, g.stabilizer(self.vertex)
                for j in s:
                    ph, string = pauli_product(string, g.stabilizer(j))
                    phase *= ph
                # stabilizers commute, so the product is Hermitian with a real sign
                assert abs(phase.imag) < 1e-12 and abs(abs(phase.real) - 1) < 1e-12
                out.append((float(phase.real), string))
        return out


def graph_bell_value(rho: DensityMatrix, op: GraphBellOperator) -> float:
    """``tr[B(i, I) rho]`` from the full correlation tensor."""
    if rho.n_qubits != op.graph.n_vertices:
        raise ValueError("state and graph disagree on the number of qubits")
    corr = correlation_tensor(rho)
    return float(sum(sign * corr[tuple(_PAULI_INDEX[c] for c in s)] for sign, s in op.terms()))


def graph_bell_local_bound(op: GraphBellOperator) -> float:
    """``L(|I| + 1)`` with ``L(m) = 2^((m-1)/2)`` for odd ``m`` and ``2^(m/2)`` for even."""
    m = len(op.subset) + 1
    return float(2 ** ((m - 1) // 2) if m % 2 else 2 ** (m // 2))


def graph_bell_inequality(op: GraphBellOperator) -> CorrelatorInequality:
    """``B(i, I)`` as a correlator inequality; party ``k``'s settings are the Paulis it uses."""
    terms = op.terms()
    n = op.graph.n_vertices
    used = [sorted({s[k] for _, s in terms} - {"I"}) for k in range(n)]
    coeffs: dict = {}
    for sign, s in terms:
        key = tuple(None if s[k] == "I" else used[k].index(s[k]) for k in range(n))
        coeffs[key] = coeffs.get(key, 0.0) + sign
    settings = tuple(max(1, len(u)) for u in used)
    return CorrelatorInequality(n, settings, coeffs, graph_bell_local_bound(op),
                                name=f"graph B({op.vertex},{list(op.subset)})")


def graph_bell_observables(op: GraphBellOperator) -> list:
    """Bloch vectors matching the settings of :func:`graph_bell_inequality`."""
    axes = {"X": (1.0, 0, 0), "Y": (0, 1.0, 0), "Z": (0, 0, 1.0)}
    terms = op.terms()
    out = []
    for k in range(op.graph.n_vertices):
        used = sorted({s[k] for _, s in terms} - {"I"})
        out.append([axes[c] for c in used] or [axes["Z"]])
    return out


def graph_diagonal_weights(g: GraphSpec, ch: PauliChannel) -> np.ndarray:
    """Weights ``p_mu`` of ``Lambda^n(|G_0><G_0|) = sum_mu p_mu |G_mu><G_mu|``.

    ``|G_mu> = Z^mu |G_0>``; a Z error on ``k`` flips ``mu_k``, an X error
    flips the neighbours of ``k`` and a Y error flips both. Index ``mu`` uses
    vertex 0 as the most significant bit.
    """
    n = g.n_vertices
    w = np.zeros(2**n)
    w[0] = 1.0
    idx = np.arange(2**n)
    bit = lambda v: 1 << (n - 1 - v)
    p0, p1, p2, p3 = ch.probabilities
    for k in range(n):
        nb = sum(bit(j) for j in g.neighbors(k))
        flips = ((p0, 0), (p1, nb), (p2, nb ^ bit(k)), (p3, bit(k)))
        w = sum(pk * w[idx ^ m] for pk, m in flips if pk)
    return w


def graph_diagonal_state(g: GraphSpec, weights: np.ndarray) -> DensityMatrix:
    from .qstate import graph_state
    n = g.n_vertices
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (2**n,) or weights.min() < 0 or abs(weights.sum() - 1) > 1e-12:
        raise ValueError("weights must be a probability vector over 2^n patterns")
    g0 = graph_state(g).amplitudes
    idx = np.arange(2**n)
    data = np.zeros((2**n, 2**n), dtype=complex)
    for mu in np.flatnonzero(weights):
        # Z^mu puts sign (-1)^{popcount(x & mu)} on basis state x
        signs = 1 - 2 * (np.array([bin(x & mu).count("1") for x in idx]) & 1)
        v = signs * g0
        data += weights[mu] * np.outer(v, v.conj())
    return DensityMatrix(n, data)


def graph_bell_value_from_weights(op: GraphBellOperator, weights: np.ndarray) -> float:
    """``2^|I| sum_{mu: mu_I = 0} (-1)^{mu_i} p_mu`` for a graph-diagonal state."""
    n = op.graph.n_vertices
    idx = np.arange(2**n)
    bit = lambda v: (idx >> (n - 1 - v)) & 1
    keep = np.ones(2**n, dtype=bool)
    for j in op.subset:
        keep &= bit(j) == 0
    sign = 1 - 2 * bit(op.vertex)
    return float(2 ** len(op.subset) * np.sum(weights[keep] * sign[keep]))


def graph_bell_two_term(op: GraphBellOperator, weights: np.ndarray) -> float:
    """``(p_{mu0} - p_{mu1}) 2^|I|`` with ``mu1`` flipping only the vertex ``i``.

    Equals :func:`graph_bell_value_from_weights` only when ``{i} + I`` covers
    every vertex; otherwise patterns flipping vertices outside ``{i} + I``
    also contribute.
    """
    n = op.graph.n_vertices
    return float((weights[0] - weights[1 << (n - 1 - op.vertex)]) * 2 ** len(op.subset))


# ---------------------------------------------------------------------------
# Inequality files
# ---------------------------------------------------------------------------


def load_inequalities(path: str | os.PathLike) -> list[CorrelatorInequality]:
    """Read inequalities from the text format.

    Each inequality starts with a header
    ``parties N settings m1 ... mN local L [ns U]`` followed by term lines
    ``coef s1 ... sN``, where ``s_k`` is a 0-based setting index or ``-``.
    Blank lines and ``#`` comments are ignored.
    """
    result = []
    header = None
    terms: dict = {}

    def flush(lineno):
        if header is None:
            return
        n, m, local, ns, hline = header
        if not terms:
            raise ValueError(f"{path}:{hline}: inequality has no terms")
        try:
            result.append(CorrelatorInequality(n, m, dict(terms), local, ns))
        except ValueError as exc:
            raise ValueError(f"{path}:{hline}: {exc}") from None

    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "parties":
                flush(lineno)
                header, terms = _parse_header(parts), {}
                header = header + (lineno,)
            elif header is None:
                raise ValueError("term before any 'parties' header")
            else:
                n = header[0]
                if len(parts) != n + 1:
                    raise ValueError(f"expected a coefficient and {n} settings")
                coef = float(parts[0])
                key = tuple(None if s == "-" else int(s) for s in parts[1:])
                terms[key] = terms.get(key, 0.0) + coef
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: malformed row {raw.strip()!r}: {exc}") from None
    flush(None)
    return result


def _parse_header(parts: list[str]) -> tuple:
    n = int(parts[1])
    if parts[2] != "settings":
        raise ValueError("expected 'settings' after the party count")
    m = tuple(int(x) for x in parts[3:3 + n])
    rest = parts[3 + n:]
    if len(m) != n or len(rest) not in (2, 4) or rest[0] != "local":
        raise ValueError("header must read 'parties N settings m1..mN local L [ns U]'")
    local = float(rest[1])
    ns = None
    if len(rest) == 4:
        if rest[2] != "ns":
            raise ValueError("expected 'ns' before the no-signalling bound")
        ns = float(rest[3])
    return n, m, local, ns


def dump_inequality(ineq: CorrelatorInequality) -> str:
    head = (f"parties {ineq.n_parties} settings "
            + " ".join(str(m) for m in ineq.settings_per_party)
            + f" local {ineq.local_bound!r}")
    if ineq.ns_bound is not None:
        head += f" ns {ineq.ns_bound!r}"
    lines = [head]
    for key, c in sorted(ineq.coefficients.items(),
                         key=lambda kv: [(-1 if s is None else s) for s in kv[0]]):
        lines.append(f"{c!r} " + " ".join("-" if s is None else str(s) for s in key))
    return "\n".join(lines) + "\n"
