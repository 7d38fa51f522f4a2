"""Dense N-qubit states and the linear algebra the rest of the package uses.

Qubits are indexed from 0, and qubit 0 is the most significant bit of the
computational-basis index, so ``|q0 q1 ... q_{n-1}>`` reads left to right.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

ATOL_BUILD = 1e-12
ATOL_CHECK = 1e-10
DEFAULT_MAX_QUBITS = 12

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, X, Y, Z)


def max_qubits() -> int:
    """Engine cap on dense-matrix size, overridable with ``NONLOCAL_MAX_QUBITS``."""
    raw = os.environ.get("NONLOCAL_MAX_QUBITS")
    if raw is None:
        return DEFAULT_MAX_QUBITS
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"NONLOCAL_MAX_QUBITS must be an integer, got {raw!r}")
    if cap < 1:
        raise ValueError("NONLOCAL_MAX_QUBITS must be positive")
    return cap


def _check_size(n: int) -> None:
    if n < 1:
        raise ValueError(f"need at least one qubit, got {n}")
    cap = max_qubits()
    if n > cap:
        raise ValueError(f"{n} qubits exceeds the dense engine cap of {cap}")


@dataclass(frozen=True)
class PureState:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        _check_size(self.n_qubits)
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (2**self.n_qubits,):
            raise ValueError(
                f"expected {2**self.n_qubits} amplitudes, got {amps.shape[0]}")
        if abs(np.linalg.norm(amps) - 1) > ATOL_BUILD:
            raise ValueError("state vector is not normalized")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def __matmul__(self, other: PureState) -> PureState:
        """Tensor product ``self (x) other``."""
        return PureState(self.n_qubits + other.n_qubits,
                         np.kron(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite ``2**n x 2**n`` matrix.

    Validation can be skipped with ``check=False`` for intermediate results
    that are known to be valid by construction.
    """

    n_qubits: int
    data: np.ndarray
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        _check_size(self.n_qubits)
        data = np.array(self.data, dtype=complex)
        dim = 2**self.n_qubits
        if data.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix, got {data.shape}")
        if self.check:
            if not np.allclose(data, data.conj().T, rtol=0, atol=ATOL_BUILD):
                raise ValueError("density matrix is not Hermitian")
            if abs(np.trace(data) - 1) > ATOL_BUILD:
                raise ValueError(f"density matrix trace is {np.trace(data).real}")
            if np.linalg.eigvalsh(data).min() < -ATOL_CHECK:
                raise ValueError("density matrix is not positive semidefinite")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def purity(self) -> float:
        return float(np.real(np.trace(self.data @ self.data)))

    def tensor(self) -> np.ndarray:
        """View as a rank-``2n`` tensor with row indices first."""
        return self.data.reshape((2,) * (2 * self.n_qubits))


def maximally_mixed(n: int) -> DensityMatrix:
    return DensityMatrix(n, np.eye(2**n) / 2**n)


def basis_state(bits: Sequence[int]) -> PureState:
    amps = np.zeros(2 ** len(bits), dtype=complex)
    amps[int("".join(str(b) for b in bits), 2)] = 1
    return PureState(len(bits), amps)


def ghz_state(n: int) -> PureState:
    """``(|0...0> + |1...1>)/sqrt(2)``."""
    if n < 1:
        raise ValueError(f"GHZ state needs n >= 1, got {n}")
    _check_size(n)
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = amps[-1] = 1 / np.sqrt(2)
    return PureState(n, amps)


def w_state(n: int) -> PureState:
    """Equal superposition of the ``n`` single-excitation basis states."""
    if n < 2:
        raise ValueError(f"W state needs n >= 2, got {n}")
    _check_size(n)
    amps = np.zeros(2**n, dtype=complex)
    for k in range(n):
        amps[1 << k] = 1 / np.sqrt(n)
    return PureState(n, amps)


@dataclass(frozen=True)
class GraphSpec:
    """Simple undirected graph on vertices ``0 .. n_vertices-1``."""

    n_vertices: int
    edges: frozenset

    def __init__(self, n_vertices: int, edges: Iterable[Sequence[int]] = ()):
        if n_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        seen = set()
        for e in edges:
            i, j = (int(v) for v in e)
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < n_vertices and 0 <= j < n_vertices):
                raise ValueError(f"edge ({i}, {j}) out of range for {n_vertices} vertices")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        object.__setattr__(self, "n_vertices", int(n_vertices))
        object.__setattr__(self, "edges", frozenset(seen))

    def neighbors(self, i: int) -> list[int]:
        return sorted(b if a == i else a for a, b in self.edges if i in (a, b))

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def stabilizer(self, i: int) -> str:
        """Generator ``K_i = X_i prod_{j in N(i)} Z_j`` as a Pauli string."""
        letters = ["I"] * self.n_vertices
        letters[i] = "X"
        for j in self.neighbors(i):
            letters[j] = "Z"
        return "".join(letters)

    @classmethod
    def star(cls, n: int, center: int = 0) -> GraphSpec:
        return cls(n, [(center, k) for k in range(n) if k != center])

    @classmethod
    def line(cls, n: int) -> GraphSpec:
        return cls(n, [(k, k + 1) for k in range(n - 1)])

    @classmethod
    def ring(cls, n: int) -> GraphSpec:
        return cls(n, [(k, (k + 1) % n) for k in range(n)])

    @classmethod
    def complete(cls, n: int) -> GraphSpec:
        return cls(n, itertools.combinations(range(n), 2))


def read_graph(path: str | os.PathLike) -> GraphSpec:
    """Parse the text graph format: ``n <vertices>`` then ``e <i> <j>`` lines (1-based).

    Blank lines and ``#`` comments are ignored.
    """
    n = None
    edges = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "n" and len(parts) == 2 and n is None:
                n = int(parts[1])
            elif parts[0] == "e" and len(parts) == 3 and n is not None:
                i, j = int(parts[1]), int(parts[2])
                if not (1 <= i <= n and 1 <= j <= n) or i == j:
                    raise ValueError(f"edge endpoints must be distinct vertices in 1..{n}")
                edges.append((i - 1, j - 1))
            else:
                raise ValueError("unrecognized record")
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: bad graph line {line!r} ({exc})") from None
    if n is None:
        raise ValueError(f"{path}: missing 'n <vertices>' header")
    return GraphSpec(n, edges)


def write_graph(g: GraphSpec, path: str | os.PathLike) -> None:
    lines = [f"n {g.n_vertices}"]
    lines += [f"e {i + 1} {j + 1}" for i, j in sorted(g.edges)]
    Path(path).write_text("\n".join(lines) + "\n")


def graph_state(g: GraphSpec) -> PureState:
    """``CZ_E |+>^n``: the CZ product only contributes a sign per basis state."""
    n = g.n_vertices
    _check_size(n)
    idx = np.arange(2**n)
    bits = (idx[:, None] >> (n - 1 - np.arange(n))) & 1
    parity = np.zeros(2**n, dtype=int)
    for i, j in g.edges:
        parity ^= bits[:, i] & bits[:, j]
    amps = (1 - 2 * parity) / np.sqrt(2**n)
    return PureState(n, amps.astype(complex))


def pure_to_density(psi: PureState) -> DensityMatrix:
    a = psi.amplitudes
    return DensityMatrix(psi.n_qubits, np.outer(a, a.conj()))


def apply_local(rho: DensityMatrix, op: np.ndarray, qubit: int) -> np.ndarray:
    """``(op)_q rho (op)_q^dagger`` as a raw matrix."""
    n = rho.n_qubits
    t = rho.tensor()
    t = np.moveaxis(np.tensordot(op, t, axes=(1, qubit)), 0, qubit)
    t = np.moveaxis(np.tensordot(t, op.conj().T, axes=(n + qubit, 0)), -1, n + qubit)
    return t.reshape(rho.dim, rho.dim)


def expectation(rho: DensityMatrix, ops: Sequence[np.ndarray]) -> float:
    """``tr[(ops[0] (x) ... (x) ops[n-1]) rho]`` for Hermitian single-qubit ops."""
    n = rho.n_qubits
    if len(ops) != n:
        raise ValueError(f"need {n} single-qubit operators, got {len(ops)}")
    t = rho.tensor()
    for q, op in enumerate(ops):
        op = np.asarray(op, dtype=complex)
        if op.shape != (2, 2):
            raise ValueError(f"operator for qubit {q} is not 2x2")
        # contract column index of op with row index q of rho
        t = np.moveaxis(np.tensordot(op, t, axes=(1, q)), 0, q)
    val = np.trace(t.reshape(rho.dim, rho.dim))
    if abs(val.imag) > ATOL_CHECK:
        raise ValueError(f"expectation has imaginary part {val.imag:.3g}; ops not Hermitian?")
    return float(val.real)


def correlation_tensor(rho: DensityMatrix) -> np.ndarray:
    """All Pauli-string expectations, ``C[m0,...,m_{n-1}] = tr[(s_m0 (x) ...) rho]``.

    Index 0 is the identity, 1..3 are X, Y, Z.
    """
    n = rho.n_qubits
    basis = np.stack(PAULIS)  # (4, 2, 2)
    t = rho.tensor()
    # leading row axis and its column partner sit at 0 and n-q; Pauli axes pile up at the end
    for q in range(n):
        t = np.tensordot(t, basis, axes=([0, n - q], [2, 1]))
    return np.ascontiguousarray(t.real)


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    n = rho.n_qubits
    keep = list(keep)
    if not keep:
        raise ValueError("keep must be non-empty")
    if len(set(keep)) != len(keep) or any(not 0 <= q < n for q in keep):
        raise ValueError(f"invalid qubit indices {keep} for {n} qubits")
    drop = [q for q in range(n) if q not in keep]
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    rows = list(letters[:n])
    cols = list(letters[n:2 * n])
    for q in drop:
        cols[q] = rows[q]
    out = "".join(rows[q] for q in keep) + "".join(cols[q] for q in keep)
    red = np.einsum("".join(rows) + "".join(cols) + "->" + out, rho.tensor())
    k = len(keep)
    return DensityMatrix(k, red.reshape(2**k, 2**k), check=False)


@dataclass(frozen=True)
class Observable:
    """Dichotomic projective measurement ``n . sigma`` with unit Bloch vector ``n``."""

    bloch: tuple

    def __init__(self, bloch: Sequence[float]):
        v = np.asarray(bloch, dtype=float).reshape(-1)
        if v.shape != (3,):
            raise ValueError("Bloch vector must have 3 components")
        if abs(np.linalg.norm(v) - 1) > ATOL_BUILD:
            raise ValueError(f"Bloch vector {v} is not unit length")
        object.__setattr__(self, "bloch", tuple(float(c) for c in v))

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> Observable:
        v = np.array([np.sin(theta) * np.cos(phi),
                      np.sin(theta) * np.sin(phi),
                      np.cos(theta)])
        return cls(v / np.linalg.norm(v))

    @property
    def matrix(self) -> np.ndarray:
        nx, ny, nz = self.bloch
        return nx * X + ny * Y + nz * Z

    def eigenvector(self, outcome: int) -> np.ndarray:
        """Unit vector ``|phi>`` with ``(n . sigma)|phi> = outcome |phi>``."""
        if outcome not in (1, -1):
            raise ValueError(f"outcome must be +1 or -1, got {outcome}")
        nx, ny, nz = self.bloch
        if outcome == -1:
            nx, ny, nz = -nx, -ny, -nz
        # Bloch-sphere parametrization, stable on both hemispheres
        if nz >= 0:
            v = np.array([1 + nz, nx + 1j * ny])
        else:
            v = np.array([nx - 1j * ny, 1 - nz])
        return v / np.linalg.norm(v)


OBS_X = Observable((1, 0, 0))
OBS_Y = Observable((0, 1, 0))
OBS_Z = Observable((0, 0, 1))


@dataclass(frozen=True)
class Conditioned:
    """Outcome of a local projection: the conditional state and its probability.

    ``state`` is ``None`` when the outcome has zero probability.
    """

    state: DensityMatrix | None
    probability: float
    kept: tuple

    @property
    def impossible(self) -> bool:
        return self.state is None


def project(rho: DensityMatrix, spec: Sequence[tuple[int, Observable, int]]) -> tuple[np.ndarray, tuple]:
    """Unnormalized post-measurement state on the unmeasured qubits."""
    n = rho.n_qubits
    qubits = [q for q, _, _ in spec]
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"overlapping projection indices {qubits}")
    if any(not 0 <= q < n for q in qubits):
        raise ValueError(f"projection index out of range for {n} qubits")
    if len(qubits) >= n:
        raise ValueError("at least one qubit must remain unprojected")
    t = rho.tensor()
    # process highest index first so lower axis numbers stay valid
    live = n
    for q, obs, c in sorted(spec, key=lambda s: -s[0]):
        phi = obs.eigenvector(c)
        t = np.tensordot(phi.conj(), t, axes=(0, q))          # bra on row q
        t = np.tensordot(t, phi, axes=(live - 1 + q, 0))      # ket on column q
        live -= 1
    kept = tuple(q for q in range(n) if q not in qubits)
    d = 2**len(kept)
    return t.reshape(d, d), kept


def project_and_condition(rho: DensityMatrix,
                          spec: Sequence[tuple[int, Observable, int]],
                          atol: float = 1e-14) -> Conditioned:
    """Project the listed qubits onto ``+-1`` eigenstates and renormalize the rest.

    Parameters
    ----------
    rho : DensityMatrix
    spec : list of (qubit, Observable, outcome)
        ``outcome`` is ``+1`` or ``-1``.

    Returns
    -------
    Conditioned
        Conditional state on the remaining qubits (in increasing index order)
        and the probability of the outcome pattern.
    """
    sub, kept = project(rho, spec)
    prob = float(np.real(np.trace(sub)))
    if prob <= atol:
        return Conditioned(None, max(prob, 0.0), kept)
    sub = sub / prob
    sub = (sub + sub.conj().T) / 2
    return Conditioned(DensityMatrix(len(kept), sub, check=False), prob, kept)
