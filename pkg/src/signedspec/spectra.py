"""Matrices and spectra of signed graphs.

The eigensolver is a cyclic Jacobi method; everything here works on dense
matrices, which is all the desk-scale graphs in this package need.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

import numpy as np

from .sgcore import Edge, GraphError, SignedGraph, SwitchingFunction, apply_switching
from .tolerances import TAU_ZERO

MAX_SWEEPS = 100
OFF_DIAG_RTOL = 1e-13


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues in non-increasing order, optionally with eigenvectors.

    ``vectors[:, i]`` is the unit eigenvector for ``values[i]``.
    """

    values: np.ndarray
    vectors: np.ndarray | None = None

    def __post_init__(self):
        # cached spectra are shared between callers
        self.values.flags.writeable = False
        if self.vectors is not None:
            self.vectors.flags.writeable = False

    @property
    def inertia(self) -> tuple[int, int, int]:
        v = self.values
        pos = int(np.sum(v > TAU_ZERO))
        neg = int(np.sum(v < -TAU_ZERO))
        return pos, len(v) - pos - neg, neg

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True)
class Orientation:
    """Chosen head endpoint for each edge."""

    head: Mapping[Edge, int]

    @classmethod
    def default(cls, g: SignedGraph) -> Orientation:
        return cls({(u, v): u for u, v, _ in g.edges})

    @classmethod
    def random(cls, g: SignedGraph, rng: random.Random) -> Orientation:
        return cls({(u, v): rng.choice((u, v)) for u, v, _ in g.edges})


def adjacency_matrix(g: SignedGraph) -> np.ndarray:
    A = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v, s in g.edges:
        A[u, v] = A[v, u] = s
    return A


def laplacian_matrix(g: SignedGraph) -> np.ndarray:
    A = adjacency_matrix(g)
    return np.diag(np.abs(A).sum(axis=1)) - A


def jacobi_eigh(M) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalisation of a symmetric matrix.

    Returns unsorted ``(values, vectors)`` with ``M @ vectors = vectors * values``.
    Plain Python lists beat numpy here: the matrices are tiny and the cost is
    per-call overhead, not arithmetic.
    """
    a = [[float(x) for x in row] for row in np.asarray(M)]
    n = len(a)
    v = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    fro = math.sqrt(sum(x * x for row in a for x in row))
    target = OFF_DIAG_RTOL * fro
    negligible = 1e-18 * fro
    for _ in range(MAX_SWEEPS):
        off = math.sqrt(2.0 * sum(a[p][q] ** 2 for p in range(n) for q in range(p + 1, n)))
        if off <= target:
            return np.array([a[i][i] for i in range(n)]), np.array(v).reshape(n, n)
        for p in range(n - 1):
            row_p = a[p]
            for q in range(p + 1, n):
                apq = row_p[q]
                if abs(apq) <= negligible:
                    row_p[q] = a[q][p] = 0.0
                    continue
                row_q = a[q]
                # symmetric Schur rotation with |t| <= 1
                tau = (row_q[q] - row_p[p]) / (2.0 * apq)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                for row in a:
                    x, y = row[p], row[q]
                    row[p] = c * x - s * y
                    row[q] = s * x + c * y
                for k in range(n):
                    x, y = row_p[k], row_q[k]
                    row_p[k] = c * x - s * y
                    row_q[k] = s * x + c * y
                row_p[q] = row_q[p] = 0.0
                for row in v:
                    x, y = row[p], row[q]
                    row[p] = c * x - s * y
                    row[q] = s * x + c * y
    raise ConvergenceError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")


def eig_sym(M: np.ndarray) -> Spectrum:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if M.size and np.max(np.abs(M - M.T)) > TAU_ZERO:
        raise ValueError("matrix is not symmetric")
    vals, vecs = jacobi_eigh(M)
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]
    for i in range(vecs.shape[1]):
        col = vecs[:, i]
        nz = np.flatnonzero(np.abs(col) > TAU_ZERO)
        if nz.size and col[nz[0]] < 0:
            vecs[:, i] = -col
    return Spectrum(vals, vecs)


@lru_cache(maxsize=65536)
def adjacency_spectrum(g: SignedGraph) -> Spectrum:
    if g.n == 0:
        raise GraphError("spectrum of the empty graph (n = 0) is undefined")
    return eig_sym(adjacency_matrix(g))


@lru_cache(maxsize=65536)
def laplacian_spectrum(g: SignedGraph) -> Spectrum:
    if g.n == 0:
        raise GraphError("spectrum of the empty graph (n = 0) is undefined")
    return eig_sym(laplacian_matrix(g))


def spectral_radius(g: SignedGraph) -> float:
    vals = adjacency_spectrum(g).values
    return float(max(vals[0], -vals[-1]))


def cycle_spectrum(n: int, r: int) -> Spectrum:
    """Closed-form spectrum of the n-cycle carrying r negative edges."""
    if n < 3:
        raise ValueError(f"cycle length must be at least 3, got {n}")
    if not 0 <= r <= n:
        raise ValueError(f"negative-edge count must lie in 0..{n}, got {r}")
    parity = r % 2
    vals = np.array([2.0 * math.cos((2 * j - parity) * math.pi / n) for j in range(1, n + 1)])
    return Spectrum(np.sort(vals)[::-1].copy())


def incidence_matrix(g: SignedGraph, orientation: Orientation | None = None) -> np.ndarray:
    """Vertex-edge incidence matrix P with ``P @ P.T == L(g)``.

    Column j follows ``g.edges[j]``. The head gets +1; the tail gets -1 on a
    positive edge and +1 on a negative one.
    """
    if orientation is None:
        orientation = Orientation.default(g)
    head = orientation.head
    if set(head) != set(g.signs):
        raise GraphError("orientation must cover exactly the edges of the graph")
    P = np.zeros((g.n, g.m), dtype=np.int64)
    for j, (u, v, s) in enumerate(g.edges):
        h = head[(u, v)]
        if h not in (u, v):
            raise GraphError(f"head {h} is not an endpoint of {(u, v)}")
        t = v if h == u else u
        P[h, j] = 1
        P[t, j] = -1 if s > 0 else 1
    return P


def edge_gram(g: SignedGraph, orientation: Orientation | None = None) -> np.ndarray:
    P = incidence_matrix(g, orientation)
    return P.T @ P


def nonneg_eigvec_switch(g: SignedGraph) -> tuple[SignedGraph, SwitchingFunction]:
    """Switch at the negative entries of a lambda_1 eigenvector.

    The switched graph has ``|x|`` as a non-negative eigenvector for its
    largest eigenvalue. Entries within TAU_ZERO of zero keep theta = +1.
    """
    x = adjacency_spectrum(g).vectors[:, 0]
    theta = SwitchingFunction(tuple(-1 if xi < -TAU_ZERO else 1 for xi in x))
    return apply_switching(g, theta), theta


def principal_eigvec(g: SignedGraph) -> np.ndarray:
    return adjacency_spectrum(g).vectors[:, 0]


def format_matrix(M: np.ndarray) -> str:
    """Row-major plain text rendering, for debugging only."""
    return "\n".join(" ".join(f"{x:g}" for x in row) for row in np.asarray(M))
