"""Combinatorial and variational invariants of signed graphs."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator

import numpy as np

from .sgcore import (
    Edge,
    SignedGraph,
    SwitchingFunction,
    apply_switching,
    induced,
    relabel,
    switching_equivalent,
)
from .spectra import adjacency_matrix
from .tolerances import TAU_ZERO

FRUSTRATION_MAX_N = 24


class TooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class CliqueReport:
    """Balanced clique number, a witness clique and the per-edge maxima.

    ``witness_signs[i]`` is the switching sign of ``witness[i]`` that makes
    the witness clique all-positive.
    """

    omega_b: int
    witness: tuple[int, ...]
    witness_signs: tuple[int, ...]
    per_edge: dict[Edge, int]


@dataclass(frozen=True, eq=False)
class L1Vector:
    entries: np.ndarray

    def __post_init__(self):
        norm = float(np.sum(np.abs(self.entries)))
        if abs(norm - 1.0) > TAU_ZERO:
            raise ValueError(f"L1 norm is {norm!r}, expected 1")

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> L1Vector:
        """Random point of the L1 unit sphere with a random support size."""
        k = int(rng.integers(1, n + 1))
        support = rng.choice(n, size=k, replace=False)
        x = np.zeros(n)
        x[support] = rng.dirichlet(np.ones(k)) * rng.choice((-1.0, 1.0), size=k)
        return cls(x / np.sum(np.abs(x)))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.entries))


def frustration_index(g: SignedGraph) -> tuple[int, SwitchingFunction]:
    """Exact frustration index by scanning switchings with a Gray code.

    Each component is scanned independently with its minimum vertex fixed
    at +1, so the cost is sum over components of 2^(size-1).
    """
    if g.n > FRUSTRATION_MAX_N:
        raise TooLargeError(f"exact frustration index is capped at n = {FRUSTRATION_MAX_N}, got {g.n}")
    theta = [1] * g.n
    total = 0
    for comp in g.components:
        free = comp[1:]
        th = {v: 1 for v in comp}
        inc = {v: [(x, g.sign(v, x)) for x in g.adj[v]] for v in comp}
        neg = sum(1 for u in comp for x, s in inc[u] if u < x and s < 0)
        best, best_th = neg, dict(th)
        for step in range(1, 1 << len(free)):
            w = free[(step & -step).bit_length() - 1]
            tw = th[w]
            for x, s in inc[w]:
                # edge sign before the flip is tw*s*th[x]; flipping w negates it
                neg += 1 if tw * s * th[x] > 0 else -1
            th[w] = -tw
            if neg < best:
                best, best_th = neg, dict(th)
        total += best
        for v in comp:
            theta[v] = best_th[v]
    return total, SwitchingFunction(tuple(theta))


def triangle_counts(g: SignedGraph) -> tuple[int, int]:
    """(balanced, unbalanced) triangle counts."""
    pos = neg = 0
    adj = g.adj_sets
    for u, v, s in g.edges:
        for w in adj[u] & adj[v]:
            if w > v:
                if s * g.sign(u, w) * g.sign(v, w) > 0:
                    pos += 1
                else:
                    neg += 1
    return pos, neg


def _cover_cliques(g: SignedGraph) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Maximal balanced cliques as (vertices, switching signs).

    A vertex set is a balanced clique exactly when it lifts to a clique of
    the double cover whose vertices are (v, +1), (v, -1) and where (u, a) ~
    (v, b) iff uv is an edge with sign a*b. Bron-Kerbosch, pivoting on the
    vertex with most candidate neighbours, runs on the cover. Each clique is
    reported once, with its smallest vertex lifted to +1.
    """
    nbr: list[set[int]] = [set() for _ in range(2 * g.n)]
    for u, v, s in g.edges:
        for a in (1, -1):
            b = a * s
            iu = 2 * u + (a < 0)
            iv = 2 * v + (b < 0)
            nbr[iu].add(iv)
            nbr[iv].add(iu)

    out: list[frozenset[int]] = []

    def expand(R: list[int], P: set[int], X: set[int]) -> None:
        if not P and not X:
            out.append(frozenset(R))
            return
        pivot = max(P | X, key=lambda w: len(P & nbr[w]))
        for w in sorted(P - nbr[pivot]):
            expand(R + [w], P & nbr[w], X & nbr[w])
            P.discard(w)
            X.add(w)

    expand([], set(range(2 * g.n)), set())
    for K in out:
        lifted = sorted(K)
        if not lifted or lifted[0] % 2:
            continue
        yield tuple(i // 2 for i in lifted), tuple(-1 if i % 2 else 1 for i in lifted)


@lru_cache(maxsize=65536)
def balanced_cliques(g: SignedGraph) -> CliqueReport:
    per_edge: dict[Edge, int] = {}
    best: tuple[int, tuple[int, ...], tuple[int, ...]] | None = None
    for verts, signs in _cover_cliques(g):
        r = len(verts)
        for a, b in combinations(verts, 2):
            if per_edge.get((a, b), 0) < r:
                per_edge[(a, b)] = r
        if best is None or r > best[0] or (r == best[0] and verts < best[1]):
            best = (r, verts, signs)
    if best is None:
        return CliqueReport(0, (), (), {})
    return CliqueReport(best[0], best[1], best[2], dict(sorted(per_edge.items())))


def unsigned_edge_cliques(g: SignedGraph) -> dict[Edge, int]:
    """Order of the largest clique of the underlying graph through each edge."""
    return balanced_cliques(g.all_positive()).per_edge


def l1_ascent(M: np.ndarray, x: np.ndarray, max_iter: int = 20000, tol: float = 1e-14) -> np.ndarray:
    """Local maximisation of ``x^T M x`` over the L1 unit sphere.

    ``M`` must be symmetric with zero diagonal. Each step moves mass from the
    support coordinate whose weight is cheapest to give up into the
    coordinate with the best marginal gain (signed so that the gain is
    non-negative), with the exact line-search step for the quadratic.
    """
    x = np.array(x, dtype=float)
    h = M @ x
    for it in range(max_iter):
        if it % 500 == 499:
            h = M @ x
        sgn = np.sign(x)
        free = sgn == 0
        dirs = np.where(free, np.where(h >= 0, 1.0, -1.0), sgn)
        add = dirs * h
        i = int(np.argmax(add))
        supp = np.flatnonzero(~free)
        rem = sgn[supp] * h[supp]
        j = int(supp[np.argmin(rem)])
        slope = add[i] - sgn[j] * h[j]
        if i == j or slope <= tol:
            break
        di, sj = dirs[i], sgn[j]
        curv = -2.0 * di * sj * M[i, j]
        cap = abs(x[j])
        step = cap if curv >= 0 else min(cap, -slope / curv)
        x[i] += di * step
        if step >= cap:
            x[j] = 0.0
        else:
            x[j] -= sj * step
        h += M[:, i] * (di * step) - M[:, j] * (sj * step)
    return x


def motzkin_straus_value(g: SignedGraph, restarts: int = 50, seed: int = 0) -> tuple[float, L1Vector]:
    """Maximise ``x^T A x`` over the L1 unit sphere.

    Starts from the uniform signed vector on a maximum balanced clique plus
    ``restarts`` random points, each followed by :func:`l1_ascent`.
    """
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    if g.n == 0:
        raise ValueError("the L1 sphere in dimension 0 is empty")
    A = adjacency_matrix(g).astype(float)
    rep = balanced_cliques(g)
    seed_x = np.zeros(g.n)
    r = len(rep.witness)
    for v, s in zip(rep.witness, rep.witness_signs):
        seed_x[v] = s / r
    rng = np.random.default_rng(seed)
    starts = [seed_x] + [L1Vector.random(g.n, rng).entries for _ in range(restarts)]
    best_val, best_x = -math.inf, seed_x
    for x0 in starts:
        x = l1_ascent(A, x0)
        val = float(x @ A @ x)
        if val > best_val:
            best_val, best_x = val, x
    return best_val, L1Vector(best_x / np.sum(np.abs(best_x)))


def weighted_matrix(g: SignedGraph) -> np.ndarray:
    """Matrix with entry sign(ij) * c/(c-1) on each edge, c its balanced-clique order."""
    per_edge = balanced_cliques(g).per_edge
    W = np.zeros((g.n, g.n))
    for u, v, s in g.edges:
        c = per_edge[(u, v)]
        assert c >= 2, "every edge is a balanced 2-clique"
        W[u, v] = W[v, u] = s * c / (c - 1)
    return W


def weighted_form_value(g: SignedGraph, x: L1Vector | np.ndarray) -> float:
    if not isinstance(x, L1Vector):
        x = L1Vector(np.asarray(x, dtype=float))
    e = x.entries
    if e.shape != (g.n,):
        raise ValueError(f"vector has shape {e.shape}, graph has {g.n} vertices")
    return float(e @ weighted_matrix(g) @ e)


def odd_girth(g: SignedGraph) -> float:
    """Length of a shortest odd cycle of the underlying graph; inf if bipartite."""
    best = math.inf
    for r in range(g.n):
        dist = [-1] * g.n
        dist[r] = 0
        queue = deque([r])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        for u, v, _ in g.edges:
            if dist[u] >= 0 and dist[u] == dist[v]:
                best = min(best, 2 * dist[u] + 1)
    return best


def is_bipartite_underlying(g: SignedGraph) -> bool:
    return odd_girth(g) == math.inf


def contains_induced_pattern(g: SignedGraph, pattern: SignedGraph) -> tuple[bool, dict[int, int] | None]:
    """Look for an induced copy of ``pattern`` up to switching.

    Returns ``(found, embedding)`` where ``embedding`` maps pattern vertices
    to vertices of ``g``.
    """
    k = pattern.n
    if k > g.n:
        return False, None
    if k == 0:
        return True, {}
    pdeg = [pattern.degree(p) for p in range(k)]
    order = sorted(range(k), key=lambda p: -pdeg[p])
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(pos: int) -> dict[int, int] | None:
        if pos == k:
            inv = {gv: p for p, gv in image.items()}
            U = sorted(inv)
            sub = induced(g, U)
            as_pattern = relabel(sub, [inv[v] for v in U])
            if switching_equivalent(as_pattern, pattern):
                return dict(sorted(image.items()))
            return None
        p = order[pos]
        for v in range(g.n):
            if v in used or g.degree(v) < pdeg[p]:
                continue
            if any(pattern.has_edge(p, q) != g.has_edge(v, w) for q, w in image.items()):
                continue
            image[p] = v
            used.add(v)
            found = extend(pos + 1)
            if found is not None:
                return found
            del image[p]
            used.discard(v)
        return None

    emb = extend(0)
    return emb is not None, emb


def switch_to_positive_clique(g: SignedGraph, rep: CliqueReport) -> SignedGraph:
    """Switch ``g`` so that the witness clique of ``rep`` is all-positive."""
    th = [1] * g.n
    for v, s in zip(rep.witness, rep.witness_signs):
        th[v] = s
    return apply_switching(g, SwitchingFunction(tuple(th)))
