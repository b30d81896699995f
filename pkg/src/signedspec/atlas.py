"""Named graph families, exhaustive small-graph enumeration and census scans."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Callable, Iterable, Iterator, Sequence

from .bounds import CHECKERS, HOLDS, VERDICTS, TheoremReport, normalize_theorem_id
from .invariants import is_bipartite_underlying
from .sgcore import SignedGraph, from_edge_list, is_balanced, spanning_forest

ENUMERATION_MAX_N = 7
FILTERS = ("connected_only", "unbalanced_only", "nonbipartite_only")

# C5 on u1..u5 = 0..4, extra vertices v = 5, w = 6
_C5 = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...] = ()


def _signed(n: int, edges: Iterable[tuple[int, int]], negative: Iterable[tuple[int, int]] = ()) -> SignedGraph:
    neg = {tuple(sorted(e)) for e in negative}
    return from_edge_list(n, [(u, v, -1 if tuple(sorted((u, v))) in neg else 1) for u, v in edges])


def _complete_multipartite(*sizes: int) -> SignedGraph:
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError("part sizes must be positive")
    part = [i for i, s in enumerate(sizes) for _ in range(s)]
    n = len(part)
    return _signed(n, [(u, v) for u, v in combinations(range(n), 2) if part[u] != part[v]])


def _complete_bipartite(s: int, t: int) -> SignedGraph:
    return _complete_multipartite(s, t)


def _sk(s: int, t: int) -> SignedGraph:
    """K_{s,t} with edge (0, s) subdivided by the new vertex s + t."""
    if s < 1 or t < 1:
        raise ValueError("SK needs s, t >= 1")
    n = s + t + 1
    edges = [(a, s + b) for a in range(s) for b in range(t) if (a, b) != (0, 0)]
    edges += [(0, n - 1), (s, n - 1)]
    return _signed(n, edges)


def _signed_cycle(n: int, r: int) -> SignedGraph:
    """Cycle 0-1-...-(n-1)-0 whose first r edges (in that order) are negative."""
    if n < 3 or not 0 <= r <= n:
        raise ValueError("signed_cycle needs n >= 3 and 0 <= r <= n")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return _signed(n, edges, edges[:r])


def _gamma_1_n3(n: int) -> SignedGraph:
    """Clique on u1 = 0 and v1..v_{n-3} = 1..n-3, plus u = n-2, v = n-1.

    u ~ u1 and v ~ v_i are positive, uv is negative.
    """
    if n < 4:
        raise ValueError("gamma_1_n3 needs n >= 4")
    u, v = n - 2, n - 1
    edges = list(combinations(range(n - 2), 2)) + [(u, v), (0, u)] + [(i, v) for i in range(1, n - 2)]
    return _signed(n, edges, [(u, v)])


def _h1() -> SignedGraph:
    return _signed(6, _C5 + [(0, 5)])


_H2 = _C5 + [(0, 5), (3, 5), (2, 6), (4, 6)]
_H3 = _C5 + [(0, 5), (3, 5), (2, 6), (0, 6)]


def _h2_variant(i: int = 0) -> SignedGraph:
    """0: all positive; 1, 2: the two unbalanced signings, left to right."""
    negs = {0: [], 1: [(0, 5)], 2: [(0, 5), (4, 6)]}
    if i not in negs:
        raise ValueError("h2_variant index must be 0, 1 or 2")
    return _signed(7, _H2, negs[i])


def _h3_variant(i: int = 0) -> SignedGraph:
    """0: all positive; 1, 2: the two unbalanced signings, left to right."""
    negs = {0: [], 1: [(0, 5), (0, 6)], 2: [(0, 5)]}
    if i not in negs:
        raise ValueError("h3_variant index must be 0, 1 or 2")
    return _signed(7, _H3, negs[i])


def _fig4_gamma1() -> SignedGraph:
    return _signed(6, _C5 + [(0, 5), (3, 5)])


def _fig4_gamma2() -> SignedGraph:
    return _signed(6, _C5 + [(0, 5), (3, 5)], [(3, 5)])


def _k4_one_negative() -> SignedGraph:
    return _signed(4, combinations(range(4), 2), [(0, 1)])


def _y_n(n: int) -> SignedGraph:
    """Path 0..n-5 with pendants n-4, n-3 on vertex 0 and n-2, n-1 on vertex n-5."""
    if n < 6:
        raise ValueError("y_n needs n >= 6")
    k = n - 4
    edges = [(i, i + 1) for i in range(k - 1)]
    edges += [(0, k), (0, k + 1), (k - 1, k + 2), (k - 1, k + 3)]
    return _signed(n, edges)


FAMILIES: dict[str, Callable[..., SignedGraph]] = {
    "complete_multipartite_balanced": _complete_multipartite,
    "complete_bipartite": _complete_bipartite,
    "sk": _sk,
    "signed_cycle": _signed_cycle,
    "gamma_1_n3": _gamma_1_n3,
    "h1": _h1,
    "h2_variant": _h2_variant,
    "h3_variant": _h3_variant,
    "fig4_gamma1": _fig4_gamma1,
    "fig4_gamma2": _fig4_gamma2,
    "k4_one_negative": _k4_one_negative,
    "y_n": _y_n,
}


def generate(spec: FamilySpec | str, *params: int) -> SignedGraph:
    if isinstance(spec, str):
        spec = FamilySpec(spec, tuple(params))
    name = spec.family.replace("-", "_")
    if name not in FAMILIES:
        raise ValueError(f"unknown family {spec.family!r}")
    try:
        return FAMILIES[name](*spec.params)
    except TypeError:
        raise ValueError(f"wrong number of parameters for {name}: {spec.params}") from None


# --- isomorphism classes -----------------------------------------------------


def _refine(n: int, adj: Sequence[frozenset[int]]) -> list[int]:
    """Colour refinement started from degrees; colours are ranks, so invariant."""
    colors = [len(a) for a in adj]
    ncolors = -1
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [ranks[s] for s in sigs]
        if len(ranks) == ncolors:
            return colors
        ncolors = len(ranks)


def canonical_code(g: SignedGraph) -> tuple[int, tuple[int, ...]]:
    """Minimal adjacency code of the underlying graph and a labelling attaining it.

    The minimum runs over all orderings that list the refined colour classes
    in colour order, which is a complete isomorphism invariant.
    Returns ``(code, order)`` where ``order[i]`` is the vertex placed at i.
    """
    n = g.n
    adj = g.adj_sets
    colors = _refine(n, adj)
    cells = [[v for v in range(n) if colors[v] == c] for c in sorted(set(colors))]
    pairs = list(combinations(range(n), 2))
    best = None
    best_order: tuple[int, ...] = tuple(range(n))
    for choice in product(*(permutations(c) for c in cells)):
        order = tuple(v for cell in choice for v in cell)
        code = 0
        for i, j in pairs:
            code = (code << 1) | (order[j] in adj[order[i]])
        if best is None or code < best:
            best, best_order = code, order
    return (best or 0), best_order


def _canonical_graph(g: SignedGraph) -> tuple[int, SignedGraph]:
    code, order = canonical_code(g)
    pos = {v: i for i, v in enumerate(order)}
    return code, from_edge_list(g.n, [(pos[u], pos[v], 1) for u, v, _ in g.edges])


@lru_cache(maxsize=None)
def _underlying_classes(n: int) -> tuple[SignedGraph, ...]:
    if n == 0:
        return (SignedGraph(0),)
    found: dict[int, SignedGraph] = {}
    for base in _underlying_classes(n - 1):
        for mask in range(1 << (n - 1)):
            edges = [(u, v, 1) for u, v, _ in base.edges]
            edges += [(v, n - 1, 1) for v in range(n - 1) if mask >> v & 1]
            code, rep = _canonical_graph(from_edge_list(n, edges))
            found.setdefault(code, rep)
    return tuple(rep for _, rep in sorted(found.items(), key=lambda kv: (kv[1].m, kv[0])))


def enumerate_underlying(n: int) -> Iterator[SignedGraph]:
    """One all-positive representative per isomorphism class of graphs on n vertices.

    Every graph on n vertices is a one-vertex extension of a graph on n - 1
    vertices, so candidates come from extending the previous level and are
    deduplicated by :func:`canonical_code`.
    """
    if n < 0 or n > ENUMERATION_MAX_N:
        raise ValueError(f"exhaustive enumeration supports 0 <= n <= {ENUMERATION_MAX_N}, got {n}")
    yield from _underlying_classes(n)


def switching_class_count(g: SignedGraph) -> int:
    return 2 ** (g.m - g.n + len(g.components))


def enumerate_switching_classes(u: SignedGraph) -> Iterator[SignedGraph]:
    """One canonical representative per switching class on the underlying graph of ``u``.

    Forest edges stay positive and the co-tree edges take every sign
    pattern, giving 2^(m - n + c) pairwise inequivalent graphs.
    """
    tree = spanning_forest(u)
    cotree = [e for e in u.underlying if e not in tree]
    for mask in range(1 << len(cotree)):
        neg = {cotree[i] for i in range(len(cotree)) if mask >> i & 1}
        yield SignedGraph(u.n, tuple((a, b, -1 if (a, b) in neg else 1) for a, b in u.underlying))


# --- scans ---------------------------------------------------------------------


def _passes(g: SignedGraph, filters: frozenset[str]) -> bool:
    if "connected_only" in filters and not g.is_connected():
        return False
    if "nonbipartite_only" in filters and is_bipartite_underlying(g):
        return False
    if "unbalanced_only" in filters and is_balanced(g).balanced:
        return False
    return True


def iter_graphs(n_max: int, filters: Iterable[str] = (), n_min: int = 1) -> Iterator[SignedGraph]:
    """Every switching-class representative on every underlying class, n_min <= n <= n_max."""
    filters = _check_filters(filters)
    for n in range(n_min, n_max + 1):
        for u in enumerate_underlying(n):
            for g in enumerate_switching_classes(u):
                if _passes(g, filters):
                    yield g


def _check_filters(filters: Iterable[str]) -> frozenset[str]:
    fs = frozenset(f.replace("-", "_") for f in filters)
    bad = fs - set(FILTERS)
    if bad:
        raise ValueError(f"unknown filter(s): {', '.join(sorted(bad))}")
    return fs


def _scan_task(args: tuple[str, SignedGraph, frozenset[str]]) -> list[TheoremReport]:
    theorem_id, u, filters = args
    check = CHECKERS[theorem_id]
    out: list[TheoremReport] = []
    for g in enumerate_switching_classes(u):
        if _passes(g, filters):
            out.extend(check(g))
    return out


@dataclass
class ScanSummary:
    theorem_id: str
    n_max: int
    filters: tuple[str, ...]
    graphs: int = 0
    counts: dict[str, int] = field(default_factory=lambda: {v: 0 for v in VERDICTS})
    records: list[TheoremReport] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return self.counts["violation"]

    def to_record(self) -> dict:
        return {
            "summary": True,
            "theorem_id": self.theorem_id,
            "n_max": self.n_max,
            "filters": list(self.filters),
            "graphs": self.graphs,
            "counts": dict(self.counts),
        }


def scan_iter(
    theorem_id: str,
    n_max: int,
    filters: Iterable[str] = (),
    *,
    jobs: int = 1,
    n_min: int = 1,
    progress: Callable[[int, int, int], None] | None = None,
) -> Iterator[TheoremReport]:
    """Yield every report of ``theorem_id`` over the exhaustive census, in a fixed order.

    Work is split per underlying graph; with ``jobs > 1`` the tasks run in
    worker processes but results are consumed in submission order, so the
    stream does not depend on ``jobs``. ``progress(n, done, total)`` is
    called after each underlying graph.
    """
    tid = normalize_theorem_id(theorem_id)
    fs = _check_filters(filters)
    if n_max > ENUMERATION_MAX_N:
        raise ValueError(f"exhaustive scans support n <= {ENUMERATION_MAX_N}")
    for n in range(n_min, n_max + 1):
        tasks = [(tid, u, fs) for u in enumerate_underlying(n)]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                chunk = max(1, len(tasks) // (4 * jobs))
                results = pool.map(_scan_task, tasks, chunksize=chunk)
                for done, reports in enumerate(results, 1):
                    yield from reports
                    if progress:
                        progress(n, done, len(tasks))
        else:
            for done, task in enumerate(tasks, 1):
                yield from _scan_task(task)
                if progress:
                    progress(n, done, len(tasks))


def scan(theorem_id: str, n_max: int, filters: Iterable[str] = (), *, jobs: int = 1, n_min: int = 1) -> ScanSummary:
    """Run a checker over the census; keeps every report whose verdict is not ``holds``."""
    tid = normalize_theorem_id(theorem_id)
    fs = tuple(sorted(_check_filters(filters)))
    summary = ScanSummary(tid, n_max, fs)
    last = None
    for rep in scan_iter(tid, n_max, fs, jobs=jobs, n_min=n_min):
        if rep.graph is not last:
            summary.graphs += 1
            last = rep.graph
        summary.counts[rep.verdict] += 1
        if rep.verdict != HOLDS:
            summary.records.append(rep)
    return summary


def total_switching_classes(n: int) -> int:
    return sum(switching_class_count(u) for u in enumerate_underlying(n))


def expected_underlying_count(n: int) -> int:
    return (1, 1, 2, 4, 11, 34, 156, 1044)[n]


__all__ = [
    "FAMILIES",
    "FILTERS",
    "FamilySpec",
    "ScanSummary",
    "canonical_code",
    "enumerate_switching_classes",
    "enumerate_underlying",
    "generate",
    "iter_graphs",
    "scan",
    "scan_iter",
    "switching_class_count",
]

