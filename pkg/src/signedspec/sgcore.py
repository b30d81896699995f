"""Signed graphs: data model, switching, balance, canonical forms and ``.sgr`` I/O."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

Edge = tuple[int, int]


class GraphError(ValueError):
    """Base class for invalid graph construction or manipulation."""


class VertexRangeError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class MissingEdgeError(GraphError):
    pass


class SgrParseError(GraphError):
    def __init__(self, line: int, col: int, message: str):
        self.line = line
        self.col = col
        self.message = message
        super().__init__(f"{line}:{col}: {message}")


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SignedGraph:
    """A simple graph on vertices ``0..n-1`` whose edges carry a sign of +1 or -1.

    ``edges`` is kept sorted as ``(u, v, sign)`` triples with ``u < v``; use
    :func:`from_edge_list` to build one from unvalidated input.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...] = ()

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def signs(self) -> dict[Edge, int]:
        return {(u, v): s for u, v, s in self.edges}

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(x) for x in self.adj)

    def sign(self, u: int, v: int) -> int:
        """Sign of edge uv, or 0 when u and v are not adjacent."""
        return self.signs.get(_norm(u, v), 0)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.signs

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def underlying(self) -> tuple[Edge, ...]:
        return tuple((u, v) for u, v, _ in self.edges)

    @property
    def positive_edges(self) -> tuple[Edge, ...]:
        return tuple((u, v) for u, v, s in self.edges if s > 0)

    @property
    def negative_edges(self) -> tuple[Edge, ...]:
        return tuple((u, v) for u, v, s in self.edges if s < 0)

    def all_positive(self) -> SignedGraph:
        return SignedGraph(self.n, tuple((u, v, 1) for u, v, _ in self.edges))

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.n
        comps = []
        for r in range(self.n):
            if seen[r]:
                continue
            seen[r] = True
            comp = [r]
            queue = deque([r])
            while queue:
                x = queue.popleft()
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def is_connected(self) -> bool:
        return len(self.components) == 1

    def __repr__(self) -> str:
        body = " ".join(f"{u}{'+' if s > 0 else '-'}{v}" for u, v, s in self.edges)
        return f"SignedGraph(n={self.n}, [{body}])"


@dataclass(frozen=True)
class SwitchingFunction:
    """Vertex signs ``theta[v]`` in {+1, -1}."""

    theta: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> SwitchingFunction:
        return cls((1,) * n)

    @classmethod
    def from_set(cls, n: int, S: Iterable[int]) -> SwitchingFunction:
        th = [1] * n
        for v in S:
            th[v] = -1
        return cls(tuple(th))

    @property
    def negative_set(self) -> frozenset[int]:
        return frozenset(v for v, t in enumerate(self.theta) if t < 0)

    def __getitem__(self, v: int) -> int:
        return self.theta[v]


@dataclass(frozen=True)
class BalanceResult:
    balanced: bool
    witness: SwitchingFunction | None = None
    negative_cycle: tuple[int, ...] | None = field(default=None)


def from_edge_list(n: int, edges: Iterable[tuple[int, int, int]]) -> SignedGraph:
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    seen: dict[Edge, int] = {}
    for u, v, s in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        if s not in (1, -1):
            raise GraphError(f"edge ({u}, {v}) has sign {s!r}; expected +1 or -1")
        key = _norm(u, v)
        if key in seen:
            raise DuplicateEdgeError(f"duplicate pair {key}")
        seen[key] = int(s)
    return SignedGraph(n, tuple(sorted((u, v, s) for (u, v), s in seen.items())))


def _check_vertices(g: SignedGraph, vs: Iterable[int]) -> None:
    for v in vs:
        if not 0 <= v < g.n:
            raise VertexRangeError(f"vertex {v} outside 0..{g.n - 1}")


def switch(g: SignedGraph, S: Iterable[int]) -> SignedGraph:
    """Flip the sign of every edge with exactly one end in ``S``."""
    S = frozenset(S)
    _check_vertices(g, S)
    return SignedGraph(
        g.n, tuple((u, v, -s if (u in S) != (v in S) else s) for u, v, s in g.edges)
    )


def apply_switching(g: SignedGraph, theta: SwitchingFunction) -> SignedGraph:
    if len(theta.theta) != g.n:
        raise GraphError("switching function is not defined on exactly V(g)")
    t = theta.theta
    return SignedGraph(g.n, tuple((u, v, t[u] * s * t[v]) for u, v, s in g.edges))


def _bfs_forest(g: SignedGraph) -> tuple[list[int], list[int]]:
    """BFS from each component's minimum vertex, neighbours in label order.

    Returns (parent, order); roots have parent -1.
    """
    parent = [-2] * g.n
    order: list[int] = []
    for r in range(g.n):
        if parent[r] != -2:
            continue
        parent[r] = -1
        queue = deque([r])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in g.adj[x]:
                if parent[y] == -2:
                    parent[y] = x
                    queue.append(y)
    return parent, order


def spanning_forest(g: SignedGraph) -> frozenset[Edge]:
    """Edges of the canonical BFS spanning forest used by :func:`canonical_form`."""
    parent, _ = _bfs_forest(g)
    return frozenset(_norm(v, p) for v, p in enumerate(parent) if p >= 0)


def _tree_theta(g: SignedGraph) -> tuple[list[int], list[int]]:
    parent, order = _bfs_forest(g)
    theta = [1] * g.n
    for x in order:
        p = parent[x]
        if p >= 0:
            theta[x] = theta[p] * g.sign(p, x)
    return theta, parent


def is_balanced(g: SignedGraph) -> BalanceResult:
    theta, parent = _tree_theta(g)
    for u, v, s in g.edges:
        if theta[u] * theta[v] != s:
            return BalanceResult(False, None, _tree_cycle(parent, u, v))
    return BalanceResult(True, SwitchingFunction(tuple(theta)))


def _tree_cycle(parent: list[int], u: int, v: int) -> tuple[int, ...]:
    # tree path u..lca..v; closing edge vu
    anc_u = [u]
    while parent[anc_u[-1]] >= 0:
        anc_u.append(parent[anc_u[-1]])
    pos = {x: i for i, x in enumerate(anc_u)}
    path_v = [v]
    while path_v[-1] not in pos:
        path_v.append(parent[path_v[-1]])
    lca = path_v[-1]
    return tuple(anc_u[: pos[lca] + 1] + path_v[-2::-1])


def canonical_form(g: SignedGraph) -> tuple[SignedGraph, SwitchingFunction]:
    """Switch so that every edge of the canonical BFS forest is positive."""
    theta, _ = _tree_theta(g)
    sw = SwitchingFunction(tuple(theta))
    return apply_switching(g, sw), sw


def switching_equivalent(g1: SignedGraph, g2: SignedGraph) -> bool:
    if g1.n != g2.n or g1.underlying != g2.underlying:
        return False
    return canonical_form(g1)[0] == canonical_form(g2)[0]


def induced(g: SignedGraph, U: Iterable[int]) -> SignedGraph:
    """Induced signed subgraph on ``U``, relabelled order-preservingly to 0..|U|-1."""
    U = sorted(set(U))
    _check_vertices(g, U)
    idx = {v: i for i, v in enumerate(U)}
    return SignedGraph(
        len(U),
        tuple((idx[u], idx[v], s) for u, v, s in g.edges if u in idx and v in idx),
    )


def delete_edges(g: SignedGraph, S: Iterable[Edge]) -> SignedGraph:
    drop = set()
    for u, v in S:
        key = _norm(u, v)
        if key not in g.signs:
            raise MissingEdgeError(f"{key} is not an edge")
        drop.add(key)
    return SignedGraph(g.n, tuple(e for e in g.edges if (e[0], e[1]) not in drop))


def delete_vertices(g: SignedGraph, U: Iterable[int]) -> SignedGraph:
    U = set(U)
    return induced(g, [v for v in range(g.n) if v not in U])


def insert_edge(g: SignedGraph, u: int, v: int, sign: int) -> SignedGraph:
    if g.has_edge(u, v):
        raise DuplicateEdgeError(f"{_norm(u, v)} is already an edge")
    return from_edge_list(g.n, list(g.edges) + [(u, v, sign)])


def degree_sequence(g: SignedGraph) -> tuple[int, ...]:
    return tuple(sorted((len(a) for a in g.adj), reverse=True))


def neighborhood(g: SignedGraph, v: int, U: Iterable[int] | None = None) -> tuple[frozenset[int], int]:
    """``(N_U(v), d_U(v))``; ``U`` defaults to the whole vertex set."""
    _check_vertices(g, [v])
    nb = g.adj_sets[v]
    if U is not None:
        U = frozenset(U)
        _check_vertices(g, U)
        nb = nb & U
    return nb, len(nb)


def relabel(g: SignedGraph, perm: Mapping[int, int] | list[int]) -> SignedGraph:
    """Rename vertex ``v`` to ``perm[v]``."""
    return from_edge_list(g.n, [(perm[u], perm[v], s) for u, v, s in g.edges])


# --- .sgr text format -----------------------------------------------------


def dumps(g: SignedGraph) -> str:
    lines = [f"n {g.n}"]
    lines += [f"e {u} {v} {'+' if s > 0 else '-'}" for u, v, s in g.edges]
    return "\n".join(lines) + "\n"


def loads(text: str) -> SignedGraph:
    n: int | None = None
    edges: list[tuple[int, int, int]] = []
    seen: dict[Edge, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = []
        pos = 0
        for tok in line.split():
            col = line.index(tok, pos)
            pos = col + len(tok)
            tokens.append((tok, col + 1))
        head, hcol = tokens[0]
        if n is None:
            if head != "n":
                raise SgrParseError(lineno, hcol, "expected 'n <count>' header")
            if len(tokens) != 2:
                raise SgrParseError(lineno, hcol, "header takes exactly one integer")
            n = _parse_int(tokens[1], lineno)
            if n < 0:
                raise SgrParseError(lineno, tokens[1][1], "vertex count must be non-negative")
            continue
        if head == "n":
            raise SgrParseError(lineno, hcol, "duplicate 'n' header")
        if head != "e":
            raise SgrParseError(lineno, hcol, f"unknown directive {head!r}")
        if len(tokens) != 4:
            raise SgrParseError(lineno, hcol, "edge line must be 'e <u> <v> <+|->'")
        u = _parse_int(tokens[1], lineno)
        v = _parse_int(tokens[2], lineno)
        stok, scol = tokens[3]
        if stok not in ("+", "-"):
            raise SgrParseError(lineno, scol, f"sign must be '+' or '-', got {stok!r}")
        for val, (_, col) in ((u, tokens[1]), (v, tokens[2])):
            if not 0 <= val < n:
                raise SgrParseError(lineno, col, f"vertex {val} outside 0..{n - 1}")
        if u == v:
            raise SgrParseError(lineno, tokens[1][1], f"self-loop at vertex {u}")
        key = _norm(u, v)
        if key in seen:
            raise SgrParseError(lineno, tokens[1][1], f"duplicate pair {key} (first on line {seen[key]})")
        seen[key] = lineno
        edges.append((u, v, 1 if stok == "+" else -1))
    if n is None:
        raise SgrParseError(1, 1, "missing 'n <count>' header")
    return from_edge_list(n, edges)


def _parse_int(tok: tuple[str, int], lineno: int) -> int:
    text, col = tok
    try:
        return int(text)
    except ValueError:
        raise SgrParseError(lineno, col, f"expected an integer, got {text!r}") from None


def load(path) -> SignedGraph:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(g: SignedGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(g))
