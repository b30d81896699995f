"""Hypothesis strategies for signed graphs."""

from hypothesis import strategies as st

from signedspec.sgcore import SignedGraph, from_edge_list


@st.composite
def signed_graphs(draw, min_n: int = 1, max_n: int = 7, connected: bool = False) -> SignedGraph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = []
    if connected:
        # random spanning tree first
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            edges.append((u, v, draw(st.sampled_from((1, -1)))))
        present = {(u, v) for u, v, _ in edges}
        pairs = [p for p in pairs if p not in present]
    for u, v in pairs:
        s = draw(st.sampled_from((0, 1, -1)))
        if s:
            edges.append((u, v, s))
    return from_edge_list(n, edges)

