"""Acceptance gate: six criteria, one pass/fail line each.

Run under pytest (lines go to the terminal report) or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import io
import math
import random
import sys
import time
from contextlib import redirect_stdout
from itertools import combinations
from pathlib import Path

import networkx as nx
import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import brute_is_balanced, brute_triangles  # noqa: E402
from signedspec import atlas  # noqa: E402
from signedspec.bounds import CHECKERS, EQUALITY, EXCEPTIONAL, VIOLATION, check_ad2, run_checker  # noqa: E402
from signedspec.cli import main as cli_main  # noqa: E402
from signedspec.invariants import (  # noqa: E402
    balanced_cliques,
    frustration_index,
    is_bipartite_underlying,
    motzkin_straus_value,
    triangle_counts,
    weighted_matrix,
)
from signedspec.sgcore import (  # noqa: E402
    SignedGraph,
    delete_vertices,
    from_edge_list,
    insert_edge,
    switch,
)
from signedspec.spectra import (  # noqa: E402
    Orientation,
    adjacency_matrix,
    adjacency_spectrum,
    cycle_spectrum,
    incidence_matrix,
    laplacian_matrix,
    laplacian_spectrum,
)
from signedspec.tolerances import TAU_DET, TAU_RES  # noqa: E402

CASES = 1000


def _report(request, line: str) -> None:
    reporter = request.config.pluginmanager.get_plugin("terminalreporter") if request else None
    if reporter is not None:
        reporter.write_line(line)
    else:
        print(line)


def _line(num: int, ok: bool, text: str) -> str:
    return f"criterion {num}: {'PASS' if ok else 'FAIL'}  {text}"


# --- 1 named values --------------------------------------------------------------


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def named_value_checks() -> list[tuple[str, bool, str]]:
    out = []

    def fig4():
        return adjacency_spectrum(atlas.generate("fig4_gamma2")).values[0]

    lam1, dt = _timed(fig4)
    out.append(("fig4_gamma2 lambda_1 ~ 2.391", abs(lam1 - 2.391) <= 1e-3 and dt < 1, f"got {lam1:.6f}"))

    def h2():
        return [adjacency_spectrum(atlas.generate("h2_variant", i)).values[1] for i in (1, 2)]

    (a, b), dt = _timed(h2)
    ok = abs(a - 1.629) <= 1e-3 and abs(b - 1.732) <= 1e-3 and dt < 1
    out.append(("h2 variants lambda_2 ~ 1.629, 1.732", ok, f"got {a:.6f}, {b:.6f}"))

    def k4():
        g = atlas.generate("k4_one_negative")
        vals = adjacency_spectrum(g).values
        return vals[0], vals[-1], balanced_cliques(g).omega_b, frustration_index(g)[0], triangle_counts(g)

    (l1, l4, omega, eps, tri), dt = _timed(k4)
    r5 = math.sqrt(5)
    ok = abs(l1 - r5) <= 1e-9 and abs(abs(l4) - r5) <= 1e-9 and omega == 3 and eps == 1 and tri == (2, 2) and dt < 1
    out.append(("k4_one_negative values", ok, f"lambda_1={l1:.12g} lambda_4={l4:.12g} omega_b={omega} eps={eps} t={tri}"))

    def cycles():
        worst = 0.0
        for n in range(3, 13):
            for r in range(n + 1):
                g = atlas.generate("signed_cycle", n, r)
                worst = max(worst, float(np.max(np.abs(cycle_spectrum(n, r).values - adjacency_spectrum(g).values))))
        return worst

    worst, dt = _timed(cycles)
    out.append(("cycle formula vs eigensolver, 3 <= n <= 12", worst <= 1e-9 and dt < 1, f"max error {worst:.2e}"))
    return out


# --- 2 exhaustive scans ------------------------------------------------------------

SCAN_PLAN = [
    ("ad1", ()),
    ("ad2", ()),
    ("kan_lemma", ()),
    ("lap_degree_sums", ("connected_only",)),
    ("lp1", ()),
    ("grone", ("connected_only",)),
    ("balancing_deletion", ("unbalanced_only",)),
    ("corollaries", ()),
    ("bound_comparison", ()),
]


def scan_violations() -> dict[str, int]:
    return {tid: atlas.scan(tid, 6, filters).violations for tid, filters in SCAN_PLAN}


# --- 3 equality and exceptional censuses --------------------------------------------


def _nx(g: SignedGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.underlying)
    return G


def expected_ad1_equality(g: SignedGraph) -> bool:
    """Balanced, and non-isolated part is complete bipartite or complete regular multipartite."""
    if g.m == 0 or not brute_is_balanced(g):
        return False
    G = _nx(g)
    G.remove_nodes_from([v for v in list(G) if G.degree(v) == 0])
    parts = list(nx.connected_components(nx.complement(G)))
    if any(nx.complement(G).subgraph(p).number_of_edges() != len(p) * (len(p) - 1) // 2 for p in parts):
        return False  # complement is not a disjoint union of cliques
    return len(parts) == 2 or len({len(p) for p in parts}) == 1


def expected_ad2_exceptional(g: SignedGraph) -> bool:
    G = _nx(g)
    core = [v for v in G if G.degree(v) > 0]
    return (
        len(core) == 5
        and nx.is_isomorphic(G.subgraph(core), nx.cycle_graph(5))
        and brute_is_balanced(g)
    )


def equality_census() -> tuple[bool, str]:
    ad1_mismatch = 0
    ad1_count = 0
    exc_found = []
    for g in atlas.iter_graphs(6):
        eq = run_checker("ad1", g)[0].verdict == EQUALITY
        ad1_count += eq
        ad1_mismatch += eq != expected_ad1_equality(g)
        exc = check_ad2(g).verdict == EXCEPTIONAL
        if exc != expected_ad2_exceptional(g):
            return False, f"ad2 exceptional mismatch on {g!r}"
        if exc:
            exc_found.append(g)
    # n = 7: only t+ = 0 on a non-bipartite underlying graph can be exceptional
    for u in atlas.enumerate_underlying(7):
        if is_bipartite_underlying(u):
            continue
        for g in atlas.enumerate_switching_classes(u):
            expected = expected_ad2_exceptional(g)
            if triangle_counts(g)[0] and not expected:
                continue
            exc = check_ad2(g).verdict == EXCEPTIONAL
            if exc != expected:
                return False, f"ad2 exceptional mismatch on {g!r}"
            if exc:
                exc_found.append(g)
    ok = ad1_mismatch == 0 and ad1_count > 0 and [g.n for g in exc_found] == [5, 6, 7]
    return ok, f"ad1 equality on {ad1_count} graphs, {ad1_mismatch} mismatches; ad2 exceptional at n = {[g.n for g in exc_found]}"


# --- 4 variational suite ------------------------------------------------------------


def _random_l1(rng: np.random.Generator, n: int, count: int) -> np.ndarray:
    k = rng.integers(1, n + 1, size=count)
    ranks = rng.permuted(np.tile(np.arange(n), (count, 1)), axis=1)
    X = rng.dirichlet(np.ones(n), size=count) * (ranks < k[:, None])
    X *= rng.choice((-1.0, 1.0), size=(count, n))
    return X / np.abs(X).sum(axis=1, keepdims=True)


def variational_suite() -> tuple[bool, str]:
    rng = np.random.default_rng(2024)
    worst_ms = 0.0
    worst_form = -math.inf
    graphs = 0
    for g in atlas.iter_graphs(5):
        graphs += 1
        omega = balanced_cliques(g).omega_b
        value, _ = motzkin_straus_value(g, restarts=50)
        worst_ms = max(worst_ms, abs(value - (1 - 1 / omega)))
        if g.m:
            X = _random_l1(rng, g.n, 10_000)
            forms = np.einsum("ij,jk,ik->i", X, weighted_matrix(g), X)
            worst_form = max(worst_form, float(forms.max()))
    ok = worst_ms <= 1e-6 and worst_form <= 1 + 1e-6
    return ok, f"{graphs} graphs; max |MS - (1 - 1/omega_b)| = {worst_ms:.2e}; max weighted form = {worst_form:.9f}"


# --- 5 structural invariants ---------------------------------------------------------


def _random_graph(rnd: random.Random, min_n=1, max_n=8, connected=False) -> SignedGraph:
    n = rnd.randint(min_n, max_n)
    edges = {}
    if connected:
        for v in range(1, n):
            edges[(rnd.randrange(v), v)] = rnd.choice((1, -1))
    p = rnd.random()
    for u, v in combinations(range(n), 2):
        if (u, v) not in edges and rnd.random() < p:
            edges[(u, v)] = rnd.choice((1, -1))
    return from_edge_list(n, [(u, v, s) for (u, v), s in edges.items()])


def structural_suite() -> tuple[bool, str]:
    rnd = random.Random(7)
    failures = []

    def subset(n):
        return {v for v in range(n) if rnd.random() < 0.5}

    for _ in range(CASES):
        g = _random_graph(rnd)
        S, T = subset(g.n), subset(g.n)
        if switch(switch(g, S), S) != g or switch(switch(g, S), T) != switch(g, S ^ T):
            failures.append("switching algebra")
        h = switch(g, S)
        if not (
            np.allclose(adjacency_spectrum(g).values, adjacency_spectrum(h).values, atol=TAU_RES)
            and np.allclose(laplacian_spectrum(g).values, laplacian_spectrum(h).values, atol=TAU_RES)
        ):
            failures.append("spectral switching invariance")
        P = incidence_matrix(g, Orientation.random(g, rnd))
        if not (P @ P.T == laplacian_matrix(g)).all():
            failures.append("P P^T = L")
        A = adjacency_matrix(g)
        tp, tn = brute_triangles(g)
        if int(np.trace(A @ A @ A)) != 6 * (tp - tn):
            failures.append("trace A^3")

    for _ in range(CASES):
        g = _random_graph(rnd, connected=True)
        if (laplacian_spectrum(g).values[-1] < TAU_DET) != brute_is_balanced(g):
            failures.append("det L balance criterion")

    for _ in range(CASES):
        g = _random_graph(rnd, min_n=2)
        v = rnd.randrange(g.n)
        lam = adjacency_spectrum(g).values
        mu = adjacency_spectrum(delete_vertices(g, {v})).values
        if any(not (lam[i] + TAU_RES >= mu[i] >= lam[i + 1] - TAU_RES) for i in range(g.n - 1)):
            failures.append("vertex deletion interlacing")
        missing = [(a, b) for a, b in combinations(range(g.n), 2) if not g.has_edge(a, b)]
        if missing:
            a, b = rnd.choice(missing)
            old = laplacian_spectrum(g).values
            new = laplacian_spectrum(insert_edge(g, a, b, rnd.choice((1, -1)))).values
            ok = new[0] + TAU_RES >= old[0] and all(
                old[i - 1] + TAU_RES >= new[i] >= old[i] - TAU_RES for i in range(1, g.n)
            )
            if not ok:
                failures.append("edge insertion interlacing")

    for _ in range(CASES):
        g = _random_graph(rnd, max_n=7)
        reps = list(atlas.enumerate_switching_classes(g))
        if len(reps) != 2 ** (g.m - g.n + len(g.components)):
            failures.append("switching class count")
    kinds = sorted(set(failures))
    return not failures, f"{CASES} cases per property; failures: {kinds or 'none'}"


# --- 6 determinism ---------------------------------------------------------------------


def _cli_stdout(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(argv)
    return code, buf.getvalue()


def determinism() -> tuple[bool, str]:
    differing = []
    for tid in sorted(CHECKERS):
        outs = [_cli_stdout(["verify", tid, "--nmax", "5", "--all", "--jobs", str(j)]) for j in (1, 8)]
        if outs[0] != outs[1]:
            differing.append(tid)
    return not differing, f"{len(CHECKERS)} checkers, --jobs 1 vs 8; differing: {differing or 'none'}"


# --- pytest entry points -----------------------------------------------------------------


@pytest.mark.parametrize("idx", range(4), ids=["fig4_gamma2", "h2_variants", "k4_one_negative", "cycle_spectra"])
def test_criterion_1_named_values(request, idx):
    name, ok, text = named_value_checks()[idx]
    _report(request, _line(1, ok, f"[{name}] {text}"))
    assert ok, f"{name}: {text}"


def test_criterion_2_no_violations_at_six(request):
    counts = scan_violations()
    ok = not any(counts.values())
    _report(request, _line(2, ok, f"violations per checker at n <= 6: {counts}"))
    assert ok


def test_criterion_3_equality_censuses(request):
    ok, text = equality_census()
    _report(request, _line(3, ok, text))
    assert ok, text


def test_criterion_4_variational(request):
    ok, text = variational_suite()
    _report(request, _line(4, ok, text))
    assert ok, text


def test_criterion_5_structural(request):
    ok, text = structural_suite()
    _report(request, _line(5, ok, text))
    assert ok, text


def test_criterion_6_determinism(request):
    ok, text = determinism()
    _report(request, _line(6, ok, text))
    assert ok, text


def main() -> int:
    results = []
    named = named_value_checks()
    ok1 = all(ok for _, ok, _ in named)
    print(_line(1, ok1, "; ".join(f"[{n}] {'ok' if ok else 'FAILED'} {t}" for n, ok, t in named)))
    results.append(ok1)
    counts = scan_violations()
    results.append(not any(counts.values()))
    print(_line(2, results[-1], f"violations per checker at n <= 6: {counts}"))
    for num, fn in ((3, equality_census), (4, variational_suite), (5, structural_suite), (6, determinism)):
        ok, text = fn()
        results.append(ok)
        print(_line(num, ok, text))
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
