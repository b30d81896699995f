"""Inequality checkers: each evaluates one eigenvalue inequality on one graph.

Every checker returns a :class:`TheoremReport`. ``lhs`` and ``rhs`` are the
two sides as the inequality is usually written; ``margin`` is the slack in
the direction of the inequality (``rhs - lhs`` for upper bounds, ``lhs - rhs``
for lower bounds), so a negative margin always means failure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable

from .invariants import (
    balanced_cliques,
    frustration_index,
    is_bipartite_underlying,
    odd_girth,
    triangle_counts,
    unsigned_edge_cliques,
)
from .sgcore import (
    SignedGraph,
    canonical_form,
    degree_sequence,
    delete_edges,
    dumps,
    induced,
    is_balanced,
    switching_equivalent,
)
from .spectra import adjacency_spectrum, laplacian_spectrum, nonneg_eigvec_switch
from .tolerances import TAU_THM, TAU_TIE

HOLDS = "holds"
EQUALITY = "equality"
EXCEPTIONAL = "exceptional"
HYPOTHESIS_FAIL = "hypothesis_fail"
VIOLATION = "violation"
NEAR_TIE = "near_tie"
VERDICTS = (HOLDS, EQUALITY, EXCEPTIONAL, HYPOTHESIS_FAIL, VIOLATION, NEAR_TIE)

THEOREM_IDS = (
    "ad1",
    "ad2",
    "kan_lemma",
    "lap_degree_sums",
    "lp1",
    "grone",
    "balancing_deletion",
    "bound_comparison",
    "corollary_mu1",
    "corollary_mu1mu2",
)


@dataclass
class TheoremReport:
    theorem_id: str
    verdict: str
    lhs: float = math.nan
    rhs: float = math.nan
    margin: float = math.nan
    detail: dict[str, Any] = field(default_factory=dict)
    graph: SignedGraph | None = None

    def to_record(self) -> dict[str, Any]:
        return {
            "theorem_id": self.theorem_id,
            "graph": dumps(self.graph) if self.graph is not None else None,
            "verdict": self.verdict,
            "lhs": fmt_float(self.lhs),
            "rhs": fmt_float(self.rhs),
            "margin": fmt_float(self.margin),
            "detail": _jsonable(self.detail),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=False, separators=(", ", ": "))


def fmt_float(x: float) -> float | None:
    """Round to 12 significant digits; NaN and infinities become None."""
    if x is None or not math.isfinite(x):
        return None
    return float(f"{x:.12g}")


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in items]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float) or hasattr(obj, "__float__"):
        return fmt_float(float(obj))
    return str(obj)


def classify(margin: float, *, strict: bool = False, certified: bool = False) -> str:
    """Verdict for an inequality with the given slack.

    Strict inequalities cannot be certified in floating point, so small
    slacks go to near_tie. For non-strict ones a tie counts as equality only
    when the caller has an exact certificate.
    """
    if strict:
        if margin <= -TAU_THM:
            return VIOLATION
        return NEAR_TIE if margin < TAU_TIE else HOLDS
    if margin < -TAU_THM:
        return VIOLATION
    if abs(margin) < TAU_TIE:
        return EQUALITY if certified else NEAR_TIE
    return HOLDS


def worst_verdict(verdicts) -> str:
    verdicts = set(verdicts)
    for v in (VIOLATION, NEAR_TIE, EQUALITY, HOLDS):
        if v in verdicts:
            return v
    return HYPOTHESIS_FAIL


def _lam(g: SignedGraph):
    return adjacency_spectrum(g).values


def _mu(g: SignedGraph):
    return laplacian_spectrum(g).values


# --- largest adjacency eigenvalue ------------------------------------------


def principal_switch(g: SignedGraph) -> SignedGraph:
    """A switching of ``g`` whose lambda_1 has a non-negative eigenvector.

    Computed from the canonical form, so every member of a switching class
    gets the same graph.
    """
    return nonneg_eigvec_switch(canonical_form(g)[0])[0]


def ad1_rhs_squared(g: SignedGraph) -> Fraction:
    per_edge = balanced_cliques(g).per_edge
    gp = principal_switch(g)
    return 2 * sum((Fraction(per_edge[e] - 1, per_edge[e]) for e in gp.positive_edges), Fraction(0))


def is_complete_multipartite(g: SignedGraph) -> list[list[int]] | None:
    """Parts of the underlying graph minus isolated vertices, if complete multipartite."""
    verts = [v for v in range(g.n) if g.degree(v) > 0]
    parts: list[list[int]] = []
    for v in verts:
        for part in parts:
            if not g.has_edge(v, part[0]):
                part.append(v)
                break
        else:
            parts.append([v])
    for a, b in combinations(range(len(parts)), 2):
        if any(not g.has_edge(u, v) for u in parts[a] for v in parts[b]):
            return None
    for part in parts:
        if any(g.has_edge(u, v) for u, v in combinations(part, 2)):
            return None
    return parts


def ad1_equality_certificate(g: SignedGraph, omega_b: int) -> bool:
    if not is_balanced(g).balanced:
        return False
    parts = is_complete_multipartite(g)
    if parts is None or len(parts) != omega_b:
        return False
    return omega_b == 2 or len({len(p) for p in parts}) == 1


def bound_ad1(g: SignedGraph) -> TheoremReport:
    rep = balanced_cliques(g)
    if rep.omega_b < 2:
        return TheoremReport("ad1", HYPOTHESIS_FAIL, detail={"omega_b": rep.omega_b}, graph=g)
    rhs_sq = ad1_rhs_squared(g)
    lhs = float(_lam(g)[0])
    rhs = math.sqrt(rhs_sq)
    margin = rhs - lhs
    cert = ad1_equality_certificate(g, rep.omega_b)
    verdict = classify(margin, certified=cert)
    return TheoremReport(
        "ad1", verdict, lhs, rhs, margin,
        {"omega_b": rep.omega_b, "rhs_squared": rhs_sq, "certificate": cert},
        g,
    )


def bound_comparison(g: SignedGraph) -> TheoremReport:
    """Compare the balanced-clique bound with the frustration and edge-count bounds.

    All right-hand sides are square roots of rationals, so the chain is
    checked exactly on the squares.
    """
    rep = balanced_cliques(g)
    w = rep.omega_b
    if w < 2:
        return TheoremReport("bound_comparison", HYPOTHESIS_FAIL, detail={"omega_b": w}, graph=g)
    eps, _ = frustration_index(g)
    ad1_sq = ad1_rhs_squared(g)
    frus_sq = Fraction(2 * (g.m - eps) * (w - 1), w)
    edge_sq = Fraction(2 * g.m * (w - 1), w)
    detail: dict[str, Any] = {
        "omega_b": w,
        "frustration": eps,
        "rhs_ad1": math.sqrt(ad1_sq),
        "rhs_frustration": math.sqrt(frus_sq),
        "rhs_edges": math.sqrt(edge_sq),
    }
    ok = ad1_sq <= frus_sq <= edge_sq
    if is_balanced(g).balanced:
        c = unsigned_edge_cliques(g)
        ln_sq = 2 * sum((Fraction(k - 1, k) for k in c.values()), Fraction(0))
        detail["rhs_unsigned"] = math.sqrt(ln_sq)
        ok = ok and ln_sq == ad1_sq
    lhs, rhs = math.sqrt(ad1_sq), math.sqrt(frus_sq)
    margin = min(rhs - lhs, math.sqrt(edge_sq) - rhs)
    if not ok:
        verdict = VIOLATION
    elif ad1_sq == frus_sq:
        verdict = EQUALITY
    else:
        verdict = HOLDS
    return TheoremReport("bound_comparison", verdict, lhs, rhs, margin, detail, g)


def is_padded_c5(g: SignedGraph) -> bool:
    """Is ``g`` switching equivalent to an all-positive 5-cycle plus isolated vertices?"""
    if g.n < 5 or degree_sequence(g) != (2,) * 5 + (0,) * (g.n - 5):
        return False
    if odd_girth(g) != 5 or not is_balanced(g).balanced:
        return False
    return switching_equivalent(g, g.all_positive())


def check_ad2(g: SignedGraph) -> TheoremReport:
    """Balanced-triangle existence, reported as t+ >= 1."""
    if is_bipartite_underlying(g):
        return TheoremReport("ad2", HYPOTHESIS_FAIL, detail={"reason": "bipartite"}, graph=g)
    lam = _lam(g)
    l1, ln = float(lam[0]), float(lam[-1])
    threshold = math.sqrt(g.m - 1)
    detail: dict[str, Any] = {"lambda_1": l1, "lambda_n": ln, "sqrt_m_minus_1": threshold}
    if l1 < threshold - TAU_THM or l1 < abs(ln) - TAU_THM:
        detail["reason"] = "spectral hypothesis"
        return TheoremReport("ad2", HYPOTHESIS_FAIL, detail=detail, graph=g)
    tp, tn = triangle_counts(g)
    detail.update(t_plus=tp, t_minus=tn)
    if tp >= 1:
        verdict = HOLDS
    elif is_padded_c5(g):
        verdict = EXCEPTIONAL
    else:
        verdict = VIOLATION
    return TheoremReport("ad2", verdict, float(tp), 1.0, float(tp - 1), detail, g)


def check_kan_lemma(g: SignedGraph) -> TheoremReport:
    if g.n < 3:
        return TheoremReport("kan_lemma", HYPOTHESIS_FAIL, detail={"reason": "n < 3"}, graph=g)
    tp, _ = triangle_counts(g)
    lam = _lam(g)
    if tp > 0 or lam[0] < abs(lam[-1]) - TAU_THM:
        return TheoremReport("kan_lemma", HYPOTHESIS_FAIL, detail={"t_plus": tp}, graph=g)
    lhs = float(lam[0] ** 2 + lam[1] ** 2)
    margin = g.m - lhs
    return TheoremReport("kan_lemma", classify(margin), lhs, float(g.m), margin, {}, g)


def check_balancing_deletion(g: SignedGraph) -> TheoremReport:
    """Deleting the negative edges of the principal switching raises lambda_1 strictly."""
    if is_balanced(g).balanced:
        return TheoremReport("balancing_deletion", HYPOTHESIS_FAIL, detail={"reason": "balanced"}, graph=g)
    S = principal_switch(g).negative_edges
    h = delete_edges(g, S)
    lhs = float(_lam(g)[0])
    rhs = float(_lam(h)[0])
    margin = rhs - lhs
    detail = {"deleted": [list(e) for e in S], "remainder_balanced": is_balanced(h).balanced}
    return TheoremReport("balancing_deletion", classify(margin, strict=True), lhs, rhs, margin, detail, g)


# --- Laplacian sums ----------------------------------------------------------


def _aggregate(theorem_id: str, g: SignedGraph, rows: list[dict[str, Any]], key: str) -> TheoremReport:
    worst = min(rows, key=lambda r: r["margin"])
    verdict = worst_verdict(r["verdict"] for r in rows)
    detail = {"worst_" + key: worst[key], "checks": rows}
    return TheoremReport(theorem_id, verdict, worst["lhs"], worst["rhs"], worst["margin"], detail, g)


def check_laplacian_degree_sums(g: SignedGraph) -> TheoremReport:
    """Top-k Laplacian eigenvalues strictly exceed the top-k degrees, 1 <= k < n."""
    if g.n < 2 or not g.is_connected():
        return TheoremReport("lap_degree_sums", HYPOTHESIS_FAIL, detail={"reason": "needs connected, n >= 2"}, graph=g)
    mu = _mu(g)
    deg = degree_sequence(g)
    rows = []
    mu_sum = 0.0
    d_sum = 0
    for k in range(1, g.n):
        mu_sum += float(mu[k - 1])
        d_sum += deg[k - 1]
        margin = mu_sum - d_sum
        rows.append({"k": k, "lhs": mu_sum, "rhs": float(d_sum), "margin": margin,
                     "verdict": classify(margin, strict=True)})
    return _aggregate("lap_degree_sums", g, rows, "k")


def check_lp1(g: SignedGraph, R) -> TheoremReport:
    """Sum of the |R| largest Laplacian eigenvalues against the degrees on R."""
    R = tuple(sorted(set(R)))
    for v in R:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} outside 0..{g.n - 1}")
    reason = _lp1_hypothesis(g, R)
    if reason:
        return TheoremReport("lp1", HYPOTHESIS_FAIL, detail={"R": R, "reason": reason}, graph=g)
    return _lp1_report(g, R, _mu(g))


def _lp1_hypothesis(g: SignedGraph, R: tuple[int, ...]) -> str | None:
    if g.n <= 2 or not g.is_connected():
        return "needs connected, n > 2"
    if not R:
        return "R is empty"
    sub = induced(g, R)
    matched = [R[u] for e in sub.underlying for u in e]
    if len(matched) != len(set(matched)):
        return "induced edges are not a matching"
    if any(g.degree(u) < 2 for u in matched):
        return "matched vertex of degree 1"
    return None


def _lp1_report(g: SignedGraph, R: tuple[int, ...], mu) -> TheoremReport:
    k = len(R)
    r = induced(g, R).m
    lhs = float(sum(mu[:k]))
    rhs = float(sum(g.degree(u) for u in R) + k - r)
    margin = lhs - rhs
    return TheoremReport("lp1", classify(margin), lhs, rhs, margin, {"R": R, "k": k, "r": r}, g)


def scan_lp1(g: SignedGraph) -> TheoremReport:
    """Run :func:`check_lp1` over every admissible R with 1 <= |R| <= n - 1."""
    if g.n <= 2 or not g.is_connected():
        return TheoremReport("lp1", HYPOTHESIS_FAIL, detail={"reason": "needs connected, n > 2"}, graph=g)
    mu = _mu(g)
    rows = []
    for size in range(1, g.n):
        for R in combinations(range(g.n), size):
            if _lp1_hypothesis(g, R) is None:
                rep = _lp1_report(g, R, mu)
                rows.append({"R": R, "lhs": rep.lhs, "rhs": rep.rhs, "margin": rep.margin, "verdict": rep.verdict})
    if not rows:
        return TheoremReport("lp1", HYPOTHESIS_FAIL, detail={"reason": "no admissible R"}, graph=g)
    rep = _aggregate("lp1", g, rows, "R")
    counts = {v: sum(1 for r in rows if r["verdict"] == v) for v in VERDICTS}
    rep.detail = {"worst_R": rep.detail["worst_R"], "checked": len(rows),
                  "counts": {k: c for k, c in counts.items() if c}}
    return rep


def check_corollary_mu1(g: SignedGraph) -> TheoremReport:
    if g.m == 0:
        return TheoremReport("corollary_mu1", HYPOTHESIS_FAIL, detail={"reason": "no edges"}, graph=g)
    mu1 = float(_mu(g)[0])
    d1 = degree_sequence(g)[0]
    margin = mu1 - (d1 + 1)
    # maximum degree 1: disjoint K2's, where mu_1 = 2 exactly
    verdict = classify(margin, certified=(d1 == 1))
    return TheoremReport("corollary_mu1", verdict, mu1, float(d1 + 1), margin, {"d1": d1}, g)


def check_corollary_mu1mu2(g: SignedGraph) -> TheoremReport:
    if g.n <= 2 or not g.is_connected():
        return TheoremReport("corollary_mu1mu2", HYPOTHESIS_FAIL, detail={"reason": "needs connected, n > 2"}, graph=g)
    mu = _mu(g)
    deg = degree_sequence(g)
    d1, d2 = deg[0], deg[1]
    nonadjacent = any(
        {g.degree(u), g.degree(v)} == {d1, d2} and not g.has_edge(u, v)
        for u, v in combinations(range(g.n), 2)
    )
    bound = d1 + d2 + (2 if nonadjacent else 1)
    lhs = float(mu[0] + mu[1])
    margin = lhs - bound
    return TheoremReport("corollary_mu1mu2", classify(margin), lhs, float(bound), margin,
                         {"d1": d1, "d2": d2, "nonadjacent_variant": nonadjacent}, g)


def check_corollaries(g: SignedGraph) -> tuple[TheoremReport, TheoremReport]:
    return check_corollary_mu1(g), check_corollary_mu1mu2(g)


def check_grone(g: SignedGraph) -> TheoremReport:
    """Component-count lower bound for Laplacian sums on connected balanced graphs."""
    if not g.is_connected() or not is_balanced(g).balanced:
        return TheoremReport("grone", HYPOTHESIS_FAIL, detail={"reason": "needs connected and balanced"}, graph=g)
    if g.n < 2:
        return TheoremReport("grone", HYPOTHESIS_FAIL, detail={"reason": "n < 2"}, graph=g)
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    mu = _mu(g)
    rows = []
    mu_sum = 0.0
    d_sum = 0
    for k in range(1, g.n):
        mu_sum += float(mu[k - 1])
        d_sum += g.degree(order[k - 1])
        t_k = len(induced(g, order[:k]).components)
        margin = mu_sum - (t_k + d_sum)
        rows.append({"k": k, "t_k": t_k, "lhs": mu_sum, "rhs": float(t_k + d_sum), "margin": margin,
                     "verdict": classify(margin)})
    rep = _aggregate("grone", g, rows, "k")
    rep.detail["order"] = order
    return rep


CHECKERS: dict[str, Callable[[SignedGraph], list[TheoremReport]]] = {
    "ad1": lambda g: [bound_ad1(g)],
    "ad2": lambda g: [check_ad2(g)],
    "kan_lemma": lambda g: [check_kan_lemma(g)],
    "lap_degree_sums": lambda g: [check_laplacian_degree_sums(g)],
    "lp1": lambda g: [scan_lp1(g)],
    "grone": lambda g: [check_grone(g)],
    "balancing_deletion": lambda g: [check_balancing_deletion(g)],
    "bound_comparison": lambda g: [bound_comparison(g)],
    "corollaries": lambda g: list(check_corollaries(g)),
    "corollary_mu1": lambda g: [check_corollary_mu1(g)],
    "corollary_mu1mu2": lambda g: [check_corollary_mu1mu2(g)],
}


def normalize_theorem_id(name: str) -> str:
    key = name.strip().lower().replace("-", "_")
    if key not in CHECKERS:
        raise KeyError(f"unknown theorem id {name!r}; expected one of {', '.join(sorted(CHECKERS))}")
    return key


def run_checker(theorem_id: str, g: SignedGraph) -> list[TheoremReport]:
    return CHECKERS[normalize_theorem_id(theorem_id)](g)
