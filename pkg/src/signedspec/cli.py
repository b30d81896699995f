"""Command-line entry point: ``signedspec {analyze,spectrum,gen,verify,classes}``.

Exit codes: 0 when nothing was violated, 1 when a scan emitted a violation,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

from . import atlas
from .bounds import VIOLATION, fmt_float, normalize_theorem_id, run_checker
from .invariants import TooLargeError, balanced_cliques, frustration_index, motzkin_straus_value, odd_girth, triangle_counts
from .sgcore import GraphError, SignedGraph, dumps, is_balanced, loads
from .spectra import adjacency_spectrum, laplacian_spectrum, spectral_radius

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
SLOW_N = 7


class UsageError(Exception):
    pass


def _read_graph(path: str) -> SignedGraph:
    try:
        if path == "-":
            return loads(sys.stdin.read())
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except GraphError as exc:
        raise UsageError(f"{path}:{exc}") from None


def _num(x: float) -> str:
    """12 significant digits, independent of locale."""
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return f"{x:.12g}"


def analyze_record(g: SignedGraph, seed: int = 0) -> dict:
    pos, neg = triangle_counts(g)
    try:
        eps = frustration_index(g)[0]
    except TooLargeError:
        eps = None
    rec = {
        "n": g.n,
        "m": g.m,
        "positive_edges": len(g.positive_edges),
        "negative_edges": len(g.negative_edges),
        "balanced": is_balanced(g).balanced,
        "frustration_index": eps,
        "omega_b": balanced_cliques(g).omega_b,
        "balanced_triangles": pos,
        "unbalanced_triangles": neg,
        "odd_girth": None if math.isinf(odd_girth(g)) else int(odd_girth(g)),
    }
    if g.n:
        A = adjacency_spectrum(g).values
        rec.update(
            lambda_1=fmt_float(float(A[0])),
            lambda_n=fmt_float(float(A[-1])),
            spectral_radius=fmt_float(spectral_radius(g)),
            mu_1=fmt_float(float(laplacian_spectrum(g).values[0])),
            motzkin_straus=fmt_float(motzkin_straus_value(g, seed=seed)[0]),
        )
    return rec


def cmd_analyze(args) -> int:
    g = _read_graph(args.file)
    rec = analyze_record(g, seed=args.seed)
    if args.json:
        print(json.dumps(rec, separators=(", ", ": ")))
        return EXIT_OK
    labels = {
        "n": "n",
        "m": "m",
        "positive_edges": "|E+|",
        "negative_edges": "|E-|",
        "balanced": "balanced",
        "frustration_index": "frustration index",
        "omega_b": "balanced clique number",
        "balanced_triangles": "balanced triangles",
        "unbalanced_triangles": "unbalanced triangles",
        "odd_girth": "odd girth",
        "lambda_1": "lambda_1",
        "lambda_n": "lambda_n",
        "spectral_radius": "spectral radius",
        "mu_1": "mu_1",
        "motzkin_straus": "L1-sphere max of x'Ax",
    }
    for key, label in labels.items():
        if key not in rec:
            continue
        v = rec[key]
        if isinstance(v, bool):
            text = "yes" if v else "no"
        elif v is None:
            text = "inf" if key == "odd_girth" else "n/a"
        elif isinstance(v, float):
            text = _num(v)
        else:
            text = str(v)
        print(f"{label}: {text}")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    g = _read_graph(args.file)
    if g.n == 0:
        raise UsageError("graph has no vertices")
    print("adjacency: " + " ".join(_num(float(x)) for x in adjacency_spectrum(g).values))
    print("laplacian: " + " ".join(_num(float(x)) for x in laplacian_spectrum(g).values))
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        g = atlas.generate(args.family, *args.params)
    except (ValueError, GraphError) as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(dumps(g))
    return EXIT_OK


def cmd_classes(args) -> int:
    g = _read_graph(args.file)
    reps = list(atlas.enumerate_switching_classes(g))
    print(f"classes: {len(reps)}")
    if args.list:
        for rep in reps:
            print()
            sys.stdout.write(dumps(rep))
    return EXIT_OK


def _progress(n: int, done: int, total: int) -> None:
    if done == total or done % 50 == 0:
        print(f"progress: n={n} underlying {done}/{total}", file=sys.stderr, flush=True)


def cmd_verify(args) -> int:
    try:
        tid = normalize_theorem_id(args.checker)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    filters = [f for f in atlas.FILTERS if getattr(args, f)]
    if args.graph is not None:
        g = _read_graph(args.graph)
        reports = run_checker(tid, g)
        for rep in reports:
            print(rep.to_json())
        return EXIT_VIOLATION if any(r.verdict == VIOLATION for r in reports) else EXIT_OK
    if args.nmax is None:
        raise UsageError("verify needs --nmax or --graph")
    if not 1 <= args.nmax <= atlas.ENUMERATION_MAX_N:
        raise UsageError(f"--nmax must lie in 1..{atlas.ENUMERATION_MAX_N}")
    if args.nmax >= SLOW_N and not args.allow_slow:
        raise UsageError(f"--nmax {args.nmax} scans about 2e5 graphs; pass --allow-slow to run it")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    progress = _progress if (args.progress or args.nmax >= SLOW_N) else None
    summary = atlas.ScanSummary(tid, args.nmax, tuple(filters))
    last = None
    for rep in atlas.scan_iter(tid, args.nmax, filters, jobs=args.jobs, progress=progress):
        if rep.graph is not last:
            summary.graphs += 1
            last = rep.graph
        summary.counts[rep.verdict] += 1
        if rep.verdict != "holds" or args.all:
            print(rep.to_json())
    print(json.dumps(summary.to_record(), separators=(", ", ": ")))
    return EXIT_VIOLATION if summary.violations else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="signedspec", description="Spectral and combinatorial toolkit for small signed graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="summary invariants of a .sgr graph")
    a.add_argument("file", help="path to a .sgr file, or - for stdin")
    a.add_argument("--json", action="store_true", help="emit one JSON record")
    a.add_argument("--seed", type=int, default=0, help="seed for the random restarts of the L1-sphere search")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("spectrum", help="adjacency and Laplacian eigenvalues")
    s.add_argument("file")
    s.set_defaults(func=cmd_spectrum)

    gn = sub.add_parser("gen", help="write a named family member as .sgr")
    gn.add_argument("family", help=", ".join(sorted(atlas.FAMILIES)))
    gn.add_argument("params", nargs="*", type=int)
    gn.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="check an inequality over the small-graph census")
    v.add_argument("checker", help="checker id, e.g. ad1, lap-degree-sums, lp1")
    v.add_argument("--nmax", type=int, help="largest order to enumerate")
    v.add_argument("--graph", help="check a single .sgr file instead of the census")
    for f in atlas.FILTERS:
        v.add_argument("--" + f.replace("_", "-"), dest=f, action="store_true")
    v.add_argument("--jobs", type=int, default=1, help="worker processes; output does not depend on it")
    v.add_argument("--allow-slow", action="store_true", help=f"permit --nmax {SLOW_N}")
    v.add_argument("--progress", action="store_true", help="report progress on stderr")
    v.add_argument("--all", action="store_true", help="also emit records whose verdict is holds")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classes", help="switching classes on the underlying graph of a .sgr file")
    c.add_argument("file")
    c.add_argument("--list", action="store_true", help="print one representative per class")
    c.set_defaults(func=cmd_classes)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"signedspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
