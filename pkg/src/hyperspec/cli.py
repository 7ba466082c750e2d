"""Command-line front end: solve, rank, lagrangian, gen and selftest subcommands.

All numeric work lives in the library modules; this file only parses flags,
loads graphs, and formats text/JSON/CSV output.  JSON output contains no
timing information, so identical inputs and seeds produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__
from .families import (
    beta_star_value,
    brute_force_radius,
    gen_beta_star,
    gen_complete,
    gen_loose_path,
    loose_path_value,
)
from .hypergraph import Hypergraph, ParseError, parse_edge_list, serialize_edge_list, validate
from .ranking import rank_vertices
from .solver import SolverConfig, SolverError, lagrangian_approx, solve_multistart
from .tensor_ops import objective, objective_grad


def parse_p(text: str) -> float:
    """Accept a decimal ("1.5") or a fraction literal ("4/3")."""
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"cannot parse p value {text!r}") from None


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("HYPERSPEC_THREADS", "1")))
    except ValueError:
        return 1


def _load_graph(path: str) -> Hypergraph:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            g = parse_edge_list(handle)
    except OSError as exc:
        raise SystemExit(f"error: cannot read {path}: {exc}")
    except ParseError as exc:
        raise SystemExit(f"error: {path}: {exc}")
    problems = validate(g)
    if problems:
        raise SystemExit(f"error: {path}: " + "; ".join(problems))
    return g


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _make_config(args, default_runs: int) -> SolverConfig:
    return SolverConfig(
        p=args.p,
        grad_tol=args.tol,
        max_iter=args.max_iter,
        runs=args.runs if args.runs is not None else default_runs,
        seed=args.seed,
        deterministic=args.deterministic,
    )


def cmd_solve(args) -> int:
    g = _load_graph(args.graph)
    cfg = _make_config(args, default_runs=100)
    t0 = time.perf_counter()
    try:
        res = solve_multistart(g, cfg, threads=args.threads)
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    wall = time.perf_counter() - t0
    total_iters = sum(r.iterations for r in res.run_summaries)

    payload = {
        "lambda": res.best.lam,
        "p": cfg.p,
        "r": g.r,
        "n": g.n,
        "m": g.m,
        "runs": cfg.runs,
        "best_run": res.best_run,
        "converged": res.best.converged,
    }
    if args.emit_weighting:
        payload["weighting"] = [float(v) for v in res.best.weighting]

    if args.format == "json":
        _emit(json.dumps(payload) + "\n", args.out)
    else:
        lines = [
            f"lambda      {res.best.lam!r}",
            f"p           {cfg.p:g}",
            f"graph       r={g.r} n={g.n} m={g.m}",
            f"runs        {cfg.runs} (best run {res.best_run}, "
            f"{'converged' if res.best.converged else res.best.stop_reason})",
            f"iterations  {total_iters} total",
            f"time        {wall:.3f} s",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_rank(args) -> int:
    g = _load_graph(args.graph)
    cfg = _make_config(args, default_runs=10)
    top = args.top if args.top is not None else min(10, g.n)
    if top > g.n:
        print(f"error: --top {top} exceeds vertex count {g.n}", file=sys.stderr)
        return 2
    try:
        report = rank_vertices(g, cfg, top_k=top, threads=args.threads)
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.format == "json":
        payload = {
            "p": report.p,
            "lambda": report.lam,
            "runs": report.runs,
            "ranking": [
                {"rank": i + 1, "vertex": v, "impact_factor": val}
                for i, (v, val) in enumerate(report.entries)
            ],
        }
        _emit(json.dumps(payload) + "\n", args.out)
    elif args.format == "csv":
        rows = ["rank,vertex,impact_factor"]
        rows += [f"{i + 1},{v},{val!r}" for i, (v, val) in enumerate(report.entries)]
        _emit("\n".join(rows) + "\n", args.out)
    else:
        lines = [f"lambda {report.lam!r}  p {report.p:g}  runs {report.runs}"]
        lines += [
            f"{i + 1:>4}  vertex {v:<8} impact {val:.10f}"
            for i, (v, val) in enumerate(report.entries)
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_lagrangian(args) -> int:
    g = _load_graph(args.graph)
    cfg = _make_config(args, default_runs=100)
    try:
        approx = lagrangian_approx(g, cfg, steps=args.steps, threads=args.threads)
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.format == "json":
        payload = {
            "estimate": approx.estimate,
            "r_factorial": math.factorial(g.r),
            "schedule": [
                {"theta": row.theta, "p": row.p, "lambda": row.lam, "normalized": row.normalized}
                for row in approx.rows
            ],
        }
        _emit(json.dumps(payload) + "\n", args.out)
    elif args.format == "csv":
        rows = ["theta,p,lambda,normalized"]
        rows += [f"{r.theta},{r.p!r},{r.lam!r},{r.normalized!r}" for r in approx.rows]
        _emit("\n".join(rows) + "\n", args.out)
    else:
        lines = [f"{'theta':>5} {'p':>12} {'lambda':>20} {'lambda/r!':>20}"]
        for row in approx.rows:
            lines.append(f"{row.theta:>5} {row.p:>12.8f} {row.lam:>20.12f} {row.normalized:>20.12f}")
        lines.append(f"estimate {approx.estimate!r}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_gen(args) -> int:
    try:
        if args.family == "beta-star":
            g = gen_beta_star(args.r, args.m)
        elif args.family == "loose-path":
            g = gen_loose_path(args.r, args.m)
        else:
            g = gen_complete(args.n, args.r)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(serialize_edge_list(g), args.out)
    return 0


def _selftest_closed_forms(runs: int, seed: int, report: list) -> None:
    cases = [
        ("beta-star r=3 m=10 p=3", gen_beta_star(3, 10), 3.0, beta_star_value(3, 10, 3).value),
        ("beta-star r=6 m=4 p=4", gen_beta_star(6, 4), 4.0, beta_star_value(6, 4, 4).value),
        ("beta-star r=3 m=10 p=2", gen_beta_star(3, 10), 2.0, beta_star_value(3, 10, 2).value),
        ("loose-path r=4 m=3 p=4", gen_loose_path(4, 3), 4.0, loose_path_value(4, 3).value),
        ("loose-path r=4 m=4 p=4", gen_loose_path(4, 4), 4.0, loose_path_value(4, 4).value),
    ]
    for name, g, p, ref in cases:
        cfg = SolverConfig(p=p, runs=runs, seed=seed)
        res = solve_multistart(g, cfg, reference=ref)
        rel = abs(res.best.lam - ref) / abs(ref)
        report.append((name, rel, 1e-8, res.accuracy_rate))


def _selftest_tetrahedron(runs: int, seed: int, report: list) -> None:
    g = gen_complete(4, 3)
    res = solve_multistart(g, SolverConfig(p=2.0, runs=runs, seed=seed), reference=3.0)
    rel = abs(res.best.lam - 3.0) / 3.0
    report.append(("tetrahedron-z p=2 vs 3.0", rel, 3e-8, res.accuracy_rate))


def _selftest_gradient_fd(seed: int, report: list) -> None:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(3, 11))
        r = int(rng.integers(2, min(n, 4) + 1))
        edges = []
        for _ in range(int(rng.integers(1, 6))):
            verts = tuple(sorted(rng.choice(np.arange(1, n + 1), size=r, replace=False)))
            edges.append((verts, float(rng.uniform(0.5, 2.0))))
        g = Hypergraph.from_edges(n=n, r=r, edges=edges)
        p = float(rng.choice([1.5, 2.0, 3.0, 8.0]))
        x = rng.uniform(0.2, 1.0, size=n) * rng.choice([-1.0, 1.0], size=n)
        x /= np.linalg.norm(x)
        grad = objective_grad(g, x, p).g
        fd = np.zeros(n)
        h = 1e-6
        for i in range(n):
            xp = x.copy()
            xp[i] += h
            xm = x.copy()
            xm[i] -= h
            fd[i] = (objective(g, xp, p).f - objective(g, xm, p).f) / (2 * h)
        worst = max(worst, float(np.linalg.norm(grad - fd) / np.linalg.norm(grad)))
    report.append(("gradient-fd 100 probes", worst, 1e-6, None))


def _selftest_brute_force(seed: int, report: list) -> None:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for trial in range(5):
        n = int(rng.integers(4, 7))
        edges = []
        for _ in range(int(rng.integers(2, 8))):
            verts = tuple(sorted(rng.choice(np.arange(1, n + 1), size=3, replace=False)))
            edges.append((verts, float(rng.uniform(0.5, 2.0))))
        g = Hypergraph.from_edges(n=n, r=3, edges=edges)
        for p in (2.0, 3.0):
            oracle = brute_force_radius(g, p, budget=400, seed=trial)
            res = solve_multistart(g, SolverConfig(p=p, runs=40, seed=seed + trial))
            worst = max(worst, abs(oracle - res.best.lam))
    report.append(("brute-force 5 graphs p=2,3", worst, 1e-4, None))


SELFTEST_CASES = ("closed-forms", "tetrahedron-z", "gradient-fd", "brute-force")


def cmd_selftest(args) -> int:
    report: list[tuple[str, float, float, float | None]] = []
    wanted = args.case or SELFTEST_CASES
    t0 = time.perf_counter()
    if "closed-forms" in wanted:
        _selftest_closed_forms(args.runs if args.runs is not None else 100, args.seed, report)
    if "tetrahedron-z" in wanted:
        _selftest_tetrahedron(args.runs if args.runs is not None else 100, args.seed, report)
    if "gradient-fd" in wanted:
        _selftest_gradient_fd(args.seed, report)
    if "brute-force" in wanted:
        _selftest_brute_force(args.seed, report)
    wall = time.perf_counter() - t0

    failures = 0
    for name, err, tol, accuracy in report:
        ok = err <= tol
        failures += not ok
        accu = f"  accu={accuracy:.2f}" if accuracy is not None else ""
        print(f"{'PASS' if ok else 'FAIL'}  {name:<28} err={err:.3e}  tol={tol:.0e}{accu}")
    print(f"{len(report) - failures}/{len(report)} cases passed in {wall:.1f} s")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperspec",
        description="p-spectral radii and p-optimal weightings of uniform hypergraphs",
    )
    parser.add_argument("--version", action="version", version=f"hyperspec {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_solver_flags(sp, with_p=True):
        if with_p:
            sp.add_argument("--p", type=parse_p, required=True,
                            help="spectral parameter p > 1 (decimal or fraction like 4/3)")
        sp.add_argument("--runs", type=int, default=None, help="number of multistart runs")
        sp.add_argument("--tol", type=float, default=1e-8, help="gradient-norm stop tolerance")
        sp.add_argument("--max-iter", type=int, default=1000, help="iteration cap per run")
        sp.add_argument("--seed", type=int, default=0, help="base random seed")
        sp.add_argument("--deterministic", action="store_true",
                        help="bit-identical reruns for identical inputs")
        sp.add_argument("--threads", type=int, default=_default_threads(),
                        help="concurrent runs (default $HYPERSPEC_THREADS or 1)")
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        sp.add_argument("--out", default=None, help="write output to a file instead of stdout")

    sp = sub.add_parser("solve", help="compute the p-spectral radius of a graph file")
    sp.add_argument("graph", help="edge-list file")
    add_solver_flags(sp)
    sp.add_argument("--emit-weighting", action="store_true",
                    help="include the weighting vector in JSON output")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("rank", help="rank vertices by impact factor")
    sp.add_argument("graph", help="edge-list file")
    add_solver_flags(sp)
    sp.add_argument("--top", type=int, default=None, help="report only the top K vertices")
    sp.set_defaults(func=cmd_rank)

    sp = sub.add_parser("lagrangian", help="approximate the Lagrangian via p -> 1 schedule")
    sp.add_argument("graph", help="edge-list file")
    add_solver_flags(sp, with_p=False)
    sp.add_argument("--steps", type=int, default=10, help="schedule length")
    sp.set_defaults(p=2.0, func=cmd_lagrangian)
    sp.set_defaults(tol=1e-6)

    sp = sub.add_parser("gen", help="generate a structured hypergraph family")
    gen_sub = sp.add_subparsers(dest="family", required=True)
    for family in ("beta-star", "loose-path"):
        fp = gen_sub.add_parser(family)
        fp.add_argument("--r", type=int, required=True, help="edge cardinality")
        fp.add_argument("--m", type=int, required=True, help="number of edges")
        fp.add_argument("--out", default=None)
        fp.set_defaults(func=cmd_gen, family=family)
    fp = gen_sub.add_parser("complete")
    fp.add_argument("--n", type=int, required=True, help="number of vertices")
    fp.add_argument("--r", type=int, required=True, help="edge cardinality")
    fp.add_argument("--out", default=None)
    fp.set_defaults(func=cmd_gen, family="complete")

    sp = sub.add_parser("selftest", help="run the oracle-vs-solver verification suite")
    sp.add_argument("--case", action="append", choices=SELFTEST_CASES,
                    help="restrict to one case (repeatable)")
    sp.add_argument("--runs", type=int, default=None, help="multistart runs per case")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
