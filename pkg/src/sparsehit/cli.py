"""Command-line interface.

Exit codes: 0 when a valid solution (or requested artifact) was produced,
2 when a work budget was exhausted, 1 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .api import ALL_SOLVERS, solve
from .bench import bench, fit_loglog_slope, load_sweep, write_jsonl
from .decompositions import (audit_biclique_decomposition, audit_clique_decomposition,
                             k_biclique_decomposition, k_clique_decomposition_degeneracy,
                             k_clique_decomposition_divide_conquer)
from .exceptions import BudgetExceededError, ParameterOverflowError, SparseHitError
from .generators import FAMILIES, GeneratorSpec, generate
from .graph import format_edge_list, read_edge_list
from .reduction import reduce_to_bounded_degree
from .solution import verify
from .solvers.exact import exact_branching_solver
from .validation import check_epsilon, check_patterns

EXIT_OK, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2


def _emit(obj, out):
    json.dump(obj, out, sort_keys=True, default=str)
    out.write("\n")


def _labelled(g, vertices):
    return [g.labels[v] for v in sorted(vertices)]


def _add_instance(p, eps=True):
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--patterns", required=True, help="comma-separated names or pattern files")
    p.add_argument("--mode", default="sub", choices=["sub", "ind", "subgraph", "induced"])
    if eps:
        p.add_argument("--eps", default="1", help="approximation parameter (rational)")


def _add_reduction(p):
    p.add_argument("--delta", type=int)
    p.add_argument("--delta-prime", type=int)
    p.add_argument("--theory-grade", action="store_true")


def _reduction_opts(args):
    opts = {"theory_grade": args.theory_grade}
    if args.delta is not None:
        opts["delta"] = args.delta
    if args.delta_prime is not None:
        opts["delta_prime"] = args.delta_prime
    return opts


def cmd_solve(args, out):
    g = read_edge_list(args.graph)
    fs = check_patterns(args.patterns, args.mode)
    eps = check_epsilon(args.eps)
    opts = _reduction_opts(args) if args.solver == "reduction" else {}
    if args.solver == "clique" and args.method:
        opts["method"] = args.method
    sol = solve(g, fs, eps, args.solver, args.inner, **opts)
    d = sol.to_dict()
    d["labels"] = _labelled(g, sol.vertices)
    _emit(d, out)
    return EXIT_OK if sol.valid else EXIT_USAGE


def cmd_exact(args, out):
    g = read_edge_list(args.graph)
    fs = check_patterns(args.patterns, args.mode)
    sol = exact_branching_solver(g, fs, node_limit=args.node_limit)
    d = sol.to_dict()
    d["labels"] = _labelled(g, sol.vertices)
    _emit(d, out)
    return EXIT_OK


def cmd_decompose(args, out):
    g = read_edge_list(args.graph)
    if args.k < 1:
        raise SparseHitError("--k must be at least 1")
    if args.kind == "clique":
        build = k_clique_decomposition_divide_conquer if args.method == "divide-conquer" else k_clique_decomposition_degeneracy
        dec = build(g, args.k)
        problems = audit_clique_decomposition(g, dec)
    else:
        dec = k_biclique_decomposition(g, args.k)
        problems = audit_biclique_decomposition(g, dec)
    d = dec.to_dict()
    d["audit"] = problems
    _emit(d, out)
    return EXIT_OK if not problems else EXIT_USAGE


def cmd_reduce(args, out):
    g = read_edge_list(args.graph)
    fs = check_patterns(args.patterns, args.mode)
    trace = reduce_to_bounded_degree(g, fs, check_epsilon(args.eps), **_reduction_opts(args))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(format_edge_list(trace.g2))
    d = trace.to_dict()
    d["g2"] = {"n": trace.g2.n, "m": trace.g2.m, "max_degree": trace.g2.max_degree}
    if not args.output:
        d["g2"]["edges"] = [[g.labels[u], g.labels[v]] for u, v in trace.g2.edges()]
    _emit(d, out)
    return EXIT_OK


def cmd_verify(args, out):
    g = read_edge_list(args.graph)
    fs = check_patterns(args.patterns, args.mode)
    with open(args.solution) as fh:
        text = fh.read()
    tokens = _solution_tokens(text)
    index = {str(lab): i for i, lab in enumerate(g.labels)}
    unknown = [t for t in tokens if t not in index]
    if unknown:
        raise SparseHitError(f"unknown vertex labels in solution: {unknown[:5]}")
    valid, surviving = verify(g, fs, {index[t] for t in tokens})
    _emit({"valid": valid, "surviving": surviving, "size": len(set(tokens))}, out)
    return EXIT_OK if valid else EXIT_USAGE


def _solution_tokens(text: str) -> list[str]:
    """Labels from a JSON solution (``labels`` or ``vertices``) or whitespace-separated text."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        return text.split()
    if isinstance(data, dict):
        data = data.get("labels", data.get("vertices", []))
    return [str(x) for x in data]


def cmd_bench(args, out):
    sweep = load_sweep(args.sweep)
    solver = args.solver or sweep.get("solver", "separator")
    patterns = args.patterns or sweep.get("patterns", "K3")
    mode = args.mode or sweep.get("mode", "sub")
    eps = args.eps or sweep.get("epsilon", "1")
    reports = bench(sweep["specs"], solver, check_patterns(patterns, mode), eps, workers=args.workers,
                    oracle=args.oracle, options=sweep.get("options"))
    write_jsonl(reports, out, timing=not args.no_timing)
    slope = fit_loglog_slope(reports)
    if slope is not None:
        sys.stderr.write(f"log-log slope of solve time: {slope:.3f}\n")
    if any(r.error and "BudgetExceeded" in r.error for r in reports):
        return EXIT_BUDGET
    return EXIT_OK if all(r.valid for r in reports) else EXIT_USAGE


def cmd_generate(args, out):
    params = {}
    for item in args.param or []:
        key, _, val = item.partition("=")
        if not _:
            raise SparseHitError(f"--param expects key=value, got {item!r}")
        params[key] = val
    g = generate(GeneratorSpec(args.family, args.n, params, args.seed))
    text = format_edge_list(g)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparsehit", description="Approximate (induced) subgraph hitting.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="approximate hitting set")
    _add_instance(p)
    p.add_argument("--solver", default="reduction", choices=ALL_SOLVERS)
    p.add_argument("--inner", default="exact", help="inner solver for reduction and wrappers")
    p.add_argument("--method", choices=["degeneracy", "divide-conquer"])
    _add_reduction(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exact", help="exact minimum hitting set")
    _add_instance(p, eps=False)
    p.add_argument("--node-limit", type=int, default=2_000_000)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("decompose", help="k-clique or k-biclique decomposition")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kind", choices=["clique", "biclique"], default="clique")
    p.add_argument("--method", choices=["degeneracy", "divide-conquer"], default="degeneracy")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("reduce", help="emit the bounded-degree instance and the trace")
    _add_instance(p)
    _add_reduction(p)
    p.add_argument("--output", help="write G2 as an edge list here")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="check a candidate hitting set")
    _add_instance(p, eps=False)
    p.add_argument("--solution", required=True, help="JSON from solve/exact or whitespace-separated labels")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run a sweep and print JSON lines")
    p.add_argument("--sweep", required=True, help="JSON sweep file")
    p.add_argument("--solver", choices=ALL_SOLVERS)
    p.add_argument("--patterns")
    p.add_argument("--mode", choices=["sub", "ind", "subgraph", "induced"])
    p.add_argument("--eps")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--oracle", action="store_true", help="also compute the exact optimum")
    p.add_argument("--no-timing", action="store_true", help="omit timing fields")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("generate", help="write a synthetic instance")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--output")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except BudgetExceededError as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except ParameterOverflowError as exc:
        sys.stderr.write(f"parameters overflow: {exc}\n")
        return EXIT_BUDGET
    except (SparseHitError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
