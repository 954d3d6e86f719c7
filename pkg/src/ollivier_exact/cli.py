"""Command-line front end.

Exit status: 0 success (and, for ``compare``, agreement of the exact
methods), 1 disagreement, 2 unreadable input or an unusable request,
3 edge filter not found.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from .corpus import connected_graphs_upto
from .counterexamples import FAMILIES, build_counterexample, verify_refutation
from .curvature import (
    DEFAULT_CORE_BUDGET,
    METHODS,
    CurvatureError,
    closed_form,
    closed_form_applicable,
    forman,
    kappa,
    w_bm_bipartite,
    w_bm_girth5,
    wasserstein_brute_force,
    wasserstein_full_lp,
    wasserstein_reduced,
)
from .graph import Graph, GraphError, format_edge_list, parse_edge_list
from .lp import BudgetExceededError, LPError
from .partition import classify_core, components_of_R
from .report import curvature_record, emit, partition_record, rational

EXIT_OK, EXIT_DISAGREE, EXIT_INPUT, EXIT_EDGE = 0, 1, 2, 3

EXACT_COLUMNS = ("full-lp", "reduced-lp", "brute-force", "closed-form")
INFO_COLUMNS = ("bm-bipartite", "bm-girth5")


class EdgeNotFound(LookupError):
    pass


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def read_graph(path: str) -> Graph:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def select_edges(g: Graph, edge_filter: str | None) -> list[tuple[int, int]]:
    """Edges to process, oriented and ordered by label.

    Without a filter each edge runs from its lexicographically smaller
    label. A filter ``U,V`` keeps the orientation the user gave.
    """
    if edge_filter is not None:
        parts = edge_filter.split(",")
        if len(parts) != 2:
            raise EdgeNotFound(f"edge filter must look like U,V: {edge_filter!r}")
        a, b = (p.strip() for p in parts)
        try:
            u, v = g.index(a), g.index(b)
        except GraphError as exc:
            raise EdgeNotFound(str(exc)) from None
        if not g.has_edge(u, v):
            raise EdgeNotFound(f"not an edge: {a},{b}")
        return [(u, v)]
    edges = []
    for i, j in g.edges():
        edges.append((i, j) if g.label(i) <= g.label(j) else (j, i))
    return sorted(edges, key=lambda e: (g.label(e[0]), g.label(e[1])))


# Worker state lives in module globals so that each pool process receives
# the graphs once, through the initializer.
_GRAPHS: Sequence[Graph] = ()
_METHOD = "auto"
_BUDGET = DEFAULT_CORE_BUDGET


def _init(graphs: Sequence[Graph], method: str, budget: int) -> None:
    global _GRAPHS, _METHOD, _BUDGET
    _GRAPHS, _METHOD, _BUDGET = graphs, method, budget


def _curvature_task(task: tuple[int, int, int]) -> dict:
    gi, u, v = task
    g = _GRAPHS[gi]
    try:
        return curvature_record(g, kappa(g, u, v, _METHOD, brute_budget=_BUDGET))
    except (CurvatureError, LPError) as exc:
        return {"edge": [g.label(u), g.label(v)], "error": str(exc)}


def compare_edge(g: Graph, u: int, v: int, brute_budget: int = DEFAULT_CORE_BUDGET) -> dict:
    """W from every method on one edge, plus the agreement verdict over the
    exact ones. Methods that do not apply leave ``None``."""
    W: dict[str, Fraction | None] = {}
    W["full-lp"] = wasserstein_full_lp(g, u, v).W
    W["reduced-lp"] = wasserstein_reduced(g, u, v).W
    try:
        W["brute-force"] = wasserstein_brute_force(g, u, v, budget=brute_budget).W
    except BudgetExceededError:
        W["brute-force"] = None
    if closed_form_applicable(components_of_R(g, classify_core(g, u, v))):
        W["closed-form"] = closed_form(g, u, v).W
    else:
        W["closed-form"] = None
    for name, fn in (("bm-bipartite", w_bm_bipartite), ("bm-girth5", w_bm_girth5)):
        try:
            W[name] = fn(g, u, v)
        except CurvatureError:
            W[name] = None
    exact = {W[m] for m in EXACT_COLUMNS if W[m] is not None}
    return {
        "edge": [g.label(u), g.label(v)],
        "W": {name: rational(val) for name, val in W.items()},
        "forman": rational(forman(g, u, v)),
        "agree": len(exact) == 1,
    }


def _compare_task(task: tuple[int, int, int]) -> dict:
    gi, u, v = task
    row = compare_edge(_GRAPHS[gi], u, v, _BUDGET)
    if len(_GRAPHS) > 1:
        row["graph"] = gi
    return row


def run_tasks(
    fn: Callable[[tuple[int, int, int]], dict],
    graphs: Sequence[Graph],
    tasks: list[tuple[int, int, int]],
    method: str,
    budget: int,
    jobs: int,
) -> list[dict]:
    """Results in task order whatever the number of workers."""
    if jobs == 1 or len(tasks) <= 1:
        _init(graphs, method, budget)
        return [fn(t) for t in tasks]
    chunk = max(1, len(tasks) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init, initargs=(graphs, method, budget)) as pool:
        return list(pool.map(fn, tasks, chunksize=chunk))


def _compare_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    with_graph = any("graph" in r for r in rows)
    w.writerow((["graph"] if with_graph else []) + ["edge_u", "edge_v", *EXACT_COLUMNS, *INFO_COLUMNS, "forman", "agree"])
    for r in rows:
        cells = [r["W"][m] or "" for m in (*EXACT_COLUMNS, *INFO_COLUMNS)]
        w.writerow(([r["graph"]] if with_graph else []) + [*r["edge"], *cells, r["forman"], str(r["agree"]).lower()])
    return buf.getvalue()


def _load(args, out, err) -> Graph | int:
    path = args.input_flag or args.input
    if path is None:
        print("error: no input graph given", file=err)
        return EXIT_INPUT
    try:
        return read_graph(path)
    except (OSError, UnicodeDecodeError, GraphError) as exc:
        print(f"error: cannot read {path}: {exc}", file=err)
        return EXIT_INPUT


def cmd_curvature(args, out, err) -> int:
    g = _load(args, out, err)
    if isinstance(g, int):
        return g
    try:
        edges = select_edges(g, args.edge)
    except EdgeNotFound as exc:
        print(f"error: {exc}", file=err)
        return EXIT_EDGE
    records = run_tasks(_curvature_task, [g], [(0, u, v) for u, v in edges], args.method, args.brute_budget, args.jobs)
    failed = [r for r in records if "error" in r]
    if failed:
        for r in failed:
            print(f"error: edge {r['edge'][0]},{r['edge'][1]}: {r['error']}", file=err)
        return EXIT_INPUT
    out.write(emit(records, args.format))
    return EXIT_OK


def cmd_compare(args, out, err) -> int:
    if args.corpus is not None:
        graphs = list(connected_graphs_upto(args.corpus))
    else:
        g = _load(args, out, err)
        if isinstance(g, int):
            return g
        graphs = [g]
    try:
        tasks = [(gi, u, v) for gi, g in enumerate(graphs) for u, v in select_edges(g, args.edge)]
    except EdgeNotFound as exc:
        print(f"error: {exc}", file=err)
        return EXIT_EDGE
    rows = run_tasks(_compare_task, graphs, tasks, "compare", args.brute_budget, args.jobs)
    if args.format == "csv":
        out.write(_compare_csv(rows))
    else:
        out.write("".join(json.dumps(r, separators=(",", ":")) + "\n" for r in rows))
    bad = [r for r in rows if not r["agree"]]
    for r in bad:
        where = f"graph {r['graph']} " if "graph" in r else ""
        values = ", ".join(f"{m}={r['W'][m]}" for m in EXACT_COLUMNS if r["W"][m] is not None)
        print(f"disagreement: {where}edge {r['edge'][0]},{r['edge'][1]}: {values}", file=err)
    return EXIT_DISAGREE if bad else EXIT_OK


def cmd_partition(args, out, err) -> int:
    g = _load(args, out, err)
    if isinstance(g, int):
        return g
    try:
        edges = select_edges(g, args.edge)
    except EdgeNotFound as exc:
        print(f"error: {exc}", file=err)
        return EXIT_EDGE
    out.write("".join(json.dumps(partition_record(g, classify_core(g, u, v)), separators=(",", ":")) + "\n"
                      for u, v in edges))
    return EXIT_OK


def cmd_counterexample(args, out, err) -> int:
    try:
        inst = build_counterexample(args.family, args.param)
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    rep = verify_refutation(inst)
    g = inst.graph
    u, v = inst.edge
    report = {
        "family": rep.family,
        "parameter": rep.parameter,
        "edge": [g.label(u), g.label(v)],
        "witness": {g.label(a): rational(x) for a, x in sorted(inst.witness.items())},
        "witness_lipschitz": rep.witness_lipschitz,
        "profit_matches": rep.profit_matches,
        "hypothesis_holds": rep.hypothesis_holds,
        "w_bm_matches": rep.w_bm_matches,
        "lp_dominates_witness": rep.lp_dominates_witness,
        "refuted": rep.refuted,
        "W": rational(rep.W),
        "w_bm": rational(rep.w_bm),
        "witness_profit": rational(rep.witness_profit),
    }
    if args.emit_graph:
        try:
            Path(args.emit_graph).write_text(format_edge_list(g), encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {args.emit_graph}: {exc}", file=err)
            return EXIT_INPUT
    out.write(json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ollivier", description="Exact Ollivier curvature of graph edges.")
    sub = parser.add_subparsers(dest="command", required=True)

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("input", nargs="?", help="edge list, one 'a b' pair per line")
    graph_in.add_argument("--input", dest="input_flag", metavar="PATH")
    graph_in.add_argument("--edge", metavar="U,V", help="restrict to one edge, oriented u to v")

    batch = argparse.ArgumentParser(add_help=False)
    batch.add_argument("--format", choices=("json", "csv"), default="json")
    batch.add_argument("--jobs", type=_positive, default=1)
    batch.add_argument("--brute-budget", type=_positive, default=DEFAULT_CORE_BUDGET)

    p = sub.add_parser("curvature", parents=[graph_in, batch], help="curvature of every edge")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("compare", parents=[graph_in, batch], help="cross-check all methods")
    p.add_argument("--corpus", type=_positive, metavar="N",
                   help="use every connected graph on at most N vertices instead of an input file")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("partition", parents=[graph_in], help="core neighbourhood classes per edge")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("counterexample", help="build and verify a counterexample instance")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--param", type=_positive, required=True)
    p.add_argument("--emit-graph", metavar="PATH")
    p.set_defaults(func=cmd_counterexample)
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args, out or sys.stdout, err or sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
