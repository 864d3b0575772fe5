"""Command-line front end.

Exit codes: 0 success, 1 analysis finished with a negative verdict
(infeasible, no route), 2 usage or input error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from gsroute import bottleneck, oracle, routing
from gsroute.errors import (
    BudgetExhausted,
    DisconnectedPairError,
    GraphError,
    NoRouteError,
)
from gsroute.graph import Graph
from gsroute.io import dumps_graph, graph_to_json, load_graph, save_dot, save_graph, to_dot

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_BUDGET = 1_000_000


def default_budget() -> int:
    raw = os.environ.get("GSR_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise GraphError(f"GSR_BUDGET must be an integer, got {raw!r}") from None


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'u,v', got {text!r}") from None
    return a, b


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(payload: object) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _write_outputs(g: Graph, args: argparse.Namespace) -> None:
    if getattr(args, "out", None):
        save_graph(g, args.out)
    if getattr(args, "dot", None):
        save_dot(g, args.dot)


def cmd_route(args: argparse.Namespace) -> int:
    if args.random_search:
        inst = routing.search_longer_route_advantage(
            n=args.vertices, trials=args.trials, seed=args.seed
        )
        if inst is None:
            _emit({"found": False, "seed": args.seed, "trials": args.trials})
            return EXIT_NEGATIVE
        _emit({"found": True, "seed": args.seed, **inst.to_json()})
        return EXIT_OK
    if args.graph is None or args.source is None or args.target is None:
        raise GraphError("route needs --graph, --source and --target (or --random-search)")
    g = load_graph(args.graph)
    max_len = args.max_len if args.max_len is not None else len(g) - 1
    try:
        cand, out = routing.best_route(g, args.source, args.target, max_len, args.objective)
    except (NoRouteError, DisconnectedPairError) as exc:
        _emit({"error": str(exc)})
        return EXIT_NEGATIVE
    sp = routing.shortest_path(g, args.source, args.target)
    payload = out.to_json()
    payload["is_shortest"] = cand.is_shortest
    payload["shortest_path"] = list(sp.vertices)
    _emit(payload)
    if args.dot:
        save_dot(out.final_graph, args.dot)
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    if args.path:
        path = args.path
    elif args.source is not None and args.target is not None:
        path = list(routing.shortest_path(g, args.source, args.target).vertices)
    else:
        raise GraphError("compare needs --path or --source/--target")
    rep = routing.repeater_protocol(g, path)
    xp = routing.x_protocol(g, path)
    _emit({
        "path": list(path),
        "repeater_total": rep.total,
        "x_total": xp.total,
        "x_leq_repeater": xp.total <= rep.total,
        "repeater": rep.to_json(),
        "x": xp.to_json(),
    })
    return EXIT_OK


def cmd_grid(args: argparse.Namespace) -> int:
    g = bottleneck.make_grid(args.n)
    _write_outputs(g, args)
    _emit(graph_to_json(g))
    return EXIT_OK


def cmd_ring(args: argparse.Namespace) -> int:
    g = bottleneck.make_ring(args.n)
    _write_outputs(g, args)
    _emit(graph_to_json(g))
    return EXIT_OK


def cmd_bottleneck(args: argparse.Namespace) -> int:
    if (args.graph is None) == (args.grid is None):
        raise GraphError("bottleneck needs exactly one of --graph or --grid")
    g = load_graph(args.graph) if args.graph else bottleneck.make_grid(args.grid)
    pairs = bottleneck.PairRequest(*args.pairs)
    budget = args.budget if args.budget is not None else default_budget()
    verdict = bottleneck.analyze_bottleneck(g, pairs, budget, use_oracle=not args.no_oracle)
    _emit(verdict.to_json())
    if verdict.verdict == "solvable":
        return EXIT_OK
    if verdict.verdict == "unknown":
        return EXIT_BUDGET if "budget" in verdict.reason else EXIT_NEGATIVE
    return EXIT_NEGATIVE


def cmd_solve2xn(args: argparse.Namespace) -> int:
    if args.n % 2 == 0:
        _emit({"n": args.n, "verdict": "no-go", "reason": (
            "even n reduces to the 2x4 bottleneck; run `bottleneck` for the ring-crossing witness")})
        return EXIT_NEGATIVE
    sol = bottleneck.solve_two_by_n(args.n)
    stages = [{"caption": c, "graph": graph_to_json(g)} for c, g in sol.stages]
    if args.dot:
        from gsroute.figures import write_stage_dots

        names = write_stage_dots(sol.stages, Path(args.dot), f"grid2x{args.n}")
        for entry, name in zip(stages, names):
            entry["dot"] = name
    _emit({
        "n": args.n,
        "lc_steps": [list(s) for s in sol.lc_steps],
        "log": sol.log.to_json(),
        "final": graph_to_json(sol.graph),
        "stages": stages,
    })
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    results = []
    if args.suite in ("lc", "all"):
        results.append(oracle.run_lc_suite(seed=args.seed))
    if args.suite in ("measurement", "all"):
        results.append(oracle.run_measurement_suite(args.max_n))
    _emit({"suites": results})
    return EXIT_OK if all(r["failed"] == 0 for r in results) else EXIT_NEGATIVE


def cmd_export(args: argparse.Namespace) -> int:
    if args.figures:
        from gsroute.figures import write_figures

        budget = args.budget if args.budget is not None else default_budget()
        _emit({"written": write_figures(args.figures, budget)})
        return EXIT_OK
    if args.graph is None:
        raise GraphError("export needs --graph or --figures")
    g = load_graph(args.graph)
    if args.dot:
        save_dot(g, args.dot)
    elif args.format == "dot":
        sys.stdout.write(to_dot(g))
    else:
        sys.stdout.write(dumps_graph(g) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gsroute", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("route", help="best X-protocol route between two vertices")
    p.add_argument("--graph", type=Path)
    p.add_argument("--source", type=int)
    p.add_argument("--target", type=int)
    p.add_argument("--max-len", type=int)
    p.add_argument("--objective", choices=routing.OBJECTIVES, default="min_total_measurements")
    p.add_argument("--dot", type=Path, help="write the final graph as DOT")
    p.add_argument("--random-search", action="store_true",
                   help="search random graphs for a longer route beating the shortest path")
    p.add_argument("--vertices", type=int, default=12)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("compare", help="repeater vs X protocol on one path")
    p.add_argument("--graph", type=Path, required=True)
    p.add_argument("--path", type=_int_list)
    p.add_argument("--source", type=int)
    p.add_argument("--target", type=int)
    p.set_defaults(func=cmd_compare)

    for verb, helptext, fn in (("grid", "2 x n grid", cmd_grid), ("ring", "n-cycle", cmd_ring)):
        p = sub.add_parser(verb, help=helptext)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--out", type=Path, help="write graph JSON")
        p.add_argument("--dot", type=Path, help="write DOT")
        p.set_defaults(func=fn)

    p = sub.add_parser("bottleneck", help="can two pairs be served simultaneously?")
    p.add_argument("--graph", type=Path)
    p.add_argument("--grid", type=int, help="use the 2 x N grid instead of --graph")
    p.add_argument("--pairs", type=_pair, nargs=2, required=True, metavar="U,V")
    p.add_argument("--budget", type=int)
    p.add_argument("--no-oracle", action="store_true", help="skip the exhaustive search")
    p.set_defaults(func=cmd_bottleneck)

    p = sub.add_parser("solve2xn", help="staged two-pair solve on an odd 2 x n grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dot", type=Path, help="directory for per-stage DOT files")
    p.set_defaults(func=cmd_solve2xn)

    p = sub.add_parser("oracle", help="run state-vector verification suites")
    p.add_argument("--suite", choices=("lc", "measurement", "all"), default="all")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("export", help="convert a graph, or write all figure artifacts")
    p.add_argument("--graph", type=Path)
    p.add_argument("--format", choices=("json", "dot"), default="dot")
    p.add_argument("--dot", type=Path)
    p.add_argument("--figures", type=Path, help="directory for figure artifacts")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_export)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        print(f"gsroute: budget exhausted after {exc.explored} states: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphError, OSError) as exc:
        print(f"gsroute: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
