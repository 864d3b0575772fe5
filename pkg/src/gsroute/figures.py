"""Reproducible artifacts for the grid/ring bottleneck results.

Each builder returns a JSON-ready dict; :func:`write_figures` also drops DOT
files for every graph it mentions.
"""

from __future__ import annotations

import json
from pathlib import Path

from gsroute.bottleneck import (
    PairRequest,
    analyze_bottleneck,
    find_equivalent_ring,
    lc_pair,
    make_grid,
    ring_paths_cross,
    solve_two_by_n,
)
from gsroute.graph import Graph
from gsroute.io import graph_to_json, to_dot
from gsroute.measurement import MeasurementStep, apply_sequence
from gsroute.oracle import FeasibilityTarget, feasibility_search


def expected_lc_pair_grid(n: int) -> Graph:
    """2 x n grid with rung (3, 4) removed and labels 1, 2 exchanged."""
    g = make_grid(n)
    edges = [e for e in g.edges if e != (3, 4)]
    return Graph(g.vertices, edges).relabel({1: 2, 2: 1})


def lc_pair_identity_sweep(ns=range(3, 9)) -> dict:
    rows = []
    for n in ns:
        got = lc_pair(make_grid(n), 1, 2)
        rows.append({"n": n, "holds": got == expected_lc_pair_grid(n), "graph": graph_to_json(got)})
    return {"figure": "lc_pair identity", "rows": rows}


def butterfly_solvable() -> dict:
    g = make_grid(3)
    final, mlog = apply_sequence(g, [MeasurementStep("X", 3), MeasurementStep("X", 4)])
    return {
        "figure": "butterfly, pairs (1,6) & (2,5)",
        "input": graph_to_json(g),
        "log": mlog.to_json(),
        "final": graph_to_json(final),
        "stages": [("2x3 grid", g), ("X_3, X_4", final)],
    }


def grid_no_go(n: int, pair1: tuple[int, int], pair2: tuple[int, int], budget: int) -> dict:
    g = make_grid(n)
    pairs = PairRequest(pair1, pair2)
    ring = find_equivalent_ring(g, budget)
    search = feasibility_search(g, FeasibilityTarget(pair1, pair2), budget)
    stages = [(f"2x{n} grid", g)]
    if ring is not None:
        stages.append(("equivalent ring", ring.graph))
    return {
        "figure": f"2x{n} grid, pairs {pair1} & {pair2}",
        "ring": ring.to_json() if ring else None,
        "crossing": ring_paths_cross(ring.cycle_order, pairs) if ring else None,
        "search": search.to_json(),
        "verdict": analyze_bottleneck(g, pairs, budget).to_json(),
        "stages": stages,
    }


def two_by_n_staged(n: int = 5) -> dict:
    sol = solve_two_by_n(n)
    return {
        "figure": f"2x{n} staged solve",
        "lc_steps": [list(s) for s in sol.lc_steps],
        "log": sol.log.to_json(),
        "final": graph_to_json(sol.graph),
        "stages": sol.stages,
    }


def _strip_stages(doc: dict) -> dict:
    out = dict(doc)
    stages = out.pop("stages", None)
    if stages is not None:
        out["stages"] = [{"caption": c, "graph": graph_to_json(g)} for c, g in stages]
    return out


def write_stage_dots(stages, directory: Path, prefix: str) -> list[str]:
    directory.mkdir(parents=True, exist_ok=True)
    names = []
    for i, (caption, g) in enumerate(stages):
        name = f"{prefix}_{chr(ord('a') + i)}.dot"
        (directory / name).write_text(f"// {caption}\n" + to_dot(g), encoding="utf-8")
        names.append(name)
    return names


def write_figures(directory: str | Path, budget: int) -> list[str]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    docs = {
        "lc_pair_identity": lc_pair_identity_sweep(),
        "butterfly_solvable": butterfly_solvable(),
        "butterfly_no_go": grid_no_go(3, (1, 3), (2, 5), budget),
        "grid2x4_no_go": grid_no_go(4, (1, 8), (2, 7), budget),
        "grid2x5_staged": two_by_n_staged(5),
    }
    written = []
    for name, doc in docs.items():
        if "stages" in doc:
            written += write_stage_dots(doc["stages"], directory, name)
        path = directory / f"{name}.json"
        path.write_text(json.dumps(_strip_stages(doc), indent=2) + "\n", encoding="utf-8")
        written.append(path.name)
    return sorted(written)


__all__ = [
    "butterfly_solvable",
    "expected_lc_pair_grid",
    "grid_no_go",
    "lc_pair_identity_sweep",
    "two_by_n_staged",
    "write_figures",
    "write_stage_dots",
]
