"""Bell-pair routing over repeater lines.

A repeater line between ``a`` and ``b`` is an induced path: consecutive
vertices adjacent, no other adjacencies among path vertices.  Two protocols
turn a repeater line into an isolated ``(a, b)`` edge:

* repeater protocol: Z-measure the whole exterior neighborhood of the path,
  then X-measure the interior vertices;
* X protocol: X-measure the interior vertices first, then Z-measure only what
  is still attached to ``a`` or ``b``.

Both X chains use ``a`` as the special neighbor at every step; after each
measurement ``a`` is adjacent to the next interior vertex.
"""

from __future__ import annotations

import logging
import random
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

from gsroute.errors import (
    BudgetExhausted,
    DisconnectedPairError,
    GraphError,
    NoRouteError,
    NotRepeaterLineError,
    ProtocolConsistencyError,
)
from gsroute.graph import Graph, exterior_neighborhood, is_repeater_line, neighborhood
from gsroute.measurement import MeasurementLog, MeasurementStep, apply_sequence

log = logging.getLogger(__name__)

Objective = Literal["min_total_measurements", "max_leftover_edges"]
OBJECTIVES: tuple[str, ...] = ("min_total_measurements", "max_leftover_edges")
DEFAULT_NODE_BUDGET = 1_000_000


@dataclass(frozen=True)
class PathCandidate:
    vertices: tuple[int, ...]
    length: int
    exterior_size: int
    is_shortest: bool
    is_repeater_line: bool

    @property
    def source(self) -> int:
        return self.vertices[0]

    @property
    def target(self) -> int:
        return self.vertices[-1]


@dataclass(frozen=True)
class ProtocolOutcome:
    path: tuple[int, ...]
    final_graph: Graph
    log: MeasurementLog
    x_count: int
    z_count: int
    total: int
    leftover_edges: int

    def to_json(self) -> dict:
        return {
            "path": list(self.path),
            "x_count": self.x_count,
            "z_count": self.z_count,
            "total": self.total,
            "leftover_edges": self.leftover_edges,
            "log": self.log.to_json(),
        }


def distances_from(g: Graph, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in neighborhood(g, u):
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def _check_pair(g: Graph, a: int, b: int) -> dict[int, int]:
    g.neighbor_mask(a)
    g.neighbor_mask(b)
    if a == b:
        raise GraphError("source and target must differ")
    dist = distances_from(g, b)
    if a not in dist:
        raise DisconnectedPairError(f"no path between {a} and {b}")
    return dist


def make_candidate(g: Graph, path: Sequence[int], dist_ab: int | None = None) -> PathCandidate:
    """Describe ``path`` (which must be a walk along edges of ``g``)."""
    path = tuple(path)
    for u, v in zip(path, path[1:]):
        if not g.has_edge(u, v):
            raise GraphError(f"({u},{v}) is not an edge")
    if dist_ab is None:
        dist_ab = distances_from(g, path[-1]).get(path[0])
    return PathCandidate(
        vertices=path,
        length=len(path) - 1,
        exterior_size=len(exterior_neighborhood(g, path)),
        is_shortest=len(path) - 1 == dist_ab,
        is_repeater_line=is_repeater_line(g, path),
    )


def shortest_path(g: Graph, a: int, b: int) -> PathCandidate:
    """Minimum-length path, lexicographically smallest among ties."""
    dist = _check_pair(g, a, b)
    path = [a]
    while path[-1] != b:
        d = dist[path[-1]]
        path.append(min(v for v in neighborhood(g, path[-1]) if dist.get(v) == d - 1))
    return make_candidate(g, path, dist[a])


def enumerate_repeater_lines(
    g: Graph, a: int, b: int, max_length: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> list[PathCandidate]:
    """All induced a-b paths with at most ``max_length`` edges.

    Sorted by length, then lexicographically.

    Raises
    ------
    BudgetExhausted
        When more than ``node_budget`` partial paths were expanded.
    """
    dist = _check_pair(g, a, b)
    found: list[tuple[int, ...]] = []
    b_bit = 1 << b
    expanded = 0
    # stack of (path, union of closed neighborhoods of path[:-1])
    stack: list[tuple[tuple[int, ...], int]] = [((a,), 0)]
    while stack:
        path, blocked = stack.pop()
        expanded += 1
        if expanded > node_budget:
            raise BudgetExhausted("repeater-line enumeration exceeded its budget", expanded)
        u = path[-1]
        nu = g.neighbor_mask(u)
        if nu & b_bit:
            found.append(path + (b,))
            continue
        if len(path) > max_length - 1:
            continue
        new_blocked = blocked | nu | (1 << u)
        for v in sorted(neighborhood(g, u), reverse=True):
            # v must not touch any earlier path vertex and must still reach b in budget
            if blocked >> v & 1:
                continue
            if len(path) + dist.get(v, max_length + 1) > max_length:
                continue
            stack.append((path + (v,), new_blocked))
    found.sort(key=lambda p: (len(p), p))
    return [make_candidate(g, p, dist[a]) for p in found if len(p) - 1 <= max_length]


def _vertices(path: PathCandidate | Sequence[int]) -> tuple[int, ...]:
    return path.vertices if isinstance(path, PathCandidate) else tuple(path)


def _require_line(g: Graph, path: tuple[int, ...]) -> None:
    if not is_repeater_line(g, path):
        raise NotRepeaterLineError(f"{list(path)} is not an induced path")


def _x_chain(path: tuple[int, ...]) -> list[MeasurementStep]:
    a = path[0]
    return [MeasurementStep("X", v, a) for v in path[1:-1]]


def _outcome(g: Graph, path: tuple[int, ...], mlog: MeasurementLog) -> ProtocolOutcome:
    a, b = path[0], path[-1]
    if neighborhood(g, a) != {b} or neighborhood(g, b) != {a}:
        raise ProtocolConsistencyError(f"({a},{b}) is not an isolated edge after the protocol")
    x = mlog.count("X")
    z = mlog.count("Z")
    return ProtocolOutcome(path, g, mlog, x, z, x + z, g.num_edges() - 1)


def repeater_protocol(g: Graph, path: PathCandidate | Sequence[int]) -> ProtocolOutcome:
    """Isolate the path with Z measurements, then fuse it with X measurements."""
    path = _vertices(path)
    _require_line(g, path)
    steps = [MeasurementStep("Z", v) for v in sorted(exterior_neighborhood(g, path))]
    steps += _x_chain(path)
    final, mlog = apply_sequence(g, steps)
    return _outcome(final, path, mlog)


def x_protocol(g: Graph, path: PathCandidate | Sequence[int]) -> ProtocolOutcome:
    """Fuse the path with X measurements, then cut what hangs off the ends."""
    path = _vertices(path)
    _require_line(g, path)
    a, b = path[0], path[-1]
    h, xlog = apply_sequence(g, _x_chain(path))
    if not h.has_edge(a, b):
        raise ProtocolConsistencyError(f"X chain along {list(path)} did not connect {a} and {b}")
    cut = sorted((neighborhood(h, a) | neighborhood(h, b)) - {a, b})
    final, zlog = apply_sequence(h, [MeasurementStep("Z", v) for v in cut])
    return _outcome(final, path, xlog + zlog)


@dataclass(frozen=True)
class ProtocolComparison:
    repeater_total: int
    x_total: int
    x_leq_repeater: bool

    def to_json(self) -> dict:
        return {
            "repeater_total": self.repeater_total,
            "x_total": self.x_total,
            "x_leq_repeater": self.x_leq_repeater,
        }


def compare_protocols(g: Graph, path: PathCandidate | Sequence[int]) -> ProtocolComparison:
    rep = repeater_protocol(g, path).total
    xp = x_protocol(g, path).total
    return ProtocolComparison(rep, xp, xp <= rep)


def best_route(
    g: Graph,
    a: int,
    b: int,
    max_length: int,
    objective: Objective = "min_total_measurements",
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> tuple[PathCandidate, ProtocolOutcome]:
    """Run the X protocol on every repeater line and keep the best one.

    Ties go to the shorter path, then to the lexicographically smaller one.
    """
    if objective not in OBJECTIVES:
        raise GraphError(f"unknown objective {objective!r}")
    lines = enumerate_repeater_lines(g, a, b, max_length, node_budget)
    if not lines:
        raise NoRouteError(f"no repeater line from {a} to {b} within {max_length} edges")

    def score(item: tuple[PathCandidate, ProtocolOutcome]):
        cand, out = item
        primary = out.total if objective == "min_total_measurements" else -out.leftover_edges
        return (primary, cand.length, cand.vertices)

    return min(((c, x_protocol(g, c)) for c in lines), key=score)


@dataclass(frozen=True)
class AdvantageInstance:
    """A graph where a longer repeater line beats the shortest path."""

    graph: Graph
    source: int
    target: int
    shortest: PathCandidate
    shortest_outcome: ProtocolOutcome
    winner: PathCandidate
    winner_outcome: ProtocolOutcome
    trial: int

    def to_json(self) -> dict:
        return {
            "graph": {"vertices": list(self.graph.vertices), "edges": [list(e) for e in self.graph.edges]},
            "source": self.source,
            "target": self.target,
            "trial": self.trial,
            "shortest": self.shortest_outcome.to_json(),
            "winner": self.winner_outcome.to_json(),
        }


def search_longer_route_advantage(
    n: int = 12,
    trials: int = 500,
    seed: int = 0,
    edge_prob: tuple[float, float] = (0.2, 0.4),
    min_distance: int = 2,
) -> AdvantageInstance | None:
    """Sample connected random graphs until the best X-protocol route is
    strictly longer than, and strictly cheaper than, the shortest path.

    Every vertex pair at distance at least ``min_distance`` is examined, in
    ascending order, in each sampled graph.  Fully determined by ``seed``.
    """
    from gsroute.generators import random_connected_graph

    rng = random.Random(seed)
    for trial in range(trials):
        g = random_connected_graph(n, rng.uniform(*edge_prob), rng)
        for a in g.vertices:
            dist = distances_from(g, a)
            for b in g.vertices:
                if b <= a or dist[b] < min_distance:
                    continue
                sp = shortest_path(g, a, b)
                sp_out = x_protocol(g, sp)
                cand, out = best_route(g, a, b, n - 1)
                if cand.length > sp.length and out.total < sp_out.total:
                    return AdvantageInstance(g, a, b, sp, sp_out, cand, out, trial)
    return None
