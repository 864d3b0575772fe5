"""Two-pair bottlenecks on 2 x n grids and rings.

Grid labeling: column ``j`` (1-based) has top vertex ``2j - 1`` and bottom
vertex ``2j``.  With this labeling the 2 x 3 grid is the butterfly network
with middle column ``{3, 4}``, and ``lc_pair(g, 1, 2)`` on any 2 x n grid
removes the rung ``(3, 4)`` and exchanges the roles of ``1`` and ``2``.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass, field

import networkx as nx

from gsroute.errors import BadDimensionError, BudgetExhausted, GraphError, UnknownVertexError
from gsroute.graph import Graph, canonical_form, local_complement
from gsroute.measurement import MeasurementLog, MeasurementStep, apply_sequence

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 1_000_000


@dataclass(frozen=True)
class PairRequest:
    pair1: tuple[int, int]
    pair2: tuple[int, int]

    def __post_init__(self) -> None:
        if len({*self.pair1, *self.pair2}) != 4:
            raise GraphError("a pair request needs four distinct vertices")

    @property
    def vertices(self) -> tuple[int, int, int, int]:
        return (*self.pair1, *self.pair2)

    def as_set(self) -> frozenset[frozenset[int]]:
        return frozenset((frozenset(self.pair1), frozenset(self.pair2)))


@dataclass(frozen=True)
class RingView:
    cycle_order: tuple[int, ...]
    lc_sequence: tuple[int, ...]
    graph: Graph | None = None

    def to_json(self) -> dict:
        return {"cycle_order": list(self.cycle_order), "lc_sequence": list(self.lc_sequence)}


def make_grid(n: int) -> Graph:
    if n < 2:
        raise BadDimensionError("a 2 x n grid needs n >= 2")
    edges = [(2 * j - 1, 2 * j) for j in range(1, n + 1)]
    edges += [(2 * j - 1, 2 * j + 1) for j in range(1, n)]
    edges += [(2 * j, 2 * j + 2) for j in range(1, n)]
    return Graph(range(1, 2 * n + 1), edges)


def make_ring(n: int) -> Graph:
    if n < 3:
        raise BadDimensionError("a ring needs n >= 3")
    return Graph(range(1, n + 1), [(i, i % n + 1) for i in range(1, n + 1)])


def lc_pair(g: Graph, i: int, j: int) -> Graph:
    """Local complementation at ``i``, then ``j``, then ``i``."""
    if i == j:
        raise GraphError("lc_pair needs two distinct vertices")
    return local_complement(local_complement(local_complement(g, i), j), i)


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Label-forgetting isomorphism test."""
    return nx.is_isomorphic(to_networkx(g), to_networkx(h))


def cycle_order(g: Graph) -> tuple[int, ...] | None:
    """Vertex order around ``g`` if it is a single cycle through every vertex.

    The walk starts at the smallest label and steps to its smaller neighbor
    first.  Returns None if ``g`` is not a spanning cycle.
    """
    vs = g.vertices
    if len(vs) < 3 or any(g.degree(v) != 2 for v in vs):
        return None
    start = vs[0]
    order = [start]
    mask = g.neighbor_mask(start)
    prev, cur = start, (mask & -mask).bit_length() - 1
    while cur != start:
        order.append(cur)
        mask = g.neighbor_mask(cur) & ~(1 << prev)
        prev, cur = cur, mask.bit_length() - 1
    return tuple(order) if len(order) == len(vs) else None


def ring_paths_cross(order: Sequence[int], pairs: PairRequest) -> bool:
    """True iff the two pairs interleave around the cycle ``order``."""
    pos = {v: i for i, v in enumerate(order)}
    for v in pairs.vertices:
        if v not in pos:
            raise UnknownVertexError(v)
    a, b = sorted((pos[pairs.pair1[0]], pos[pairs.pair1[1]]))
    inside = [a < pos[v] < b for v in pairs.pair2]
    return inside[0] != inside[1]


def find_equivalent_ring(g: Graph, max_states: int = DEFAULT_BUDGET) -> RingView | None:
    """Breadth-first search of the LC orbit of ``g`` for a spanning cycle.

    Returns the first ring found (with the LC sequence reaching it), or None
    once the whole orbit has been enumerated without one.

    Raises
    ------
    BudgetExhausted
        If more than ``max_states`` distinct graphs were generated first.
    """
    if not g.is_connected():
        raise GraphError("find_equivalent_ring needs a connected graph")
    start = canonical_form(g)
    parents: dict[bytes, tuple[bytes, int] | None] = {start: None}
    queue = deque([(g, start)])
    while queue:
        cur, key = queue.popleft()
        order = cycle_order(cur)
        if order is not None:
            seq = []
            while parents[key] is not None:
                key, v = parents[key]
                seq.append(v)
            return RingView(order, tuple(reversed(seq)), cur)
        for v in cur.vertices:
            nxt = local_complement(cur, v)
            nkey = canonical_form(nxt)
            if nkey in parents:
                continue
            if len(parents) >= max_states:
                raise BudgetExhausted("LC orbit larger than the search budget", len(parents))
            parents[nkey] = (key, v)
            queue.append((nxt, nkey))
    return None


@dataclass
class TwoByNSolution:
    """Result of the odd-n procedure.

    ``stages`` holds ``(caption, graph)`` snapshots after every grouped
    operation, starting with the input grid.
    """

    n: int
    graph: Graph
    log: MeasurementLog
    lc_steps: list[tuple[int, int]]
    stages: list[tuple[str, Graph]] = field(default_factory=list)

    @property
    def matching(self) -> PairRequest:
        e1, e2 = self.graph.edges
        return PairRequest(e1, e2)


def solve_two_by_n(n: int) -> TwoByNSolution:
    """Extract two Bell pairs between the end columns of a 2 x n grid, n odd.

    Each reduction round applies ``lc_pair(1, 2)``, which cuts the rung of
    column 2 of the current grid, then Y-measures that column bottom vertex
    first.  The result is a 2 x (m - 1) grid whose first column is ``{1, 2}``
    with the two labels exchanged.  After ``n - 3`` rounds the butterfly
    remains and X measurements on its middle column finish the job.
    """
    if n < 3:
        raise BadDimensionError("solve_two_by_n needs n >= 3")
    if n % 2 == 0:
        raise GraphError(
            f"2 x {n}: even n reduces to the 2 x 4 bottleneck, whose pairs cross "
            "in a locally equivalent ring; see analyze_bottleneck"
        )
    g = make_grid(n)
    stages = [(f"2x{n} grid", g)]
    lc_steps: list[tuple[int, int]] = []
    mlog = MeasurementLog()
    for rnd in range(1, n - 2):
        top, bottom = 2 * rnd + 1, 2 * rnd + 2
        g = lc_pair(g, 1, 2)
        lc_steps.append((1, 2))
        if g.has_edge(top, bottom):
            raise GraphError(f"round {rnd}: rung ({top},{bottom}) survived lc_pair")
        stages.append(("LC_{1,2}", g))
        g, part = apply_sequence(g, [MeasurementStep("Y", bottom), MeasurementStep("Y", top)])
        mlog = mlog + part
        stages.append((f"Y_{bottom}, Y_{top}", g))
        if not is_isomorphic(g, make_grid(n - rnd)):
            raise GraphError(f"round {rnd}: graph is not a 2x{n - rnd} grid")
    mid_top, mid_bottom = 2 * n - 3, 2 * n - 2
    order = (mid_top, mid_bottom) if n == 3 else (mid_bottom, mid_top)
    g, part = apply_sequence(g, [MeasurementStep("X", v) for v in order])
    mlog = mlog + part
    stages.append((f"X_{order[0]}, X_{order[1]}", g))

    ends = {1, 2, 2 * n - 1, 2 * n}
    if set(g.vertices) != ends or g.num_edges() != 2 or any(g.degree(v) != 1 for v in ends):
        raise GraphError(f"2x{n}: final graph {g} is not two disjoint Bell pairs")
    for u, v in g.edges:
        if (u in (1, 2)) == (v in (1, 2)):
            raise GraphError(f"2x{n}: edge ({u},{v}) does not join the end columns")
    return TwoByNSolution(n, g, mlog, lc_steps, stages)


def _grid_size(g: Graph) -> int | None:
    n = len(g) // 2
    if n >= 2 and g == make_grid(n):
        return n
    return None


@dataclass(frozen=True)
class BottleneckVerdict:
    """Outcome of :func:`analyze_bottleneck`.

    ``verdict`` is ``solvable``, ``unsolvable_by_ring_crossing``,
    ``unsolvable_by_search`` or ``unknown``.
    """

    verdict: str
    witness: dict = field(default_factory=dict)
    reason: str = ""

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "witness": self.witness, "reason": self.reason}


def analyze_bottleneck(
    g: Graph, pairs: PairRequest, budget: int = DEFAULT_BUDGET, use_oracle: bool = True
) -> BottleneckVerdict:
    """Decide whether both pairs can be served at once.

    Tried in order: a locally equivalent ring in which the pairs cross
    (impossible), the odd-n grid construction (possible), and finally the
    exhaustive vertex-minor search from :mod:`gsroute.oracle`.
    """
    for v in pairs.vertices:
        if v not in g:
            raise UnknownVertexError(v)
    reasons = []
    try:
        ring = find_equivalent_ring(g, budget)
    except BudgetExhausted as exc:
        ring = None
        reasons.append(f"ring search: {exc}")
    else:
        if ring is None:
            reasons.append("no ring in the LC orbit")
    if ring is not None:
        if ring_paths_cross(ring.cycle_order, pairs):
            return BottleneckVerdict("unsolvable_by_ring_crossing", {"ring": ring.to_json()})
        reasons.append(f"pairs do not cross in ring {list(ring.cycle_order)}")

    n = _grid_size(g)
    if n is not None and n % 2 == 1:
        sol = solve_two_by_n(n)
        if sol.matching.as_set() == pairs.as_set():
            return BottleneckVerdict(
                "solvable",
                {"lc_steps": [list(s) for s in sol.lc_steps], "log": sol.log.to_json()},
            )

    if use_oracle:
        from gsroute.oracle import FeasibilityTarget, feasibility_search

        res = feasibility_search(g, FeasibilityTarget(pairs.pair1, pairs.pair2), budget)
        if res.verdict == "feasible":
            return BottleneckVerdict("solvable", {"operations": [list(op) for op in res.witness]})
        if res.verdict == "infeasible":
            return BottleneckVerdict(
                "unsolvable_by_search", {"explored": res.explored}, "; ".join(reasons)
            )
        reasons.append(f"vertex-minor search: {res.reason}")
    return BottleneckVerdict("unknown", {}, "; ".join(reasons))
