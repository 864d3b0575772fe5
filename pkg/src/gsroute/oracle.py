"""Independent checks for the graph rewrite rules.

Two kinds of oracle live here:

* dense state-vector simulation of graph states, used to confirm that local
  complementation and the measurement rules describe what actually happens
  to the quantum state;
* exhaustive breadth-first searches over LC orbits and vertex-minors, used to
  decide local equivalence and two-pair extractability at small sizes.

The search code keeps its own compact bit-mask graph encoding rather than
calling into :mod:`gsroute.graph`, so the checks do not share code with the
rewrites they verify.
"""

from __future__ import annotations

import random
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from gsroute.errors import GraphError, TooLargeError
from gsroute.graph import Graph, delete_vertex, local_complement, neighborhood
from gsroute.measurement import BASES, MeasurementStep, apply_step

DENSE_MAX = 12
DEFAULT_BUDGET = 1_000_000
TOL = 1e-8

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.array([[1, 0], [0, 1j]], dtype=complex)
PAULI = {"X": _X, "Y": _Y, "Z": _Z}

# exp(-i pi/4 X) on the complemented vertex, exp(+i pi/4 Z) on each neighbor
SQRT_MINUS_IX = (_I - 1j * _X) / np.sqrt(2)
SQRT_PLUS_IZ = (_I + 1j * _Z) / np.sqrt(2)


def _fix_phase(u: np.ndarray) -> np.ndarray:
    flat = u.ravel()
    k = int(np.argmax(np.abs(flat) > 1e-9))
    return u * (abs(flat[k]) / flat[k])


def _clifford_group() -> np.ndarray:
    """The 24 single-qubit Cliffords modulo global phase, shape (24, 2, 2)."""
    found = {}
    queue = deque([_I])
    while queue:
        u = _fix_phase(queue.popleft())
        key = tuple(np.round(u, 6).ravel())
        if key in found:
            continue
        found[key] = u
        queue.extend((_H @ u, _S @ u))
    assert len(found) == 24
    return np.array([found[k] for k in sorted(found)])


CLIFFORDS = _clifford_group()


@dataclass(frozen=True)
class StateVector:
    """Dense amplitudes with an explicit vertex -> qubit map.

    Qubit 0 is the most significant bit of the basis index.
    """

    amplitudes: np.ndarray
    ordering: dict[int, int]

    @property
    def num_qubits(self) -> int:
        return len(self.ordering)

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.num_qubits)


def _basis_bits(n: int) -> np.ndarray:
    idx = np.arange(1 << n)
    return (idx[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1


def graph_state(g: Graph, order: Sequence[int] | None = None) -> StateVector:
    """Dense vector of the graph state of ``g``.

    Amplitudes are ``2**(-n/2) * (-1)**e(x)`` where ``e(x)`` counts edges with
    both endpoints set in basis string ``x``.
    """
    order = list(g.vertices) if order is None else list(order)
    if sorted(order) != list(g.vertices):
        raise GraphError("ordering must list every vertex exactly once")
    n = len(order)
    if n > DENSE_MAX:
        raise TooLargeError(f"dense simulation is capped at {DENSE_MAX} qubits")
    pos = {v: i for i, v in enumerate(order)}
    bits = _basis_bits(n)
    parity = np.zeros(1 << n, dtype=np.int64)
    for u, v in g.edges:
        parity ^= bits[:, pos[u]] & bits[:, pos[v]]
    amps = np.where(parity == 1, -1.0, 1.0).astype(complex) / np.sqrt(1 << n)
    return StateVector(amps, pos)


def apply_1q(psi: np.ndarray, u: np.ndarray, qubit: int) -> np.ndarray:
    """Apply a 2x2 unitary to one axis of a state tensor."""
    out = np.tensordot(u, psi, axes=([1], [qubit]))
    return np.moveaxis(out, 0, qubit)


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = TOL) -> bool:
    a = a.ravel()
    b = b.ravel()
    overlap = np.vdot(b, a)
    if abs(overlap) < 1e-12:
        return False
    phase = overlap / abs(overlap)
    return bool(np.max(np.abs(a - phase * b)) < tol)


def verify_lc_rule(g: Graph, v: int, tol: float = TOL) -> bool:
    """Check LC at ``v`` against the standard local-Clifford implementation."""
    if len(g) > 10:
        raise TooLargeError("verify_lc_rule is capped at 10 qubits")
    sv = graph_state(g)
    psi = sv.tensor()
    psi = apply_1q(psi, SQRT_MINUS_IX, sv.ordering[v])
    for u in neighborhood(g, v):
        psi = apply_1q(psi, SQRT_PLUS_IZ, sv.ordering[u])
    expected = graph_state(local_complement(g, v)).amplitudes
    return equal_up_to_phase(psi, expected, tol)


def _eigenstate(basis: str, sign: int) -> np.ndarray:
    s = 1 if sign > 0 else -1
    if basis == "Z":
        return np.array([1, 0], dtype=complex) if s > 0 else np.array([0, 1], dtype=complex)
    if basis == "X":
        return np.array([1, s], dtype=complex) / np.sqrt(2)
    return np.array([1, s * 1j], dtype=complex) / np.sqrt(2)


@dataclass(frozen=True)
class MeasurementCheck:
    ok: bool
    branch: int
    probability: float
    corrections: dict[int, int] = field(default_factory=dict)
    rule_output: Graph | None = None


def _correction_search(
    psi: np.ndarray, phi: np.ndarray, corrected: Sequence[int]
) -> tuple[int, ...] | None:
    """Find Clifford indices ``c`` with ``(x)_k C[c_k] on corrected[k]`` mapping
    ``psi`` onto ``phi`` up to phase, or None.

    All 24**d overlaps are obtained at once by contracting the mixed
    tensor ``M[x_S, y_S] = sum_R conj(phi[x_S, R]) psi[y_S, R]`` with the
    Clifford stack one qubit at a time.
    """
    m = psi.ndim
    d = len(corrected)
    rest = [q for q in range(m) if q not in corrected]
    perm = list(corrected) + rest
    a = np.transpose(psi, perm).reshape(1 << d, -1)
    b = np.transpose(phi, perm).reshape(1 << d, -1)
    t = (b.conj() @ a.T).reshape(1, 1 << d, 1 << d)
    for k in range(d):
        width = 1 << (d - k - 1)
        t = t.reshape(t.shape[0], 2, width, 2, width)
        t = np.einsum("aibjc,kij->akbc", t, CLIFFORDS)
        t = t.reshape(-1, width, width)
    overlaps = np.abs(t.ravel())
    best = int(np.argmax(overlaps))
    if overlaps[best] < 1 - 1e-6:
        return None
    choice = []
    for _ in range(d):
        best, c = divmod(best, 24)
        choice.append(c)
    choice.reverse()
    out = psi
    for q, c in zip(corrected, choice):
        out = apply_1q(out, CLIFFORDS[c], q)
    if not equal_up_to_phase(out, phi):
        return None
    return tuple(choice)


def check_measurement_rule(
    g: Graph, step: MeasurementStep, widen: bool = False
) -> MeasurementCheck:
    """Project onto an outcome of ``step`` and compare with the rule's graph.

    The +1 outcome is used unless it has zero probability.  The projected
    state must factor as the measured qubit's eigenstate times a state that
    equals the graph state of the rewritten graph after single-qubit Clifford
    corrections on the old neighborhood of the target (on every remaining
    qubit when ``widen`` is set).
    """
    if len(g) > 6:
        raise TooLargeError("verify_measurement_rule is capped at 6 qubits")
    t = step.target
    sv = graph_state(g)
    psi = sv.tensor()
    qt = sv.ordering[t]
    pauli = PAULI[step.basis]
    branch = 1
    for sign in (1, -1):
        proj = (_I + sign * pauli) / 2
        post = apply_1q(psi, proj, qt)
        prob = float(np.vdot(post, post).real)
        if prob > 1e-12:
            branch = sign
            break
    post = post / np.sqrt(prob)
    e = _eigenstate(step.basis, branch)
    reduced = np.tensordot(e.conj(), post, axes=([0], [qt]))
    # the projected state must be |e> (x) reduced exactly
    rebuilt = np.moveaxis(np.tensordot(e, reduced, axes=0), 0, qt)
    if not np.allclose(rebuilt, post, atol=TOL):
        return MeasurementCheck(False, branch, prob)

    rule_graph, _ = apply_step(g, step)
    phi = graph_state(rule_graph).tensor()
    remaining = [v for v in g.vertices if v != t]
    qpos = {v: i for i, v in enumerate(remaining)}
    if widen:
        corrected = list(range(len(remaining)))
    else:
        nbrs = sorted(u for u in remaining if g.has_edge(t, u))
        corrected = [qpos[u] for u in nbrs]
    if not remaining:
        return MeasurementCheck(True, branch, prob, {}, rule_graph)
    choice = _correction_search(reduced, phi, corrected)
    if choice is None:
        return MeasurementCheck(False, branch, prob, {}, rule_graph)
    corr = {remaining[q]: c for q, c in zip(corrected, choice)}
    return MeasurementCheck(True, branch, prob, corr, rule_graph)


def verify_measurement_rule(g: Graph, step: MeasurementStep) -> bool:
    return check_measurement_rule(g, step).ok


# ---------------------------------------------------------------------------
# breadth-first searches on a private position-indexed encoding

def _encode(g: Graph) -> tuple[list[int], tuple[int, ...]]:
    labels = list(g.vertices)
    pos = {v: i for i, v in enumerate(labels)}
    adj = [0] * len(labels)
    for u, v in g.edges:
        adj[pos[u]] |= 1 << pos[v]
        adj[pos[v]] |= 1 << pos[u]
    return labels, tuple(adj)


def _lc(adj: tuple[int, ...], v: int) -> tuple[int, ...]:
    nv = adj[v]
    if nv & (nv - 1) == 0:
        return adj
    out = list(adj)
    m = nv
    while m:
        low = m & -m
        u = low.bit_length() - 1
        out[u] ^= nv & ~low
        m ^= low
    return tuple(out)


def _delete(adj: tuple[int, ...], v: int) -> tuple[int, ...]:
    clear = ~(1 << v)
    out = [a & clear for a in adj]
    out[v] = 0
    return tuple(out)


@dataclass(frozen=True)
class SearchResult:
    """Verdict of a bounded search.

    ``verdict`` is one of ``equivalent``, ``inequivalent``, ``feasible``,
    ``infeasible`` or ``unknown``.  ``witness`` is a list of operations
    ``("LC", v)`` / ``("DEL", v)`` on vertex labels when a target was reached.
    """

    verdict: str
    explored: int
    witness: tuple[tuple[str, int], ...] | None = None
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "explored": self.explored,
            "witness": [list(op) for op in self.witness] if self.witness is not None else None,
            "reason": self.reason,
        }


def _trace(parents: dict, key, labels: list[int]) -> tuple[tuple[str, int], ...]:
    ops = []
    while parents[key] is not None:
        key, batch = parents[key]
        ops.extend(reversed(batch))
    ops.reverse()
    return tuple((op, labels[v]) for op, v in ops)


def lc_orbit_equivalent(g: Graph, h: Graph, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Decide whether some sequence of local complementations maps g to h."""
    if g.vertices != h.vertices:
        raise GraphError("LC equivalence needs graphs on the same vertex set")
    labels, start = _encode(g)
    _, goal = _encode(h)
    n = len(labels)
    parents: dict = {start: None}
    queue = deque([start])
    while queue:
        adj = queue.popleft()
        if adj == goal:
            return SearchResult("equivalent", len(parents), _trace(parents, adj, labels))
        for v in range(n):
            nxt = _lc(adj, v)
            if nxt in parents:
                continue
            if len(parents) >= budget:
                return SearchResult("unknown", len(parents), reason="budget exhausted")
            parents[nxt] = (adj, [("LC", v)])
            queue.append(nxt)
    return SearchResult("inequivalent", len(parents))


def lc_orbit(g: Graph, budget: int = DEFAULT_BUDGET) -> list[Graph] | None:
    """All graphs in the LC orbit of ``g``, or None if larger than ``budget``."""
    labels, start = _encode(g)
    seen = {start}
    queue = deque([start])
    while queue:
        adj = queue.popleft()
        for v in range(len(labels)):
            nxt = _lc(adj, v)
            if nxt not in seen:
                if len(seen) >= budget:
                    return None
                seen.add(nxt)
                queue.append(nxt)
    out = []
    for adj in seen:
        edges = [(labels[i], labels[j]) for i in range(len(labels)) for j in range(i + 1, len(labels)) if adj[i] >> j & 1]
        out.append(Graph(labels, edges))
    return out


@dataclass(frozen=True)
class FeasibilityTarget:
    """Two vertex-disjoint Bell pairs to be extracted simultaneously."""

    pair1: tuple[int, int]
    pair2: tuple[int, int]

    def __post_init__(self) -> None:
        if len({*self.pair1, *self.pair2}) != 4:
            raise GraphError("the two pairs must involve four distinct vertices")

    @property
    def protected(self) -> frozenset[int]:
        return frozenset((*self.pair1, *self.pair2))


def _normalize(adj: tuple[int, ...], alive: int, protected: int, ops: list) -> tuple[tuple[int, ...], int]:
    # isolated unprotected qubits are product-state spectators: drop them
    loose = alive & ~protected
    while loose:
        low = loose & -loose
        v = low.bit_length() - 1
        if adj[v] == 0:
            alive &= ~low
            ops.append(("DEL", v))
        loose ^= low
    return adj, alive


def _component(adj: tuple[int, ...], start: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        m = frontier
        while m:
            low = m & -m
            nxt |= adj[low.bit_length() - 1]
            m ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def feasibility_search(
    g: Graph, target: FeasibilityTarget, budget: int = DEFAULT_BUDGET, prune: bool = True
) -> SearchResult:
    """Exhaustive vertex-minor search for the two target Bell pairs.

    Moves are LC at any surviving vertex and deletion of any surviving
    vertex other than the four protected endpoints.  A state is a goal when
    only the protected vertices survive and they carry exactly the two target
    edges.  Two reductions keep the search exact while shrinking it:

    * isolated unprotected vertices are removed on sight (they can never be
      reconnected by LC or deletion);
    * states where a protected vertex is isolated, or where a target pair is
      split across components, are recorded but not expanded, since LC
      preserves and deletion only refines the component structure.

    ``infeasible`` is returned only after every reachable state was seen.
    ``prune=False`` disables the second reduction.
    """
    for v in target.protected:
        if v not in g:
            raise GraphError(f"target vertex {v} is not in the graph")
    labels, adj = _encode(g)
    pos = {v: i for i, v in enumerate(labels)}
    n = len(labels)
    protected = sum(1 << pos[v] for v in target.protected)
    p1 = (pos[target.pair1[0]], pos[target.pair1[1]])
    p2 = (pos[target.pair2[0]], pos[target.pair2[1]])
    goal = [0] * n
    for a, b in (p1, p2):
        goal[a] |= 1 << b
        goal[b] |= 1 << a
    goal_state = (tuple(goal), protected)

    ops0: list = []
    start = _normalize(adj, (1 << n) - 1, protected, ops0)
    parents: dict = {start: None}
    if ops0:
        # keep the normalization of the initial state in the witness
        root = (adj, (1 << n) - 1)
        parents = {root: None, start: (root, ops0)}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        adj, alive = state
        if state == goal_state:
            return SearchResult("feasible", len(parents), _trace(parents, state, labels))
        if prune and _stuck(adj, protected, p1, p2):
            continue
        m = alive
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            moves = [("LC", _lc(adj, v), alive)]
            if not protected & low:
                moves.append(("DEL", _delete(adj, v), alive & ~low))
            for op, nadj, nalive in moves:
                ops = [(op, v)]
                nxt = _normalize(nadj, nalive, protected, ops)
                if nxt in parents:
                    continue
                if len(parents) >= budget:
                    return SearchResult("unknown", len(parents), reason="budget exhausted")
                parents[nxt] = (state, ops)
                queue.append(nxt)
    return SearchResult("infeasible", len(parents))


def _stuck(adj: tuple[int, ...], protected: int, p1: tuple[int, int], p2: tuple[int, int]) -> bool:
    m = protected
    while m:
        low = m & -m
        if adj[low.bit_length() - 1] == 0:
            return True
        m ^= low
    return not (_component(adj, p1[0]) >> p1[1] & 1 and _component(adj, p2[0]) >> p2[1] & 1)


def replay_witness(g: Graph, witness: Iterable[tuple[str, int]]) -> Graph:
    """Re-run a search witness through the graph-level rewrites."""
    for op, v in witness:
        g = local_complement(g, v) if op == "LC" else delete_vertex(g, v)
    return g


# ---------------------------------------------------------------------------
# verification suites (also driven by the ``oracle`` CLI verb)

def run_lc_suite(
    exhaustive_max_n: int = 4, random_cases: int = 200, random_max_n: int = 10, seed: int = 0
) -> dict:
    from gsroute.generators import all_labeled_graphs, random_graph

    passed = failed = 0
    failures = []
    for n in range(1, exhaustive_max_n + 1):
        for g in all_labeled_graphs(n):
            for v in g.vertices:
                if verify_lc_rule(g, v):
                    passed += 1
                else:
                    failed += 1
                    failures.append({"graph": g.edges, "vertex": v})
    rng = random.Random(seed)
    for _ in range(random_cases):
        n = rng.randint(2, random_max_n)
        g = random_graph(n, 0.5, rng)
        v = rng.choice(g.vertices)
        if verify_lc_rule(g, v):
            passed += 1
        else:
            failed += 1
            failures.append({"graph": g.edges, "vertex": v})
    return {"suite": "lc", "passed": passed, "failed": failed, "failures": failures[:10]}


def run_measurement_suite(max_n: int = 5, all_special_neighbors: bool = False) -> dict:
    """Every connected labeled graph up to ``max_n``, every vertex and basis."""
    from gsroute.generators import connected_labeled_graphs

    passed = failed = 0
    failures = []
    for n in range(1, max_n + 1):
        for g in connected_labeled_graphs(n):
            for v in g.vertices:
                steps = [MeasurementStep(b, v) for b in BASES]
                if all_special_neighbors:
                    steps += [MeasurementStep("X", v, w) for w in g.vertices if g.has_edge(v, w)]
                for step in steps:
                    if verify_measurement_rule(g, step):
                        passed += 1
                    else:
                        failed += 1
                        failures.append({"graph": g.edges, "step": step.to_json()})
    return {"suite": "measurement", "passed": passed, "failed": failed, "failures": failures[:10]}


__all__ = [
    "CLIFFORDS",
    "FeasibilityTarget",
    "MeasurementCheck",
    "SearchResult",
    "StateVector",
    "check_measurement_rule",
    "equal_up_to_phase",
    "feasibility_search",
    "graph_state",
    "lc_orbit",
    "lc_orbit_equivalent",
    "replay_witness",
    "run_lc_suite",
    "run_measurement_suite",
    "verify_lc_rule",
    "verify_measurement_rule",
]
