"""Labeled simple graphs and the two primitive rewrites.

Adjacency is stored as one integer bit-set per vertex, with bit ``v`` set in
the mask of ``u`` when ``u`` and ``v`` are adjacent.  Labels are positive
integers and survive every rewrite unchanged.

All operations are pure: they return a new :class:`Graph` and never modify
their input.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence

from gsroute.errors import DuplicateVertexError, GraphError, UnknownVertexError

MAX_VERTICES = 64

Edge = tuple[int, int]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_label(v: object) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise GraphError(f"vertex labels must be positive integers, got {v!r}")
    return v


class Graph:
    """Immutable simple undirected graph on positive-integer labels.

    Parameters
    ----------
    vertices : iterable of int
        Vertex labels. Duplicates are rejected.
    edges : iterable of (int, int)
        Unordered pairs; ``(u, v)`` and ``(v, u)`` denote the same edge and
        repeated edges collapse.  Loops are rejected.
    """

    __slots__ = ("_adj", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Edge] = ()) -> None:
        labels = [_check_label(v) for v in vertices]
        if len(set(labels)) != len(labels):
            raise DuplicateVertexError("duplicate vertex label")
        if len(labels) > MAX_VERTICES:
            raise GraphError(f"at most {MAX_VERTICES} vertices are supported")
        adj = {v: 0 for v in sorted(labels)}
        for u, v in edges:
            if u not in adj:
                raise UnknownVertexError(u)
            if v not in adj:
                raise UnknownVertexError(v)
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._adj = adj
        self._hash: int | None = None

    @classmethod
    def _from_adj(cls, adj: dict[int, int]) -> Graph:
        g = cls.__new__(cls)
        g._adj = adj
        g._hash = None
        return g

    @property
    def vertices(self) -> tuple[int, ...]:
        """Vertex labels in ascending order."""
        return tuple(self._adj)

    @property
    def edges(self) -> list[Edge]:
        """Edges as ``(u, v)`` with ``u < v``, sorted."""
        out = []
        for u, mask in self._adj.items():
            out.extend((u, v) for v in _bits(mask >> (u + 1) << (u + 1)))
        return out

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(self._adj)

    def num_edges(self) -> int:
        return sum(m.bit_count() for m in self._adj.values()) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.neighbor_mask(u) >> v & 1) if v in self._adj else False

    def neighbor_mask(self, v: int) -> int:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertexError(v) from None

    def degree(self, v: int) -> int:
        return self.neighbor_mask(v).bit_count()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._adj.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(vertices={list(self.vertices)}, edges={self.edges})"

    def relabel(self, mapping: dict[int, int]) -> Graph:
        """Rename vertices; labels missing from ``mapping`` are kept."""
        new = [mapping.get(v, v) for v in self._adj]
        return Graph(new, ((mapping.get(u, u), mapping.get(v, v)) for u, v in self.edges))

    def subgraph(self, keep: Iterable[int]) -> Graph:
        """Induced subgraph on ``keep``."""
        keep = set(keep)
        for v in keep:
            self.neighbor_mask(v)
        mask = sum(1 << v for v in keep)
        return Graph._from_adj({v: m & mask for v, m in self._adj.items() if v in keep})

    def is_connected(self) -> bool:
        if not self._adj:
            return True
        start = next(iter(self._adj))
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= self._adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen.bit_count() == len(self._adj)


def neighborhood(g: Graph, v: int) -> frozenset[int]:
    """Return the set of vertices adjacent to ``v``."""
    return frozenset(_bits(g.neighbor_mask(v)))


def delete_vertex(g: Graph, v: int) -> Graph:
    """Remove ``v`` together with every edge incident to it."""
    g.neighbor_mask(v)
    clear = ~(1 << v)
    return Graph._from_adj({u: m & clear for u, m in g._adj.items() if u != v})


def local_complement(g: Graph, v: int) -> Graph:
    """Complement the subgraph induced on the neighborhood of ``v``.

    Every pair of neighbors of ``v`` has its adjacency toggled; the vertex set
    and all other adjacencies are untouched.
    """
    nv = g.neighbor_mask(v)
    adj = dict(g._adj)
    for u in _bits(nv):
        adj[u] ^= nv & ~(1 << u)
    return Graph._from_adj(adj)


def _check_path(g: Graph, path: Sequence[int]) -> None:
    for v in path:
        g.neighbor_mask(v)
    if len(set(path)) != len(path):
        raise DuplicateVertexError(f"path {list(path)} repeats a vertex")


def exterior_neighborhood(g: Graph, path: Sequence[int]) -> frozenset[int]:
    """Union of the neighborhoods of the path vertices, minus the path."""
    for v in path:
        g.neighbor_mask(v)
    union = 0
    on_path = 0
    for v in path:
        union |= g._adj[v]
        on_path |= 1 << v
    return frozenset(_bits(union & ~on_path))


def is_repeater_line(g: Graph, path: Sequence[int]) -> bool:
    """True iff ``path`` is an induced path in ``g``.

    Consecutive vertices must be adjacent and no other pair of path vertices
    may be.
    """
    _check_path(g, path)
    if len(path) < 2:
        raise GraphError("a repeater line needs at least two vertices")
    on_path = sum(1 << v for v in path)
    last = len(path) - 1
    for i, v in enumerate(path):
        allowed = 0
        if i > 0:
            allowed |= 1 << path[i - 1]
        if i < last:
            allowed |= 1 << path[i + 1]
        if g._adj[v] & on_path != allowed:
            return False
    return True


def canonical_form(g: Graph) -> bytes:
    """Label-sensitive deterministic byte encoding of ``g``.

    Two graphs give the same bytes exactly when they have the same labels and
    the same edges.  The empty graph encodes as ``b"V;E"``.
    """
    vs = ",".join(map(str, g._adj))
    es = ",".join(f"{u}-{v}" for u, v in g.edges)
    return f"V{vs};E{es}".encode("ascii")
