"""Graph families used by verification sweeps and randomized searches."""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterator

from gsroute.graph import Graph


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    """Every simple graph on vertices ``1..n`` (2**(n choose 2) of them)."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    verts = range(1, n + 1)
    for mask in range(1 << len(pairs)):
        yield Graph(verts, (p for i, p in enumerate(pairs) if mask >> i & 1))


def connected_labeled_graphs(n: int) -> Iterator[Graph]:
    return (g for g in all_labeled_graphs(n) if g.is_connected())


def connected_graphs_up_to_isomorphism(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class of connected graphs on n <= 7
    vertices, relabeled onto ``1..n``."""
    from networkx.generators.atlas import graph_atlas_g

    if n > 7:
        raise ValueError("the graph atlas only covers n <= 7")
    for h in graph_atlas_g():
        if h.number_of_nodes() != n or n == 0:
            continue
        g = Graph(range(1, n + 1), ((u + 1, v + 1) for u, v in h.edges()))
        if g.is_connected():
            yield g


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u, v in itertools.combinations(range(1, n + 1), 2) if rng.random() < p]
    return Graph(range(1, n + 1), edges)


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """Erdos-Renyi sample conditioned on connectivity (by rejection)."""
    while True:
        g = random_graph(n, p, rng)
        if g.is_connected():
            return g
