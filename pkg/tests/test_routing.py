from __future__ import annotations

import random

import networkx as nx
import pytest

from gsroute.bottleneck import make_grid, make_ring, to_networkx
from gsroute.errors import (
    BudgetExhausted,
    DisconnectedPairError,
    GraphError,
    NoRouteError,
    NotRepeaterLineError,
)
from gsroute.generators import connected_graphs_up_to_isomorphism, random_connected_graph
from gsroute.graph import Graph, exterior_neighborhood
from gsroute.routing import (
    best_route,
    compare_protocols,
    enumerate_repeater_lines,
    repeater_protocol,
    search_longer_route_advantage,
    shortest_path,
    x_protocol,
)

P4 = Graph([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4)])
STAR = Graph([1, 2, 3, 4], [(4, 1), (4, 2), (4, 3)])


def brute_force_induced_paths(g: Graph, a: int, b: int, max_length: int) -> set[tuple[int, ...]]:
    h = to_networkx(g)
    out = set()
    for p in nx.all_simple_paths(h, a, b, cutoff=max_length):
        if h.subgraph(p).number_of_edges() == len(p) - 1:
            out.add(tuple(p))
    return out


def test_shortest_path_examples():
    assert shortest_path(P4, 1, 4).vertices == (1, 2, 3, 4)
    assert shortest_path(make_ring(6), 1, 4).vertices == (1, 2, 3, 4)
    sp = shortest_path(make_grid(3), 1, 6)
    assert sp.vertices == (1, 2, 4, 6) and sp.is_shortest and sp.is_repeater_line


def test_shortest_path_matches_networkx_lexicographic_min():
    rng = random.Random(5)
    for _ in range(100):
        g = random_connected_graph(rng.randint(2, 10), 0.35, rng)
        a, b = rng.sample(g.vertices, 2)
        expected = min(tuple(p) for p in nx.all_shortest_paths(to_networkx(g), a, b))
        assert shortest_path(g, a, b).vertices == expected


def test_shortest_path_errors():
    with pytest.raises(DisconnectedPairError):
        shortest_path(Graph([1, 2, 3], [(1, 2)]), 1, 3)
    with pytest.raises(GraphError):
        shortest_path(P4, 2, 2)


def test_enumerate_examples():
    ring = make_ring(6)
    assert [c.vertices for c in enumerate_repeater_lines(ring, 1, 4, 5)] == [(1, 2, 3, 4), (1, 6, 5, 4)]
    k4 = Graph([1, 2, 3, 4], [(a, b) for a in range(1, 5) for b in range(a + 1, 5)])
    assert [c.vertices for c in enumerate_repeater_lines(k4, 1, 2, 3)] == [(1, 2)]
    lines = [c.vertices for c in enumerate_repeater_lines(make_grid(3), 2, 5, 5)]
    assert {(2, 1, 3, 5), (2, 4, 3, 5), (2, 4, 6, 5)} <= set(lines)
    assert set(lines) == brute_force_induced_paths(make_grid(3), 2, 5, 5)
    assert enumerate_repeater_lines(ring, 1, 4, 2) == []


def test_enumerate_matches_brute_force():
    rng = random.Random(9)
    for _ in range(150):
        n = rng.randint(2, 10)
        g = random_connected_graph(n, rng.uniform(0.2, 0.6), rng)
        a, b = rng.sample(g.vertices, 2)
        max_len = rng.randint(1, n - 1)
        try:
            got = enumerate_repeater_lines(g, a, b, max_len)
        except GraphError:
            continue
        assert [c.vertices for c in got] == sorted(
            brute_force_induced_paths(g, a, b, max_len), key=lambda p: (len(p), p)
        )
        for c in got:
            assert c.is_repeater_line and c.length == len(c.vertices) - 1
            assert c.exterior_size == len(exterior_neighborhood(g, c.vertices))


def test_enumerate_contains_shortest_path():
    rng = random.Random(10)
    for _ in range(100):
        n = rng.randint(2, 10)
        g = random_connected_graph(n, 0.4, rng)
        a, b = rng.sample(g.vertices, 2)
        sp = shortest_path(g, a, b)
        assert sp.vertices in {c.vertices for c in enumerate_repeater_lines(g, a, b, n - 1)}


def test_enumerate_budget():
    g = random_connected_graph(12, 0.4, random.Random(0))
    with pytest.raises(BudgetExhausted):
        enumerate_repeater_lines(g, 1, 12, 11, node_budget=3)


def test_repeater_protocol_examples():
    out = repeater_protocol(P4, (1, 2, 3, 4))
    assert (out.z_count, out.x_count) == (0, 2) and out.final_graph.edges == [(1, 4)]
    out = repeater_protocol(make_grid(3), (1, 3, 5))
    assert out.total == 4 and out.leftover_edges == 0
    assert [s.target for s in out.log] == [2, 4, 6, 3]
    assert out.final_graph.edges == [(1, 5)]
    out = repeater_protocol(STAR, (1, 4, 2))
    assert out.total == 2 and out.final_graph.edges == [(1, 2)]


def test_x_protocol_examples():
    out = x_protocol(P4, (1, 2, 3, 4))
    assert (out.x_count, out.z_count) == (2, 0) and out.final_graph.edges == [(1, 4)]
    out = x_protocol(make_grid(3), (1, 3, 5))
    assert out.x_count == 1 and out.total <= 4
    assert out.log.steps[0].special_neighbor == 1
    mirror = x_protocol(make_grid(3), (2, 4, 6))
    assert mirror.total == out.total


def test_protocols_reject_non_lines(triangle):
    with pytest.raises(NotRepeaterLineError):
        x_protocol(triangle, (1, 2, 3))
    with pytest.raises(NotRepeaterLineError):
        repeater_protocol(triangle, (1, 2, 3))


def test_compare_protocols_examples():
    cmp = compare_protocols(P4, (1, 2, 3, 4))
    assert (cmp.repeater_total, cmp.x_total, cmp.x_leq_repeater) == (2, 2, True)
    cmp = compare_protocols(make_grid(3), (1, 3, 5))
    assert cmp.repeater_total == 4 and cmp.x_total <= 4 and cmp.x_leq_repeater


def test_best_route_examples():
    cand, out = best_route(P4, 1, 4, 3)
    assert cand.vertices == (1, 2, 3, 4) and out.total == 2
    # hand-applied X rule on C6: after X_2, X_3 the ends still touch 6 and 5,
    # so both arcs cost 2 X + 2 Z and the tie goes to (1,2,3,4)
    cand, out = best_route(make_ring(6), 1, 4, 5)
    assert cand.vertices == (1, 2, 3, 4) and out.total == 4
    assert [s.target for s in out.log] == [2, 3, 5, 6]
    assert x_protocol(make_ring(6), (1, 6, 5, 4)).total == 4
    with pytest.raises(NoRouteError):
        best_route(make_ring(6), 1, 4, 2)
    with pytest.raises(GraphError):
        best_route(P4, 1, 4, 3, objective="fastest")


def test_best_route_leftover_objective():
    g = make_grid(3)
    cand, out = best_route(g, 1, 6, 5, "max_leftover_edges")
    for c in enumerate_repeater_lines(g, 1, 6, 5):
        assert x_protocol(g, c).leftover_edges <= out.leftover_edges


def test_protocol_invariants_on_all_small_graphs():
    for n in range(2, 6):
        for g in connected_graphs_up_to_isomorphism(n):
            for a in g.vertices:
                for b in g.vertices:
                    if a == b:
                        continue
                    for c in enumerate_repeater_lines(g, a, b, n - 1):
                        rep = repeater_protocol(g, c)
                        xp = x_protocol(g, c)
                        ext = exterior_neighborhood(g, c.vertices)
                        zs = {s.target for s in xp.log if s.basis == "Z"}
                        assert zs <= ext
                        assert rep.z_count == len(ext)
                        assert xp.z_count <= c.exterior_size
                        for out in (rep, xp):
                            assert out.total == out.x_count + out.z_count == len(out.log)
                            assert out.final_graph.degree(a) == out.final_graph.degree(b) == 1


def test_longer_route_search_is_seed_deterministic():
    first = search_longer_route_advantage(n=12, trials=50, seed=0)
    second = search_longer_route_advantage(n=12, trials=50, seed=0)
    assert first is not None
    assert first.to_json() == second.to_json()
    assert first.winner.length > first.shortest.length
    assert first.winner_outcome.total < first.shortest_outcome.total
