from __future__ import annotations

import random

import pytest
from conftest import as_sets, graphs, naive_delete, naive_lc
from hypothesis import given
from hypothesis import strategies as st

from gsroute.errors import GraphError, InvalidNeighborError, MeasurementSequenceError
from gsroute.generators import random_connected_graph
from gsroute.graph import Graph, delete_vertex, local_complement
from gsroute.measurement import (
    MeasurementLog,
    MeasurementStep,
    apply_sequence,
    measure_x,
    measure_y,
    measure_z,
)
from gsroute.oracle import lc_orbit_equivalent


def test_measure_z(triangle, p3, butterfly):
    assert measure_z(triangle, 3).edges == [(1, 2)]
    assert measure_z(p3, 2).edges == []
    assert set(measure_z(butterfly, 4).edges) == {(1, 2), (1, 3), (3, 5), (5, 6)}


def test_measure_y(p3):
    assert measure_y(p3, 2).edges == [(1, 3)]
    g = Graph([1, 2, 3], [(1, 2)])
    assert measure_y(g, 3) == delete_vertex(g, 3)
    c4 = Graph([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (1, 4)])
    # hand computation: LC_2 adds (1,3), then 2 goes
    assert set(measure_y(c4, 2).edges) == {(1, 3), (3, 4), (1, 4)}


def test_measure_x_examples(p3, butterfly):
    assert measure_x(p3, 2, 1).edges == [(1, 3)]
    h = measure_x(measure_x(butterfly, 3, 1), 4, 1)
    assert set(h.edges) == {(1, 6), (2, 5)}
    k2 = Graph([1, 2], [(1, 2)])
    out = measure_x(k2, 1, 2)
    assert out.vertices == (2,) and out.edges == []


def test_measure_x_default_and_isolated(p3):
    assert measure_x(p3, 2) == measure_x(p3, 2, 1)
    g = Graph([1, 2, 3], [(1, 2)])
    assert measure_x(g, 3) == delete_vertex(g, 3)
    with pytest.raises(InvalidNeighborError):
        measure_x(p3, 2, 2)
    with pytest.raises(InvalidNeighborError):
        measure_x(g, 1, 3)


@given(graphs(min_n=1, max_n=10), st.data())
def test_rule_compositions(g, data):
    v = data.draw(st.sampled_from(g.vertices))
    vs, es = as_sets(g)
    assert as_sets(measure_y(g, v)) == naive_delete(*naive_lc(vs, es, v), v)
    nbrs = sorted(u for u in g.vertices if g.has_edge(u, v))
    if nbrs:
        w = data.draw(st.sampled_from(nbrs))
        expected = naive_lc(*naive_delete(*naive_lc(*naive_lc(vs, es, w), v), v), w)
        assert as_sets(measure_x(g, v, w)) == expected
    for rule in (measure_x, measure_y, measure_z):
        assert len(rule(g, v)) == len(g) - 1


def test_x_rule_independent_of_special_neighbor_up_to_lc():
    rng = random.Random(7)
    checked = 0
    while checked < 40:
        g = random_connected_graph(rng.randint(3, 7), 0.5, rng)
        v = rng.choice(g.vertices)
        nbrs = [u for u in g.vertices if g.has_edge(u, v)]
        if len(nbrs) < 2:
            continue
        w1, w2 = rng.sample(nbrs, 2)
        res = lc_orbit_equivalent(measure_x(g, v, w1), measure_x(g, v, w2))
        assert res.verdict == "equivalent"
        checked += 1


def test_apply_sequence(butterfly, p3):
    g, log = apply_sequence(butterfly, [])
    assert g == butterfly and len(log) == 0
    g, _ = apply_sequence(butterfly, [MeasurementStep("Z", 3), MeasurementStep("Z", 4)])
    assert set(g.edges) == {(1, 2), (5, 6)}
    g, _ = apply_sequence(p3, [MeasurementStep("Y", 2)])
    assert g.edges == [(1, 3)]
    g, log = apply_sequence(butterfly, [MeasurementStep("X", 3), MeasurementStep("X", 4)])
    assert [s.special_neighbor for s in log] == [1, 1]


def test_apply_sequence_reports_failing_index(p3):
    with pytest.raises(MeasurementSequenceError) as info:
        apply_sequence(p3, [MeasurementStep("Z", 1), MeasurementStep("X", 2, 1)])
    assert info.value.index == 1


def test_step_validation_and_json():
    with pytest.raises(GraphError):
        MeasurementStep("W", 1)
    with pytest.raises(GraphError):
        MeasurementStep("Z", 1, 2)
    with pytest.raises(GraphError):
        MeasurementLog((MeasurementStep("Z", 1), MeasurementStep("Y", 1)))
    step = MeasurementStep("X", 3, 1)
    assert step.to_json() == {"basis": "X", "target": 3, "w": 1}
    assert MeasurementStep.from_json(step.to_json()) == step


def test_rewrites_are_pure(butterfly):
    before = butterfly.edges
    measure_x(butterfly, 3)
    local_complement(butterfly, 1)
    assert butterfly.edges == before
