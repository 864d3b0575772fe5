from __future__ import annotations

import itertools

import pytest
from hypothesis import strategies as st

from gsroute.graph import Graph

BUTTERFLY_EDGES = {(1, 2), (3, 4), (5, 6), (1, 3), (3, 5), (2, 4), (4, 6)}


def naive_lc(vertices, edges, v):
    """Set-based local complementation, independent of the bit-set code."""
    edges = {frozenset(e) for e in edges}
    nbrs = {u for e in edges if v in e for u in e if u != v}
    k = {frozenset(p) for p in itertools.combinations(sorted(nbrs), 2)}
    return set(vertices), {tuple(sorted(e)) for e in edges ^ k}


def naive_delete(vertices, edges, v):
    return set(vertices) - {v}, {tuple(sorted(e)) for e in edges if v not in e}


def as_sets(g: Graph):
    return set(g.vertices), set(g.edges)


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 12):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(range(1, n + 1), [p for p, keep in zip(pairs, mask) if keep])


@pytest.fixture
def butterfly() -> Graph:
    return Graph(range(1, 7), BUTTERFLY_EDGES)


@pytest.fixture
def p3() -> Graph:
    return Graph([1, 2, 3], [(1, 2), (2, 3)])


@pytest.fixture
def triangle() -> Graph:
    return Graph([1, 2, 3], [(1, 2), (1, 3), (2, 3)])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
