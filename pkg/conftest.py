"""Shared hypothesis settings, graph strategies and small graph builders for the suites."""

from typing import Iterable, List, Tuple

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from graph_core import Graph

PROPERTY_SETTINGS = settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)

SLOW_SETTINGS = settings(
    max_examples=15,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def bowtie() -> Graph:
    # triangles 0-1-2 and 2-3-4 sharing vertex 2
    return Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def all_pairs(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def edge_set(edges: Iterable[Tuple[int, int]]) -> set:
    return {(min(a, b), max(a, b)) for a, b in edges}


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8, max_edges: int = 14) -> Graph:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = all_pairs(n)
    if not pairs:
        return Graph(n)
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=min(max_edges, len(pairs))))
    return Graph.from_edges(n, chosen)


@st.composite
def trees(draw, min_n: int = 1, max_n: int = 10) -> Graph:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    edges = [(draw(st.integers(min_value=0, max_value=v - 1)), v) for v in range(1, n)]
    return Graph.from_edges(n, edges)


@st.composite
def toggle_sequences(draw, n: int, max_ops: int = 40) -> List[Tuple[int, int]]:
    """Pairs to toggle: absent edges get inserted, present ones removed."""
    pairs = all_pairs(n)
    return draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=max_ops))
