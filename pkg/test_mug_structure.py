import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SLOW_SETTINGS, path_graph, toggle_sequences
from dynamic_td import Outcome
from graph_core import Graph
from mug_structure import MugStructure
from oracle import BoundariedGraph, conf_bf, has_k_path_bf


def _subtree_fragment(m: MugStructure, g: Graph, v: int) -> BoundariedGraph:
    below = m.export_forest().descendants(v)
    boundary = set(m.sreach(v))
    keep = below | boundary
    edges = [(a, b) for a, b in g.edges() if a in keep and b in keep and (a in below or b in below)]
    return BoundariedGraph.build(sorted(keep), edges, boundary)


def test_needs_scheme_or_k():
    with pytest.raises(ValueError):
        MugStructure(3, 2)


def test_single_vertex_path():
    assert MugStructure(3, 1, k=1).member()
    assert not MugStructure(0, 1, k=1).member()


def test_edgeless_has_no_longer_path():
    m = MugStructure(4, 1, k=2)
    assert not m.member()
    assert m.audit() == []


def test_member_flips_on_last_path_edge():
    m = MugStructure(4, 3, k=4)
    for u in range(2):
        assert m.mug_insert(u, u + 1) is Outcome.ACCEPTED
        assert not m.member()
    assert m.mug_insert(2, 3) is Outcome.ACCEPTED
    assert m.member()
    m.mug_remove(2, 3)
    assert not m.member()
    assert m.audit() == []


def test_from_graph_keeps_summaries():
    m = MugStructure.from_graph(path_graph(5), 3, k=5)
    assert m.member()
    g = path_graph(5)
    for v in range(5):
        assert set(m.conf_of(v).configs) == conf_bf(_subtree_fragment(m, g, v), 5)


def test_mug_lists_follow_summaries():
    m = MugStructure.from_graph(path_graph(3), 2, k=3)
    for v in m.vertices():
        b = m.records[v].bucket
        for c in m.conf_of(v).configs:
            assert v in m.mug(b, c)


@SLOW_SETTINGS
@given(k=st.integers(min_value=2, max_value=4), toggles=toggle_sequences(6, max_ops=20))
def test_membership_matches_brute_force(k, toggles):
    m = MugStructure(6, k - 1, k=k)
    g = Graph(6)
    for u, v in toggles:
        if g.has_edge(u, v):
            m.mug_remove(u, v)
            g.remove_edge(u, v)
        elif m.try_insert(u, v):
            g.add_edge(u, v)
        assert m.member() == has_k_path_bf(g, k)
        assert m.audit(g) == []
    for v in range(6):
        assert set(m.conf_of(v).configs) == conf_bf(_subtree_fragment(m, g, v), k)
