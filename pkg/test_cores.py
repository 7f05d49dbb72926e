import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import PROPERTY_SETTINGS, SLOW_SETTINGS, cycle_graph, graphs, path_graph, star_graph
from cores import (
    CorePrefix, NotAttachable, appendices, core_size_bound, extend_forest, find_core,
    has_ssp, is_attachable, is_prefix, is_restricted_augmentation, verify_qcore, witnesses,
)
from elim_forest import (
    ElimForest, is_recursively_connected, is_recursively_optimal, restrict_forest, static_elim_forest,
    validate_elim_forest,
)
from graph_core import Graph


def _star_tree():
    return ElimForest({0: None, **{i: 0 for i in range(1, 6)}})


def test_core_of_single_vertex():
    g = Graph(1)
    k = find_core(g, ElimForest({0: None}), [0], 1)
    assert k.members == frozenset({0})
    assert k.appendices == frozenset()


def test_star_core():
    g, f = star_graph(5), _star_tree()
    k = find_core(g, f, [0], 2)
    assert 0 in k
    assert len(k) - 1 <= 2 * 2
    assert verify_qcore(g, f, k, 2)
    assert is_prefix(f, k.members)


def test_verify_full_vertex_set():
    g, f = star_graph(5), _star_tree()
    everything = CorePrefix(frozenset(range(6)), frozenset())
    for q in (1, 2, 7):
        assert verify_qcore(g, f, everything, q)


def test_verify_rejects_thin_core():
    g, f = star_graph(5), _star_tree()
    k = CorePrefix(frozenset({0, 1}), appendices(f, {0, 1}))
    assert not verify_qcore(g, f, k, 2)
    assert witnesses(g, f, k.members, 2, [0]) == [1]


def test_attachable_examples():
    p3 = path_graph(3)
    fk = ElimForest({1: None})
    r = ElimForest({0: None, 2: None})
    assert is_attachable(p3, fk, r)
    assert is_attachable(p3, fk, ElimForest({}))
    ext = extend_forest(p3, fk, r)
    assert ext.parent == {1: None, 0: 1, 2: 1}
    assert ext.height() == 2
    assert extend_forest(p3, fk, ElimForest({})) == fk


def test_not_attachable_on_square():
    c4 = cycle_graph(4)
    fk = ElimForest({0: None, 2: None})
    r = ElimForest({1: None})
    assert not is_attachable(c4, fk, r)
    with pytest.raises(NotAttachable):
        extend_forest(c4, fk, r)


def test_ssp_examples():
    p3 = path_graph(3)
    assert has_ssp(p3, ElimForest({1: None}), ElimForest({}))
    # star centre 0 with the core {0, 1}; leaf 2 hangs under 0 next to 1
    star = star_graph(2)
    assert has_ssp(star, ElimForest({0: None, 1: 0}), ElimForest({2: None}))
    # the residual tree 2-3 is taller than every core child of 0
    g = Graph.from_edges(4, [(0, 1), (0, 2), (2, 3)])
    assert not has_ssp(g, ElimForest({0: None, 1: 0}), ElimForest({2: None, 3: 2}))


def test_restricted_augmentation():
    g = path_graph(4)
    f = ElimForest({1: None, 0: 1, 2: 1, 3: 2})
    h = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 2)])
    assert is_restricted_augmentation(g, f, {0, 1, 2}, h, 0)
    assert not is_restricted_augmentation(g, f, {1, 2}, h, 0)
    h2 = Graph.from_edges(4, [(1, 2), (2, 3)])
    assert not is_restricted_augmentation(g, f, {0, 1, 2}, h2, 0)
    assert is_restricted_augmentation(g, f, {0, 1, 2}, h2, 1)


def test_core_size_bound_levels():
    assert core_size_bound(1, 1) == 1
    assert core_size_bound(2, 2, seeds=1) == 3 + 3 * (2 * 5 + 1)


@PROPERTY_SETTINGS
@given(g=graphs(max_n=9), q=st.integers(min_value=1, max_value=4), data=st.data())
def test_find_core_properties(g, q, data):
    f = static_elim_forest(g)
    d = f.height()
    seeds = data.draw(st.lists(st.integers(min_value=0, max_value=g.n - 1), max_size=2, unique=True))
    k = find_core(g, f, seeds, q)
    assert is_prefix(f, k.members)
    assert set(seeds) <= k.members
    for s in seeds:
        assert set(f.ancestors(s)) <= k.members
    assert len(k) <= core_size_bound(q, d, seeds=len(seeds))
    assert verify_qcore(g, f, k, q)


@PROPERTY_SETTINGS
@given(g=graphs(max_n=9), data=st.data())
def test_trim_extend_round_trip(g, data):
    f = static_elim_forest(g)
    assert is_recursively_connected(g, f)
    seed = data.draw(st.integers(min_value=0, max_value=g.n - 1))
    k = find_core(g, f, [seed], data.draw(st.integers(min_value=1, max_value=3)))
    rest = [v for v in range(g.n) if v not in k.members]
    fk = restrict_forest(f, k.members)
    assert extend_forest(g, fk, restrict_forest(f, rest)) == f


@SLOW_SETTINGS
@given(g=graphs(min_n=2, max_n=8), data=st.data())
def test_sibling_substitution_after_augmentation(g, data):
    f = static_elim_forest(g)
    d = f.height()
    a, b = data.draw(st.lists(st.integers(min_value=0, max_value=g.n - 1), min_size=2, max_size=2, unique=True))
    removing = g.has_edge(a, b)
    ell = 1 if removing else 0
    k = find_core(g, f, [a, b], d + ell + 1)
    h = g.copy()
    if removing:
        h.remove_edge(a, b)
    else:
        h.add_edge(a, b)
    assert is_restricted_augmentation(g, f, k.members, h, ell)
    fk = static_elim_forest(h.induced(k.members))
    assume(fk.height() <= d)
    r = restrict_forest(f, [v for v in range(g.n) if v not in k.members])
    assert is_attachable(h, fk, r)
    assert has_ssp(h, fk, r)
    ext = extend_forest(h, fk, r)
    assert validate_elim_forest(h, ext)
    assert ext.height() <= d
    assert is_recursively_optimal(h, ext)
