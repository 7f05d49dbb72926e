import copy

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import PROPERTY_SETTINGS, SLOW_SETTINGS, toggle_sequences
from graph_core import Graph, GraphError
from oracle import has_k_path_bf
from postpone import LongPathDetector, PostponeWrapper


class SmallSets:
    """Sets of at most `cap` elements: a downward-closed family."""

    def __init__(self, cap: int):
        self.cap = cap
        self.items = set()

    def try_insert(self, x) -> bool:
        if len(self.items) >= self.cap:
            return False
        self.items.add(x)
        return True

    def remove(self, x) -> None:
        self.items.discard(x)

    def verdict(self) -> bool:
        return True

    def clone(self) -> "SmallSets":
        return copy.deepcopy(self)


def test_accepted_goes_inside():
    w = PostponeWrapper(SmallSets(1))
    w.insert("a")
    assert w.inner.items == {"a"}
    assert w.member()
    assert "a" in w and len(w) == 1


def test_rejected_is_queued():
    w = PostponeWrapper(SmallSets(1))
    w.insert("a")
    w.insert("b")
    assert list(w.queue) == ["b"]
    assert not w.member()
    assert w.check_invariant()


def test_queue_blocks_later_inserts():
    w = PostponeWrapper(SmallSets(1))
    w.insert("a")
    w.insert("b")
    w.inner.cap = 5
    w.insert("c")
    assert list(w.queue) == ["b", "c"]


def test_remove_flushes_queue():
    w = PostponeWrapper(SmallSets(2))
    for x in "abcd":
        w.insert(x)
    assert list(w.queue) == ["c", "d"]
    w.remove("a")
    assert list(w.queue) == ["d"]
    assert w.inner.items == {"b", "c"}
    w.remove("c")
    assert w.member()
    assert w.inner.items == {"b", "d"}


def test_remove_from_queue_middle():
    w = PostponeWrapper(SmallSets(1))
    for x in "abcd":
        w.insert(x)
    w.remove("c")
    assert list(w.queue) == ["b", "d"]
    assert w.inner.items == {"a"}


def test_remove_absent_is_noop():
    w = PostponeWrapper(SmallSets(1))
    w.insert("a")
    before = w.stats()
    w.remove("zz")
    after = w.stats()
    assert after["inner_ops"] == before["inner_ops"]
    assert after["inner_size"] == 1 and after["queued"] == 0


def test_duplicate_insert_is_noop():
    w = PostponeWrapper(SmallSets(3))
    w.insert("a")
    w.insert("a")
    assert len(w) == 1


@PROPERTY_SETTINGS
@given(cap=st.integers(min_value=0, max_value=4),
       ops=st.lists(st.tuples(st.booleans(), st.integers(min_value=0, max_value=7)), max_size=60))
def test_wrapper_tracks_the_set(cap, ops):
    w = PostponeWrapper(SmallSets(cap))
    shadow = set()
    for add, x in ops:
        if add:
            w.insert(x)
            shadow.add(x)
        else:
            w.remove(x)
            shadow.discard(x)
        assert set(w.in_inner) | set(w.queue) == shadow
        assert w.member() == (len(shadow) <= cap)
        assert w.check_invariant()
    stats = w.stats()
    assert stats["inner_ops"] <= 3 * stats["wrapper_ops"]


def test_detector_small_example():
    det = LongPathDetector(3, 3)
    det.insert(0, 1)
    assert not det.contains()
    det.insert(1, 2)
    assert det.contains()
    det.insert(0, 2)
    assert det.contains()
    assert det.stats()["queued"] == 1
    det.remove(0, 1)
    assert det.stats()["queued"] == 0
    assert det.contains()
    det.remove(1, 2)
    assert not det.contains()
    assert det.has_edge(2, 0)


def test_detector_rejects_bad_edges():
    det = LongPathDetector(3, 3)
    with pytest.raises(GraphError):
        det.insert(1, 1)
    with pytest.raises(GraphError):
        det.remove(0, 3)


@SLOW_SETTINGS
@given(k=st.integers(min_value=2, max_value=5), toggles=toggle_sequences(7, max_ops=30))
def test_detector_matches_brute_force(k, toggles):
    det = LongPathDetector(7, k)
    g = Graph(7)
    for u, v in toggles:
        if g.has_edge(u, v):
            det.remove(u, v)
            g.remove_edge(u, v)
        else:
            det.insert(u, v)
            g.add_edge(u, v)
        assert det.contains() == has_k_path_bf(g, k)
        assert sorted(det.graph().edges()) == sorted(g.edges())
        assert det.wrapper.check_invariant()
