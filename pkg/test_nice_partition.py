import pytest

from elim_forest import TreedepthExceeded, is_recursively_optimal
from graph_core import GraphError
from nice_partition import NicePartition, PartitionError
from oracle import treedepth_bf


def _chain(np_: NicePartition, vertices):
    """One part holding the path through vertices."""
    np_.new(vertices[0], vertices[1])
    for a, b, c in zip(vertices, vertices[1:], vertices[2:]):
        np_.new(b, c)
        np_.merge((b, a), (b, c))


def _triangle(np_: NicePartition, a: int, b: int, c: int) -> None:
    _chain(np_, [a, b, c])
    np_.np_insert(a, c, (a, b), (b, c))


def _bowtie(np_: NicePartition) -> None:
    _triangle(np_, 0, 1, 2)
    _triangle(np_, 2, 3, 4)


def test_new_and_destroy():
    np_ = NicePartition(4, 2, 3)
    np_.new(0, 1)
    assert np_.edge(1, 0)
    assert np_.bridge(0, 1)
    assert np_.parts() == [frozenset({(0, 1)})]
    np_.destroy(1, 0)
    assert not np_.edge(0, 1)
    assert np_.parts() == []
    assert np_.audit() == []


def test_new_errors():
    np_ = NicePartition(4, 2, 3)
    np_.new(0, 1)
    np_.new(1, 2)
    with pytest.raises(PartitionError):
        np_.new(0, 2)
    with pytest.raises(GraphError):
        np_.new(3, 3)


def test_same_parts():
    np_ = NicePartition(5, 3, 4)
    np_.new(0, 1)
    np_.new(2, 3)
    assert not np_.same((0, 1), (2, 3))
    tri = NicePartition(5, 3, 4)
    _triangle(tri, 0, 1, 2)
    assert tri.same((0, 1), (1, 2)) and tri.same((0, 2), (0, 1))
    assert not tri.bridge(0, 1)
    with pytest.raises(PartitionError):
        tri.destroy(0, 1)


def test_chord_inside_square():
    np_ = NicePartition(4, 3, 5)
    _chain(np_, [0, 1, 2, 3])
    np_.np_insert(3, 0, (2, 3), (0, 1))
    np_.np_insert(0, 2, (0, 1), (1, 2))
    assert len(np_.parts()) == 1
    before = np_.parts()
    with pytest.raises(TreedepthExceeded):
        np_.np_insert(1, 3, (0, 1), (2, 3))
    assert np_.parts() == before
    assert not np_.edge(1, 3)
    assert np_.audit() == []


def test_remove_inside_part():
    np_ = NicePartition(3, 3, 4)
    _triangle(np_, 0, 1, 2)
    np_.np_remove(0, 2)
    assert np_.parts() == [frozenset({(0, 1), (1, 2)})]
    assert np_.audit() == []
    np_.np_remove(1, 2)
    with pytest.raises(PartitionError):
        np_.np_remove(0, 1)


def test_bowtie_merge_split():
    np_ = NicePartition(5, 3, 5)
    _bowtie(np_)
    assert len(np_.parts()) == 2
    assert not np_.same((0, 1), (3, 4))
    with pytest.raises(PartitionError):
        np_.articul((0, 2), (2, 3))
    part = np_.merge((2, 0), (2, 3))
    assert len(part.edges) == 6
    f = np_.local_forest(0, 1)
    assert f.height() == treedepth_bf(part.mugs.graph()) == 3
    assert is_recursively_optimal(part.mugs.graph(), f)
    assert np_.articul((0, 2), (2, 3))
    assert not np_.articul((0, 2), (1, 2))
    assert np_.audit(optimality=True) == []

    np_.split((2, 0), (2, 3))
    assert np_.parts() == sorted(
        [frozenset({(0, 1), (0, 2), (1, 2)}), frozenset({(2, 3), (2, 4), (3, 4)})], key=sorted
    )
    assert not np_.same((0, 1), (2, 3))
    assert np_.audit() == []


def test_split_needs_a_separator():
    np_ = NicePartition(3, 3, 4)
    _triangle(np_, 0, 1, 2)
    with pytest.raises(PartitionError):
        np_.split((1, 0), (1, 2))


def test_merge_over_depth_leaves_parts():
    np_ = NicePartition(4, 2, 3)
    _chain(np_, [0, 1, 2])
    np_.new(2, 3)
    before = np_.parts()
    with pytest.raises(TreedepthExceeded):
        np_.merge((2, 1), (2, 3))
    assert np_.parts() == before
    assert np_.audit() == []


def test_transaction_rolls_back_merges():
    np_ = NicePartition(3, 2, 3)
    np_.new(0, 1)
    np_.new(1, 2)
    with pytest.raises(TreedepthExceeded):
        with np_.transaction():
            np_.merge((1, 0), (1, 2))
            np_.np_insert(0, 2, (0, 1), (1, 2))
    assert np_.parts() == [frozenset({(0, 1)}), frozenset({(1, 2)})]
    assert np_.audit() == []


def test_transaction_keeps_successful_block():
    np_ = NicePartition(3, 3, 4)
    np_.new(0, 1)
    np_.new(1, 2)
    with np_.transaction():
        np_.merge((1, 0), (1, 2))
    assert np_.same((0, 1), (1, 2))


def test_path_queries_on_five_cycle():
    np_ = NicePartition(5, 4, 5)
    _chain(np_, [0, 1, 2, 3, 4])
    assert np_.pathlb(0, 4, (0, 1), (3, 4))
    assert not np_.pathlb(1, 3, (0, 1), (3, 4))
    np_.np_insert(4, 0, (3, 4), (0, 1))
    for a in range(5):
        b = (a + 1) % 5
        e = (min(a, b), max(a, b))
        assert np_.pathlb(a, b, e, e)
    assert np_.pathub(2, 0, 1, (0, 1), (0, 1)) == [0, 1]
    assert np_.pathub(3, 0, 2, (0, 1), (1, 2)) == [0, 1, 2]
    assert np_.pathub(3, 0, 3, (0, 1), (2, 3)) == [0, 4, 3]
    assert np_.pathub(4, 0, 3, (0, 1), (2, 3)) == [0, 1, 2, 3]
