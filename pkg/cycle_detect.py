"""
Fully dynamic detection of a simple cycle on at least k vertices.

CycleStructure keeps a spanning forest and a nice partition whose parts are the
biconnected components of the graph; it refuses any insertion that would create
a long cycle. LongCycleDetector wraps it with postponed insertions.
"""

import copy
import logging
from typing import List, Optional

from dyn_forest import INF, DynForest
from dynamic_td import Outcome
from elim_forest import TreedepthExceeded
from graph_core import Edge, Graph, GraphError, edge_key
from nice_partition import NicePartition
from postpone import PostponeWrapper

log = logging.getLogger("tdyn.cycle_detect")


class _LongCycle(Exception):
    pass


class CycleStructure:
    """Maintains a graph without cycles on k or more vertices; insert may refuse."""

    def __init__(self, n: int, k: int, logger: Optional[logging.Logger] = None):
        self.n = n
        self.k = k
        self.d = max(2, k * k)
        self.log = logger or log
        self.forest = DynForest(n)
        self.partition_ = NicePartition(n, self.d, k, connected=self.forest.connected, logger=self.log)

    # weak-structure interface, elements are canonical edges

    def insert(self, e: Edge) -> Outcome:
        u, v = e
        np_ = self.partition_
        if np_.edge(u, v):
            return Outcome.ACCEPTED
        p = self.forest.pathlen(u, v)
        if p == INF:
            np_.new(u, v)
            self.forest.link(u, v)
            return Outcome.ACCEPTED
        if p >= self.k - 1:
            self.log.debug(f"refused {e}: tree path of {p} edges closes a long cycle")
            return Outcome.REJECTED
        pi = [edge_key(a, b) for a, b in self.forest.path(u, v)]
        try:
            with np_.transaction():
                for e1, e2 in zip(pi, pi[1:]):
                    if not np_.same(e1, e2):
                        np_.merge(e1, e2)
                if np_.pathlb(u, v, pi[0], pi[-1]):
                    raise _LongCycle()
                np_.np_insert(u, v, pi[0], pi[-1])
        except (_LongCycle, TreedepthExceeded) as exc:
            self.log.debug(f"refused {e}: {type(exc).__name__}")
            return Outcome.REJECTED
        return Outcome.ACCEPTED

    def try_insert(self, e: Edge) -> bool:
        return self.insert(e) is Outcome.ACCEPTED

    def remove(self, e: Edge) -> None:
        u, v = e
        np_ = self.partition_
        if not np_.edge(u, v):
            raise GraphError(f"edge {edge_key(u, v)} not present")
        if np_.bridge(u, v):
            np_.destroy(u, v)
            self.forest.cut(u, v)
            return
        route = None
        for i in range(3, self.k):
            route = np_.pathub(i, u, v, e, e)
            if route is not None:
                break
        if route is None:
            raise AssertionError(f"no short detour for {e} in a part without long cycles")
        np_.np_remove(u, v)
        pi = [edge_key(a, b) for a, b in zip(route, route[1:])]
        if self.forest.has_edge(u, v):
            self.forest.cut(u, v)
            for a, b in pi:
                if self.forest.link(a, b):
                    break
        for e1, e2 in zip(pi, pi[1:]):
            if np_.same(e1, e2) and np_.articul(e1, e2):
                np_.split(e1, e2)

    def verdict(self) -> bool:
        return True

    def clone(self) -> "CycleStructure":
        return copy.deepcopy(self)

    def partition(self) -> List[frozenset]:
        return self.partition_.parts()

    def edges(self) -> List[Edge]:
        return self.partition_.edges()


class LongCycleDetector:
    def __init__(self, n: int, k: int, logger: Optional[logging.Logger] = None):
        self.n = n
        self.k = k
        self.log = logger or log
        self.inner = CycleStructure(n, k, logger=self.log)
        self.wrapper = PostponeWrapper(self.inner, logger=self.log)

    def _check(self, u: int, v: int) -> None:
        for x in (u, v):
            if not 0 <= x < self.n:
                raise GraphError(f"vertex {x} out of range [0, {self.n})")
        if u == v:
            raise GraphError(f"self-loop on {u}")

    def insert(self, u: int, v: int) -> None:
        self._check(u, v)
        self.wrapper.insert(edge_key(u, v))

    def remove(self, u: int, v: int) -> None:
        self._check(u, v)
        self.wrapper.remove(edge_key(u, v))

    def contains(self) -> bool:
        return not self.wrapper.member()

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.wrapper

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, list(self.wrapper.in_inner) + list(self.wrapper.queue))

    def inner_graph(self) -> Graph:
        return Graph.from_edges(self.n, self.inner.edges())

    def partition(self) -> List[frozenset]:
        return self.inner.partition()

    def stats(self) -> dict:
        return self.wrapper.stats()
