"""
Postponed insertions. A structure that can only maintain sets inside a
downward-closed family (rejecting insertions that would leave it) is wrapped
so that any set can be maintained: rejected elements wait in a FIFO queue and
are retried whenever something is removed.
"""

import logging
from collections import OrderedDict
from typing import Any, Hashable, Optional, Protocol

from graph_core import Graph, GraphError, edge_key
from mug_structure import MugStructure

log = logging.getLogger("tdyn.postpone")


class WeakStructure(Protocol):
    def try_insert(self, x: Any) -> bool: ...
    def remove(self, x: Any) -> None: ...
    def verdict(self) -> bool: ...
    def clone(self) -> "WeakStructure": ...


class PostponeWrapper:
    def __init__(self, inner: WeakStructure, logger: Optional[logging.Logger] = None):
        self.inner = inner
        self.log = logger or log
        self.queue: "OrderedDict[Hashable, None]" = OrderedDict()
        self.in_inner: set = set()
        self.inner_ops = 0
        self.wrapper_ops = 0

    def __contains__(self, x: Hashable) -> bool:
        return x in self.in_inner or x in self.queue

    def __len__(self) -> int:
        return len(self.in_inner) + len(self.queue)

    def _try_inner(self, x: Hashable) -> bool:
        self.inner_ops += 1
        if self.inner.try_insert(x):
            self.in_inner.add(x)
            return True
        return False

    def insert(self, x: Hashable) -> None:
        self.wrapper_ops += 1
        if x in self:
            return
        if not self.queue and self._try_inner(x):
            return
        self.queue[x] = None
        self.log.debug(f"postponed {x}, queue={len(self.queue)}")

    def remove(self, x: Hashable) -> None:
        self.wrapper_ops += 1
        if x in self.queue:
            del self.queue[x]
        elif x in self.in_inner:
            self.in_inner.discard(x)
            self.inner_ops += 1
            self.inner.remove(x)
        else:
            return
        self.flush()

    def flush(self) -> None:
        while self.queue:
            front = next(iter(self.queue))
            if not self._try_inner(front):
                break
            del self.queue[front]

    def member(self) -> bool:
        """Is the maintained set inside the family?"""
        return not self.queue

    def check_invariant(self) -> bool:
        """The queue front must still be refused by the inner structure (tried on a clone)."""
        if not self.queue:
            return True
        front = next(iter(self.queue))
        return not self.inner.clone().try_insert(front)

    def stats(self) -> dict:
        return {
            "inner_ops": self.inner_ops,
            "wrapper_ops": self.wrapper_ops,
            "inner_size": len(self.in_inner),
            "queued": len(self.queue),
        }


class EdgeStructure:
    """Adapts a MugStructure to the element-at-a-time interface, elements being edges."""

    def __init__(self, mugs: MugStructure):
        self.mugs = mugs

    def try_insert(self, e) -> bool:
        return self.mugs.try_insert(*e)

    def remove(self, e) -> None:
        self.mugs.remove(*e)

    def verdict(self) -> bool:
        return self.mugs.member()

    def clone(self) -> "EdgeStructure":
        return EdgeStructure(self.mugs.clone())


class LongPathDetector:
    """Fully dynamic answer to: does G contain a simple path on k vertices?

    The inner structure keeps treedepth below k; a graph of treedepth at least k
    always has such a path, so a non-empty queue already answers yes.
    """

    def __init__(self, n: int, k: int, logger: Optional[logging.Logger] = None):
        self.n = n
        self.k = k
        self.log = logger or log
        self.mugs = MugStructure(n, max(1, k - 1), k=k, logger=self.log)
        self.wrapper = PostponeWrapper(EdgeStructure(self.mugs), logger=self.log)

    def insert(self, u: int, v: int) -> None:
        self._check(u, v)
        self.wrapper.insert(edge_key(u, v))

    def remove(self, u: int, v: int) -> None:
        self._check(u, v)
        self.wrapper.remove(edge_key(u, v))

    def contains(self) -> bool:
        return not self.wrapper.member() or self.mugs.member()

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.wrapper

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, list(self.wrapper.in_inner) + list(self.wrapper.queue))

    def stats(self) -> dict:
        return self.wrapper.stats()

    def _check(self, u: int, v: int) -> None:
        for x in (u, v):
            if not 0 <= x < self.n:
                raise GraphError(f"vertex {x} out of range [0, {self.n})")
        if u == v:
            raise GraphError(f"self-loop on {u}")
