"""
Dynamic unrooted forest on [0, n): link, cut, tree-path length and tree-path
retrieval. Link-cut trees over splay trees, with path sizes aggregated in the
splay nodes and lazy reversal for re-rooting.
"""

import math
from typing import List, Optional, Set, Tuple

from graph_core import GraphError, edge_key

INF = math.inf


class _Node:
    __slots__ = ("label", "parent", "left", "right", "rev", "size")

    def __init__(self, label: int):
        self.label = label
        self.parent: Optional["_Node"] = None
        self.left: Optional["_Node"] = None
        self.right: Optional["_Node"] = None
        self.rev = False
        self.size = 1

    def is_splay_root(self) -> bool:
        p = self.parent
        return p is None or (p.left is not self and p.right is not self)

    def push(self) -> None:
        if self.rev:
            self.rev = False
            self.left, self.right = self.right, self.left
            if self.left:
                self.left.rev = not self.left.rev
            if self.right:
                self.right.rev = not self.right.rev

    def pull(self) -> None:
        self.size = 1 + (self.left.size if self.left else 0) + (self.right.size if self.right else 0)

    def rotate(self) -> None:
        p = self.parent
        g = p.parent
        if not p.is_splay_root():
            if g.left is p:
                g.left = self
            else:
                g.right = self
        self.parent = g
        if p.left is self:
            p.left = self.right
            if self.right:
                self.right.parent = p
            self.right = p
        else:
            p.right = self.left
            if self.left:
                self.left.parent = p
            self.left = p
        p.parent = self
        p.pull()
        self.pull()

    def splay(self) -> None:
        path = [self]
        y = self
        while not y.is_splay_root():
            y = y.parent
            path.append(y)
        for y in reversed(path):
            y.push()
        while not self.is_splay_root():
            p = self.parent
            if not p.is_splay_root():
                g = p.parent
                if (g.left is p) == (p.left is self):
                    p.rotate()
                else:
                    self.rotate()
            self.rotate()

    def access(self) -> None:
        last = None
        y = self
        while y is not None:
            y.splay()
            y.right = last
            y.pull()
            last = y
            y = y.parent
        self.splay()

    def evert(self) -> None:
        self.access()
        self.rev = not self.rev
        self.push()

    def find_root(self) -> "_Node":
        self.access()
        y = self
        y.push()
        while y.left:
            y = y.left
            y.push()
        y.splay()
        return y


class DynForest:
    def __init__(self, n: int):
        self.n = n
        self.nodes = [_Node(v) for v in range(n)]
        self.edge_set: Set[Tuple[int, int]] = set()

    def _check(self, u: int, v: int) -> None:
        for x in (u, v):
            if not 0 <= x < self.n:
                raise GraphError(f"vertex {x} out of range [0, {self.n})")

    def connected(self, u: int, v: int) -> bool:
        self._check(u, v)
        if u == v:
            return True
        return self.nodes[u].find_root() is self.nodes[v].find_root()

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edge_set

    def link(self, u: int, v: int) -> bool:
        """Add uv unless u and v already share a tree."""
        if self.connected(u, v):
            return False
        a = self.nodes[u]
        a.evert()
        a.parent = self.nodes[v]
        self.edge_set.add(edge_key(u, v))
        return True

    def cut(self, u: int, v: int) -> None:
        self._check(u, v)
        key = edge_key(u, v)
        if key not in self.edge_set:
            raise GraphError(f"edge {key} is not in the forest")
        a, b = self.nodes[u], self.nodes[v]
        a.evert()
        b.access()
        # b's splay tree now holds exactly the path a-b
        b.left.parent = None
        b.left = None
        b.pull()
        self.edge_set.discard(key)

    def pathlen(self, u: int, v: int):
        if u == v:
            self._check(u, v)
            return 0
        if not self.connected(u, v):
            return INF
        self.nodes[u].evert()
        b = self.nodes[v]
        b.access()
        return b.size - 1

    def path(self, u: int, v: int) -> Optional[List[Tuple[int, int]]]:
        """Tree path from u to v as consecutive (a, b) edges, or None when disconnected."""
        if u == v:
            self._check(u, v)
            return []
        if not self.connected(u, v):
            return None
        self.nodes[u].evert()
        b = self.nodes[v]
        b.access()
        order: List[int] = []
        stack: List[_Node] = []
        x: Optional[_Node] = b
        while stack or x is not None:
            if x is not None:
                x.push()
                stack.append(x)
                x = x.left
            else:
                x = stack.pop()
                order.append(x.label)
                x = x.right
        return list(zip(order, order[1:]))

    def edges(self) -> List[Tuple[int, int]]:
        return sorted(self.edge_set)
