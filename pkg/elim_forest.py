"""
Plain rooted forests, elimination-forest checks, forest restriction and the
exact static solver that produces recursively optimal elimination forests.

Vertices are arbitrary ints; a forest covers exactly the keys of its parent map.
Graphs are accepted either as graph_core.Graph or as an adjacency mapping.
"""

import logging
from collections import deque
from typing import Any, Dict, Iterable, List, Mapping, Optional, Set, Tuple

from config import STATIC_MEMO_CAP, STATIC_VERTEX_CAP
from graph_core import adjacency_of
import oracle

log = logging.getLogger("tdyn.elim_forest")


class StaticSolverLimit(RuntimeError):
    pass


class TreedepthExceeded(RuntimeError):
    def __init__(self, bound: int, detail: str = ""):
        super().__init__(f"treedepth exceeds {bound}" + (f" ({detail})" if detail else ""))
        self.bound = bound


class ElimForest:
    def __init__(self, parent: Mapping[int, Optional[int]]):
        self.parent: Dict[int, Optional[int]] = dict(parent)
        self._children: Optional[Dict[int, List[int]]] = None
        self._depth: Dict[int, int] = {}
        self._height: Dict[int, int] = {}

    @classmethod
    def from_chain(cls, order: Iterable[int]) -> "ElimForest":
        parent: Dict[int, Optional[int]] = {}
        prev = None
        for v in order:
            parent[v] = prev
            prev = v
        return cls(parent)

    @classmethod
    def edgeless(cls, vertices: Iterable[int]) -> "ElimForest":
        return cls({v: None for v in vertices})

    def vertices(self) -> List[int]:
        return list(self.parent)

    def __contains__(self, v: int) -> bool:
        return v in self.parent

    def __len__(self) -> int:
        return len(self.parent)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ElimForest) and self.parent == other.parent

    def __repr__(self) -> str:
        return f"ElimForest({self.parent})"

    def roots(self) -> List[int]:
        return sorted(v for v, p in self.parent.items() if p is None)

    def children(self, u: int) -> List[int]:
        if self._children is None:
            ch: Dict[int, List[int]] = {v: [] for v in self.parent}
            for v, p in self.parent.items():
                if p is not None:
                    ch[p].append(v)
            for lst in ch.values():
                lst.sort()
            self._children = ch
        return self._children[u]

    def ancestors(self, u: int) -> List[int]:
        """Strict ancestors of u, nearest first."""
        out = []
        p = self.parent[u]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    def descendants(self, u: int) -> Set[int]:
        """desc(u), including u itself."""
        out = {u}
        stack = [u]
        while stack:
            for w in self.children(stack.pop()):
                out.add(w)
                stack.append(w)
        return out

    def depth(self, u: int) -> int:
        d = self._depth.get(u)
        if d is None:
            d = 1 + len(self.ancestors(u))
            self._depth[u] = d
        return d

    def subtree_height(self, u: int) -> int:
        h = self._height.get(u)
        if h is None:
            # iterative post-order to stay clear of recursion limits
            order = []
            stack = [u]
            while stack:
                w = stack.pop()
                order.append(w)
                stack.extend(self.children(w))
            for w in reversed(order):
                self._height[w] = 1 + max((self._height[c] for c in self.children(w)), default=0)
            h = self._height[u]
        return h

    def height(self) -> int:
        return max((self.subtree_height(r) for r in self.roots()), default=0)

    def is_ancestor(self, a: int, b: int) -> bool:
        """True if a is an ancestor of b (or a == b)."""
        while b is not None:
            if b == a:
                return True
            b = self.parent[b]
        return False

    def sreach(self, g: Any, u: int) -> Set[int]:
        adj = adjacency_of(g)
        desc = self.descendants(u)
        out: Set[int] = set()
        for w in desc:
            out |= adj[w]
        return out - desc

    def neiup(self, g: Any, u: int) -> Set[int]:
        return adjacency_of(g)[u] & self.sreach(g, u)

    def bottom_up(self) -> List[int]:
        """All vertices, every vertex after all of its descendants."""
        order = []
        stack = list(self.roots())
        while stack:
            w = stack.pop()
            order.append(w)
            stack.extend(self.children(w))
        order.reverse()
        return order


def _edges_of(adj: Mapping[int, Set[int]]) -> Iterable[Tuple[int, int]]:
    for u, nb in adj.items():
        for v in nb:
            if u < v:
                yield u, v


def validate_elim_forest(g: Any, f: ElimForest) -> bool:
    adj = adjacency_of(g)
    if set(adj) != set(f.parent):
        return False
    # acyclic: every upward walk must terminate within |V| steps
    limit = len(f.parent)
    for v in f.parent:
        steps = 0
        p = f.parent[v]
        while p is not None:
            if p not in f.parent:
                return False
            steps += 1
            if steps > limit:
                return False
            p = f.parent[p]
    for u, v in _edges_of(adj):
        if not (f.is_ancestor(u, v) or f.is_ancestor(v, u)):
            return False
    return True


def _connected(adj: Mapping[int, Set[int]], vs: Set[int]) -> bool:
    if not vs:
        return True
    start = next(iter(vs))
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y in vs and y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == len(vs)


def is_recursively_connected(g: Any, f: ElimForest) -> bool:
    adj = adjacency_of(g)
    return all(_connected(adj, f.descendants(u)) for u in f.parent)


def is_recursively_optimal(g: Any, f: ElimForest) -> bool:
    adj = adjacency_of(g)
    # every subtree is an induced subgraph of g, so one memo serves them all
    memo: oracle.TdMemo = {}
    for u in f.parent:
        desc = f.descendants(u)
        if not _connected(adj, desc):
            return False
        sub = {v: adj[v] & desc for v in desc}
        td = oracle.treedepth_bf(sub, memo) if len(sub) <= oracle.TREEDEPTH_CAP else treedepth(sub)
        if f.subtree_height(u) != td:
            return False
    return True


def restrict_forest(f: ElimForest, a: Iterable[int]) -> ElimForest:
    keep = set(a)
    parent: Dict[int, Optional[int]] = {}
    for v in keep:
        p = f.parent[v]
        while p is not None and p not in keep:
            p = f.parent[p]
        parent[v] = p
    return ElimForest(parent)


class _TreedepthSolver:
    """Memoized exact treedepth over connected vertex subsets."""

    def __init__(self, adj: Mapping[int, Set[int]], memo_cap: int):
        self.adj = adj
        self.memo_cap = memo_cap
        self.exact: Dict[Tuple[int, ...], int] = {}
        self.lower: Dict[Tuple[int, ...], int] = {}

    def components(self, vs: Set[int]) -> List[Tuple[int, ...]]:
        out = []
        left = set(vs)
        while left:
            start = left.pop()
            comp = [start]
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for y in self.adj[x]:
                    if y in left:
                        left.discard(y)
                        comp.append(y)
                        queue.append(y)
            out.append(tuple(sorted(comp)))
        out.sort(key=len, reverse=True)
        return out

    def _remember(self, table: Dict[Tuple[int, ...], int], comp: Tuple[int, ...], value: int) -> None:
        table[comp] = value
        if len(self.exact) + len(self.lower) > self.memo_cap:
            raise StaticSolverLimit(f"memo exceeded {self.memo_cap} entries")

    def solve(self, comp: Tuple[int, ...], limit: int) -> int:
        """td(G[comp]) for a connected comp if it is at most limit, else limit + 1."""
        n = len(comp)
        if limit < 1:
            return limit + 1
        if n == 1:
            return 1
        exact = self.exact.get(comp)
        if exact is not None:
            return exact if exact <= limit else limit + 1
        lower = self.lower.get(comp, 2)
        if lower > limit:
            return limit + 1
        cs = set(comp)
        m = sum(len(self.adj[v] & cs) for v in comp) // 2
        if m == n * (n - 1) // 2:
            self._remember(self.exact, comp, n)
            return n if n <= limit else limit + 1
        # every vertex of an elimination forest of height b has at most b-1 ancestors
        if m > (limit - 1) * n:
            self._remember(self.lower, comp, limit + 1)
            return limit + 1

        order = sorted(comp, key=lambda v: (-len(self.adj[v] & cs), v))
        best = limit + 1
        for v in order:
            bound = best - 2
            if bound < lower - 1:
                break
            worst = 0
            for part in self.components(cs - {v}):
                t = self.solve(part, bound)
                worst = max(worst, t)
                if t > bound:
                    break
            if worst <= bound:
                best = worst + 1
                if best <= lower:
                    break
        if best <= limit:
            self._remember(self.exact, comp, best)
        else:
            self._remember(self.lower, comp, limit + 1)
        return best

    def build(self, comp: Tuple[int, ...], parent: Optional[int], out: Dict[int, Optional[int]]) -> None:
        """Recursively optimal tree of G[comp]: admissible root, smallest id first."""
        t = self.solve(comp, len(comp))
        if len(comp) == 1:
            out[comp[0]] = parent
            return
        cs = set(comp)
        for u in sorted(comp):
            parts = self.components(cs - {u})
            if all(self.solve(p, t - 1) <= t - 1 for p in parts):
                out[u] = parent
                for p in parts:
                    self.build(p, u, out)
                return
        raise AssertionError(f"no admissible vertex in component of size {len(comp)}")


def _solver_for(g: Any, vertex_cap: Optional[int], memo_cap: Optional[int]) -> _TreedepthSolver:
    adj = adjacency_of(g)
    cap = STATIC_VERTEX_CAP if vertex_cap is None else vertex_cap
    if len(adj) > cap:
        raise StaticSolverLimit(f"{len(adj)} vertices exceed the static solver cap {cap}")
    return _TreedepthSolver(adj, STATIC_MEMO_CAP if memo_cap is None else memo_cap)


def treedepth(g: Any, limit: Optional[int] = None, vertex_cap: Optional[int] = None) -> int:
    """Exact treedepth; with a limit, any value above it is reported as limit + 1."""
    solver = _solver_for(g, vertex_cap, None)
    best = 0
    for comp in solver.components(set(solver.adj)):
        t = solver.solve(comp, len(comp) if limit is None else limit)
        best = max(best, t)
        if limit is not None and t > limit:
            break
    return best


def static_elim_forest(
    g: Any,
    max_height: Optional[int] = None,
    vertex_cap: Optional[int] = None,
    memo_cap: Optional[int] = None,
) -> ElimForest:
    solver = _solver_for(g, vertex_cap, memo_cap)
    comps = solver.components(set(solver.adj))
    if max_height is not None:
        for comp in comps:
            if solver.solve(comp, max_height) > max_height:
                raise TreedepthExceeded(max_height, f"component of size {len(comp)}")
    parent: Dict[int, Optional[int]] = {}
    for comp in comps:
        solver.build(comp, None, parent)
    log.debug(f"static solve: {len(parent)} vertices, memo={len(solver.exact)}+{len(solver.lower)}")
    return ElimForest(parent)
