"""
Brute-force reference answers. Nothing here imports the dynamic structures;
everything is exponential and meant for tiny graphs only.

Graphs may be graph_core.Graph instances or plain {vertex: neighbours} mappings.
Configurations are returned as (edges, index) pairs where edges is a sorted
tuple of (min, max) pairs over boundary vertices and the terminals S=-1, T=-2,
and index is an int in [0, k) or math.inf.
"""

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, FrozenSet, List, Optional, Set, Tuple

S = -1
T = -2
INF = math.inf

TREEDEPTH_CAP = 20
CONF_CAP = 8


class OracleLimit(ValueError):
    pass


def _adj(g: Any) -> Dict[int, Set[int]]:
    if hasattr(g, "adjacency") and hasattr(g, "n"):
        return {v: set(g.adjacency[v]) for v in range(g.n)}
    return {v: set(nb) for v, nb in g.items()}


@dataclass(frozen=True)
class BoundariedGraph:
    adjacency: Dict[int, FrozenSet[int]]
    boundary: FrozenSet[int] = field(default_factory=frozenset)

    @classmethod
    def build(cls, vertices, edges, boundary) -> "BoundariedGraph":
        adj: Dict[int, Set[int]] = {v: set() for v in vertices}
        for u, v in edges:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        bd = frozenset(boundary)
        if not bd <= set(adj):
            raise ValueError(f"boundary {sorted(bd)} not inside the vertex set")
        return cls({v: frozenset(nb) for v, nb in adj.items()}, bd)

    def vertices(self) -> List[int]:
        return sorted(self.adjacency)


def forget_boundaried(bg: BoundariedGraph, x: int) -> BoundariedGraph:
    if x not in bg.boundary:
        raise ValueError(f"{x} is not a boundary vertex")
    return BoundariedGraph(dict(bg.adjacency), bg.boundary - {x})


def glue_boundaried(bg1: BoundariedGraph, bg2: BoundariedGraph) -> BoundariedGraph:
    """Union of two fragments that meet only in common boundary vertices."""
    shared = set(bg1.adjacency) & set(bg2.adjacency)
    if not shared <= (bg1.boundary & bg2.boundary):
        raise ValueError(f"fragments share non-boundary vertices {sorted(shared - (bg1.boundary & bg2.boundary))}")
    adj: Dict[int, Set[int]] = {}
    for part in (bg1.adjacency, bg2.adjacency):
        for v, nb in part.items():
            adj.setdefault(v, set()).update(nb)
    return BoundariedGraph({v: frozenset(nb) for v, nb in adj.items()}, bg1.boundary | bg2.boundary)


def connected_components_bf(g: Any) -> List[Set[int]]:
    adj = _adj(g)
    seen: Set[int] = set()
    out = []
    for start in sorted(adj):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        out.append(comp)
    return out


TdMemo = Dict[Tuple[FrozenSet[int], int], bool]


def _components(adj: Dict[int, Set[int]], vs: FrozenSet[int]) -> List[FrozenSet[int]]:
    left = set(vs)
    out = []
    while left:
        start = left.pop()
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x] & left:
                left.discard(y)
                comp.add(y)
                stack.append(y)
        out.append(frozenset(comp))
    return out


def _td_at_most(adj: Dict[int, Set[int]], vs: FrozenSet[int], b: int, memo: TdMemo) -> bool:
    if not vs:
        return True
    if b <= 0:
        return False
    n = len(vs)
    if n <= b:
        return True
    key = (vs, b)
    hit = memo.get(key)
    if hit is not None:
        return hit
    parts = _components(adj, vs)
    if len(parts) > 1:
        ok = all(_td_at_most(adj, p, b, memo) for p in parts)
    elif sum(len(adj[x] & vs) for x in vs) // 2 > (b - 1) * n:
        # a vertex of a forest of height b has at most b-1 ancestors
        ok = False
    else:
        order = sorted(vs, key=lambda x: (-len(adj[x] & vs), x))
        ok = any(_td_at_most(adj, vs - {x}, b - 1, memo) for x in order)
    memo[key] = ok
    return ok


def treedepth_bf(g: Any, memo: Optional[TdMemo] = None) -> int:
    """Exact treedepth by iterative deepening per component.

    memo maps (vertex set, bound) to a verdict; share one only between
    induced subgraphs of the same graph.
    """
    adj = _adj(g)
    if len(adj) > TREEDEPTH_CAP:
        raise OracleLimit(f"treedepth oracle limited to {TREEDEPTH_CAP} vertices, got {len(adj)}")
    memo = {} if memo is None else memo
    best = 0
    for comp in _components(adj, frozenset(adj)):
        b = max(best, 1)
        while not _td_at_most(adj, comp, b, memo):
            b += 1
        best = b
    return best


def _extend_paths(adj, path: List[int], on_path: Set[int]):
    """Yield every simple path extending path at its last vertex (path itself first)."""
    yield path
    for y in sorted(adj[path[-1]]):
        if y not in on_path:
            path.append(y)
            on_path.add(y)
            yield from _extend_paths(adj, path, on_path)
            on_path.discard(y)
            path.pop()


def has_k_path_bf(g: Any, k: int) -> bool:
    adj = _adj(g)
    if k <= 0:
        return True
    for start in adj:
        for p in _extend_paths(adj, [start], {start}):
            if len(p) >= k:
                return True
    return False


def longest_cycle_bf(g: Any) -> int:
    adj = _adj(g)
    best = 0
    # anchor each cycle at its smallest vertex
    for s in sorted(adj):
        stack = [(s, [s])]
        while stack:
            x, path = stack.pop()
            for y in adj[x]:
                if y == s and len(path) >= 3:
                    best = max(best, len(path))
                elif y > s and y not in path:
                    stack.append((y, path + [y]))
    return best


def _long_detour(adj: Dict[int, Set[int]], u: int, v: int, need: int) -> bool:
    """Is there a simple u-v path on at least need vertices? Walks never continue past v."""
    path = [u]
    on_path = {u}
    iters = [iter(sorted(adj[u]))]
    while iters:
        for y in iters[-1]:
            if y == v:
                if len(path) + 1 >= need:
                    return True
                continue
            if y in on_path:
                continue
            path.append(y)
            on_path.add(y)
            iters.append(iter(sorted(adj[y])))
            break
        else:
            iters.pop()
            on_path.discard(path.pop())
    return False


def has_long_cycle_bf(g: Any, k: int) -> bool:
    """Is there a simple cycle on at least k vertices? Stops at the first one found."""
    need = max(k, 3)
    # a simple cycle never leaves its biconnected block
    for block in biconnected_components_bf(g):
        verts = {x for e in block for x in e}
        if len(block) < 3 or len(verts) < need:
            continue
        badj: Dict[int, Set[int]] = {x: set() for x in verts}
        for a, b in block:
            badj[a].add(b)
            badj[b].add(a)
        for u, v in sorted(block):
            badj[u].discard(v)
            badj[v].discard(u)
            hit = _long_detour(badj, u, v, need)
            badj[u].add(v)
            badj[v].add(u)
            if hit:
                return True
    return False


def exact_path_bf(g: Any, u: int, v: int, i: int) -> Optional[List[int]]:
    adj = _adj(g)
    if i < 1:
        return None
    if u == v:
        return [u] if i == 1 else None
    for p in _extend_paths(adj, [u], {u}):
        if len(p) == i and p[-1] == v:
            return list(p)
    return None


def path_geq_k_bf(g: Any, u: int, v: int, k: int) -> bool:
    """Is there a simple u-v path on at least k vertices?"""
    adj = _adj(g)
    if u == v:
        return k <= 1
    for p in _extend_paths(adj, [u], {u}):
        if p[-1] == v and len(p) >= k:
            return True
    return False


def biconnected_components_bf(g: Any) -> List[Set[Tuple[int, int]]]:
    """Edge classes of the biconnected components (lowpoint DFS, iterative)."""
    adj = _adj(g)
    disc: Dict[int, int] = {}
    low: Dict[int, int] = {}
    components: List[Set[Tuple[int, int]]] = []
    for root in sorted(adj):
        if root in disc:
            continue
        disc[root] = low[root] = 0
        counter = 1
        edge_stack: List[Tuple[int, int]] = []
        stack = [(root, None, iter(sorted(adj[root])))]
        while stack:
            x, parent, it = stack[-1]
            advanced = False
            for y in it:
                if y == parent:
                    continue
                if y in disc:
                    if disc[y] < disc[x]:
                        edge_stack.append((x, y))
                        low[x] = min(low[x], disc[y])
                    continue
                disc[y] = low[y] = counter
                counter += 1
                edge_stack.append((x, y))
                stack.append((y, x, iter(sorted(adj[y]))))
                advanced = True
                break
            if advanced:
                continue
            stack.pop()
            if parent is None:
                continue
            low[parent] = min(low[parent], low[x])
            if low[x] >= disc[parent]:
                comp = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.add((min(a, b), max(a, b)))
                    if (a, b) == (parent, x):
                        break
                components.append(comp)
    return components


def _is_linear_forest(nodes, edges) -> bool:
    deg = {v: 0 for v in nodes}
    parent = {v: v for v in nodes}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    if deg[S] > 1 or deg[T] > 1:
        return False
    return all(d <= 2 for d in deg.values())


def _realized_totals(adj, boundary: FrozenSet[int], h_edges, k: int) -> Set[int]:
    """Edge totals (capped at k) over all path families realizing h_edges."""
    free = [v for v in adj if v not in boundary]
    out: Set[int] = set()

    def candidates(e, used: Set[int]):
        a, b = e
        if a >= 0 and b >= 0:
            # boundary to boundary, interior avoids every boundary vertex
            def walk(path, on_path):
                for y in adj[path[-1]]:
                    if y == b:
                        yield len(path), set(path[1:])
                    elif y not in boundary and y not in on_path and y not in used:
                        path.append(y)
                        on_path.add(y)
                        yield from walk(path, on_path)
                        on_path.discard(y)
                        path.pop()
            yield from walk([a], {a})
            return
        x = b if b >= 0 else (a if a >= 0 else None)
        if x is not None:
            starts = [[x]]
        else:
            starts = [[v] for v in free if v not in used]
        for start in starts:
            restricted = {v: {y for y in adj[v] if y not in boundary and y not in used} for v in adj}
            for p in _extend_paths(restricted, list(start), set(start)):
                interior = set(p) - boundary
                yield len(p) - 1, interior

    def search(idx: int, used: Set[int], total: int) -> None:
        if idx == len(h_edges):
            out.add(min(total, k))
            return
        for length, verts in candidates(h_edges[idx], used):
            search(idx + 1, used | verts, total + length)

    search(0, set(), 0)
    return out


def conf_bf(bg: BoundariedGraph, k: int) -> Set[Tuple[Tuple[Tuple[int, int], ...], float]]:
    adj = {v: set(nb) for v, nb in bg.adjacency.items()}
    if len(adj) > CONF_CAP:
        raise OracleLimit(f"configuration oracle limited to {CONF_CAP} vertices, got {len(adj)}")
    boundary = frozenset(bg.boundary)
    nodes = sorted(boundary) + [S, T]
    pairs = [(min(a, b), max(a, b)) for a, b in combinations(nodes, 2)]
    out: Set[Tuple[Tuple[Tuple[int, int], ...], float]] = set()
    for r in range(len(pairs) + 1):
        for chosen in combinations(pairs, r):
            if not _is_linear_forest(nodes, chosen):
                continue
            h = tuple(sorted(chosen))
            if not h:
                out.add((h, 0))
                continue
            for total in _realized_totals(adj, boundary, h, k):
                out.add((h, INF if total >= k else total))
    return out
