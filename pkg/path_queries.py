"""
u-v path queries on a MugStructure: exact vertex counts up to k, and "at least
k vertices". The answer is computed on G[K] for a small prefix K marked from
the mugs, which keeps enough sibling subtrees for every short detour.
"""

import logging
from itertools import combinations
from typing import Dict, List, Optional, Set

from config_schemes import INF, path_configuration
from mug_structure import MugStructure

log = logging.getLogger("tdyn.path_queries")


def marking_bound(d: int, k: int) -> int:
    return (d ** 3 * k + 2) ** d


def query_core(m: MugStructure, u: int, v: int) -> Optional[List[int]]:
    """Marked prefix for the pair (u, v), or None when they lie in different trees."""
    root = m.root_of(u)
    if m.root_of(v) != root:
        return None
    forced: Set[int] = set()
    for s in (u, v):
        x: Optional[int] = s
        while x is not None:
            forced.add(x)
            x = m.parent(x)
    lengths = list(range(2, m.k)) + [INF]
    marked: Set[int] = set()
    order: List[int] = []

    def mark(w: int) -> None:
        marked.add(w)
        order.append(w)
        picked: Dict[int, None] = {c: None for c in m.children(w) if c in forced}
        base = m.sreach(w) + (w,)
        buckets = m.buckets_of(w)
        for x, y in combinations(base, 2):
            for j in lengths:
                budget = m.d
                for b in buckets:
                    if x not in b.key or y not in b.key:
                        continue
                    for z in b.mugs.get(path_configuration(b.key, x, y, j), ()):
                        if z not in marked:
                            picked[z] = None
                        budget -= 1
                        if budget == 0:
                            break
                    if budget == 0:
                        break
        for z in picked:
            if z not in marked:
                mark(z)

    mark(root)
    return order


def _walk(adj: Dict[int, Set[int]], path: List[int], on_path: Set[int], target: int, accept, cap: int):
    """Depth-first over simple paths from path[-1]; yields full paths ending at target that accept."""
    x = path[-1]
    for y in sorted(adj[x]):
        if y in on_path:
            continue
        path.append(y)
        if y == target:
            if accept(len(path)):
                yield path
        elif len(path) < cap:
            on_path.add(y)
            yield from _walk(adj, path, on_path, target, accept, cap)
            on_path.discard(y)
        path.pop()


def path_exact(m: MugStructure, u: int, v: int, i: int) -> Optional[List[int]]:
    if not 1 <= i <= m.k:
        raise ValueError(f"vertex count {i} outside [1, {m.k}]")
    if u == v:
        return [u] if i == 1 else None
    if i == 1:
        return None
    k = query_core(m, u, v)
    if k is None:
        return None
    adj = m.core_graph(k)
    for p in _walk(adj, [u], {u}, v, lambda n: n == i, i):
        log.debug(f"path_exact {u}-{v} on {i}: found in |K|={len(k)}")
        return list(p)
    return None


def path_geq_k(m: MugStructure, u: int, v: int) -> bool:
    if u == v:
        return m.k <= 1
    k = query_core(m, u, v)
    if k is None:
        return False
    adj = m.core_graph(k)
    for _ in _walk(adj, [u], {u}, v, lambda n: n >= m.k, len(adj)):
        return True
    return False
