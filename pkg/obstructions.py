"""
Minimal obstructions for treedepth d: graphs of treedepth above d whose every
vertex-deleted subgraph has treedepth at most d.

Enumeration grows the hereditary class {td <= d} one vertex at a time; every
minimal obstruction on m vertices is a graph of that class on m - 1 vertices
plus one vertex, so extending each class member by every neighbourhood finds
them all.
"""

import logging
import random
from itertools import permutations, product
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from elim_forest import treedepth
from graph_core import Graph
from oracle import OracleLimit, treedepth_bf

log = logging.getLogger("tdyn.obstructions")

MAX_ENUM_D = 2
MAX_ENUM_N = 10

Canon = Tuple[int, Tuple[int, ...]]


def _adjacency(g: Graph) -> Dict[int, Set[int]]:
    return {v: set(g.adjacency[v]) for v in range(g.n)}


def is_minimal_obstruction(g: Graph, d: int) -> bool:
    adj = _adjacency(g)
    if treedepth_bf(adj) <= d:
        return False
    for v in adj:
        rest = {w: adj[w] - {v} for w in adj if w != v}
        if treedepth_bf(rest) > d:
            return False
    return True


def core_bound_obstruction(d: int) -> int:
    """Vertex bound for a minimal obstruction: a (d+1)-core of a tree of height d+1."""
    a = (d + 1) * ((d + 1) ** 2 + 1)
    return (d + 1) * (a ** (d + 1) - 1) // (a - 1)


def _refine(adj: Dict[int, Set[int]]) -> Dict[int, int]:
    colour = {v: len(adj[v]) for v in adj}
    while True:
        sig = {v: (colour[v], tuple(sorted(colour[w] for w in adj[v]))) for v in adj}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        fresh = {v: ranks[sig[v]] for v in adj}
        if len(set(fresh.values())) == len(set(colour.values())):
            return fresh
        colour = fresh


def _twin_blocks(adj: Dict[int, Set[int]], group: List[int]) -> List[List[int]]:
    # open or closed twins are interchangeable, so each block is ordered once
    blocks: Dict[Tuple[str, FrozenSet[int]], List[int]] = {}
    for v in group:
        open_nb = frozenset(adj[v])
        closed_nb = open_nb | {v}
        key = ("c", closed_nb) if any(adj[w] | {w} == closed_nb for w in group if w != v) else ("o", open_nb)
        blocks.setdefault(key, []).append(v)
    return list(blocks.values())


def canonical_form(g: Graph) -> Canon:
    """Smallest upper-triangle adjacency bitstring over colour-respecting orderings."""
    adj = _adjacency(g)
    colour = _refine(adj)
    groups: Dict[int, List[int]] = {}
    for v in sorted(adj):
        groups.setdefault(colour[v], []).append(v)
    per_group = [list(permutations(_twin_blocks(adj, groups[c]))) for c in sorted(groups)]
    best: Optional[Tuple[int, ...]] = None
    for choice in product(*per_group):
        order = [v for blocks in choice for block in blocks for v in block]
        bits = tuple(
            1 if order[j] in adj[order[i]] else 0
            for i in range(len(order)) for j in range(i + 1, len(order))
        )
        if best is None or bits < best:
            best = bits
    return g.n, best or ()


def _from_canon(canon: Canon) -> Graph:
    n, bits = canon
    g = Graph(n)
    it = iter(bits)
    for i in range(n):
        for j in range(i + 1, n):
            if next(it):
                g.add_edge(i, j)
    return g


def _extensions(g: Graph) -> List[Graph]:
    n = g.n
    out = []
    for mask in range(1 << n):
        h = Graph(n + 1)
        for u, v in g.edges():
            h.add_edge(u, v)
        for w in range(n):
            if mask >> w & 1:
                h.add_edge(w, n)
        out.append(h)
    return out


def enumerate_min_obstructions(d: int, max_n: int) -> List[Graph]:
    """All minimal obstructions for treedepth d on at most max_n vertices, one per isomorphism class."""
    if d > MAX_ENUM_D or max_n > MAX_ENUM_N:
        raise OracleLimit(f"enumeration limited to d <= {MAX_ENUM_D} and n <= {MAX_ENUM_N}, got d={d} n={max_n}")
    level: Dict[Canon, Graph] = {(0, ()): Graph(0)}
    found: Dict[Canon, Graph] = {}
    for m in range(1, max_n + 1):
        nxt: Dict[Canon, Graph] = {}
        for base in level.values():
            for h in _extensions(base):
                adj = _adjacency(h)
                if treedepth(adj, limit=d) <= d:
                    nxt.setdefault(canonical_form(h), h)
                    continue
                if all(treedepth({w: adj[w] - {v} for w in adj if w != v}, limit=d) <= d for v in adj):
                    c = canonical_form(h)
                    if c not in found:
                        found[c] = _from_canon(c)
        log.debug(f"d={d} m={m}: class size {len(nxt)}, obstructions so far {len(found)}")
        level = nxt
    return [found[c] for c in sorted(found, key=lambda c: (c[0], sum(c[1]), c[1]))]


def acyclic_obstruction(d: int, seed: Optional[int] = None) -> Graph:
    """A tree on 2^d vertices that is a minimal obstruction for treedepth d.

    Built by joining two such trees for d - 1 with one edge; without a seed the
    join is last-to-first, which yields the path on 2^d vertices.
    """
    rng = random.Random(seed) if seed is not None else None
    edges: List[Tuple[int, int]] = []
    size = 1
    for _ in range(d):
        shifted = [(u + size, v + size) for u, v in edges]
        if rng is None:
            a, b = size - 1, size
        else:
            a, b = rng.randrange(size), size + rng.randrange(size)
        edges = edges + shifted + [(a, b)]
        size *= 2
    return Graph.from_edges(size, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"# n={g.n} m={g.edge_count()}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines)
