"""
q-cores on explicit (graph, forest) pairs, attachability of residual forests,
extensions and the sibling-substitution check.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple

from elim_forest import ElimForest
from graph_core import adjacency_of, edge_key

log = logging.getLogger("tdyn.cores")


class NotAttachable(ValueError):
    pass


@dataclass(frozen=True)
class CorePrefix:
    members: FrozenSet[int]
    appendices: FrozenSet[int]

    def __contains__(self, v: int) -> bool:
        return v in self.members

    def __len__(self) -> int:
        return len(self.members)


def small_subsets(vs: Iterable[int], size: int = 2) -> List[Tuple[int, ...]]:
    """All subsets of vs with at most `size` elements, as sorted tuples."""
    items = sorted(vs)
    out: List[Tuple[int, ...]] = []
    for r in range(size + 1):
        out.extend(combinations(items, r))
    return out


def is_prefix(f: ElimForest, k: Iterable[int]) -> bool:
    ks = set(k)
    return all(f.parent[v] is None or f.parent[v] in ks for v in ks)


def appendices(f: ElimForest, k: Iterable[int]) -> FrozenSet[int]:
    ks = set(k)
    return frozenset(v for v, p in f.parent.items() if v not in ks and (p is None or p in ks))


def core_size_bound(q: int, d: int, seeds: int = 0) -> int:
    """Largest core find_core can return; seeds widens every level by the forced vertices."""
    fan_out = q * (d * d + 1) + seeds
    level = q + seeds
    total = 0
    for _ in range(d):
        total += level
        level *= fan_out
    return total


def _sibling_groups(f: ElimForest) -> Dict[Optional[int], List[int]]:
    groups: Dict[Optional[int], List[int]] = {None: f.roots()}
    for v in f.parent:
        groups[v] = f.children(v)
    return groups


def find_core(g: Any, f: ElimForest, l: Iterable[int], q: int) -> CorePrefix:
    """Top-down marking: for every marked vertex (and the virtual root) and every
    X of at most two vertices from SReach(u) + u, mark q children w with X in
    SReach(w), tallest first; children on the way to L are always marked."""
    adj = adjacency_of(g)
    forced: Set[int] = set()
    for v in l:
        forced.add(v)
        forced.update(f.ancestors(v))
    sreach = {v: f.sreach(adj, v) for v in f.parent}
    groups = _sibling_groups(f)

    members: Set[int] = set()
    frontier: List[Optional[int]] = [None]
    while frontier:
        u = frontier.pop()
        children = groups[u]
        if not children:
            continue
        base = set() if u is None else sreach[u] | {u}
        ranked = sorted(children, key=lambda w: (-f.subtree_height(w), w))
        marked = {w for w in children if w in forced}
        for x in small_subsets(base):
            picked = 0
            for w in ranked:
                if picked == q:
                    break
                if set(x) <= sreach[w]:
                    marked.add(w)
                    picked += 1
        for w in marked:
            members.add(w)
            frontier.append(w)
    k = CorePrefix(frozenset(members), appendices(f, members))
    log.debug(f"find_core q={q}: |K|={len(k.members)} apps={len(k.appendices)}")
    return k


def witnesses(g: Any, f: ElimForest, k: Iterable[int], u: int, x: Iterable[int]) -> List[int]:
    """W_K(u, X): siblings of u inside K whose SReach covers X and whose subtree is at least as tall."""
    adj = adjacency_of(g)
    ks = set(k)
    xs = set(x)
    p = f.parent[u]
    sibs = f.roots() if p is None else f.children(p)
    hu = f.subtree_height(u)
    return [
        w for w in sibs
        if w != u and w in ks and xs <= f.sreach(adj, w) and f.subtree_height(w) >= hu
    ]


def verify_qcore(g: Any, f: ElimForest, k: CorePrefix, q: int) -> bool:
    if not k.members or not is_prefix(f, k.members):
        return False
    adj = adjacency_of(g)
    for u in appendices(f, k.members):
        for x in small_subsets(f.sreach(adj, u)):
            if len(witnesses(adj, f, k.members, u, x)) < q:
                return False
    return True


def _is_straight(fk: ElimForest, vs: Iterable[int]) -> bool:
    chain = sorted(vs, key=fk.depth)
    return all(fk.is_ancestor(a, b) for a, b in zip(chain, chain[1:]))


def _trees(r: ElimForest) -> List[Tuple[int, Set[int]]]:
    return [(root, r.descendants(root)) for root in r.roots()]


def _tree_neighbourhood(adj: Mapping[int, Set[int]], tree: Set[int]) -> Set[int]:
    out: Set[int] = set()
    for v in tree:
        out |= adj[v]
    return out - tree


def is_attachable(h: Any, fk: ElimForest, r: ElimForest) -> bool:
    adj = adjacency_of(h)
    for _, tree in _trees(r):
        nb = _tree_neighbourhood(adj, tree)
        if not nb <= set(fk.parent) or not _is_straight(fk, nb):
            return False
    return True


def extend_forest(h: Any, fk: ElimForest, r: ElimForest) -> ElimForest:
    adj = adjacency_of(h)
    parent = dict(fk.parent)
    parent.update(r.parent)
    for root, tree in _trees(r):
        nb = _tree_neighbourhood(adj, tree)
        if not nb <= set(fk.parent) or not _is_straight(fk, nb):
            raise NotAttachable(f"neighbourhood {sorted(nb)} of the tree at {root} is not straight")
        parent[root] = max(nb, key=fk.depth) if nb else None
    return ElimForest(parent)


def has_ssp(h: Any, fk: ElimForest, r: ElimForest) -> bool:
    ext = extend_forest(h, fk, r)
    groups: Dict[Optional[int], List[int]] = {}
    for z in fk.parent:
        groups.setdefault(fk.parent[z], []).append(z)
    for u in r.roots():
        need = r.subtree_height(u)
        if not any(fk.subtree_height(z) >= need for z in groups.get(ext.parent[u], [])):
            return False
    return True


def is_restricted_augmentation(g: Any, f: ElimForest, k: Iterable[int], h: Any, l: int) -> bool:
    ga, ha = adjacency_of(g), adjacency_of(h)
    ks = set(k)
    if set(ga) != set(ha) or not is_prefix(f, ks):
        return False

    def edge_set(adj):
        return {edge_key(u, v) for u, nb in adj.items() for v in nb}

    eg, eh = edge_set(ga), edge_set(ha)
    if any(not (a in ks and b in ks) for a, b in eg ^ eh):
        return False
    return len(eg - eh) <= l
