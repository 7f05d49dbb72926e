"""
Nice partition of a dynamic graph: every edge belongs to exactly one part, each
part is a connected union of biconnected components, and two parts share at
most one vertex. Each part owns a MugStructure whose records carry global
vertex ids; the global edge dictionary maps every edge to the record of its
deeper endpoint in the part holding it.
"""

import logging
from collections import deque
from contextlib import contextmanager
from typing import Callable, Dict, Iterable, List, Optional, Set, Tuple

from dynamic_td import Outcome, PartialModeError, VertexRecord
from elim_forest import ElimForest, TreedepthExceeded, is_recursively_optimal, static_elim_forest
from graph_core import Edge, GraphError, edge_key
from mug_structure import MugStructure
from path_queries import path_exact, path_geq_k

log = logging.getLogger("tdyn.nice_partition")


class PartitionError(RuntimeError):
    pass


class Part:
    __slots__ = ("pid", "mugs", "edges")

    def __init__(self, pid: int, mugs: MugStructure):
        self.pid = pid
        self.mugs = mugs
        self.edges: Set[Edge] = set()
        mugs.part = self

    def vertices(self) -> List[int]:
        return self.mugs.vertices()

    def __repr__(self) -> str:
        return f"Part({self.pid}, |V|={len(self.mugs.records)}, |E|={len(self.edges)})"


def _shared_vertex(e1: Edge, e2: Edge) -> int:
    common = set(e1) & set(e2)
    if len(common) != 1:
        raise PartitionError(f"edges {e1} and {e2} do not share exactly one vertex")
    return common.pop()


def _other(e: Edge, v: int) -> int:
    return e[1] if e[0] == v else e[0]


def _component(adj: Dict[int, Set[int]], start: int, banned: int) -> Set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for b in adj[a]:
            if b != banned and b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


def _induced(adj: Dict[int, Set[int]], vs: Set[int]) -> Dict[int, Set[int]]:
    return {v: adj[v] & vs for v in vs}


class NicePartition:
    def __init__(self, n: int, d: int, k: int, connected: Optional[Callable[[int, int], bool]] = None,
                 logger: Optional[logging.Logger] = None):
        self.n = n
        self.d = d
        self.k = k
        self.log = logger or log
        self.lower: Dict[Edge, VertexRecord] = {}
        self.part_ids: Dict[int, Part] = {}
        self._next_pid = 0
        self._connected = connected
        self._journal: List[List[Callable[[], None]]] = []
        self._replaying = False

    # ---- journaling ----

    @contextmanager
    def transaction(self):
        """Undo every journaled step of the block if it raises."""
        self._journal.append([])
        try:
            yield self
        except BaseException:
            undo = self._journal.pop()
            self._replaying = True
            try:
                for fn in reversed(undo):
                    fn()
            finally:
                self._replaying = False
            raise
        else:
            done = self._journal.pop()
            if self._journal:
                self._journal[-1].extend(done)

    def _record(self, fn: Callable[[], None]) -> None:
        if self._journal and not self._replaying:
            self._journal[-1].append(fn)

    # ---- lookup ----

    def _check(self, u: int, v: int) -> None:
        for x in (u, v):
            if not 0 <= x < self.n:
                raise GraphError(f"vertex {x} out of range [0, {self.n})")

    def edge(self, u: int, v: int) -> bool:
        self._check(u, v)
        return edge_key(u, v) in self.lower

    def find(self, u: int, v: int) -> Part:
        rec = self.lower.get(edge_key(u, v))
        if rec is None:
            raise PartitionError(f"edge {edge_key(u, v)} not present")
        return rec.bucket.home.part

    def part_of(self, u: int, v: int) -> Part:
        return self.find(u, v)

    def retrieve(self, u: int, e: Edge) -> VertexRecord:
        """Local record of u inside the part holding e (u an endpoint of e)."""
        rec = self.lower.get(edge_key(*e))
        if rec is None:
            raise PartitionError(f"edge {edge_key(*e)} not present")
        s = rec.bucket.home
        while rec.label != u:
            p = rec.parent
            if p is None:
                raise PartitionError(f"{u} is not an endpoint of {e}")
            rec = s.records[p]
        return rec

    def bridge(self, u: int, v: int) -> bool:
        return len(self.find(u, v).edges) == 1

    def same(self, e1: Edge, e2: Edge) -> bool:
        return self.find(*e1) is self.find(*e2)

    def parts(self) -> List[frozenset]:
        return sorted((frozenset(p.edges) for p in self.part_ids.values()), key=lambda s: sorted(s))

    def local_forest(self, u: int, v: int) -> ElimForest:
        return self.find(u, v).mugs.export_forest()

    def edges(self) -> List[Edge]:
        return sorted(self.lower)

    def _refresh_lower(self, part: Part, k: Iterable[int]) -> None:
        s = part.mugs
        for w in k:
            rec = s.records[w]
            for z in rec.neiup:
                self.lower[edge_key(w, z)] = rec

    def _new_part(self, labels: Iterable[int]) -> Part:
        mugs = MugStructure(0, self.d, k=self.k, logger=self.log, labels=labels)
        part = Part(self._next_pid, mugs)
        self._next_pid += 1
        self.part_ids[part.pid] = part
        return part

    def _connected_bf(self, u: int, v: int) -> bool:
        adj: Dict[int, Set[int]] = {}
        for a, b in self.lower:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        if u not in adj or v not in adj:
            return False
        return v in _component(adj, u, -1)

    # ---- parts of a single edge ----

    def new(self, u: int, v: int) -> Part:
        self._check(u, v)
        if u == v:
            raise GraphError(f"self-loop on {u}")
        connected = self._connected or self._connected_bf
        if not self._replaying and connected(u, v):
            raise PartitionError(f"{u} and {v} are already connected")
        part = self._new_part([u, v])
        # only d = 1 rejects a lone edge
        if part.mugs.insert(u, v) is Outcome.REJECTED:
            del self.part_ids[part.pid]
            raise TreedepthExceeded(self.d, "a single edge")
        part.edges.add(edge_key(u, v))
        self._refresh_lower(part, part.mugs.last_core)
        self._record(lambda: self.destroy(u, v))
        self.log.debug(f"new part {part.pid} for {edge_key(u, v)}")
        return part

    def destroy(self, u: int, v: int) -> None:
        part = self.find(u, v)
        if len(part.edges) != 1:
            raise PartitionError(f"part of {edge_key(u, v)} has {len(part.edges)} edges")
        del self.lower[edge_key(u, v)]
        del self.part_ids[part.pid]
        self._record(lambda: self.new(u, v))
        self.log.debug(f"destroyed part {part.pid}")

    # ---- edge updates inside a part ----

    def np_insert(self, u: int, v: int, ux: Edge, vy: Edge) -> None:
        self._check(u, v)
        if self.edge(u, v):
            raise PartitionError(f"edge {edge_key(u, v)} already present")
        part = self.find(*ux)
        if self.find(*vy) is not part:
            raise PartitionError(f"{ux} and {vy} lie in different parts")
        if part.mugs.insert(u, v) is Outcome.REJECTED:
            raise TreedepthExceeded(self.d, f"inserting {edge_key(u, v)} into part {part.pid}")
        part.edges.add(edge_key(u, v))
        self._refresh_lower(part, part.mugs.last_core)
        self._record(lambda: self.np_remove(u, v))

    def np_remove(self, u: int, v: int) -> None:
        part = self.find(u, v)
        if len(part.edges) == 1:
            raise PartitionError(f"{edge_key(u, v)} is a bridge part; destroy it instead")
        part.mugs.remove(u, v)
        del self.lower[edge_key(u, v)]
        part.edges.discard(edge_key(u, v))
        self._refresh_lower(part, part.mugs.last_core)
        # any surviving edge locates the part on undo
        anchor = next(iter(part.edges))
        self._record(lambda: self.np_insert(u, v, anchor, anchor))

    # ---- merge / split ----

    def merge(self, vx: Edge, vy: Edge) -> Part:
        """Fuse the parts of vx and vy, which meet at their common endpoint v."""
        vx, vy = edge_key(*vx), edge_key(*vy)
        v = _shared_vertex(vx, vy)
        x, y = _other(vx, v), _other(vy, v)
        pi, pj = self.find(*vx), self.find(*vy)
        if pi is pj:
            raise PartitionError(f"{vx} and {vy} already share part {pi.pid}")
        si, sj = pi.mugs, pj.mugs
        ki = si.core([v, x], self.d + 1)
        kj = sj.core([v, y], self.d + 1)
        hk = si.core_graph(ki)
        for a, nb in sj.core_graph(kj).items():
            hk.setdefault(a, set()).update(nb)
        # decided before anything is touched, so a refusal needs no rollback
        fk = static_elim_forest(hk, max_height=self.d)

        si.trim(ki)
        sj.trim(kj)
        # v lives on both sides; keep the record in pi
        moved = [w for w in sj.records if w != v]
        sj.records.pop(v)
        si.adopt(sj, moved, list(sj.apps))
        si.extend(hk, fk)
        pi.edges |= pj.edges
        del self.part_ids[pj.pid]
        self._refresh_lower(pi, fk.vertices())
        self._record(lambda: self.split(vx, vy))
        self.log.debug(f"merged part {pj.pid} into {pi.pid} at {v}: |K|={len(fk)}")
        return pi

    def split(self, vx: Edge, vy: Edge) -> Tuple[Part, Part]:
        """Cut the part of vx and vy at v, the component of y in H - v going to a new part."""
        vx, vy = edge_key(*vx), edge_key(*vy)
        v = _shared_vertex(vx, vy)
        x, y = _other(vx, v), _other(vy, v)
        part = self.find(*vx)
        if self.find(*vy) is not part:
            raise PartitionError(f"{vx} and {vy} lie in different parts")
        s = part.mugs
        k = s.core([v, x, y], self.d + 2)
        hk = s.core_graph(k)
        # the core keeps separation: y's side in H[K] - v is y's side in H - v
        side_j = _component(hk, y, v)
        if x in side_j:
            raise PartitionError(f"{v} does not separate {x} from {y}")
        kj = side_j | {v}
        ki = set(k) - side_j
        fk_i = static_elim_forest(_induced(hk, ki))
        fk_j = static_elim_forest(_induced(hk, kj))

        apps = s.trim(k)
        # an appendix follows the side its reach touches
        to_j = [b for b in apps if set(b.key) & side_j]
        labels: List[int] = sorted(side_j)
        for b in to_j:
            labels.extend(s.subtree_labels(b))
        other = self._new_part([])
        sj = other.mugs
        sj.partial = True
        sj.adopt(s, labels, to_j)
        # v stays in both parts
        sj.add_detached(v)
        s.extend(_induced(hk, ki), fk_i)
        sj.extend(_induced(hk, kj), fk_j)
        other.edges = set(sj.edges())
        part.edges -= other.edges
        self._refresh_lower(part, ki)
        self._refresh_lower(other, kj)
        self._record(lambda: self.merge(vx, vy))
        self.log.debug(f"split part {part.pid} at {v}: new part {other.pid} with {len(other.edges)} edges")
        return part, other

    def articul(self, vx: Edge, vy: Edge) -> bool:
        """Do x and y fall into different components once v is removed from their part?"""
        vx, vy = edge_key(*vx), edge_key(*vy)
        v = _shared_vertex(vx, vy)
        x, y = _other(vx, v), _other(vy, v)
        part = self.find(*vx)
        if self.find(*vy) is not part:
            raise PartitionError(f"{vx} and {vy} lie in different parts")
        s = part.mugs
        # a 2-core already preserves x-y connectivity avoiding v
        hk = s.core_graph(s.core([v, x, y], 2))
        return y not in _component(hk, x, v)

    # ---- path queries ----

    def pathlb(self, u: int, v: int, ux: Edge, vy: Edge) -> bool:
        """u-v path on at least k vertices inside the part of ux and vy?"""
        part = self.find(*ux)
        if self.find(*vy) is not part:
            raise PartitionError(f"{ux} and {vy} lie in different parts")
        return path_geq_k(part.mugs, u, v)

    def pathub(self, i: int, u: int, v: int, ux: Edge, vy: Edge) -> Optional[List[int]]:
        """u-v path on exactly i vertices inside the part of ux and vy, if any."""
        part = self.find(*ux)
        if self.find(*vy) is not part:
            raise PartitionError(f"{ux} and {vy} lie in different parts")
        return path_exact(part.mugs, u, v, i)

    # ---- verification ----

    def audit(self, optimality: bool = False) -> List[str]:
        problems: List[str] = []
        seen: Set[Edge] = set()
        for part in self.part_ids.values():
            s = part.mugs
            try:
                f = s.export_forest()
            except PartialModeError:
                problems.append(f"part {part.pid} left partial")
                continue
            problems.extend(f"part {part.pid}: {p}" for p in s.audit())
            if set(s.edges()) != part.edges:
                problems.append(f"part {part.pid}: edge set drifted")
            if len(f.roots()) != 1 and part.edges:
                problems.append(f"part {part.pid}: forest has {len(f.roots())} trees")
            for e in part.edges:
                if e in seen:
                    problems.append(f"{e} in two parts")
                seen.add(e)
                rec = self.lower.get(e)
                deeper = max(e, key=f.depth)
                if rec is None or s.records.get(rec.label) is not rec or rec.label != deeper:
                    problems.append(f"lower[{e}] should be {deeper} of part {part.pid}")
            if optimality and not is_recursively_optimal(s.graph(), f):
                problems.append(f"part {part.pid}: forest not recursively optimal")
        if seen != set(self.lower):
            problems.append("edge dictionary and parts disagree")
        return problems
