"""
Bucketed dynamic elimination forest.

Every vertex lives in the bucket B[parent, SReach, height]. All members of a
bucket share one ParentCell, so re-parenting a whole bucket is a single write
to that cell plus moving one index entry. Updates extract a core around the
touched edge, trim it away (partial mode), re-solve the core statically and
extend the residual forest back onto the new core forest.
"""

import copy
import logging
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from config import DEBUG_CHECKS
from cores import small_subsets
from elim_forest import ElimForest, TreedepthExceeded, static_elim_forest
from graph_core import GraphError, adjacency_of, edge_key

log = logging.getLogger("tdyn.dynamic_td")

Key = Tuple[Tuple[int, ...], int]


class PartialModeError(RuntimeError):
    pass


class PrefixError(ValueError):
    pass


class Outcome(Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"


class ParentCell:
    __slots__ = ("owner",)

    def __init__(self, owner: Optional[int]):
        self.owner = owner


class Bucket:
    __slots__ = ("cell", "key", "height", "members", "mugs", "home")

    def __init__(self, owner: Optional[int], key: Tuple[int, ...], height: int, home: Any):
        self.cell = ParentCell(owner)
        self.key = key
        self.height = height
        self.members: Dict[int, None] = {}
        self.mugs: Dict[Any, Dict[int, None]] = {}
        self.home = home

    @property
    def owner(self) -> Optional[int]:
        return self.cell.owner

    def index_key(self) -> Key:
        return (self.key, self.height)

    def __repr__(self) -> str:
        return f"Bucket(owner={self.cell.owner}, X={self.key}, h={self.height}, n={len(self.members)})"


class VertexRecord:
    __slots__ = ("label", "bucket", "sreach", "neiup", "height", "conf", "child_buckets", "writes")

    def __init__(self, label: int):
        self.label = label
        self.bucket: Optional[Bucket] = None
        self.sreach: Tuple[int, ...] = ()
        self.neiup: Tuple[int, ...] = ()
        self.height = 1
        self.conf: FrozenSet[Any] = frozenset()
        self.child_buckets: Dict[Key, Bucket] = {}
        self.writes = 0

    @property
    def parent(self) -> Optional[int]:
        return self.bucket.cell.owner if self.bucket is not None else None


class TdStructure:
    def __init__(self, n: int, d: int, logger: Optional[logging.Logger] = None, labels: Optional[Iterable[int]] = None):
        if n < 0 or d < 1:
            raise ValueError(f"need n >= 0 and d >= 1, got n={n} d={d}")
        self.d = d
        self.log = logger or log
        self.records: Dict[int, VertexRecord] = {}
        self.root_buckets: Dict[Key, Bucket] = {}
        self.apps: List[Bucket] = []
        self.partial = False
        self.last_core: List[int] = []
        for v in (range(n) if labels is None else labels):
            self.add_vertex(v)

    @classmethod
    def new(cls, n: int, d: int, **kwargs) -> "TdStructure":
        return cls(n, d, **kwargs)

    @classmethod
    def from_graph(cls, g: Any, d: int, **kwargs) -> "TdStructure":
        adj = adjacency_of(g)
        s = cls(0, d, labels=sorted(adj), **kwargs)
        for u in sorted(adj):
            for v in sorted(adj[u]):
                if u < v and s.insert(u, v) is Outcome.REJECTED:
                    raise TreedepthExceeded(d, f"while inserting {u}-{v}")
        return s

    # ---- bucket plumbing ----

    def _index_of(self, owner: Optional[int]) -> Dict[Key, Bucket]:
        return self.root_buckets if owner is None else self.records[owner].child_buckets

    def _bucket_for(self, owner: Optional[int], key: Tuple[int, ...], height: int) -> Bucket:
        index = self._index_of(owner)
        b = index.get((key, height))
        if b is None:
            b = Bucket(owner, key, height, self)
            index[(key, height)] = b
        return b

    def _attach(self, rec: VertexRecord, b: Bucket) -> None:
        rec.bucket = b
        b.members[rec.label] = None
        for c in rec.conf:
            b.mugs.setdefault(c, {})[rec.label] = None
        rec.writes += 1

    def _detach(self, rec: VertexRecord) -> None:
        b = rec.bucket
        if b is None:
            return
        del b.members[rec.label]
        for c in rec.conf:
            mug = b.mugs.get(c)
            if mug is not None:
                mug.pop(rec.label, None)
                if not mug:
                    del b.mugs[c]
        if not b.members:
            index = self._index_of(b.cell.owner)
            if index.get(b.index_key()) is b:
                del index[b.index_key()]
        rec.bucket = None
        rec.writes += 1

    def _register(self, b: Bucket, owner: Optional[int]) -> None:
        """Rename b to owner; a bucket already sitting under the same key absorbs it."""
        b.cell.owner = owner
        b.home = self
        index = self._index_of(owner)
        other = index.get(b.index_key())
        if other is None or other is b:
            index[b.index_key()] = b
            return
        # same key already taken: merge members into the existing bucket
        for label in list(b.members):
            rec = self.records[label]
            self._detach(rec)
            self._attach(rec, other)

    def add_vertex(self, label: int) -> VertexRecord:
        if label in self.records:
            raise GraphError(f"vertex {label} already present")
        rec = VertexRecord(label)
        self.records[label] = rec
        self._refresh_vertex(rec)
        self._attach(rec, self._bucket_for(None, (), 1))
        return rec

    def add_detached(self, label: int) -> VertexRecord:
        """Fresh record with no bucket, to be placed by the next extend."""
        if label in self.records:
            raise GraphError(f"vertex {label} already present")
        rec = VertexRecord(label)
        self.records[label] = rec
        return rec

    def subtree_labels(self, b: Bucket) -> List[int]:
        """Every vertex in the subtrees of the members of b."""
        out: List[int] = []
        stack = [b]
        while stack:
            cur = stack.pop()
            for label in cur.members:
                out.append(label)
                stack.extend(self.records[label].child_buckets.values())
        return out

    def adopt(self, other: "TdStructure", labels: Iterable[int], buckets: Iterable[Bucket]) -> None:
        """Move records (with the buckets they own) and root-level buckets out of a
        partial structure into this partial one."""
        if not (self.partial and other.partial):
            raise PartialModeError("records move only between trimmed structures")
        for label in labels:
            rec = other.records.pop(label)
            if label in self.records:
                raise GraphError(f"vertex {label} present on both sides")
            self.records[label] = rec
            for b in rec.child_buckets.values():
                b.home = self
        for b in buckets:
            if other.root_buckets.get(b.index_key()) is b:
                del other.root_buckets[b.index_key()]
            if b in other.apps:
                other.apps.remove(b)
            self._register(b, None)
            if self.root_buckets.get(b.index_key()) is b:
                self.apps.append(b)

    # ---- read access ----

    def _require_full(self, what: str) -> None:
        if self.partial:
            raise PartialModeError(f"{what} is unavailable while the structure is partial")

    def vertices(self) -> List[int]:
        return sorted(self.records)

    def __contains__(self, v: int) -> bool:
        return v in self.records

    def parent(self, v: int) -> Optional[int]:
        return self.records[v].parent

    def sreach(self, v: int) -> Tuple[int, ...]:
        return self.records[v].sreach

    def neiup(self, v: int) -> Tuple[int, ...]:
        return self.records[v].neiup

    def subtree_height(self, v: int) -> int:
        return self.records[v].height

    def children(self, v: Optional[int]) -> List[int]:
        out: List[int] = []
        for b in self._index_of(v).values():
            out.extend(b.members)
        return out

    def buckets_of(self, owner: Optional[int]) -> List[Bucket]:
        """Child buckets of owner, tallest first, then by key."""
        return sorted(self._index_of(owner).values(), key=lambda b: (-b.height, b.key))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.records[u].neiup or u in self.records[v].neiup

    def edges(self) -> List[Tuple[int, int]]:
        return sorted(edge_key(u, w) for u, rec in self.records.items() for w in rec.neiup)

    def graph(self) -> Dict[int, Set[int]]:
        adj: Dict[int, Set[int]] = {v: set() for v in self.records}
        for a, b in self.edges():
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def root_of(self, v: int) -> int:
        p = self.records[v].parent
        while p is not None:
            v = p
            p = self.records[v].parent
        return v

    def connected(self, u: int, v: int) -> bool:
        self._require_full("connected")
        return self.root_of(u) == self.root_of(v)

    def height(self) -> int:
        self._require_full("height")
        return max((b.height for b in self.root_buckets.values()), default=0)

    def export_forest(self) -> ElimForest:
        self._require_full("export_forest")
        return ElimForest({v: rec.parent for v, rec in self.records.items()})

    def core_graph(self, k: Iterable[int]) -> Dict[int, Set[int]]:
        """G[K] for a prefix K, rebuilt from the NeiUp lists."""
        ks = set(k)
        adj: Dict[int, Set[int]] = {v: set() for v in ks}
        for v in ks:
            for w in self.records[v].neiup:
                if w in ks:
                    adj[v].add(w)
                    adj[w].add(v)
        return adj

    # ---- core extraction ----

    def core(self, seeds: Iterable[int], q: int) -> List[int]:
        """q-core containing the ancestors of seeds; vertices listed bottom-up."""
        forced: Set[int] = set()
        # seeds drag in their whole root path
        for s in seeds:
            v: Optional[int] = s
            while v is not None and v not in forced:
                forced.add(v)
                v = self.records[v].parent
        out: List[int] = []
        marked: Set[int] = set()
        self._rec_core(None, q, forced, marked, out)
        self.last_core = out
        return out

    def _rec_core(self, u: Optional[int], q: int, forced: Set[int], marked: Set[int], out: List[int]) -> None:
        buckets = self.buckets_of(u)
        if not buckets:
            return
        base = () if u is None else self.records[u].sreach + (u,)
        picked: List[int] = []
        for b in buckets:
            for w in b.members:
                if w in forced and w not in marked:
                    marked.add(w)
                    picked.append(w)
        # for each small X above u, keep q children whose strong reach covers X
        for x in small_subsets(base):
            xs = set(x)
            budget = q
            for b in buckets:
                if budget == 0:
                    break
                if not xs <= set(b.key):
                    continue
                for w in b.members:
                    if w not in marked:
                        marked.add(w)
                        picked.append(w)
                    # already-marked children still count toward q
                    budget -= 1
                    if budget == 0:
                        break
        # post-order, so out lists every vertex after its picked descendants
        for w in picked:
            self._rec_core(w, q, forced, marked, out)
            out.append(w)

    # ---- trim / extend ----

    def trim(self, k: Iterable[int]) -> List[Bucket]:
        self._require_full("trim")
        ks = list(k)
        kset = set(ks)
        for w in ks:
            p = self.records[w].parent
            if p is not None and p not in kset:
                raise PrefixError(f"{w} is in the core but its parent {p} is not")
        for w in ks:
            self._detach(self.records[w])
        # untouched root trees are appendices too
        apps: List[Bucket] = list(self.root_buckets.values())
        # children of core vertices outside K become root-level appendices
        for w in ks:
            rec = self.records[w]
            owned = list(rec.child_buckets.values())
            rec.child_buckets = {}
            for b in owned:
                self._register(b, None)
                if self.root_buckets.get(b.index_key()) is b:
                    apps.append(b)
        self.apps = apps
        self.partial = True
        self.log.debug(f"trim |K|={len(ks)} apps={len(apps)}")
        return apps

    def extend(self, hk: Any, fk: ElimForest) -> None:
        if not self.partial:
            raise PartialModeError("extend needs a trimmed structure")
        hadj = adjacency_of(hk)
        # hang each appendix below the deepest vertex of its reach
        for b in self.apps:
            # merged away, or an unattached component that stays a root
            if self.root_buckets.get(b.index_key()) is not b or not b.key:
                continue
            m = max(b.key, key=fk.depth)
            del self.root_buckets[b.index_key()]
            self._register(b, m)
        self.apps = []
        # children first: a core vertex's reach needs its child buckets settled
        for u in fk.bottom_up():
            rec = self.records[u]
            anc = fk.ancestors(u)
            neiup = sorted(set(anc) & hadj[u])
            sreach: Set[int] = set(neiup)
            for b in rec.child_buckets.values():
                sreach.update(b.key)
            sreach.discard(u)
            rec.neiup = tuple(neiup)
            rec.sreach = tuple(sorted(sreach))
            rec.height = 1 + max((b.height for b in rec.child_buckets.values()), default=0)
            self._refresh_vertex(rec)
            self._attach(rec, self._bucket_for(fk.parent[u], rec.sreach, rec.height))
        self.partial = False
        self._refresh_root()
        self.log.debug(f"extend |K|={len(fk)} height={self.height()}")

    def _refresh_vertex(self, rec: VertexRecord) -> None:
        """Hook run on every core vertex after its children are in place."""

    def _refresh_root(self) -> None:
        """Hook run once the structure is full again."""

    # ---- updates ----

    def _rebuild(self, k: List[int], hk: Dict[int, Set[int]], fk: ElimForest) -> None:
        self.trim(k)
        self.extend(hk, fk)
        if DEBUG_CHECKS:
            problems = self.audit()
            if problems:
                raise AssertionError(f"bucket audit failed: {problems[:3]}")

    def insert(self, u: int, v: int) -> Outcome:
        self._require_full("insert")
        if u == v:
            raise GraphError(f"self-loop on {u}")
        if self.has_edge(u, v):
            raise GraphError(f"edge {edge_key(u, v)} already present")
        k = self.core([u, v], self.d + 1)
        hk = self.core_graph(k)
        hk[u].add(v)
        hk[v].add(u)
        # the core carries the answer; nothing is touched on rejection
        try:
            fk = static_elim_forest(hk, max_height=self.d)
        except TreedepthExceeded:
            self.log.debug(f"insert {u}-{v} rejected, |K|={len(k)} d={self.d}")
            return Outcome.REJECTED
        self._rebuild(k, hk, fk)
        return Outcome.ACCEPTED

    def try_insert(self, u: int, v: int) -> bool:
        return self.insert(u, v) is Outcome.ACCEPTED

    def remove(self, u: int, v: int) -> None:
        self._require_full("remove")
        if not self.has_edge(u, v):
            raise GraphError(f"edge {edge_key(u, v)} not present")
        # one extra child per set, since the height may drop
        k = self.core([u, v], self.d + 2)
        hk = self.core_graph(k)
        hk[u].discard(v)
        hk[v].discard(u)
        self._rebuild(k, hk, static_elim_forest(hk))

    def clone(self) -> "TdStructure":
        return copy.deepcopy(self)

    # ---- verification ----

    def audit(self, g: Any = None) -> List[str]:
        """Recompute parent, SReach, NeiUp and height from scratch; list every disagreement."""
        adj = self.graph() if g is None else adjacency_of(g)
        problems: List[str] = []
        if set(adj) != set(self.records):
            return [f"vertex sets differ: {sorted(set(adj) ^ set(self.records))}"]
        f = ElimForest({v: rec.parent for v, rec in self.records.items()})
        for v, rec in self.records.items():
            b = rec.bucket
            if b is None:
                problems.append(f"{v}: no bucket")
                continue
            if v not in b.members:
                problems.append(f"{v}: missing from its bucket")
            if self._index_of(b.cell.owner).get(b.index_key()) is not b:
                problems.append(f"{v}: bucket {b!r} not indexed under its owner")
            sr = tuple(sorted(f.sreach(adj, v)))
            nu = tuple(sorted(f.neiup(adj, v)))
            h = f.subtree_height(v)
            if b.key != sr or rec.sreach != sr:
                problems.append(f"{v}: SReach {rec.sreach}/{b.key} expected {sr}")
            if rec.neiup != nu:
                problems.append(f"{v}: NeiUp {rec.neiup} expected {nu}")
            if b.height != h or rec.height != h:
                problems.append(f"{v}: height {rec.height}/{b.height} expected {h}")
        for owner in [None] + list(self.records):
            for b in self._index_of(owner).values():
                if not b.members:
                    problems.append(f"empty bucket {b!r}")
        return problems
