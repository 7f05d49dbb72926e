"""
TdStructure augmented with mugs: every bucket keeps, per configuration c, the
sub-list of members w whose summary conf(G_w) contains c. Summaries are
recomputed bottom-up on the core after each update, and the membership flag
is read off the summary of the whole graph.
"""

import logging
from typing import Any, Dict, List, Optional

from config_schemes import ConfigSet, KPathScheme
from dynamic_td import Bucket, Outcome, TdStructure, VertexRecord

log = logging.getLogger("tdyn.mug_structure")


class MugStructure(TdStructure):
    def __init__(self, n: int, d: int, scheme: Any = None, k: Optional[int] = None,
                 logger: Optional[logging.Logger] = None, labels=None):
        if scheme is None:
            if k is None:
                raise ValueError("pass either a scheme or k")
            scheme = KPathScheme(k)
        self.scheme = scheme
        self._member = False
        super().__init__(n, d, logger=logger or log, labels=labels)

    @property
    def k(self) -> int:
        return self.scheme.k

    def member(self) -> bool:
        self._require_full("member")
        return self._member

    def verdict(self) -> bool:
        return self.member()

    def conf_of(self, v: int) -> ConfigSet:
        rec = self.records[v]
        return ConfigSet(rec.sreach, rec.conf)

    def mug(self, b: Bucket, c: Any) -> List[int]:
        return list(b.mugs.get(c, ()))

    def representatives(self, owner: Optional[int]) -> List[int]:
        """First tau members of every mug of every child bucket of owner."""
        seen: Dict[int, None] = {}
        for b in self.buckets_of(owner):
            tau = self.scheme.tau(len(b.key))
            for members in b.mugs.values():
                for i, w in enumerate(members):
                    if i == tau:
                        break
                    seen[w] = None
        return list(seen)

    def add_vertex(self, label: int) -> VertexRecord:
        rec = super().add_vertex(label)
        self._refresh_root()
        return rec

    def _refresh_vertex(self, rec: VertexRecord) -> None:
        u = rec.label
        acc = self.scheme.single(u)
        for w in rec.neiup:
            acc = self.scheme.union(acc, self.scheme.edge(u, w))
        for w in self.representatives(u):
            acc = self.scheme.union(acc, self.conf_of(w))
        rec.conf = self.scheme.forget(acc, u).configs

    def _refresh_root(self) -> None:
        acc = self.scheme.empty()
        for w in self.representatives(None):
            acc = self.scheme.union(acc, self.conf_of(w))
        self._member = self.scheme.is_member(acc)

    def mug_insert(self, u: int, v: int) -> Outcome:
        return self.insert(u, v)

    def mug_remove(self, u: int, v: int) -> None:
        self.remove(u, v)

    def audit(self, g: Any = None) -> List[str]:
        problems = super().audit(g)
        for v, rec in self.records.items():
            b = rec.bucket
            if b is None:
                continue
            for c in rec.conf:
                if v not in b.mugs.get(c, {}):
                    problems.append(f"{v}: missing from mug {c!r}")
            for c, members in b.mugs.items():
                if v in members and c not in rec.conf:
                    problems.append(f"{v}: stale in mug {c!r}")
        return problems
