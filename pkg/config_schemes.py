"""
Configuration schemes: finite summaries of boundaried graphs that compose
under forgetting a boundary vertex and under gluing along the boundary.

The shipped scheme tracks families of disjoint paths hanging off the boundary,
which is enough to decide whether a graph contains a simple path on k vertices.
A configuration is a linear forest on the boundary plus two terminals s and t
(negative ids S and T), together with a length index in 0..k-1 or INF.
"""

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Protocol, Tuple, Union

S = -1
T = -2
INF = math.inf

Pair = Tuple[int, int]
Index = Union[int, float]


class Configuration(NamedTuple):
    edges: Tuple[Pair, ...]
    index: Index

    def __repr__(self) -> str:
        name = {S: "s", T: "t"}
        body = " ".join(f"{name.get(a, a)}{name.get(b, b)}" for a, b in self.edges) or "-"
        return f"<{body} | {'inf' if self.index == INF else self.index}>"


def pair(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class ConfigSet:
    boundary: Tuple[int, ...]
    configs: FrozenSet[Configuration] = field(default_factory=frozenset)

    def __contains__(self, c: object) -> bool:
        return c in self.configs

    def __len__(self) -> int:
        return len(self.configs)

    def __iter__(self):
        return iter(sorted(self.configs, key=lambda c: (c.edges, c.index)))


class ConfigurationScheme(Protocol):
    def empty(self) -> ConfigSet: ...
    def single(self, x: int) -> ConfigSet: ...
    def edge(self, x: int, y: int) -> ConfigSet: ...
    def forget(self, c: ConfigSet, x: int) -> ConfigSet: ...
    def union(self, c1: ConfigSet, c2: ConfigSet) -> ConfigSet: ...
    def tau(self, x: int) -> int: ...
    def zeta(self, x: int) -> int: ...
    def is_member(self, c: ConfigSet) -> bool: ...


def is_linear_forest(edges: Iterable[Pair]) -> bool:
    deg: Dict[int, int] = {}
    root: Dict[int, int] = {}

    def find(a: int) -> int:
        root.setdefault(a, a)
        while root[a] != a:
            root[a] = root[root[a]]
            a = root[a]
        return a

    for a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        root[ra] = rb
    if deg.get(S, 0) > 1 or deg.get(T, 0) > 1:
        return False
    return all(v <= 2 for v in deg.values())


def linear_forests(x: Iterable[int]) -> List[Tuple[Pair, ...]]:
    nodes = sorted(x) + [S, T]
    pairs = [pair(a, b) for a, b in combinations(nodes, 2)]
    out = []
    for r in range(len(pairs) + 1):
        for chosen in combinations(pairs, r):
            if is_linear_forest(chosen):
                out.append(tuple(sorted(chosen)))
    return out


def enumerate_configs(x: Iterable[int], k: int) -> List[Configuration]:
    indices: List[Index] = list(range(k)) + [INF]
    out = []
    for h in linear_forests(x):
        if not h:
            out.append(Configuration((), 0))
        else:
            out.extend(Configuration(h, i) for i in indices)
    return out


def path_configuration(x: Iterable[int], a: int, b: int, j: Index) -> Configuration:
    """The configuration made of the single edge ab with length index j over boundary x."""
    xs = set(x)
    for v in (a, b):
        if v >= 0 and v not in xs:
            raise ValueError(f"{v} is not in the boundary {sorted(xs)}")
    return Configuration((pair(a, b),), j)


class KPathScheme:
    def __init__(self, k: int):
        if k < 1:
            raise ValueError(f"k must be positive, got {k}")
        self.k = k
        self.final = Configuration(((T, S),), k - 1)

    def __repr__(self) -> str:
        return f"KPathScheme(k={self.k})"

    def _cap(self, i: Index) -> Index:
        return INF if i >= self.k else i

    def tau(self, x: int) -> int:
        return x + 2

    def zeta(self, x: int) -> int:
        return (self.k + 1) * 2 ** (x + 1) * math.factorial(x)

    def empty(self) -> ConfigSet:
        return ConfigSet((), frozenset({Configuration((), 0)}))

    def single(self, x: int) -> ConfigSet:
        sx, tx = pair(S, x), pair(T, x)
        return ConfigSet((x,), frozenset({
            Configuration((), 0),
            Configuration((sx,), 0),
            Configuration((tx,), 0),
            Configuration(tuple(sorted((sx, tx))), 0),
        }))

    def edge(self, x: int, y: int) -> ConfigSet:
        """Both endpoints of a single edge on the boundary."""
        xy = pair(x, y)
        out = set()
        for h in linear_forests((x, y)):
            if pair(S, T) in h:
                continue
            out.add(Configuration(h, self._cap(1) if xy in h else 0))
        return ConfigSet(tuple(sorted((x, y))), frozenset(out))

    def conf_base(self, vertices: Iterable[int], has_edge: bool) -> ConfigSet:
        vs = sorted(vertices)
        if len(vs) == 1:
            return self.single(vs[0])
        if len(vs) != 2:
            raise ValueError(f"base case takes one or two vertices, got {len(vs)}")
        if has_edge:
            return self.edge(vs[0], vs[1])
        return self.union(self.single(vs[0]), self.single(vs[1]))

    def forget(self, c: ConfigSet, x: int) -> ConfigSet:
        if x not in c.boundary:
            raise ValueError(f"{x} is not in the boundary {c.boundary}")
        out = set()
        for conf in c.configs:
            touching = [e for e in conf.edges if x in e]
            if not touching:
                out.add(conf)
            elif len(touching) == 2:
                (a1, b1), (a2, b2) = touching
                a = a1 if b1 == x else b1
                b = a2 if b2 == x else b2
                rest = [e for e in conf.edges if x not in e]
                rest.append(pair(a, b))
                out.add(Configuration(tuple(sorted(rest)), conf.index))
        return ConfigSet(tuple(v for v in c.boundary if v != x), frozenset(out))

    def union(self, c1: ConfigSet, c2: ConfigSet) -> ConfigSet:
        out = set(c1.configs) | set(c2.configs)
        left = [c for c in c1.configs if c.edges]
        right = [c for c in c2.configs if c.edges]
        right_sets = [(c, frozenset(c.edges)) for c in right]
        for a in left:
            aset = frozenset(a.edges)
            for b, bset in right_sets:
                if aset & bset:
                    continue
                merged = tuple(sorted(aset | bset))
                if is_linear_forest(merged):
                    out.add(Configuration(merged, self._cap(a.index + b.index)))
        return ConfigSet(tuple(sorted(set(c1.boundary) | set(c2.boundary))), frozenset(out))

    def union_all(self, sets: Iterable[ConfigSet], start: Optional[ConfigSet] = None) -> ConfigSet:
        acc = self.empty() if start is None else start
        for c in sets:
            acc = self.union(acc, c)
        return acc

    def is_member(self, c: ConfigSet) -> bool:
        return self.final in c.configs
