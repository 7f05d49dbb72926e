"""
Mutable undirected simple graph over a fixed vertex universe [0, n).

The edge dictionary maps canonical pairs (min, max) to a per-edge record slot,
and is kept in lockstep with the adjacency sets.
"""

from typing import Any, Dict, Iterable, List, Optional, Set, Tuple

Edge = Tuple[int, int]


class GraphError(ValueError):
    pass


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    def __init__(self, n: int):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self.adjacency: List[Set[int]] = [set() for _ in range(n)]
        self.edge_dict: Dict[Edge, Any] = {}

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def _check(self, u: int, v: int) -> None:
        for x in (u, v):
            if not 0 <= x < self.n:
                raise GraphError(f"vertex {x} out of range [0, {self.n})")

    def add_edge(self, u: int, v: int, record: Any = None) -> None:
        self._check(u, v)
        if u == v:
            raise GraphError(f"self-loop on {u}")
        key = edge_key(u, v)
        if key in self.edge_dict:
            return
        self.edge_dict[key] = record
        self.adjacency[u].add(v)
        self.adjacency[v].add(u)

    def remove_edge(self, u: int, v: int) -> None:
        self._check(u, v)
        key = edge_key(u, v)
        if key not in self.edge_dict:
            return
        del self.edge_dict[key]
        self.adjacency[u].discard(v)
        self.adjacency[v].discard(u)

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u, v)
        return edge_key(u, v) in self.edge_dict

    def record(self, u: int, v: int) -> Optional[Any]:
        return self.edge_dict.get(edge_key(u, v))

    def set_record(self, u: int, v: int, record: Any) -> None:
        key = edge_key(u, v)
        if key not in self.edge_dict:
            raise GraphError(f"edge {key} not present")
        self.edge_dict[key] = record

    def neighbors(self, u: int) -> Set[int]:
        return self.adjacency[u]

    def edges(self) -> List[Edge]:
        return sorted(self.edge_dict)

    def edge_count(self) -> int:
        return len(self.edge_dict)

    def vertices(self) -> range:
        return range(self.n)

    def induced(self, vertices: Iterable[int]) -> Dict[int, Set[int]]:
        """Adjacency of G[A] as a dict keyed by the vertices of A."""
        vs = set(vertices)
        return {v: self.adjacency[v] & vs for v in vs}

    def copy(self) -> "Graph":
        g = Graph(self.n)
        g.adjacency = [set(a) for a in self.adjacency]
        g.edge_dict = dict(self.edge_dict)
        return g

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"


def adjacency_of(g: Any) -> Dict[int, Set[int]]:
    """Accept a Graph or a plain adjacency mapping and return a dict view."""
    if isinstance(g, Graph):
        return {v: g.adjacency[v] for v in range(g.n)}
    return {v: set(nb) for v, nb in g.items()}
