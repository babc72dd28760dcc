"""Small simple graphs used by the rate-1/2 and rate-1/3 codes."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

__all__ = ['Graph']


def _edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Graph:
    """
    Simple undirected graph on vertices 0..v-1.

    Vertex i becomes server i+1 when the graph is turned into a code.
    """
    v: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, v: int, edges: Iterable[tuple[int, int]] = ()):
        norm = set()
        for a, b in edges:
            if a == b:
                raise ValueError(f"loop at vertex {a}")
            if not (0 <= a < v and 0 <= b < v):
                raise ValueError(f"edge ({a}, {b}) out of range for v={v}")
            e = _edge(a, b)
            if e in norm:
                raise ValueError(f"duplicate edge {e}")
            norm.add(e)
        object.__setattr__(self, 'v', v)
        object.__setattr__(self, 'edges', frozenset(norm))

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.v)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def degree(self, x: int) -> int:
        return sum(1 for e in self.edges if x in e)

    def has_edge(self, a: int, b: int) -> bool:
        return _edge(a, b) in self.edges

    def triangles(self) -> list[tuple[int, int, int]]:
        adj = self.adjacency()
        out = []
        for a, b in sorted(self.edges):
            for c in sorted(adj[a] & adj[b]):
                if c > b:
                    out.append((a, b, c))
        return out

    def edges_within(self, vertices: Iterable[int]) -> int:
        vs = set(vertices)
        return sum(1 for a, b in self.edges if a in vs and b in vs)

    def find_triangle(self) -> Optional[tuple[int, int, int]]:
        tri = self.triangles()
        return tri[0] if tri else None

    def find_square(self) -> Optional[tuple[int, int, int, int]]:
        """A 4-cycle a-b-c-d-a (not necessarily induced), or None."""
        adj = self.adjacency()
        for a, c in combinations(range(self.v), 2):
            common = sorted(adj[a] & adj[c])
            if len(common) >= 2:
                return (a, common[0], c, common[1])
        return None

    def has_girth5(self) -> bool:
        """True when there is no triangle and no 4-cycle."""
        adj = self.adjacency()
        for a, c in combinations(range(self.v), 2):
            common = len(adj[a] & adj[c])
            if common >= 2 or (common >= 1 and c in adj[a]):
                return False
        return True

    def __len__(self):
        return len(self.edges)
