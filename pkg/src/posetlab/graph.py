"""Simple undirected graphs on vertices ``0..n-1``."""

from __future__ import annotations

from collections import deque
from typing import Iterable


class Graph:
    """Immutable simple undirected graph.

    Cover graphs of posets are instances of this class; the wcol routines
    accept any ``Graph``.
    """

    __slots__ = ("n", "adj", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise IndexError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj = tuple(frozenset(a) for a in adj)
        self._edges = tuple(sorted((u, v) for u in range(n) for v in adj[u] if u < v))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def without_edge(self, u: int, v: int) -> "Graph":
        e = (min(u, v), max(u, v))
        return Graph(self.n, [f for f in self._edges if f != e])

    def distances_from(self, source: int, allowed=None, limit=None) -> dict[int, int]:
        """BFS distances from ``source`` inside the vertex set ``allowed``.

        ``allowed`` is a predicate on vertices (``None`` allows all); the
        search stops expanding at depth ``limit``.
        """
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            d = dist[u]
            if limit is not None and d >= limit:
                continue
            for w in self.adj[u]:
                if w not in dist and (allowed is None or allowed(w)):
                    dist[w] = d + 1
                    queue.append(w)
        return dist

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = sorted(self.distances_from(s))
            for v in comp:
                seen[v] = True
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.distances_from(0)) == self.n

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self._edges == other._edges

    def __hash__(self):
        return hash((self.n, self._edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def grid_graph(rows: int, cols: int) -> Graph:
    def vid(i, j):
        return i * cols + j

    edges = []
    for i in range(rows):
        for j in range(cols):
            if i + 1 < rows:
                edges.append((vid(i, j), vid(i + 1, j)))
            if j + 1 < cols:
                edges.append((vid(i, j), vid(i, j + 1)))
    return Graph(rows * cols, edges)
