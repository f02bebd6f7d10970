"""Simple undirected graphs on at most 64 vertices, stored as adjacency bitmasks."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.

    ``adj[v]`` is a bitmask whose bit ``w`` is set iff ``v`` and ``w`` are
    adjacent. Instances are hashable and compare by labeled equality.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for w in iter_bits(row):
                if not self.adj[w] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {w}")

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        rows = [0] * n
        for e in edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @property
    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def non_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in combinations(range(self.n), 2) if not self.adj[u] >> v & 1]

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adj), default=0)

    def with_edge(self, u: int, v: int) -> Graph:
        rows = list(self.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def without_edge(self, u: int, v: int) -> Graph:
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def without_vertex(self, v: int) -> Graph:
        low = (1 << v) - 1
        rows = []
        for w, row in enumerate(self.adj):
            if w == v:
                continue
            rows.append((row & low) | (row >> (v + 1) << v))
        return Graph(self.n - 1, tuple(rows))

    def extend(self, neighbourhood: int) -> Graph:
        """Append a new vertex ``n`` adjacent to the vertices in the mask."""
        new = self.n
        rows = [row | (1 << new) if neighbourhood >> w & 1 else row for w, row in enumerate(self.adj)]
        rows.append(neighbourhood)
        return Graph(new + 1, tuple(rows))

    def with_neighbourhood(self, u: int, neighbourhood: int) -> Graph:
        """Replace the neighbourhood of ``u`` by ``neighbourhood`` (``u`` itself is ignored)."""
        neighbourhood &= ~(1 << u)
        rows = list(self.adj)
        bit = 1 << u
        for w in range(self.n):
            if w == u:
                continue
            if neighbourhood >> w & 1:
                rows[w] |= bit
            else:
                rows[w] &= ~bit
        rows[u] = neighbourhood
        return Graph(self.n, tuple(rows))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph in which vertex ``v`` is renamed ``perm[v]``."""
        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            m = 0
            for w in iter_bits(row):
                m |= 1 << perm[w]
            rows[perm[v]] = m
        return Graph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> Graph:
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u, v in combinations(vertices, 2) if self.adj[u] >> v & 1]
        return Graph.from_edges(len(vertices), edges)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.adj[u] >> v & 1 for u, v in combinations(vs, 2))

    def is_independent(self, vertices: Iterable[int]) -> bool:
        mask = bits_of(vertices)
        return all(not self.adj[v] & mask for v in iter_bits(mask))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"
