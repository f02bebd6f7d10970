"""Canonical labeling and automorphism groups by partition refinement and individualization.

The search tree follows the usual scheme: refine an ordered partition to an
equitable one, individualize each vertex of the first smallest non-trivial
cell, recurse. Leaves are compared on ``(trace, relabeled adjacency)``, where
the trace records cell sizes along the path. Leaves that tie with the first
or best leaf yield automorphisms; those are used to prune sibling subtrees
and, at the end, give the group order by orbit-stabilizer along the first
path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, iter_bits
from .graph6 import emit_graph6

Cells = list[tuple[int, ...]]


@dataclass(frozen=True)
class CanonicalForm:
    bytes: bytes
    aut_order: int


@dataclass(frozen=True)
class Labeling:
    """Full result of a canonical labeling search.

    ``order[i]`` is the vertex receiving canonical label ``i``; ``generators``
    generate the automorphism group.
    """

    order: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]
    aut_order: int
    graph6: str

    @property
    def label(self) -> tuple[int, ...]:
        lab = [0] * len(self.order)
        for i, v in enumerate(self.order):
            lab[v] = i
        return tuple(lab)

    def orbits(self) -> list[int]:
        """Orbit representative (smallest member) for each vertex."""
        return orbit_partition(len(self.order), self.generators)


def orbit_partition(n: int, generators) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gen in generators:
        for v in range(n):
            a, b = find(v), find(gen[v])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [find(v) for v in range(n)]


def refine(adj: tuple[int, ...], cells: Cells) -> Cells:
    """Coarsest equitable refinement of an ordered partition.

    Cells split into sub-cells ordered by neighbour count into the splitter,
    so the result commutes with relabeling.
    """
    total = sum(len(c) for c in cells)
    i = 0
    while i < len(cells) and len(cells) < total:
        mask = 0
        for v in cells[i]:
            mask |= 1 << v
        out: Cells = []
        split = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[int, list[int]] = {}
            for v in c:
                groups.setdefault((adj[v] & mask).bit_count(), []).append(v)
            if len(groups) == 1:
                out.append(c)
            else:
                split = True
                for key in sorted(groups):
                    out.append(tuple(groups[key]))
        if split:
            cells = out
            i = 0
        else:
            i += 1
    return cells


class _Search:
    def __init__(self, g: Graph):
        self.n = g.n
        self.adj = g.adj
        self.first: tuple | None = None
        self.first_order: tuple[int, ...] = ()
        self.first_path: tuple[int, ...] = ()
        self.best: tuple | None = None
        self.best_order: tuple[int, ...] = ()
        self.generators: list[tuple[int, ...]] = []
        self.orbit_sizes: list[int] = []

    def _relabeled(self, order: tuple[int, ...]) -> tuple[int, ...]:
        lab = [0] * self.n
        for i, v in enumerate(order):
            lab[v] = i
        rows = []
        for v in order:
            m = 0
            for w in iter_bits(self.adj[v]):
                m |= 1 << lab[w]
            rows.append(m)
        return tuple(rows)

    def _automorphism(self, src: tuple[int, ...], dst: tuple[int, ...]) -> None:
        perm = [0] * self.n
        for a, b in zip(src, dst):
            perm[a] = b
        perm_t = tuple(perm)
        if perm_t != tuple(range(self.n)) and perm_t not in self.generators:
            self.generators.append(perm_t)

    def _stabilizer_orbits(self, prefix: tuple[int, ...]) -> list[int]:
        gens = [gen for gen in self.generators if all(gen[p] == p for p in prefix)]
        return orbit_partition(self.n, gens)

    def _leaf(self, cells: Cells, trace: tuple, path: tuple[int, ...]) -> int | None:
        order = tuple(c[0] for c in cells)
        key = (trace, self._relabeled(order))
        if self.first is None:
            self.first = self.best = key
            self.first_order = self.best_order = order
            self.first_path = path
            return None
        if key == self.first:
            self._automorphism(self.first_order, order)
            common = 0
            for a, b in zip(path, self.first_path):
                if a != b:
                    break
                common += 1
            return common
        if key == self.best:
            self._automorphism(self.best_order, order)
        elif key > self.best:
            self.best = key
            self.best_order = order
        return None

    def search(self, cells: Cells, trace: tuple, path: tuple[int, ...], on_first: bool) -> int | None:
        cells = refine(self.adj, cells)
        shape = tuple(len(c) for c in cells)
        trace = trace + (shape,)
        depth = len(trace)
        if self.first is not None:
            first_prefix = self.first[0][:depth]
            if trace != first_prefix and trace < self.best[0][:depth]:
                return None
        if len(cells) == self.n:
            return self._leaf(cells, trace, path)

        target = min(range(len(cells)), key=lambda i: (len(cells[i]) == 1, len(cells[i]), i))
        cell = sorted(cells[target])
        level = len(path)
        explored: list[int] = []
        for w in cell:
            if explored:
                orbits = self._stabilizer_orbits(path)
                if any(orbits[w] == orbits[x] for x in explored):
                    continue
            rest = tuple(x for x in cells[target] if x != w)
            child = cells[:target] + [(w,), rest] + cells[target + 1:]
            jump = self.search(child, trace, path + (w,), on_first and not explored)
            explored.append(w)
            if jump is not None and jump < level:
                return jump
        if on_first:
            orbits = self._stabilizer_orbits(path)
            rep = orbits[cell[0]]
            self.orbit_sizes.append(sum(1 for v in cell if orbits[v] == rep))
        return None


@lru_cache(maxsize=4096)
def canonical_labeling(g: Graph) -> Labeling:
    return compute_labeling(g)


def compute_labeling(g: Graph) -> Labeling:
    """Uncached canonical labeling (used by the generator, where graphs rarely repeat)."""
    if g.n == 0:
        return Labeling((), (), 1, emit_graph6(g))
    s = _Search(g)
    s.search([tuple(range(g.n))], (), (), True)
    aut = 1
    for size in s.orbit_sizes:
        aut *= size
    order = s.best_order
    lab = [0] * g.n
    for i, v in enumerate(order):
        lab[v] = i
    text = emit_graph6(g.relabel(lab))
    return Labeling(order, tuple(s.generators), aut, text)


def canonical(g: Graph) -> CanonicalForm:
    lab = canonical_labeling(g)
    return CanonicalForm(lab.graph6.encode("ascii"), lab.aut_order)


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_labeling(g).label)


def aut_order(g: Graph) -> int:
    return canonical_labeling(g).aut_order


def is_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and a.num_edges == b.num_edges and canonical(a).bytes == canonical(b).bytes
