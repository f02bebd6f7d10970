"""Chromatic number, coloring enumeration, color-critical vertices and edges."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

from .graph import Graph, bits_of, iter_bits


@dataclass(frozen=True)
class ColoringWitness:
    k: int
    classes: tuple[tuple[int, ...], ...]

    def color_of(self) -> dict[int, int]:
        return {v: i for i, c in enumerate(self.classes) for v in c}


@dataclass(frozen=True)
class CriticalityReport:
    chi: int
    critical_vertices: tuple[int, ...]
    critical_edges: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "chi": self.chi,
            "criticalVertices": list(self.critical_vertices),
            "criticalEdges": [list(e) for e in self.critical_edges],
        }


def _greedy_clique(g: Graph) -> int:
    best = 0
    for start in range(g.n):
        clique = 1
        cand = g.adj[start]
        while cand:
            v = max(iter_bits(cand), key=lambda w: (g.adj[w] & cand).bit_count())
            clique += 1
            cand &= g.adj[v]
        best = max(best, clique)
    return best


def _dsatur(g: Graph) -> list[int]:
    color = [-1] * g.n
    for _ in range(g.n):
        def sat(v: int) -> tuple[int, int]:
            return len({color[w] for w in iter_bits(g.adj[v]) if color[w] >= 0}), g.degree(v)

        v = max((x for x in range(g.n) if color[x] < 0), key=sat)
        used = {color[w] for w in iter_bits(g.adj[v])}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color


def _k_coloring(g: Graph, k: int) -> list[int] | None:
    """Exact k-colorability by DSATUR-ordered backtracking; returns a coloring or None."""
    n = g.n
    color = [-1] * n
    # nbr_colors[v] = bitmask of colors among colored neighbours
    nbr_colors = [0] * n

    def pick() -> int:
        best, key = -1, (-1, -1)
        for v in range(n):
            if color[v] < 0:
                kv = (nbr_colors[v].bit_count(), g.degree(v))
                if kv > key:
                    best, key = v, kv
        return best

    def rec(colored: int, used_colors: int) -> bool:
        if colored == n:
            return True
        v = pick()
        allowed = [c for c in range(min(k, used_colors + 1)) if not nbr_colors[v] >> c & 1]
        for c in allowed:
            color[v] = c
            touched = []
            for w in iter_bits(g.adj[v]):
                if color[w] < 0 and not nbr_colors[w] >> c & 1:
                    nbr_colors[w] |= 1 << c
                    touched.append(w)
            if rec(colored + 1, max(used_colors, c + 1)):
                return True
            for w in touched:
                nbr_colors[w] &= ~(1 << c)
            color[v] = -1
        return False

    return list(color) if rec(0, 0) else None


def _witness(color: Sequence[int]) -> ColoringWitness:
    k = max(color, default=-1) + 1
    classes = [[] for _ in range(k)]
    for v, c in enumerate(color):
        classes[c].append(v)
    ordered = sorted(tuple(c) for c in classes)
    return ColoringWitness(k, tuple(ordered))


def optimal_coloring(g: Graph) -> ColoringWitness:
    """A proper coloring with the minimum number of colors (branch and bound)."""
    if g.n == 0:
        return ColoringWitness(0, ())
    lower = _greedy_clique(g)
    upper_coloring = _dsatur(g)
    upper = max(upper_coloring) + 1
    for k in range(lower, upper):
        found = _k_coloring(g, k)
        if found is not None:
            return _witness(found)
    return _witness(upper_coloring)


def chromatic_number(g: Graph) -> int:
    return optimal_coloring(g).k


def enumerate_colorings(g: Graph, k: int) -> Iterator[ColoringWitness]:
    """Every partition of V(g) into at most k independent sets, each exactly once."""
    n = g.n
    masks: list[int] = []
    assignment: list[list[int]] = []

    def rec(v: int) -> Iterator[ColoringWitness]:
        if v == n:
            yield ColoringWitness(len(assignment), tuple(tuple(c) for c in assignment))
            return
        for i in range(len(masks)):
            if not g.adj[v] & masks[i]:
                masks[i] |= 1 << v
                assignment[i].append(v)
                yield from rec(v + 1)
                assignment[i].pop()
                masks[i] &= ~(1 << v)
        if len(masks) < k:
            masks.append(1 << v)
            assignment.append([v])
            yield from rec(v + 1)
            assignment.pop()
            masks.pop()

    if n == 0:
        yield ColoringWitness(0, ())
        return
    yield from rec(0)


def criticality(f: Graph) -> CriticalityReport:
    chi = chromatic_number(f)
    vertices = tuple(v for v in range(f.n) if chromatic_number(f.without_vertex(v)) < chi)
    edges = tuple(e for e in f.edges() if chromatic_number(f.without_edge(*e)) < chi)
    return CriticalityReport(chi, vertices, edges)


@dataclass(frozen=True)
class CriticalR:
    """The minimising data behind :func:`critical_r`."""

    r: int
    vertex: int
    coloring: ColoringWitness
    color_class: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "vertex": self.vertex,
            "coloring": [list(c) for c in self.coloring.classes],
            "class": list(self.color_class),
        }


def critical_r_witness(f: Graph) -> CriticalR | None:
    """Smallest number of neighbours a color-critical vertex v has in one color class
    of a proper (chi(f)-1)-coloring of f - v, minimised over all such v, colorings
    and classes meeting N(v)."""
    report = criticality(f)
    k = report.chi - 1
    best: CriticalR | None = None
    for v in report.critical_vertices:
        rest = f.without_vertex(v)
        # map rest's labels back to f's
        back = [w for w in range(f.n) if w != v]
        nbrs = f.adj[v]
        for col in enumerate_colorings(rest, k):
            lifted = ColoringWitness(col.k, tuple(tuple(back[w] for w in c) for c in col.classes))
            for c in lifted.classes:
                meet = (nbrs & bits_of(c)).bit_count()
                if meet >= 1 and (best is None or meet < best.r):
                    best = CriticalR(meet, v, lifted, c)
    return best


def critical_r(f: Graph) -> int | None:
    w = critical_r_witness(f)
    return None if w is None else w.r


@dataclass(frozen=True)
class SafetyVerdict:
    verdict: str  # SAFE, UNSAFE or INCONCLUSIVE
    part_sizes: tuple[int, ...]
    r: int
    placements_checked: int
    witness: dict | None = field(default=None)

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "partSizes": list(self.part_sizes),
            "r": self.r,
            "placementsChecked": self.placements_checked,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _bounded_degree_graphs(m: int, max_deg: int, budget: int) -> list[Graph] | None:
    """All graphs on m labeled vertices with maximum degree <= max_deg, one per isomorphism class.

    Returns None when the labeled enumeration exceeds ``budget`` nodes.
    """
    from .canon import canonical

    pairs = [(u, v) for u in range(m) for v in range(u + 1, m)]
    seen: dict[bytes, Graph] = {}
    deg = [0] * m
    chosen: list[tuple[int, int]] = []
    visited = 0

    def rec(i: int) -> bool:
        nonlocal visited
        visited += 1
        if visited > budget:
            return False
        if i == len(pairs):
            g = Graph.from_edges(m, chosen)
            seen.setdefault(canonical(g).bytes, g)
            return True
        if not rec(i + 1):
            return False
        u, v = pairs[i]
        if deg[u] < max_deg and deg[v] < max_deg:
            deg[u] += 1
            deg[v] += 1
            chosen.append((u, v))
            ok = rec(i + 1)
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1
            if not ok:
                return False
        return True

    if not rec(0):
        return None
    return [seen[key] for key in sorted(seen)]


def embedding_safety_check(h: Graph, r: int, part_sizes: Sequence[int], budget: int = 100_000) -> SafetyVerdict:
    """Bounded refutation search for the embedding-safety condition.

    Every way of placing a graph of maximum degree < r inside each part of the
    complete multipartite graph with the given part sizes is tried (up to
    isomorphism within each part). UNSAFE carries a placement and a copy of h
    that uses at least one inside-part edge; INCONCLUSIVE means the search
    space exceeded ``budget``.
    """
    from .count import count_copies, iter_embeddings
    from .multipartite import PartSizes, realize

    parts = PartSizes.of(part_sizes)
    sizes = parts.sizes
    if r <= 1:
        return SafetyVerdict("SAFE", sizes, r, 1)

    per_part: list[list[Graph]] = []
    for m in sizes:
        options = _bounded_degree_graphs(m, r - 1, budget)
        if options is None:
            return SafetyVerdict("INCONCLUSIVE", sizes, r, 0)
        per_part.append(options)
    total = 1
    for options in per_part:
        total *= len(options)
    if total > budget:
        return SafetyVerdict("INCONCLUSIVE", sizes, r, 0)

    host = realize(parts)
    offsets = [sum(sizes[:i]) for i in range(len(sizes))]
    base = count_copies(h, host)
    checked = 0
    for combo in product(*per_part):
        checked += 1
        inside = [(u + off, v + off) for piece, off in zip(combo, offsets) for u, v in piece.edges()]
        if not inside:
            continue
        g = host
        for u, v in inside:
            g = g.with_edge(u, v)
        if count_copies(h, g) > base:
            inside_set = {frozenset(e) for e in inside}
            for phi in iter_embeddings(h, g):
                if any(frozenset((phi[a], phi[b])) in inside_set for a, b in h.edges()):
                    witness = {"insideEdges": [list(e) for e in inside], "copy": list(phi)}
                    return SafetyVerdict("UNSAFE", sizes, r, checked, witness)
    return SafetyVerdict("SAFE", sizes, r, checked)
