"""Named graph families and the disjoint-union / clique-joining / anchored-clique constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .coloring import chromatic_number
from .graph import MAX_VERTICES, Graph
from .multipartite import PartSizes, realize, turan_parts

KINDS = ("clique", "path", "cycle", "star", "completeMultipartite", "turan", "unionOfCliques", "bookF2")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    parameters: tuple[int, ...] = ()

    @classmethod
    def from_json(cls, data: dict) -> FamilySpec:
        return cls(data["kind"], tuple(int(x) for x in data.get("parameters", ())))


def _need(spec: FamilySpec, count: int | None = None, at_least: int | None = None) -> None:
    p = spec.parameters
    if count is not None and len(p) != count:
        raise ValueError(f"{spec.kind} takes {count} parameter(s), got {len(p)}")
    if at_least is not None and len(p) < at_least:
        raise ValueError(f"{spec.kind} takes at least {at_least} parameter(s), got {len(p)}")
    if any(x < 1 for x in p):
        raise ValueError(f"{spec.kind} parameters must be positive, got {p}")


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def book_f2() -> Graph:
    """Two triangles sharing vertex 0."""
    return Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])


def build(spec: FamilySpec) -> Graph:
    kind, p = spec.kind, spec.parameters
    if kind == "clique":
        _need(spec, 1)
        return Graph.complete(p[0])
    if kind == "path":
        _need(spec, 1)
        return path(p[0])
    if kind == "cycle":
        _need(spec, 1)
        return cycle(p[0])
    if kind == "star":
        _need(spec, 1)
        return star(p[0])
    if kind == "completeMultipartite":
        _need(spec, at_least=1)
        return realize(PartSizes.of(p))
    if kind == "turan":
        _need(spec, 2)
        return realize(turan_parts(p[0], p[1]))
    if kind == "unionOfCliques":
        _need(spec, at_least=1)
        g = Graph.complete(p[0])
        for r in p[1:]:
            g = disjoint_union(g, Graph.complete(r))
        return g
    if kind == "bookF2":
        _need(spec, 0)
        return book_f2()
    raise ValueError(f"unknown family {kind!r}; expected one of {', '.join(KINDS)}")


def disjoint_union(h: Graph, h_prime: Graph) -> Graph:
    n = h.n + h_prime.n
    if n > MAX_VERTICES:
        raise ValueError(f"union has {n} vertices, above the {MAX_VERTICES}-vertex cap")
    off = h.n
    return Graph.from_edges(n, h.edges() + [(u + off, v + off) for u, v in h_prime.edges()])


@dataclass(frozen=True)
class H2Spec:
    """h with a k-clique X, h' with a clique Y, and the Y-X edges to add.

    ``pattern`` pairs are (y, x) with y a vertex of h' and x a vertex of h.
    """

    h: Graph
    x: tuple[int, ...]
    h_prime: Graph
    y: tuple[int, ...]
    pattern: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if not self.h.is_clique(self.x):
            raise ValueError(f"X={self.x} is not a clique of h")
        if not self.h_prime.is_clique(self.y):
            raise ValueError(f"Y={self.y} is not a clique of h'")


def build_h2(spec: H2Spec) -> Graph:
    g = disjoint_union(spec.h, spec.h_prime)
    xs, ys = set(spec.x), set(spec.y)
    for y, x in spec.pattern:
        if y not in ys or x not in xs:
            raise ValueError(f"pattern pair ({y}, {x}) leaves Y x X")
        g = g.with_edge(x, y + spec.h.n)
    return g


@dataclass(frozen=True)
class H3Spec:
    """h plus a new k-clique on vertices h.n .. h.n+k-1, wired by ``extra_edges``.

    ``anchors`` orders the new clique as v_1..v_k (default: ascending).
    ``extra_edges`` index the assembled graph.
    """

    h: Graph
    k: int
    extra_edges: tuple[tuple[int, int], ...] = ()
    anchors: tuple[int, ...] = field(default=())

    def anchor_order(self) -> tuple[int, ...]:
        new = tuple(range(self.h.n, self.h.n + self.k))
        if not self.anchors:
            return new
        if sorted(self.anchors) != list(new):
            raise ValueError(f"anchors must be a permutation of the new vertices {new}")
        return self.anchors


@dataclass(frozen=True)
class H3Result:
    graph: Graph
    valid: bool
    reason: str | None
    chi: int
    # anchor -> a K_k through it that avoids later anchors, or None
    certificates: tuple[tuple[int, ...] | None, ...]


def _cliques_through(g: Graph, v: int, k: int, banned: int) -> tuple[int, ...] | None:
    """Some k-clique containing v and no vertex of ``banned``."""

    def rec(clique: list[int], cand: int) -> tuple[int, ...] | None:
        if len(clique) == k:
            return tuple(sorted(clique))
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            found = rec(clique + [w], cand & g.adj[w])
            if found:
                return found
        return None

    return rec([v], g.adj[v] & ~banned)


def assemble_h3(spec: H3Spec) -> H3Result:
    base = disjoint_union(spec.h, Graph.complete(spec.k))
    g = base
    for u, v in spec.extra_edges:
        g = g.with_edge(u, v)
    anchors = spec.anchor_order()
    certs: list[tuple[int, ...] | None] = []
    for i, v in enumerate(anchors):
        banned = 0
        for w in anchors[i + 1:]:
            banned |= 1 << w
        certs.append(_cliques_through(g, v, spec.k, banned))
    chi = chromatic_number(g)
    if any(c is None for c in certs):
        reason = "anchor"
    elif chi != spec.k:
        reason = "chromatic"
    else:
        reason = None
    return H3Result(g, reason is None, reason, chi, tuple(certs))


def parse_family(data: dict) -> Graph:
    return build(FamilySpec.from_json(data))


def parse_graph_json(data: dict) -> Graph:
    """Graph from ``{"n": .., "edges": [[u, v], ..]}`` or a family spec ``{"kind": .., "parameters": [..]}``."""
    if "kind" in data:
        return parse_family(data)
    return Graph.from_edges(int(data["n"]), [tuple(e) for e in data.get("edges", [])])


def parse_h2(data: dict) -> H2Spec:
    return H2Spec(
        parse_graph_json(data["h"]),
        tuple(data["x"]),
        parse_graph_json(data["hPrime"]),
        tuple(data["y"]),
        tuple(tuple(p) for p in data.get("pattern", ())),
    )


def parse_h3(data: dict) -> H3Spec:
    return H3Spec(
        parse_graph_json(data["h"]),
        int(data["k"]),
        tuple(tuple(e) for e in data.get("extraEdges", ())),
        tuple(data.get("anchors", ())),
    )


def union_of_cliques(sizes: Sequence[int]) -> Graph:
    return build(FamilySpec("unionOfCliques", tuple(sizes)))
