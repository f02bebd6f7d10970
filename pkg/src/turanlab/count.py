"""Counting copies of a pattern graph H in a host graph G.

A copy is a (not necessarily induced) subgraph of G isomorphic to H. The
count is the number of injective edge-preserving maps V(H) -> V(G) divided
by |Aut(H)|.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .canon import aut_order, canonical_labeling
from .graph import Graph


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


@lru_cache(maxsize=1024)
def _plan(h: Graph, start: int | None = None) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """Vertex order for backtracking and, per position, earlier positions adjacent to it.

    Each next vertex maximises its number of already-placed neighbours, so
    candidate sets shrink as early as possible.
    """
    remaining = set(range(h.n))
    order: list[int] = []
    if start is not None:
        order.append(start)
        remaining.discard(start)
    while remaining:
        placed = set(order)
        v = max(
            remaining,
            key=lambda x: (sum(1 for w in h.neighbors(x) if w in placed), h.degree(x), -x),
        )
        order.append(v)
        remaining.discard(v)
    pos = {v: i for i, v in enumerate(order)}
    back = tuple(tuple(pos[w] for w in h.neighbors(v) if pos[w] < pos[v]) for v in order)
    return tuple(order), back


def _count_maps(back: tuple[tuple[int, ...], ...], g: Graph, images: list[int], used: int) -> int:
    depth = len(images)
    k = len(back)
    adj = g.adj
    full = (1 << g.n) - 1

    def rec(depth: int, used: int) -> int:
        cand = full
        for p in back[depth]:
            cand &= adj[images[p]]
        cand &= ~used
        if depth == k - 1:
            return cand.bit_count()
        total = 0
        while cand:
            low = cand & -cand
            images.append(low.bit_length() - 1)
            total += rec(depth + 1, used | low)
            images.pop()
            cand ^= low
        return total

    if depth == k:
        return 1
    return rec(depth, used)


def _core(h: Graph) -> tuple[Graph, int]:
    """Split h into its non-isolated part and the number of isolated vertices."""
    keep = [v for v in range(h.n) if h.adj[v]]
    return h.induced(keep), h.n - len(keep)


def count_injective_homs(h: Graph, g: Graph) -> int:
    """Number of injective maps V(h) -> V(g) sending every edge of h to an edge of g."""
    if h.n > g.n:
        return 0
    core, isolated = _core(h)
    if core.n == 0:
        return _falling(g.n, isolated)
    _, back = _plan(core)
    labeled = _count_maps(back, g, [], 0)
    return labeled * _falling(g.n - core.n, isolated)


def count_copies(h: Graph, g: Graph) -> int:
    homs = count_injective_homs(h, g)
    a = aut_order(h)
    q, r = divmod(homs, a)
    if r:
        raise ArithmeticError(f"injective hom count {homs} not divisible by |Aut(H)| = {a}")
    return q


def _homs_fixing(h: Graph, x: int, g: Graph, v: int) -> int:
    """Injective homs h -> g with x mapped to v."""
    order, back = _plan(h, x)
    return _count_maps(back, g, [v], 1 << v)


def copy_degree(h: Graph, g: Graph, v: int) -> int:
    """Number of copies of h in g whose vertex set contains v."""
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for a {g.n}-vertex graph")
    if h.n > g.n:
        return 0
    orbits = canonical_labeling(h).orbits()
    total = 0
    for rep in sorted(set(orbits)):
        size = orbits.count(rep)
        total += size * _homs_fixing(h, rep, g, v)
    q, r = divmod(total, aut_order(h))
    if r:
        raise ArithmeticError("copy degree not an integer")
    return q


def iter_embeddings(h: Graph, g: Graph) -> Iterator[tuple[int, ...]]:
    """Yield injective edge-preserving maps as tuples ``phi`` with ``phi[x]`` the image of x."""
    if h.n > g.n:
        return
    order, back = _plan(h)
    k = len(order)
    adj = g.adj
    full = (1 << g.n) - 1
    images: list[int] = []

    def rec(depth: int, used: int) -> Iterator[tuple[int, ...]]:
        if depth == k:
            phi = [0] * k
            for pos, x in enumerate(order):
                phi[x] = images[pos]
            yield tuple(phi)
            return
        cand = full
        for p in back[depth]:
            cand &= adj[images[p]]
        cand &= ~used
        while cand:
            low = cand & -cand
            images.append(low.bit_length() - 1)
            yield from rec(depth + 1, used | low)
            images.pop()
            cand ^= low

    yield from rec(0, 0)


def _exists(back: tuple[tuple[int, ...], ...], g: Graph, images: list[int], used: int) -> bool:
    k = len(back)
    adj = g.adj
    full = (1 << g.n) - 1

    def rec(depth: int, used: int) -> bool:
        if depth == k:
            return True
        cand = full
        for p in back[depth]:
            cand &= adj[images[p]]
        cand &= ~used
        while cand:
            low = cand & -cand
            images.append(low.bit_length() - 1)
            if rec(depth + 1, used | low):
                return True
            images.pop()
            cand ^= low
        return False

    return rec(len(images), used)


def is_free(g: Graph, f: Graph) -> bool:
    """True iff g contains no copy of f (early-exit search)."""
    if f.n > g.n:
        return True
    _, back = _plan(f)
    return not _exists(back, g, [], 0)


def contains_through(g: Graph, f: Graph, v: int) -> bool:
    """True iff some copy of f in g uses vertex v."""
    if f.n > g.n:
        return False
    orbits = canonical_labeling(f).orbits()
    for rep in sorted(set(orbits)):
        _, back = _plan(f, rep)
        if _exists(back, g, [v], 1 << v):
            return True
    return False


def contains_through_edge(g: Graph, f: Graph, u: int, v: int) -> bool:
    """True iff some copy of f in g uses the edge uv (which must be present)."""
    if f.n > g.n or not g.has_edge(u, v):
        return False
    for a, b in f.edges():
        for x, y in ((a, b), (b, a)):
            if _exists_with_pair(f, g, x, u, y, v):
                return True
    return False


def _exists_with_pair(f: Graph, g: Graph, x: int, u: int, y: int, v: int) -> bool:
    rest = [w for w in range(f.n) if w not in (x, y)]
    sub_order = [x, y] + rest
    perm = [0] * f.n
    for i, w in enumerate(sub_order):
        perm[w] = i
    _, back = _plan_prefixed(f.relabel(perm))
    return _exists(back, g, [u, v], (1 << u) | (1 << v))


@lru_cache(maxsize=1024)
def _plan_prefixed(h: Graph) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """Plan whose first two positions are vertices 0 and 1."""
    remaining = set(range(2, h.n))
    order = [0, 1]
    while remaining:
        placed = set(order)
        v = max(remaining, key=lambda x: (sum(1 for w in h.neighbors(x) if w in placed), h.degree(x), -x))
        order.append(v)
        remaining.discard(v)
    pos = {v: i for i, v in enumerate(order)}
    back = tuple(tuple(pos[w] for w in h.neighbors(v) if pos[w] < pos[v]) for v in order)
    return tuple(order), back
