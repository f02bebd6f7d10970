"""Exact ex(n, H, F) by isomorph-free generation, and Zykov symmetrization.

Generation is canonical augmentation by vertex extension. A child G + v of
parent G is accepted iff v lies in the automorphism orbit of the vertex that
receives the last canonical label of the child; neighbourhood masks are
taken one per Aut(G)-orbit. F-freeness is hereditary, so a child containing F
is pruned with its whole subtree.

The tree is cut at a fixed depth and the subtrees are scanned independently,
in a fixed order, so reports do not depend on the worker count.
"""

from __future__ import annotations

import heapq
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .canon import Labeling, compute_labeling, refine
from .count import contains_through, contains_through_edge, copy_degree, count_copies
from .errors import BudgetExceeded
from .graph import Graph, iter_bits
from .graph6 import parse_graph6
from .multipartite import realize, turan_parts

ENUMERATION_CAP = 12
SPLIT_DEPTH = 4
WITNESS_CAP = 64


@dataclass(frozen=True)
class SearchConfig:
    max_nodes: int = 50_000_000
    maximal_only: bool = False
    jobs: int = 1
    n_cap: int = ENUMERATION_CAP

    def __post_init__(self) -> None:
        if self.max_nodes < 1 or self.jobs < 1:
            raise ValueError("budgets and worker counts must be positive")


# --------------------------------------------------------------------------
# canonical augmentation


def _apply(gen: Sequence[int], mask: int) -> int:
    out = 0
    for v in iter_bits(mask):
        out |= 1 << gen[v]
    return out


def _extension_masks(g: Graph, lab: Labeling) -> list[int]:
    """One neighbourhood mask per Aut(g)-orbit, restricted to masks giving the new vertex maximum degree."""
    n = g.n
    degs = [row.bit_count() for row in g.adj]
    maxdeg = max(degs, default=0)
    top = 0
    for v, d in enumerate(degs):
        if d == maxdeg:
            top |= 1 << v
    gens = lab.generators
    seen: set[int] = set()
    reps = []
    for mask in range(1 << n):
        size = mask.bit_count()
        if size < maxdeg or (size == maxdeg and mask & top):
            continue
        if mask in seen:
            continue
        reps.append(mask)
        if not gens:
            continue
        seen.add(mask)
        stack = [mask]
        while stack:
            m = stack.pop()
            for gen in gens:
                m2 = _apply(gen, m)
                if m2 not in seen:
                    seen.add(m2)
                    stack.append(m2)
    return reps


def _children(g: Graph, lab: Labeling, f: Graph) -> Iterator[tuple[Graph, Labeling]]:
    new = g.n
    for mask in _extension_masks(g, lab):
        child = g.extend(mask)
        if contains_through(child, f, new):
            continue
        root = refine(child.adj, [tuple(range(child.n))])
        if new not in root[-1]:
            continue
        clab = compute_labeling(child)
        orbits = clab.orbits()
        if orbits[new] == orbits[clab.order[-1]]:
            yield child, clab


def _nodes_at_depth(f: Graph, depth: int) -> tuple[list[Graph], int]:
    """F-free classes on ``depth`` vertices in generation order, plus the number of nodes visited."""
    root = Graph.empty(1)
    if contains_through(root, f, 0):
        return [], 0
    visited = 1
    frontier = [(root, compute_labeling(root))]
    level: list[tuple[Graph, Labeling]] = []

    def walk(g: Graph, lab: Labeling) -> None:
        nonlocal visited
        if g.n == depth:
            level.append((g, lab))
            return
        for child, clab in _children(g, lab, f):
            visited += 1
            walk(child, clab)

    for g, lab in frontier:
        walk(g, lab)
    return [g for g, _ in level], visited


def _is_edge_maximal(g: Graph, f: Graph) -> bool:
    for u, v in g.non_edges():
        if not contains_through_edge(g.with_edge(u, v), f, u, v):
            return False
    return True


@dataclass
class _ScanResult:
    visited: int = 0
    truncated: bool = False
    best: int = -1
    maximizers: int = 0
    entries: list = field(default_factory=list)  # (count, graph6)


def _scan(task: tuple) -> _ScanResult:
    """Walk one subtree. ``mode`` is 'list' (collect graphs), 'ex' or 'profile'."""
    root, n, f, h, mode, slack, budget, maximal_only = task
    out = _ScanResult()
    keep: list[tuple[int, str]] = []

    def record(g: Graph, lab: Labeling) -> None:
        if maximal_only and not _is_edge_maximal(g, f):
            return
        if mode == "list":
            keep.append((0, lab.graph6))
            return
        c = count_copies(h, g)
        if mode == "ex":
            if c > out.best:
                out.best, out.maximizers = c, 0
                keep.clear()
            if c == out.best:
                out.maximizers += 1
                keep.append((c, lab.graph6))
                if len(keep) > 4 * WITNESS_CAP:
                    keep.sort()
                    del keep[WITNESS_CAP:]
            return
        # profile: retain everything within slack of the running maximum
        if c > out.best:
            out.best = c
            if keep and keep[0][0] < c - slack:
                keep[:] = [e for e in keep if e[0] >= c - slack]
                heapq.heapify(keep)
        if c >= out.best - slack:
            heapq.heappush(keep, (c, lab.graph6))

    def walk(g: Graph, lab: Labeling) -> bool:
        if g.n == n:
            record(g, lab)
            return True
        for child, clab in _children(g, lab, f):
            out.visited += 1
            if out.visited > budget:
                out.truncated = True
                return False
            if not walk(child, clab):
                return False
        return True

    walk(root, compute_labeling(root))
    if mode == "ex":
        keep.sort()
        del keep[WITNESS_CAP:]
    out.entries = sorted(keep)
    return out


def _run(n: int, f: Graph, h: Graph | None, mode: str, slack: int, cfg: SearchConfig) -> tuple[list[_ScanResult], int]:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > cfg.n_cap:
        raise ValueError(f"n={n} exceeds the enumeration cap {cfg.n_cap}")
    depth = min(n, SPLIT_DEPTH)
    roots, visited = _nodes_at_depth(f, depth)
    if visited > cfg.max_nodes:
        raise BudgetExceeded("generation budget exhausted before the split level", {"generated": visited})
    budget = cfg.max_nodes - visited
    tasks = [(r, n, f, h, mode, slack, budget, cfg.maximal_only) for r in roots]
    if cfg.jobs == 1 or len(tasks) <= 1:
        results = [_scan(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_scan, tasks))
    return results, visited


def enumerate_free(n: int, f: Graph, cfg: SearchConfig = SearchConfig()) -> Iterator[Graph]:
    """One canonical representative per isomorphism class of n-vertex f-free graphs."""
    results, visited = _run(n, f, None, "list", 0, cfg)
    total = visited + sum(r.visited for r in results)
    if any(r.truncated for r in results) or total > cfg.max_nodes:
        raise BudgetExceeded(
            f"generation budget {cfg.max_nodes} exhausted",
            {"generated": total, "partial": [g6 for r in results for _, g6 in r.entries]},
        )
    for r in results:
        for _, g6 in r.entries:
            yield parse_graph6(g6)


@dataclass(frozen=True)
class ExtremalReport:
    n: int
    value: int
    witnesses: tuple[str, ...]
    suppressed: int
    generated: int
    min_copy_degree: tuple[int, ...]
    maximal_only: bool = False

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "value": str(self.value),
            "witnesses": list(self.witnesses),
            "suppressedWitnesses": self.suppressed,
            "generated": self.generated,
            "minCopyDegree": [str(d) for d in self.min_copy_degree],
            "maximalOnly": self.maximal_only,
        }


def _merge_ex(n: int, h: Graph, results: list[_ScanResult], visited: int, cfg: SearchConfig) -> ExtremalReport:
    best = max((r.best for r in results), default=-1)
    pool: list[str] = []
    total = 0
    for r in results:
        if r.best == best:
            total += r.maximizers
            pool.extend(g6 for _, g6 in r.entries)
    pool.sort()
    witnesses = tuple(pool[:WITNESS_CAP])
    degs = tuple(min(copy_degree(h, g, v) for v in range(g.n)) for g in map(parse_graph6, witnesses))
    generated = visited + sum(r.visited for r in results)
    return ExtremalReport(n, max(best, 0), witnesses, total - len(witnesses), generated, degs, cfg.maximal_only)


def ex_brute(n: int, h: Graph, f: Graph, cfg: SearchConfig = SearchConfig()) -> ExtremalReport:
    """ex(n, h, f): the maximum number of copies of h over n-vertex f-free graphs."""
    results, visited = _run(n, f, h, "ex", 0, cfg)
    report = _merge_ex(n, h, results, visited, cfg)
    if any(r.truncated for r in results) or report.generated > cfg.max_nodes:
        raise BudgetExceeded(f"generation budget {cfg.max_nodes} exhausted", {"partial": report})
    return report


def scan_near_extremal(n: int, h: Graph, f: Graph, slack: int, cfg: SearchConfig) -> tuple[int, list[tuple[int, str]], int]:
    """(ex value, [(count, graph6)] with count >= ex - slack, nodes generated)."""
    results, visited = _run(n, f, h, "profile", slack, cfg)
    best = max((r.best for r in results), default=-1)
    rows = [e for r in results for e in r.entries if e[0] >= best - slack]
    rows.sort(key=lambda e: (-e[0], e[1]))
    generated = visited + sum(r.visited for r in results)
    if any(r.truncated for r in results) or generated > cfg.max_nodes:
        raise BudgetExceeded(
            f"generation budget {cfg.max_nodes} exhausted", {"partial": rows, "generated": generated}
        )
    return max(best, 0), rows, generated


# --------------------------------------------------------------------------
# Zykov symmetrization


class StepRefused(ValueError):
    """An improving symmetrization step would create the forbidden graph."""


def _common_neighbourhood(g: Graph, s: Sequence[int]) -> int:
    common = (1 << g.n) - 1
    for w in s:
        common &= g.adj[w]
    return common


def zykov_step(g: Graph, h: Graph, u: int, s: Sequence[int], forbidden: Graph | None = None) -> Graph:
    """Reconnect u to the common neighbourhood of s if that strictly increases N(h, .).

    Returns g unchanged otherwise. Raises StepRefused when the improving step
    would create a copy of ``forbidden``.
    """
    if not s:
        raise ValueError("s must be nonempty")
    if u in s:
        raise ValueError("u must not belong to s")
    target = _common_neighbourhood(g, s) & ~(1 << u)
    if target == g.adj[u]:
        return g
    moved = g.with_neighbourhood(u, target)
    # copies avoiding u are untouched, so the change is the difference in copy degree at u
    gain = copy_degree(h, moved, u) - copy_degree(h, g, u)
    if gain <= 0:
        return g
    if forbidden is not None and contains_through(moved, forbidden, u):
        raise StepRefused(f"moving vertex {u} to the common neighbourhood of {list(s)} creates the forbidden graph")
    return moved


@dataclass(frozen=True)
class SymmetrizeResult:
    graph: Graph
    count: int
    trajectories: tuple[tuple[int, ...], ...]
    refused: int

    def to_json(self) -> dict:
        from .graph6 import emit_graph6

        return {
            "graph6": emit_graph6(self.graph),
            "count": str(self.count),
            "trajectories": [[str(c) for c in t] for t in self.trajectories],
            "refused": self.refused,
        }


def random_clique_free(n: int, k: int, rng: random.Random) -> Graph:
    """Random edge-maximal K_{k+1}-free graph: add edges in random order while they create no K_{k+1}."""
    clique = Graph.complete(k + 1)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    g = Graph.empty(n)
    for u, v in pairs:
        cand = g.with_edge(u, v)
        if not contains_through_edge(cand, clique, u, v):
            g = cand
    return g


def _climb(g: Graph, h: Graph, forbidden: Graph, observer=None) -> tuple[Graph, list[int], int]:
    count = count_copies(h, g)
    if observer is not None:
        observer(g)
    trajectory = [count]
    refused = 0
    improved = True
    while improved:
        improved = False
        for u in range(g.n):
            for v in range(g.n):
                if u == v or g.has_edge(u, v):
                    continue
                try:
                    nxt = zykov_step(g, h, u, (v,), forbidden)
                except StepRefused:
                    refused += 1
                    continue
                if nxt is not g:
                    count = count_copies(h, nxt)
                    trajectory.append(count)
                    g = nxt
                    improved = True
                    if observer is not None:
                        observer(g)
    return g, trajectory, refused


def symmetrize_search(
    g0: Graph, h: Graph, k: int, restarts: int = 32, seed: int = 0, observer: Callable[[Graph], None] | None = None
) -> SymmetrizeResult:
    """Hill-climb by single-vertex symmetrization steps over K_{k+1}-free graphs.

    The first run starts from g0, later ones from seeded random edge-maximal
    K_{k+1}-free graphs on the same vertex count. The best final graph is returned.
    ``observer``, if given, sees every graph visited (starts included).
    """
    forbidden = Graph.complete(k + 1)
    if contains_through_any(g0, forbidden):
        raise ValueError(f"seed graph contains K_{k + 1}")
    rng = random.Random(seed)
    best: tuple[int, Graph] | None = None
    trajectories = []
    refused = 0
    for i in range(max(restarts, 1)):
        start = g0 if i == 0 else random_clique_free(g0.n, k, rng)
        g, trajectory, ref = _climb(start, h, forbidden, observer)
        trajectories.append(tuple(trajectory))
        refused += ref
        if best is None or trajectory[-1] > best[0]:
            best = (trajectory[-1], g)
    assert best is not None
    return SymmetrizeResult(best[1], best[0], tuple(trajectories), refused)


def contains_through_any(g: Graph, f: Graph) -> bool:
    from .count import is_free

    return not is_free(g, f)


# --------------------------------------------------------------------------
# per-vertex copy degrees against the Turán graph


@dataclass(frozen=True)
class AuditRow:
    witness: str
    min_degree: int
    reference: dict[int, int]  # Turán part size -> copy degree of a vertex in such a part
    ratio: Fraction | None

    def to_json(self) -> dict:
        return {
            "witness": self.witness,
            "minCopyDegree": str(self.min_degree),
            "turanReference": {str(s): str(d) for s, d in sorted(self.reference.items())},
            "ratio": None if self.ratio is None else str(self.ratio),
        }


def turan_copy_degrees(h: Graph, n: int, k: int) -> dict[int, int]:
    p = turan_parts(n, k)
    t = realize(p)
    out: dict[int, int] = {}
    start = 0
    for s in p.sizes:
        if s not in out:
            out[s] = copy_degree(h, t, start)
        start += s
    return out


def min_copy_degree_audit(report: ExtremalReport, h: Graph, k: int) -> list[AuditRow]:
    if not report.witnesses:
        raise ValueError("report has no witnesses")
    reference = turan_copy_degrees(h, report.n, min(k, report.n))
    low = min(reference.values())
    rows = []
    for g6 in report.witnesses:
        g = parse_graph6(g6)
        m = min(copy_degree(h, g, v) for v in range(g.n))
        rows.append(AuditRow(g6, m, reference, Fraction(m, low) if low else None))
    return rows
