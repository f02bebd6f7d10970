"""Edit distance to complete multipartite graphs and finite-n Turán-goodness verdicts."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .coloring import chromatic_number
from .errors import BudgetExceeded, InvalidInstance, InvariantViolation
from .graph import Graph
from .graph6 import parse_graph6
from .multipartite import count_copies_multipartite, min_part_fraction, optimize_parts, turan_parts
from .search import SearchConfig, scan_near_extremal

DEFAULT_RESTARTS = 32


@dataclass(frozen=True)
class PartitionDistance:
    cost: int
    partition: tuple[tuple[int, ...], ...]
    mode: str

    def to_json(self) -> dict:
        return {"cost": self.cost, "partition": [list(c) for c in self.partition], "mode": self.mode}


def partition_cost(g: Graph, partition) -> int:
    """Edges inside classes plus non-adjacent pairs across classes."""
    cls = {}
    for i, c in enumerate(partition):
        for v in c:
            cls[v] = i
    cost = 0
    for u in range(g.n):
        for v in range(u + 1, g.n):
            same = cls[u] == cls[v]
            if same == g.has_edge(u, v):
                cost += 1
    return cost


def _normal(assign: list[int]) -> tuple[tuple[int, ...], ...]:
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(assign):
        classes.setdefault(c, []).append(v)
    return tuple(sorted(tuple(c) for c in classes.values()))


def _swap(masks: list[int], u: int, v: int, cu: int, cv: int) -> None:
    both = (1 << u) | (1 << v)
    masks[cu] ^= both
    masks[cv] ^= both


def _local_search(g: Graph, k: int, rng: random.Random, restarts: int) -> tuple[int, tuple[tuple[int, ...], ...]]:
    n = g.n
    adj = g.adj
    best: tuple[int, tuple] | None = None
    for _ in range(restarts):
        assign = [rng.randrange(k) for _ in range(n)]
        masks = [0] * k
        for v, c in enumerate(assign):
            masks[c] |= 1 << v

        def contribution(v: int, c: int) -> int:
            # pairs at v that are wrong if v sits in class c (v itself excluded)
            inside = masks[c] & ~(1 << v)
            outside = ((1 << n) - 1) & ~inside & ~(1 << v)
            return (adj[v] & inside).bit_count() + (outside & ~adj[v]).bit_count()

        def total() -> int:
            return sum(contribution(v, assign_of(v)) for v in range(n)) // 2

        def assign_of(v: int) -> int:
            return next(c for c in range(k) if masks[c] >> v & 1)

        improved = True
        while improved:
            improved = False
            for v in range(n):
                cur = assign[v]
                here = contribution(v, cur)
                for c in range(k):
                    if c != cur and contribution(v, c) < here:
                        masks[cur] &= ~(1 << v)
                        masks[c] |= 1 << v
                        assign[v] = c
                        improved = True
                        break
            if improved:
                continue
            for u in range(n):
                for v in range(u + 1, n):
                    cu, cv = assign[u], assign[v]
                    if cu == cv:
                        continue
                    before = total()
                    _swap(masks, u, v, cu, cv)
                    if total() < before:
                        assign[u], assign[v] = cv, cu
                        improved = True
                        break
                    _swap(masks, u, v, cu, cv)
                if improved:
                    break
        part = _normal(assign)
        cost = partition_cost(g, part)
        if best is None or (cost, part) < best:
            best = (cost, part)
    assert best is not None
    return best


def _exact(g: Graph, k: int, upper: tuple[int, tuple]) -> tuple[int, tuple[tuple[int, ...], ...]]:
    n = g.n
    adj = g.adj
    best_cost, best_part = upper
    best_cost += 1  # allow ties so the lexicographically least optimal partition can win
    best_assign: list[int] | None = None
    assign = [0] * n
    masks: list[int] = []

    def rec(v: int, cost: int) -> None:
        nonlocal best_cost, best_assign
        if cost >= best_cost:
            return
        if v == n:
            best_cost, best_assign = cost, list(assign)
            return
        earlier = (1 << v) - 1
        for c in range(len(masks) + (1 if len(masks) < k else 0)):
            new_class = c == len(masks)
            inside = 0 if new_class else masks[c]
            outside = earlier & ~inside
            add = (adj[v] & inside).bit_count() + (outside & ~adj[v]).bit_count()
            assign[v] = c
            if new_class:
                masks.append(1 << v)
            else:
                masks[c] |= 1 << v
            rec(v + 1, cost + add)
            if new_class:
                masks.pop()
            else:
                masks[c] &= ~(1 << v)

    rec(0, 0)
    if best_assign is None:
        return upper
    part = _normal(best_assign)
    return best_cost, part


def multipartite_distance(
    g: Graph, k: int, mode: str = "exact", *, budget: int = 3**14, restarts: int = DEFAULT_RESTARTS, seed: int = 0
) -> PartitionDistance:
    """Fewest edge edits turning g into a complete multipartite graph with at most k parts."""
    if k < 1:
        raise ValueError("k must be positive")
    if g.n == 0:
        return PartitionDistance(0, (), mode)
    rng = random.Random(seed)
    heuristic = _local_search(g, k, rng, restarts)
    if mode == "heuristic":
        return PartitionDistance(heuristic[0], heuristic[1], "heuristic")
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    if min(k, g.n) ** g.n > budget:
        raise BudgetExceeded(f"{k}^{g.n} partitions exceed budget {budget}", {"heuristic": heuristic[0]})
    cost, part = _exact(g, k, heuristic)
    return PartitionDistance(cost, part, "exact")


@dataclass(frozen=True)
class ProfileRow:
    graph6: str
    count: int
    distance: PartitionDistance

    def to_json(self) -> dict:
        return {
            "graph6": self.graph6,
            "count": str(self.count),
            "distance": self.distance.cost,
            "partition": [list(c) for c in self.distance.partition],
        }


@dataclass(frozen=True)
class StabilityVerdict:
    n: int
    h: str
    f: str
    k: int
    ex_value: int
    turan_host_count: int
    best_host_count: int
    best_hosts: tuple[tuple[int, ...], ...]
    classification: str
    witness_distances: tuple[tuple[str, PartitionDistance], ...]
    min_part_fraction: str
    small_n: bool = True
    hosts: tuple[tuple[tuple[int, ...], int], ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "h": self.h,
            "f": self.f,
            "k": self.k,
            "exValue": str(self.ex_value),
            "turanHostCount": str(self.turan_host_count),
            "bestHostCount": str(self.best_host_count),
            "bestHosts": [list(p) for p in self.best_hosts],
            "minPartFraction": self.min_part_fraction,
            "classification": self.classification,
            "witnessDistances": [
                {"graph6": g6, **d.to_json()} for g6, d in self.witness_distances
            ],
            "hosts": [{"parts": list(p), "count": str(c)} for p, c in self.hosts],
            "smallN": self.small_n,
        }


def instance_k(h: Graph, f: Graph) -> int:
    chi_f = chromatic_number(f)
    chi_h = chromatic_number(h)
    if chi_f <= chi_h:
        raise InvalidInstance(f"need chi(H) < chi(F); got chi(H)={chi_h}, chi(F)={chi_f}")
    return chi_f - 1


def classify(n: int, h: Graph, f: Graph, cfg: SearchConfig = SearchConfig()) -> StabilityVerdict:
    """Turán-good / weakly Turán-good / neither for (h, f) at this single n."""
    from .graph6 import emit_graph6
    from .search import ex_brute

    k = instance_k(h, f)
    parts = min(k, n)
    report = ex_brute(n, h, f, cfg)
    turan = count_copies_multipartite(h, turan_parts(n, parts))
    opt = optimize_parts(h, n, parts, "exact")
    from .multipartite import host_table

    hosts = tuple((p.sizes, c) for p, c in host_table(h, n, parts))
    if report.value < opt.count:
        raise InvariantViolation(
            f"ex value {report.value} below the best {parts}-partite host count {opt.count}; hosts are F-free"
        )
    if report.value == turan:
        label = "TuranGood"
    elif report.value == opt.count:
        label = "WeaklyTuranGood"
    else:
        label = "Neither"
    distances = tuple((g6, multipartite_distance(parse_graph6(g6), k)) for g6 in report.witnesses)
    return StabilityVerdict(
        n=n,
        h=emit_graph6(h),
        f=emit_graph6(f),
        k=k,
        ex_value=report.value,
        turan_host_count=turan,
        best_host_count=opt.count,
        best_hosts=tuple(p.sizes for p in opt.co_optimal),
        classification=label,
        witness_distances=distances,
        min_part_fraction=str(min_part_fraction(opt.best)),
        hosts=hosts,
    )


def near_extremal_profile(n: int, h: Graph, f: Graph, slack: int, cfg: SearchConfig = SearchConfig()) -> list[ProfileRow]:
    """Every f-free class with at least ex - slack copies of h, with its exact multipartite distance.

    Distances use k = chi(f) - 1 parts. Rows are sorted by count, descending.
    """
    if slack < 0:
        raise ValueError("slack must be nonnegative")
    k = chromatic_number(f) - 1
    if k < 1:
        raise InvalidInstance("F must have chromatic number at least 2")
    _, rows, _ = scan_near_extremal(n, h, f, slack, cfg)
    return [ProfileRow(g6, c, multipartite_distance(parse_graph6(g6), k)) for c, g6 in rows]
