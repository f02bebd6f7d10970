"""Complete multipartite hosts: closed-form copy counts, Turán graphs, part-size optimisation."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb
from typing import Iterable, Iterator, Sequence

from .canon import aut_order
from .coloring import enumerate_colorings
from .errors import BudgetExceeded
from .graph import MAX_VERTICES, Graph

MAX_PARTS = 8


@dataclass(frozen=True)
class PartSizes:
    """Part sizes of a complete multipartite graph, kept sorted nonincreasing."""

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.sizes:
            raise ValueError("at least one part is required")
        if any(s < 1 for s in self.sizes):
            raise ValueError(f"part sizes must be positive, got {self.sizes}")
        if list(self.sizes) != sorted(self.sizes, reverse=True):
            raise ValueError("sizes must be sorted nonincreasing; use PartSizes.of()")

    @classmethod
    def of(cls, sizes: Iterable[int]) -> PartSizes:
        return cls(tuple(sorted(sizes, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def k(self) -> int:
        return len(self.sizes)


def turan_parts(n: int, k: int) -> PartSizes:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    q, rem = divmod(n, k)
    return PartSizes((q + 1,) * rem + (q,) * (k - rem))


def realize(p: PartSizes) -> Graph:
    if p.n > MAX_VERTICES:
        raise ValueError(f"{p.n} vertices exceeds the {MAX_VERTICES}-vertex cap")
    rows = []
    full = (1 << p.n) - 1
    start = 0
    for s in p.sizes:
        part = ((1 << s) - 1) << start
        rows.extend([full & ~part] * s)
        start += s
    return Graph(p.n, tuple(rows))


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


@lru_cache(maxsize=256)
def class_profile(h: Graph, k: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Multiset of class-size vectors over partitions of V(h) into at most k independent sets."""
    c = Counter(tuple(sorted((len(cls) for cls in w.classes), reverse=True)) for w in enumerate_colorings(h, k))
    return tuple(sorted(c.items()))


def count_copies_multipartite(h: Graph, p: PartSizes) -> int:
    """N(h, T) for the complete multipartite T with part sizes p, without building T.

    Sums, over proper assignments of V(h) to parts, the product of falling
    factorials of part sizes, then divides by |Aut(h)|.
    """
    k = p.k
    total = 0
    for class_sizes, mult in class_profile(h, k):
        m = len(class_sizes)
        placed = 0
        for target in permutations(range(k), m):
            term = 1
            for a, idx in zip(class_sizes, target):
                term *= _falling(p.sizes[idx], a)
                if not term:
                    break
            placed += term
        total += mult * placed
    q, r = divmod(total, aut_order(h))
    if r:
        raise ArithmeticError("labeled multipartite count not divisible by |Aut(h)|")
    return q


def min_part_fraction(p: PartSizes) -> Fraction:
    return Fraction(min(p.sizes), p.n)


def partitions_into(n: int, k: int, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    """Nonincreasing k-tuples of positive integers summing to n."""
    cap = n if cap is None else cap
    if k == 0:
        if n == 0:
            yield ()
        return
    for first in range(min(cap, n - (k - 1)), 0, -1):
        if first * k < n:
            break
        for rest in partitions_into(n - first, k - 1, first):
            yield (first,) + rest


@dataclass(frozen=True)
class Move:
    from_size: int
    to_size: int
    count: int

    def to_json(self) -> dict:
        return {"from": self.from_size, "to": self.to_size, "count": str(self.count)}


@dataclass(frozen=True)
class OptimizationResult:
    best: PartSizes
    count: int
    mode: str
    co_optimal: tuple[PartSizes, ...] = ()
    trace: tuple[Move, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "parts": list(self.best.sizes),
            "count": str(self.count),
            "mode": self.mode,
            "coOptimal": [list(p.sizes) for p in self.co_optimal],
            "moves": [m.to_json() for m in self.trace],
        }


def _hillclimb_from(h: Graph, start: PartSizes) -> tuple[PartSizes, int, list[Move]]:
    current = start
    value = count_copies_multipartite(h, current)
    trace: list[Move] = []
    while True:
        best_key: tuple | None = None
        best_next: tuple[PartSizes, int, Move] | None = None
        sizes = current.sizes
        for i in range(len(sizes)):
            if sizes[i] < 2:
                continue
            for j in range(len(sizes)):
                if i == j:
                    continue
                moved = list(sizes)
                moved[i] -= 1
                moved[j] += 1
                cand = PartSizes.of(moved)
                c = count_copies_multipartite(h, cand)
                if c <= value:
                    continue
                # larger count first, then the more balanced vector
                key = (c, tuple(-s for s in cand.sizes))
                if best_key is None or key > best_key:
                    best_key = key
                    best_next = (cand, c, Move(sizes[i], sizes[j], c))
        if best_next is None:
            return current, value, trace
        current, value, move = best_next
        trace.append(move)


def _random_composition(rng: random.Random, n: int, k: int) -> PartSizes:
    cuts = sorted(rng.sample(range(1, n), k - 1))
    bounds = [0] + cuts + [n]
    return PartSizes.of(b - a for a, b in zip(bounds, bounds[1:]))


def optimize_parts(
    h: Graph,
    n: int,
    k: int,
    mode: str = "exact",
    *,
    budget: int = 1_000_000,
    restarts: int = 1,
    seed: int = 0,
) -> OptimizationResult:
    """Maximise N(h, T) over complete k-partite n-vertex graphs T.

    ``exact`` enumerates all part-size vectors and breaks ties towards the most
    balanced vector (lexicographically smallest in nonincreasing order), listing
    every co-optimal vector. ``hillclimb`` starts at the Turán partition and
    repeatedly applies the best single-vertex move between parts; further
    restarts begin at seeded random compositions.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if k > MAX_PARTS:
        raise ValueError(f"k={k} exceeds the supported maximum of {MAX_PARTS} parts")
    if mode == "exact":
        if comb(n - 1, k - 1) > budget:
            raise BudgetExceeded(
                f"{comb(n - 1, k - 1)} compositions exceed budget {budget}", progress={"n": n, "k": k}
            )
        best_val = -1
        best: list[PartSizes] = []
        for sizes in partitions_into(n, k):
            p = PartSizes(sizes)
            c = count_copies_multipartite(h, p)
            if c > best_val:
                best_val, best = c, [p]
            elif c == best_val:
                best.append(p)
        best.sort(key=lambda p: p.sizes)
        return OptimizationResult(best[0], best_val, "exact", tuple(best))
    if mode == "hillclimb":
        rng = random.Random(seed)
        starts = [turan_parts(n, k)]
        for _ in range(max(restarts, 1) - 1):
            starts.append(_random_composition(rng, n, k) if k > 1 else turan_parts(n, k))
        outcome: tuple[PartSizes, int, list[Move]] | None = None
        for s in starts:
            p, c, trace = _hillclimb_from(h, s)
            if outcome is None or c > outcome[1] or (c == outcome[1] and p.sizes < outcome[0].sizes):
                outcome = (p, c, trace)
        assert outcome is not None
        return OptimizationResult(outcome[0], outcome[1], "hillclimb", (outcome[0],), tuple(outcome[2]))
    raise ValueError(f"unknown mode {mode!r}")


def host_table(h: Graph, n: int, k: int) -> list[tuple[PartSizes, int]]:
    """N(h, T) for every complete k-partite n-vertex T, in partition order."""
    return [(PartSizes(s), count_copies_multipartite(h, PartSizes(s))) for s in partitions_into(n, k)]


def as_part_sizes(sizes: Sequence[int] | PartSizes) -> PartSizes:
    return sizes if isinstance(sizes, PartSizes) else PartSizes.of(sizes)
