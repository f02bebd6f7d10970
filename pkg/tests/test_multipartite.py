import itertools
import math
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import graphs
from turanlab.constructions import path, star
from turanlab.count import count_copies
from turanlab.errors import BudgetExceeded
from turanlab.graph import Graph
from turanlab.multipartite import (
    PartSizes,
    count_copies_multipartite,
    host_table,
    min_part_fraction,
    optimize_parts,
    partitions_into,
    realize,
    turan_parts,
)

part_sizes = st.lists(st.integers(1, 4), min_size=1, max_size=4).map(PartSizes.of)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=5), part_sizes)
def test_formula_matches_realized_count(h, p):
    assert count_copies_multipartite(h, p) == count_copies(h, realize(p))


def test_star_count_closed_form():
    # copies of K_{1,3} in K_{a,b}: a*C(b,3) + b*C(a,3)
    for a, b in [(15, 5), (14, 6), (13, 7), (10, 10)]:
        got = count_copies_multipartite(star(3), PartSizes.of([a, b]))
        assert got == a * math.comb(b, 3) + b * math.comb(a, 3)


def test_star_count_against_networkx_degrees():
    g = nx.complete_multipartite_graph(14, 6)
    assert sum(math.comb(d, 3) for _, d in g.degree()) == 2464
    assert count_copies_multipartite(star(3), PartSizes.of([14, 6])) == 2464


def test_turan_parts():
    assert turan_parts(7, 3).sizes == (3, 2, 2)
    with pytest.raises(ValueError):
        turan_parts(2, 3)
    assert count_copies_multipartite(Graph.complete(3), turan_parts(6, 3)) == 8
    assert count_copies_multipartite(Graph.complete(2), PartSizes.of([2, 3])) == 6


def test_optimize_examples():
    r = optimize_parts(Graph.complete(3), 7, 3)
    assert r.best.sizes == (3, 2, 2) and r.count == 12
    r = optimize_parts(Graph.complete(2), 9, 2)
    assert r.best.sizes == (5, 4) and r.count == 20


def test_star_optimum_at_twenty():
    r = optimize_parts(star(3), 20, 2)
    assert r.best.sizes == (14, 6)
    assert r.count == 2464
    table = dict((p.sizes, c) for p, c in host_table(star(3), 20, 2))
    assert table[(15, 5)] == 2425 < table[(13, 7)] == 2457 < 2464


def test_star_candidate_pair_with_sqrt_of_numerator():
    # the pair k, k+1 with k = floor(n/2 - sqrt(3n-4)/2) contains the optimum
    for n in range(8, 41):
        k = math.floor(n / 2 - math.sqrt(3 * n - 4) / 2)
        best = optimize_parts(star(3), n, 2)
        candidates = {PartSizes.of([n - k, k]), PartSizes.of([n - k - 1, k + 1])}
        assert set(best.co_optimal) & candidates, n


def test_exact_is_argmax_over_all_compositions():
    h = path(4)
    for n in range(4, 10):
        for k in (2, 3):
            r = optimize_parts(h, n, k)
            brute = max(
                count_copies_multipartite(h, PartSizes.of(p)) for p in partitions_into(n, k)
            )
            assert r.count == brute


def test_hillclimb_reaches_exact_on_small_instances():
    rng = random.Random(3)
    for _ in range(20):
        n, k = rng.randint(4, 14), rng.randint(2, 4)
        h = [Graph.complete(2), Graph.complete(3), star(3), path(3)][rng.randrange(4)]
        exact = optimize_parts(h, n, k)
        climb = optimize_parts(h, n, k, "hillclimb", restarts=8, seed=rng.randrange(10**6))
        assert climb.count <= exact.count
        moves = climb.trace
        assert all(m.count >= 0 for m in moves)


def test_tie_break_prefers_balanced():
    r = optimize_parts(Graph.empty(1), 6, 2)
    assert r.best.sizes == (3, 3)
    assert len(r.co_optimal) == len(list(partitions_into(6, 2)))


def test_budget():
    with pytest.raises(BudgetExceeded):
        optimize_parts(Graph.complete(2), 60, 6, budget=10)


def test_min_part_fraction():
    assert str(min_part_fraction(PartSizes.of([14, 6]))) == "3/10"


def test_partitions_into_counts():
    assert list(partitions_into(7, 3)) == [(5, 1, 1), (4, 2, 1), (3, 3, 1), (3, 2, 2)]
    assert list(partitions_into(7, 3, cap=4)) == [(4, 2, 1), (3, 3, 1), (3, 2, 2)]
