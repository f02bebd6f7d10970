import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import graphs
from turanlab.canon import canonical
from turanlab.constructions import cycle, path, star
from turanlab.count import copy_degree, count_copies, is_free
from turanlab.errors import BudgetExceeded
from turanlab.graph import Graph
from turanlab.graph6 import emit_graph6, parse_graph6
from turanlab.multipartite import count_copies_multipartite, turan_parts
from turanlab.search import (
    SearchConfig,
    StepRefused,
    enumerate_free,
    ex_brute,
    random_clique_free,
    scan_near_extremal,
    symmetrize_search,
    turan_copy_degrees,
    zykov_step,
)

K2, K3, K4 = Graph.complete(2), Graph.complete(3), Graph.complete(4)


def labeled_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if bits >> i & 1])


def brute_ex(n, h, f):
    return max(count_copies(h, g) for g in labeled_graphs(n) if is_free(g, f))


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (3, 3), (4, 7), (5, 14), (6, 38), (7, 107)])
def test_triangle_free_counts(n, expected):
    assert sum(1 for _ in enumerate_free(n, K3)) == expected


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)])
def test_all_graph_counts(n, expected):
    found = list(enumerate_free(n, Graph.complete(n + 1)))
    assert len(found) == expected
    assert len({canonical(g) for g in found}) == expected


def test_enumerated_graphs_are_free_and_canonical_reps():
    for g in enumerate_free(6, cycle(4)):
        assert is_free(g, cycle(4))


def test_brute_ex_agrees_with_exhaustive_labeled_search():
    rng = random.Random(11)
    hs = [K2, K3, path(3), star(3), cycle(4)]
    fs = [K3, K4, cycle(4), path(4), star(3)]
    for _ in range(12):
        h, f = rng.choice(hs), rng.choice(fs)
        n = rng.randint(3, 5)
        assert ex_brute(n, h, f).value == brute_ex(n, h, f), (n, h, f)


def test_ex_report_fields():
    r = ex_brute(6, K3, K4)
    assert r.value == 8
    assert r.witnesses == (emit_graph6(parse_graph6(r.witnesses[0])),)
    assert r.to_json()["value"] == "8"
    assert r.min_copy_degree == (4,)


def test_maximal_only_keeps_ex_value():
    full = ex_brute(7, K2, cycle(4))
    maximal = ex_brute(7, K2, cycle(4), SearchConfig(maximal_only=True))
    assert full.value == maximal.value == 9
    assert maximal.generated == full.generated
    counted = sum(1 for _ in enumerate_free(7, cycle(4), SearchConfig(maximal_only=True)))
    assert 0 < counted < sum(1 for _ in enumerate_free(7, cycle(4)))


def test_jobs_do_not_change_results():
    a = ex_brute(7, K3, K4, SearchConfig(jobs=1))
    b = ex_brute(7, K3, K4, SearchConfig(jobs=3))
    assert a == b
    assert [emit_graph6(g) for g in enumerate_free(6, K3, SearchConfig(jobs=2))] == [
        emit_graph6(g) for g in enumerate_free(6, K3)
    ]


def test_budget_exceeded_carries_partial():
    with pytest.raises(BudgetExceeded) as info:
        ex_brute(7, K3, K4, SearchConfig(max_nodes=100))
    assert "partial" in info.value.progress


def test_enumeration_cap():
    with pytest.raises(ValueError):
        ex_brute(13, K2, K3)


def test_near_extremal_rows_sorted():
    ex, rows, _ = scan_near_extremal(7, K3, K4, 2, SearchConfig())
    assert ex == 12
    counts = [c for c, _ in rows]
    assert counts == sorted(counts, reverse=True)
    assert all(c >= ex - 2 for c in counts)


@settings(max_examples=150, deadline=None)
@given(graphs(min_n=3, max_n=7), st.data())
def test_zykov_step_change_equals_copy_degree_change(g, data):
    h = data.draw(st.sampled_from([K2, K3, path(3)]))
    u = data.draw(st.integers(0, g.n - 1))
    v = data.draw(st.integers(0, g.n - 1).filter(lambda x: x != u))
    nxt = zykov_step(g, h, u, (v,))
    if nxt is g:
        return
    moved = g.with_neighbourhood(u, g.adj[v] & ~(1 << u))
    assert nxt == moved
    delta = count_copies(h, moved) - count_copies(h, g)
    assert delta == copy_degree(h, moved, u) - copy_degree(h, g, u) > 0


def test_zykov_step_refuses_forbidden():
    # copying N(0) = {1, 2} onto vertex 3 closes the 4-cycle 0-1-3-2
    g = Graph.from_edges(5, [(0, 1), (0, 2)])
    with pytest.raises(StepRefused):
        zykov_step(g, K2, 3, (0,), forbidden=cycle(4))
    assert zykov_step(g, K2, 3, (0,)).adj[3] == 0b110


def test_single_vertex_steps_keep_clique_freeness():
    rng = random.Random(2)
    for _ in range(50):
        g = random_clique_free(rng.randint(4, 8), 3, rng)
        u, v = rng.sample(range(g.n), 2)
        assert is_free(zykov_step(g, K3, u, (v,)), K4)


def test_symmetrize_reaches_turan():
    rng = random.Random(5)
    g0 = random_clique_free(7, 3, rng)
    r = symmetrize_search(g0, K3, 3, restarts=8, seed=1)
    assert r.count == 12
    assert is_free(r.graph, K4)
    for t in r.trajectories:
        assert list(t) == sorted(t)


def test_symmetrize_rejects_bad_seed():
    with pytest.raises(ValueError):
        symmetrize_search(K4, K3, 3)


def test_turan_copy_degrees():
    assert turan_copy_degrees(K3, 7, 3) == {3: 4, 2: 6}
    assert count_copies_multipartite(K3, turan_parts(7, 3)) == 12
