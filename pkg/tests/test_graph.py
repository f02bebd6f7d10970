import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import graphs, to_nx
from turanlab.graph import Graph, bits_of, iter_bits


def test_bit_helpers():
    assert list(iter_bits(0b10110)) == [1, 2, 4]
    assert bits_of([0, 3]) == 0b1001


def test_validation():
    with pytest.raises(ValueError):
        Graph(2, (0b01, 0))  # loop
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))  # asymmetric
    with pytest.raises(ValueError):
        Graph.empty(65)
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=10))
def test_queries_match_networkx(g):
    ref = to_nx(g)
    assert g.num_edges == ref.number_of_edges()
    assert [g.degree(v) for v in range(g.n)] == [ref.degree(v) for v in range(g.n)]
    assert sorted(g.edges()) == sorted(tuple(sorted(e)) for e in ref.edges())
    assert len(g.non_edges()) + g.num_edges == g.n * (g.n - 1) // 2


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=2, max_n=10), st.data())
def test_derived_graphs(g, data):
    u = data.draw(st.integers(0, g.n - 1))
    v = data.draw(st.integers(0, g.n - 1).filter(lambda x: x != u))
    assert g.with_edge(u, v).has_edge(u, v)
    assert not g.without_edge(u, v).has_edge(u, v)
    sub = g.without_vertex(u)
    assert sub.n == g.n - 1
    assert sub.num_edges == g.num_edges - g.degree(u)
    ext = g.extend(g.adj[u])
    assert ext.n == g.n + 1 and ext.neighbors(g.n) == g.neighbors(u)
    perm = data.draw(st.permutations(range(g.n)))
    r = g.relabel(perm)
    assert all(r.has_edge(perm[a], perm[b]) for a, b in g.edges())
    keep = sorted(data.draw(st.sets(st.integers(0, g.n - 1))))
    ind = g.induced(keep)
    assert ind.num_edges == sum(1 for a, b in g.edges() if a in keep and b in keep)


def test_clique_and_independence():
    k4 = Graph.complete(4)
    assert k4.is_clique([0, 1, 2, 3]) and k4.max_degree() == 3
    assert Graph.empty(4).is_independent(range(4))
    g = Graph.from_edges(4, [(0, 1)])
    assert g.with_neighbourhood(2, 0b1011).neighbors(2) == [0, 1, 3]
