import itertools
import random

import networkx as nx
import pytest

from turanlab.constructions import (
    FamilySpec,
    H2Spec,
    H3Spec,
    assemble_h3,
    book_f2,
    build,
    build_h2,
    disjoint_union,
    parse_graph_json,
    parse_h2,
    parse_h3,
    union_of_cliques,
)
from turanlab.count import count_copies
from turanlab.graph import Graph
from turanlab.graph6 import emit_graph6


@pytest.mark.parametrize(
    "kind,params,n,m",
    [
        ("clique", (5,), 5, 10),
        ("path", (4,), 4, 3),
        ("cycle", (6,), 6, 6),
        ("star", (3,), 4, 3),
        ("completeMultipartite", (2, 2, 2), 6, 12),
        ("turan", (7, 3), 7, 16),
        ("unionOfCliques", (3, 3, 2), 8, 7),
        ("bookF2", (), 5, 6),
    ],
)
def test_families(kind, params, n, m):
    g = build(FamilySpec(kind, params))
    assert (g.n, g.num_edges) == (n, m)


def test_family_errors():
    with pytest.raises(ValueError):
        build(FamilySpec("cycle", (2,)))
    with pytest.raises(ValueError):
        build(FamilySpec("nope", (1,)))
    with pytest.raises(ValueError):
        build(FamilySpec("clique", (0,)))
    with pytest.raises(ValueError):
        disjoint_union(Graph.complete(40), Graph.complete(30))


def test_book_has_two_triangles():
    assert count_copies(Graph.complete(3), book_f2()) == 2


def test_h2_joins_cliques():
    k3 = Graph.complete(3)
    g = build_h2(H2Spec(k3, (0, 1), k3, (0,), ((0, 0), (0, 1))))
    assert g.n == 6
    assert g.has_edge(0, 3) and g.has_edge(1, 3)
    assert count_copies(k3, g) == 3
    with pytest.raises(ValueError):
        H2Spec(Graph.from_edges(3, [(0, 1)]), (0, 2), k3, (0,))
    with pytest.raises(ValueError):
        build_h2(H2Spec(k3, (0,), k3, (0,), ((1, 0),)))


def test_h3_valid_and_invalid():
    h = Graph.complete(3)
    # bare added K_3: anchor 3 has no triangle avoiding 4 and 5
    assert assemble_h3(H3Spec(h, 3)).reason == "anchor"
    ok = assemble_h3(H3Spec(h, 3, ((3, 0), (3, 1), (4, 1), (4, 2))))
    assert ok.valid and ok.chi == 3 and ok.reason is None
    assert ok.certificates[:2] == ((0, 1, 3), (1, 2, 4))
    # joining the new clique to the old one completely makes chi = 6
    joins = tuple((u, v) for u in range(3) for v in range(3, 6))
    bad = assemble_h3(H3Spec(h, 3, joins))
    assert not bad.valid and bad.reason == "chromatic" and bad.chi == 6


def test_h3_anchor_failure():
    # k = 2 clique {2, 3}; with anchors (2, 3) the first anchor needs a K_2 avoiding 3
    res = assemble_h3(H3Spec(Graph.empty(2), 2, (), (2, 3)))
    assert not res.valid and res.reason == "anchor"
    assert res.certificates == (None, (2, 3))
    with pytest.raises(ValueError):
        H3Spec(Graph.empty(2), 2, (), (0, 1)).anchor_order()


def test_json_parsers():
    g = parse_graph_json({"n": 3, "edges": [[0, 1], [1, 2]]})
    assert g.edges() == [(0, 1), (1, 2)]
    assert emit_graph6(parse_graph_json({"kind": "clique", "parameters": [3]})) == "Bw"
    spec = parse_h2({"h": {"kind": "clique", "parameters": [3]}, "x": [0], "hPrime": {"n": 1}, "y": [0], "pattern": [[0, 0]]})
    assert build_h2(spec).num_edges == 4
    h3 = parse_h3({"h": {"n": 2, "edges": [[0, 1]]}, "k": 2, "extraEdges": [[1, 2]]})
    assert assemble_h3(h3).valid
    assert union_of_cliques([2, 2]).num_edges == 2


def test_h3_validity_is_sound():
    rng = random.Random(8)
    for _ in range(60):
        m, k = rng.randint(2, 5), rng.randint(2, 3)
        h = Graph.from_edges(m, [e for e in itertools.combinations(range(m), 2) if rng.random() < 0.6])
        extra = tuple(
            (u, v) for u in range(m) for v in range(m, m + k) if rng.random() < 0.5
        )
        res = assemble_h3(H3Spec(h, k, extra))
        if not res.valid:
            continue
        g = nx.Graph(res.graph.edges())
        g.add_nodes_from(range(res.graph.n))
        cliques = [set(c) for c in nx.enumerate_all_cliques(g) if len(c) == k]
        for i, v in enumerate(range(m, m + k)):
            later = set(range(v + 1, m + k))
            assert any(v in c and not c & later for c in cliques)
        # contains K_k, so chi == k iff some proper k-colouring exists
        assert any(
            all(col[u] != col[v] for u, v in res.graph.edges())
            for col in itertools.product(range(k), repeat=res.graph.n)
        )


def test_disjoint_union_copies_are_disjoint_pairs():
    # components K_2 and K_3 are non-isomorphic, so copies of K_2 + K_3 = disjoint (edge, triangle) pairs
    rng = random.Random(4)
    h = disjoint_union(Graph.complete(2), Graph.complete(3))
    for _ in range(25):
        n = rng.randint(5, 8)
        g = Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.6])
        tris = [t for t in itertools.combinations(range(n), 3) if g.is_clique(t)]
        pairs = sum(1 for e in g.edges() for t in tris if not set(e) & set(t))
        assert count_copies(h, g) == pairs
