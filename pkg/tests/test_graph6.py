import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turanlab.graph import Graph
from turanlab.graph6 import (
    HEADER,
    Graph6BodyError,
    Graph6HeaderError,
    Graph6RangeError,
    Graph6TrailingDataError,
    emit_graph6,
    parse_graph6,
)


@st.composite
def graphs(draw, max_n=64):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    seed = draw(st.integers(0, 2**32))
    p = draw(st.floats(0, 1))
    rng = random.Random(seed)
    return Graph.from_edges(n, [e for e in pairs if rng.random() < p])


def to_nx(g: Graph) -> nx.Graph:
    out = nx.empty_graph(g.n)
    out.add_edges_from(g.edges())
    return out


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_emit_matches_networkx(g):
    expected = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert emit_graph6(g) == expected


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_roundtrip(g):
    s = emit_graph6(g)
    assert parse_graph6(s) == g
    assert parse_graph6(HEADER + s + "\n") == g


def test_known_strings():
    assert emit_graph6(Graph.complete(3)) == "Bw"
    assert emit_graph6(Graph.empty(0)) == "?"
    assert emit_graph6(Graph.complete(4)) == "C~"
    # n = 63 and 64 use the long size prefix
    assert emit_graph6(Graph.empty(63)).startswith("~??~")
    assert emit_graph6(Graph.empty(64)).startswith("~?@?")
    assert parse_graph6(emit_graph6(Graph.complete(64))) == Graph.complete(64)


def test_header_errors():
    with pytest.raises(Graph6HeaderError):
        parse_graph6(">>sparse6<<Bw")
    with pytest.raises(Graph6HeaderError):
        parse_graph6("")


def test_range_error_above_cap():
    with pytest.raises(Graph6RangeError):
        parse_graph6("~?A?" + "?" * 300)


def test_body_errors():
    with pytest.raises(Graph6BodyError):
        parse_graph6("C")  # truncated
    with pytest.raises(Graph6BodyError):
        parse_graph6("B\x7f")  # illegal char
    with pytest.raises(Graph6BodyError):
        parse_graph6("B~")  # nonzero padding bits


def test_trailing_data():
    with pytest.raises(Graph6TrailingDataError):
        parse_graph6("Bww")
