from itertools import permutations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from indsub.errors import GraphError, GraphFormatError
from indsub.graph import (Graph, bipartition, clique, complete_bipartite, complement, components,
                          count_cliques, cycle, disjoint_union, edge_mask, edge_subgraph, family,
                          independent_set, induced_subgraph, is_bipartite, is_connected, make_graph,
                          path, prime_power, random_graph, wreath)
from indsub.graph_io import (format_edge_list, format_graph6, parse_coloring, parse_edge_list,
                             parse_graph, parse_graph6, parse_permutations, read_graph, write_graph)
from indsub.iso import is_isomorphic

import oracles


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, tuple(e for e, k in zip(pairs, keep) if k))


def test_make_graph_triangle_and_empty():
    assert make_graph(3, [(0, 1), (1, 2), (0, 2)]) == clique(3)
    assert make_graph(4, []) == independent_set(4)
    assert make_graph(3, [(2, 0), (1, 0)]).edges == ((0, 1), (0, 2))


@pytest.mark.parametrize("edges,msg", [
    ([(0, 0)], "loop edge"),
    ([(0, 1), (1, 0)], "duplicate edge"),
    ([(0, 5)], "out of range"),
])
def test_make_graph_rejects(edges, msg):
    with pytest.raises(GraphError, match=msg):
        make_graph(2 if msg == "loop edge" else 3, edges)


def test_edge_subgraph_keeps_vertices():
    K3 = clique(3)
    assert edge_subgraph(K3, 0) == independent_set(3)
    assert edge_subgraph(K3, K3.full_mask) == K3
    one = edge_subgraph(complete_bipartite(2, 2), 0b0001)
    assert one.n == 4 and one.m == 1
    with pytest.raises(GraphError):
        edge_subgraph(K3, 0b1000)


def test_induced_subgraph():
    assert induced_subgraph(clique(3), {0, 1}) == clique(2)
    assert induced_subgraph(clique(3), set()) == Graph(0, ())
    assert induced_subgraph(cycle(4), {0, 2}) == independent_set(2)
    with pytest.raises(GraphError):
        induced_subgraph(clique(3), {5})


def test_families():
    assert wreath(3, 1) == cycle(3)
    W9 = wreath(3, 2)
    assert (W9.n, W9.m) == (9, 27)
    W4 = wreath(2, 2)
    assert W4.m == 4 and is_isomorphic(W4, complete_bipartite(2, 2))
    assert family("complete_bipartite", 2, 3) == complete_bipartite(2, 3)
    assert path(3).edges == ((0, 1), (1, 2))
    with pytest.raises(GraphError, match="not prime"):
        wreath(4, 1)
    with pytest.raises(GraphError):
        family("petersen", 10)


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)])
def test_wreath_edge_count(p, k):
    W = wreath(p, k)
    expected = 2 ** (2 * k - 2) if p == 2 else p ** (2 * k - 1)
    assert W.m == expected


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(6) is None
    assert prime_power(1) is None


@given(graphs())
def test_components_and_bipartite_match_networkx(G):
    g = oracles.to_nx(G)
    assert len(components(G)) == nx.number_connected_components(g)
    assert is_connected(G) == (G.n > 0 and nx.is_connected(g))
    assert is_bipartite(G) == nx.is_bipartite(g)
    side = bipartition(G)
    if side is not None:
        assert all(side[u] != side[v] for u, v in G.edges)


@given(graphs(6))
def test_complement_and_union(G):
    C = complement(G)
    assert G.m + C.m == G.n * (G.n - 1) // 2
    U = disjoint_union(G, C)
    assert U.n == 2 * G.n and U.m == G.n * (G.n - 1) // 2


@given(graphs(7), st.integers(1, 4))
def test_count_cliques_matches_brute_force(G, k):
    assert count_cliques(G, k) == oracles.cliques(G, k)


def test_edge_mask_roundtrip():
    H = complete_bipartite(2, 2)
    assert edge_subgraph(H, edge_mask(H, [(0, 2), (3, 1)])).edges == ((0, 2), (1, 3))
    with pytest.raises(GraphError):
        edge_mask(H, [(0, 1)])


def test_random_graph_seeded():
    a = random_graph(8, 0.5, np.random.default_rng(3))
    b = random_graph(8, 0.5, np.random.default_rng(3))
    assert a == b


# -- I/O -------------------------------------------------------------------------------

@given(graphs(9))
@settings(max_examples=60)
def test_graph6_matches_networkx(G):
    ours = format_graph6(G)
    assert ours.encode() + b"\n" == nx.to_graph6_bytes(oracles.to_nx(G), header=False)
    assert parse_graph6(ours) == G
    assert parse_graph(ours) == G


@given(graphs(9))
def test_edge_list_roundtrip(G):
    assert parse_edge_list(format_edge_list(G)) == G


def test_graph6_header_and_large_n():
    G = cycle(70)
    s = format_graph6(G)
    assert s[0] == "~"
    assert parse_graph(">>graph6<<" + s + "\n") == G


@pytest.mark.parametrize("text,line", [
    ("3 2\n0 1\n", 3),
    ("3 1\n0 0\n", 2),
    ("3 1\n0 x\n", 2),
    ("3 1\n0 1\n1 2\n", 3),
    ("3\n", 1),
    ("", 1),
    ("2 1\n0 1\n1 0 1\n", 3),
])
def test_malformed_edge_list_reports_line(text, line):
    with pytest.raises(GraphFormatError) as exc:
        parse_graph(text)
    assert exc.value.line == line


def test_malformed_graph6():
    with pytest.raises(GraphFormatError):
        parse_graph6("Bwx")
    with pytest.raises(GraphFormatError):
        parse_graph("Bw\nBw\n")


def test_files(tmp_path):
    G = wreath(3, 2)
    write_graph(G, tmp_path / "w.el")
    write_graph(G, tmp_path / "w.g6", "graph6")
    assert read_graph(tmp_path / "w.el") == G
    assert read_graph(tmp_path / "w.g6") == G
    assert parse_coloring("0 1\n2 3\n") == (0, 1, 2, 3)
    assert parse_permutations("1 0 2\n0 2 1\n") == [(1, 0, 2), (0, 2, 1)]
    with pytest.raises(GraphFormatError):
        parse_permutations("0 0 1\n")


def test_relabel_is_isomorphic():
    G = path(4)
    for perm in permutations(range(4)):
        assert is_isomorphic(G, G.relabel(perm))
