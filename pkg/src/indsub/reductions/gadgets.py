"""Host-graph constructions used by the reductions."""

from __future__ import annotations

from itertools import combinations

from ..counting import ColoredGraph
from ..errors import GraphError
from ..graph import Graph, complete_bipartite, induced_subgraph, make_graph


def hom_gadget(H: Graph, G: Graph) -> ColoredGraph:
    """H-coloured host whose cp-homs from H are exactly the homs H -> G.

    Copy i of V(G) gets colour i; vertex v of copy i is ``i * |V(G)| + v``. Two
    copies i, j are joined along E(G) whenever ij is an edge of H.
    """
    n = G.n
    edges = []
    for i, j in H.edges:
        for u, v in G.edges:
            edges.append((i * n + u, j * n + v))
            edges.append((i * n + v, j * n + u))
    coloring = tuple(i for i in range(H.n) for _ in range(n))
    return ColoredGraph(make_graph(H.n * n, edges), H, coloring)


def tensor(CG: ColoredGraph, CF: ColoredGraph) -> ColoredGraph:
    """Colour-respecting product: vertices are same-coloured pairs (v, w), adjacent
    when both coordinates are adjacent. cp-hom counts multiply over it."""
    if CG.pattern != CF.pattern:
        raise GraphError("tensor product needs both hosts coloured by the same pattern")
    pairs = [(v, w) for v in range(CG.host.n) for w in range(CF.host.n)
             if CG.coloring[v] == CF.coloring[w]]
    index = {pair: i for i, pair in enumerate(pairs)}
    by_color: dict[int, list[int]] = {}
    for w in range(CF.host.n):
        by_color.setdefault(CF.coloring[w], []).append(w)
    edges = []
    for v, u in CG.host.edges:
        for w in by_color.get(CG.coloring[v], ()):
            nb = CF.host.adj[w]
            for x in by_color.get(CG.coloring[u], ()):
                if nb >> x & 1:
                    edges.append((index[(v, w)], index[(u, x)]))
    coloring = tuple(CG.coloring[v] for v, _ in pairs)
    return ColoredGraph(make_graph(len(pairs), edges), CG.pattern, coloring)


def clique_gadget(G: Graph, size: int) -> ColoredGraph:
    """K_{size,size}-coloured host with exactly one cp-hom per size-clique of G.

    u(i, j) = i*n + j has colour i (left side), w(i, j) = size*n + i*n + j has
    colour size + i (right side). u(i, j) ~ w(i', j') iff (i, j) = (i', j'), or
    i < i' and j < j' with v_j ~ v_j', or i > i' and j > j' with v_j ~ v_j'.
    """
    if size < 2:
        raise GraphError(f"clique gadget needs size >= 2, got {size}")
    n = G.n
    edges = []
    for i in range(size):
        for j in range(n):
            u = i * n + j
            for i2 in range(size):
                for j2 in range(n):
                    w = size * n + i2 * n + j2
                    if (i, j) == (i2, j2):
                        edges.append((u, w))
                    elif (i < i2 and j < j2) or (i > i2 and j > j2):
                        if G.has_edge(j, j2):
                            edges.append((u, w))
    coloring = tuple([i for i in range(size) for _ in range(n)]
                     + [size + i for i in range(size) for _ in range(n)])
    return ColoredGraph(make_graph(2 * size * n, edges), complete_bipartite(size, size), coloring)


def pad_clique(G: Graph, k: int, size: int) -> Graph:
    """Add size - k universal vertices: G has a k-clique iff the result has a
    size-clique. Counts are not preserved."""
    if size < k:
        raise GraphError(f"padding needs size >= k, got size={size}, k={k}")
    extra = size - k
    n = G.n + extra
    new = range(G.n, n)
    edges = list(G.edges) + [(u, v) for u in range(G.n) for v in new] + list(combinations(new, 2))
    return make_graph(n, edges)


def isolation_keep(n: int, rng) -> list[int]:
    """Vertices kept by one isolation draw: each independently with probability 1/2."""
    return [v for v, b in enumerate(rng.random(n) < 0.5) if b]


def random_isolation(G: Graph, rng) -> Graph:
    """Induced subgraph on a uniformly random vertex subset."""
    return induced_subgraph(G, isolation_keep(G.n, rng))

