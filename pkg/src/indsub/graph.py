"""Simple undirected graphs on vertices 0..n-1.

Edges are stored as a sorted tuple of pairs ``(u, v)`` with ``u < v``. The
position of a pair in that tuple is its canonical edge index; an edge subset
of a graph is an ``int`` bit mask over those indices (bit ``i`` set means edge
``i`` is present).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .config import caps
from .errors import GraphError


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as a bitset."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    @property
    def full_mask(self) -> int:
        return (1 << self.m) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image of the graph under the vertex bijection ``v -> perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError(f"not a permutation of {self.n} vertices: {perm!r}")
        return make_graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def make_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    seen = set()
    for u, v in edges:
        if u == v:
            raise GraphError(f"loop edge ({u}, {v})")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"endpoint out of range in edge ({u}, {v}) for n={n}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise GraphError(f"duplicate edge ({u}, {v})")
        seen.add(e)
    return Graph(n, tuple(sorted(seen)))


def graph_from_adjacency(adj: Sequence[int]) -> Graph:
    """Build a graph from neighbourhood bitsets (must be symmetric)."""
    n = len(adj)
    edges = []
    for u in range(n):
        rest = adj[u] >> (u + 1)
        v = u + 1
        while rest:
            if rest & 1:
                edges.append((u, v))
            rest >>= 1
            v += 1
    return Graph(n, tuple(edges))


def check_mask(H: Graph, mask: int) -> None:
    if mask < 0 or mask >> H.m:
        raise GraphError(f"mask {mask:#x} does not fit the {H.m} edges of the pattern")
    if H.m > caps.mask_width:
        raise GraphError(f"{H.m} edges exceed the mask width cap {caps.mask_width}")


def edge_subgraph(H: Graph, mask: int) -> Graph:
    """H[S]: all vertices of H, edges selected by ``mask``."""
    check_mask(H, mask)
    return Graph(H.n, tuple(e for i, e in enumerate(H.edges) if mask >> i & 1))


def edge_mask(H: Graph, edges: Iterable[tuple[int, int]]) -> int:
    mask = 0
    for u, v in edges:
        key = (u, v) if u < v else (v, u)
        if key not in H.edge_index:
            raise GraphError(f"({u}, {v}) is not an edge of the pattern")
        mask |= 1 << H.edge_index[key]
    return mask


def induced_subgraph(G: Graph, vertices: Iterable[int]) -> Graph:
    """G[V']: vertices relabelled 0..|V'|-1 in increasing order."""
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} out of range for n={G.n}")
    pos = {v: i for i, v in enumerate(keep)}
    edges = tuple((pos[u], pos[v]) for u, v in G.edges if u in pos and v in pos)
    return Graph(len(keep), edges)


def complement(G: Graph) -> Graph:
    return Graph(G.n, tuple(e for e in combinations(range(G.n), 2) if not G.has_edge(*e)))


def disjoint_union(G: Graph, F: Graph) -> Graph:
    return Graph(G.n + F.n, G.edges + tuple((u + G.n, v + G.n) for u, v in F.edges))


# -- components -------------------------------------------------------------

def components(G: Graph) -> list[int]:
    """Connected components as vertex bitsets, ordered by smallest vertex."""
    seen = 0
    comps = []
    for s in range(G.n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            while frontier:
                low = frontier & -frontier
                nxt |= G.adj[low.bit_length() - 1]
                frontier ^= low
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append(comp)
    return comps


def is_connected(G: Graph) -> bool:
    """Exactly one component. The null graph (n = 0) is not connected."""
    return len(components(G)) == 1


def bipartition(G: Graph) -> list[int] | None:
    """A proper 2-colouring as a 0/1 list, or None if G has an odd cycle."""
    side = [-1] * G.n
    for s in range(G.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            nb = G.adj[u]
            while nb:
                low = nb & -nb
                w = low.bit_length() - 1
                nb ^= low
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return None
    return side


def is_bipartite(G: Graph) -> bool:
    return bipartition(G) is not None


# -- families ---------------------------------------------------------------

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_power(m: int) -> tuple[int, int] | None:
    """``(p, e)`` with ``m = p**e`` and ``e >= 1``, or None."""
    if m < 2:
        return None
    p = 2
    while m % p:
        p += 1
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    return (p, e) if m == 1 else None


def independent_set(k: int) -> Graph:
    return Graph(k, ())


def clique(k: int) -> Graph:
    return Graph(k, tuple(combinations(range(k), 2)))


def cycle(k: int) -> Graph:
    if k < 3:
        raise GraphError(f"cycle needs at least 3 vertices, got {k}")
    return make_graph(k, [(i, (i + 1) % k) for i in range(k)])


def path(k: int) -> Graph:
    """Path on k vertices (k - 1 edges)."""
    return make_graph(k, [(i, i + 1) for i in range(k - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}: left side 0..a-1, right side a..a+b-1."""
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def wreath(p: int, k: int) -> Graph:
    """W_{p^k}: p cyclically arranged blocks of p^(k-1) vertices.

    Vertex v lies in block v // p^(k-1); every vertex of block i is joined to
    every vertex of block i+1 (mod p).
    """
    if not is_prime(p):
        raise GraphError(f"{p} is not prime")
    if k < 1:
        raise GraphError(f"wreath graph needs k >= 1, got {k}")
    b = p ** (k - 1)
    edges = set()
    for i in range(p):
        j = (i + 1) % p
        for x in range(b):
            for y in range(b):
                u, v = i * b + x, j * b + y
                edges.add((min(u, v), max(u, v)))
    return Graph(p * b, tuple(sorted(edges)))


def family(kind: str, *args: int) -> Graph:
    """Named standard graph: ``independent_set k``, ``clique k``, ``cycle k``,
    ``path k``, ``complete_bipartite a b`` or ``wreath p k``."""
    builders = {
        "independent_set": independent_set,
        "clique": clique,
        "cycle": cycle,
        "path": path,
        "complete_bipartite": complete_bipartite,
        "wreath": wreath,
    }
    if kind not in builders:
        raise GraphError(f"unknown graph family {kind!r}")
    if any(a < 1 for a in args):
        raise GraphError(f"family parameters must be positive, got {args}")
    return builders[kind](*args)


def random_graph(n: int, p: float, rng) -> Graph:
    """G(n, p) drawn from a ``numpy.random.Generator``."""
    pairs = list(combinations(range(n), 2))
    if not pairs:
        return Graph(n, ())
    keep = rng.random(len(pairs)) < p
    return Graph(n, tuple(e for e, k in zip(pairs, keep) if k))


def count_cliques(G: Graph, k: int) -> int:
    """Number of k-cliques, by extending cliques in increasing vertex order."""
    if k == 0:
        return 1

    def extend(cand: int, need: int) -> int:
        if need == 0:
            return 1
        total = 0
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            if cand.bit_count() + 1 < need:
                break
            total += extend(cand & G.adj[v], need - 1)
        return total

    return extend((1 << G.n) - 1, k)
