"""Canonical forms, automorphism groups and transitivity tests.

Both searches start from the coarsest equitable partition obtained by
iterated degree refinement, then branch by individualizing vertices of the
first smallest non-singleton cell. Twin vertices (same neighbourhood apart
from each other) are interchangeable by an automorphism that fixes every
refined partition containing them in one cell, so only one twin per class is
branched on when computing canonical forms.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterator

from .config import caps, check_cap
from .errors import CapExceededError
from .graph import Graph, components, graph_from_adjacency

Partition = list[list[int]]


def refine(G: Graph, cells: Partition) -> Partition:
    """Coarsest equitable refinement of an ordered partition.

    Cell order depends only on invariant data, so relabelling G relabels the
    result consistently.
    """
    cells = [list(c) for c in cells]
    while True:
        cell_of = [0] * G.n
        masks = []
        for i, c in enumerate(cells):
            m = 0
            for v in c:
                cell_of[v] = i
                m |= 1 << v
            masks.append(m)
        new = []
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            sig = {v: tuple((G.adj[v] & m).bit_count() for m in masks) for v in c}
            groups: dict[tuple, list[int]] = {}
            for v in c:
                groups.setdefault(sig[v], []).append(v)
            for key in sorted(groups):
                new.append(groups[key])
        if len(new) == len(cells):
            return new
        cells = new


def _target_cell(cells: Partition) -> int | None:
    best = None
    for i, c in enumerate(cells):
        if len(c) > 1 and (best is None or len(c) < len(cells[best])):
            best = i
    return best


def _individualize(cells: Partition, i: int, v: int) -> Partition:
    rest = [w for w in cells[i] if w != v]
    return cells[:i] + [[v], rest] + cells[i + 1:]


def _twin_reps(G: Graph, cell: list[int]) -> list[int]:
    reps: list[int] = []
    for v in cell:
        for r in reps:
            if G.adj[v] & ~(1 << r) == G.adj[r] & ~(1 << v):
                break
        else:
            reps.append(v)
    return reps


def _certificate(G: Graph, order: list[int]) -> int:
    pos = [0] * G.n
    for i, v in enumerate(order):
        pos[v] = i
    bits = 0
    for u, v in G.edges:
        a, b = pos[u], pos[v]
        if a > b:
            a, b = b, a
        bits |= 1 << (b * (b - 1) // 2 + a)
    return bits


def canonical_labeling(G: Graph) -> tuple[int, list[int]]:
    """Best leaf certificate and the vertex order producing it."""
    best: list = [-1, None]

    def search(cells: Partition) -> None:
        cells = refine(G, cells)
        i = _target_cell(cells)
        if i is None:
            order = [c[0] for c in cells]
            cert = _certificate(G, order)
            if cert > best[0]:
                best[0], best[1] = cert, order
            return
        for v in _twin_reps(G, cells[i]):
            search(_individualize(cells, i, v))

    search([list(range(G.n))])
    return best[0], best[1]


def canonical_form(G: Graph) -> bytes:
    """Key with ``canonical_form(G) == canonical_form(F)`` iff G and F are isomorphic."""
    cert, _ = canonical_labeling(G) if G.n else (0, [])
    width = max(1, (G.n * (G.n - 1) // 2 + 7) // 8)
    return G.n.to_bytes(2, "big") + cert.to_bytes(width, "big")


def canonical_graph(G: Graph) -> Graph:
    """Representative of G's isomorphism class (relabelled by the canonical order)."""
    if G.n == 0:
        return G
    _, order = canonical_labeling(G)
    pos = [0] * G.n
    for i, v in enumerate(order):
        pos[v] = i
    return G.relabel(pos)


def is_isomorphic(G: Graph, F: Graph) -> bool:
    return G.n == F.n and G.m == F.m and canonical_form(G) == canonical_form(F)


def automorphisms(G: Graph, cap: int | None = None, max_order: int | None = None) -> list[tuple[int, ...]]:
    """All automorphisms of G as image tuples, identity first."""
    check_cap(G.n, caps.aut_vertices if cap is None else cap, "vertices for automorphism search")
    max_order = caps.group_order if max_order is None else max_order
    n = G.n
    if n == 0:
        return [()]
    cells = refine(G, [list(range(n))])
    color = [0] * n
    for i, c in enumerate(cells):
        for v in c:
            color[v] = i
    # map vertices in BFS order so adjacency constraints bite early
    order: list[int] = []
    placed = 0
    for comp in components(G):
        start = max((v for v in range(n) if comp >> v & 1), key=lambda v: (G.degree(v), -v))
        queue = [start]
        placed |= 1 << start
        while queue:
            u = queue.pop(0)
            order.append(u)
            nb = G.adj[u] & ~placed
            for w in range(n):
                if nb >> w & 1:
                    placed |= 1 << w
                    queue.append(w)
    prev = [[order[j] for j in range(i)] for i in range(n)]
    found: list[tuple[int, ...]] = []
    image = [-1] * n

    def extend(i: int, used: int) -> None:
        if i == n:
            found.append(tuple(image))
            if len(found) > max_order:
                raise CapExceededError(f"automorphism group larger than cap {max_order}")
            return
        v = order[i]
        for w in cells[color[v]]:
            if used >> w & 1:
                continue
            if any(G.has_edge(v, u) != G.has_edge(w, image[u]) for u in prev[i]):
                continue
            image[v] = w
            extend(i + 1, used | 1 << w)
        image[v] = -1

    extend(0, 0)
    found.sort(key=lambda g: g != tuple(range(n)))
    return found


def _single_orbit(items: list, elements, act) -> bool:
    if len(items) <= 1:
        return True
    first = items[0]
    orbit = {act(g, first) for g in elements}
    return len(orbit) == len(items)


def is_edge_transitive(G: Graph, cap: int | None = None) -> bool:
    """Aut(G) has one orbit on E(G) (vacuously true with fewer than two edges)."""
    if G.m <= 1:
        return True
    auts = automorphisms(G, cap)
    return _single_orbit(list(G.edges), auts,
                         lambda g, e: (min(g[e[0]], g[e[1]]), max(g[e[0]], g[e[1]])))


def is_vertex_transitive(G: Graph, cap: int | None = None) -> bool:
    if G.n <= 1:
        return True
    auts = automorphisms(G, cap)
    return _single_orbit(list(range(G.n)), auts, lambda g, v: g[v])


def find_embedding(F: Graph, G: Graph, induced: bool = False) -> tuple[int, ...] | None:
    """An injective homomorphism F -> G (strong if ``induced``), or None."""
    if F.n > G.n:
        return None
    order = sorted(range(F.n), key=lambda v: -F.degree(v))
    image = [-1] * F.n
    all_g = (1 << G.n) - 1

    def extend(i: int, used: int) -> bool:
        if i == F.n:
            return True
        v = order[i]
        cand = all_g & ~used
        for u in order[:i]:
            if F.has_edge(v, u):
                cand &= G.adj[image[u]]
            elif induced:
                cand &= ~G.adj[image[u]]
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            image[v] = w
            if extend(i + 1, used | low):
                return True
        image[v] = -1
        return False

    return tuple(image) if extend(0, 0) else None


def enumerate_graphs(n: int, method: str = "labeled") -> list[Graph]:
    """One canonical representative per isomorphism class on n vertices.

    ``labeled`` buckets all 2^C(n,2) labelled graphs by canonical form;
    ``extend`` adds a vertex with every possible neighbourhood to each class
    on n - 1 vertices. Both are exhaustive.
    """
    check_cap(n, caps.classify_vertices, "vertices for graph enumeration")
    reps: dict[bytes, Graph] = {}
    if method == "labeled":
        pairs = list(combinations(range(n), 2))
        for bits in product((0, 1), repeat=len(pairs)):
            G = Graph(n, tuple(e for e, b in zip(pairs, bits) if b))
            key = canonical_form(G)
            if key not in reps:
                reps[key] = canonical_graph(G)
    elif method == "extend":
        if n == 0:
            return [Graph(0, ())]
        for base in enumerate_graphs(n - 1, "extend"):
            for nb in range(1 << (n - 1)):
                adj = list(base.adj) + [nb]
                for v in range(n - 1):
                    if nb >> v & 1:
                        adj[v] |= 1 << (n - 1)
                G = graph_from_adjacency(adj)
                key = canonical_form(G)
                if key not in reps:
                    reps[key] = canonical_graph(G)
    else:
        raise ValueError(f"unknown enumeration method {method!r}")
    return sorted(reps.values(), key=lambda g: (g.m, g.edges))
