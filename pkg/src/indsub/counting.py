"""Exact brute-force counters for homomorphisms, embeddings, (induced) subgraphs
and their colour-prescribed variants.

All counters return Python ints. With ``mod=p`` the result is the residue mod
p, reduced as the search goes.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product
from math import comb
from typing import Callable, Sequence

import numpy as np

from .config import caps, check_cap
from .errors import CapExceededError, GraphError, InvariantError
from .graph import Graph, edge_subgraph, check_mask
from .iso import automorphisms


@dataclass(frozen=True)
class ColoredGraph:
    """Host graph with an H-colouring ``coloring[v] in V(pattern)``.

    The colouring must be a homomorphism host -> pattern.
    """
    host: Graph
    pattern: Graph
    coloring: tuple[int, ...]

    def __post_init__(self):
        c = tuple(self.coloring)
        object.__setattr__(self, "coloring", c)
        if len(c) != self.host.n:
            raise GraphError(f"coloring has {len(c)} entries for {self.host.n} host vertices")
        if any(not 0 <= x < self.pattern.n for x in c):
            raise GraphError("coloring value outside the pattern's vertex set")
        for u, v in self.host.edges:
            if not self.pattern.has_edge(c[u], c[v]):
                raise GraphError(f"host edge ({u}, {v}) maps to non-edge ({c[u]}, {c[v]}) of the pattern")

    @cached_property
    def classes(self) -> tuple[int, ...]:
        """Colour classes c^{-1}(v) as vertex bitsets."""
        cls = [0] * self.pattern.n
        for x, c in enumerate(self.coloring):
            cls[c] |= 1 << x
        return tuple(cls)

    def is_surjective(self) -> bool:
        return all(self.classes)


def identity_colored(H: Graph, mask: int | None = None) -> ColoredGraph:
    """H[S] coloured by the identity map on V(H)."""
    F = H if mask is None else edge_subgraph(H, mask)
    return ColoredGraph(F, H, tuple(range(H.n)))


def random_colored_graph(H: Graph, n: int, p: float, rng, surjective: bool = True) -> ColoredGraph:
    """Random H-coloured host on n vertices: uniform colours, each colour-compatible
    pair joined with probability p."""
    colors = list(rng.integers(0, H.n, size=n)) if n else []
    if surjective and n >= H.n:
        colors[:H.n] = list(range(H.n))
        colors = [int(c) for c in rng.permutation(colors)]
    colors = [int(c) for c in colors]
    edges = [(u, v) for u, v in combinations(range(n), 2)
             if H.has_edge(colors[u], colors[v]) and rng.random() < p]
    return ColoredGraph(Graph(n, tuple(edges)), H, tuple(colors))


def _red(x: int, mod: int | None) -> int:
    return x % mod if mod else x


def _check_pattern(H: Graph, cap: int | None) -> None:
    check_cap(H.n, caps.pattern_vertices if cap is None else cap, "pattern vertices")


def _descending_degree(H: Graph, adj: Sequence[int]) -> list[int]:
    return sorted(range(H.n), key=lambda v: (-adj[v].bit_count(), v))


def _search(order: list[int], candidates: Callable[[int, list[int], int], int],
            n_images: int, injective: bool, mod: int | None) -> int:
    """Count maps of ``order`` into host vertices; ``candidates(i, image, used)``
    returns the bitset of allowed images for ``order[i]``."""
    k = len(order)
    if k == 0:
        return 1
    image = [-1] * n_images

    def extend(i: int, used: int) -> int:
        cand = candidates(i, image, used)
        if injective:
            cand &= ~used
        if i == k - 1:
            return cand.bit_count()
        total = 0
        v = order[i]
        while cand:
            low = cand & -cand
            cand ^= low
            image[v] = low.bit_length() - 1
            total += extend(i + 1, used | low)
        image[v] = -1
        return _red(total, mod)

    return _red(extend(0, 0), mod)


def _plain_counter(H: Graph, G: Graph, injective: bool, strong: bool, mod: int | None,
                   cap: int | None) -> int:
    _check_pattern(H, cap)
    order = _descending_degree(H, H.adj)
    everything = (1 << G.n) - 1
    earlier = [order[:i] for i in range(len(order))]

    def candidates(i, image, used):
        v = order[i]
        cand = everything
        for u in earlier[i]:
            if H.adj[v] >> u & 1:
                cand &= G.adj[image[u]]
            elif strong:
                cand &= ~G.adj[image[u]] & ~(1 << image[u])
        return cand

    return _search(order, candidates, H.n, injective, mod)


def count_hom(H: Graph, G: Graph, mod: int | None = None, cap: int | None = None) -> int:
    """|Hom(H, G)|."""
    return _plain_counter(H, G, False, False, mod, cap)


def count_emb(H: Graph, G: Graph, mod: int | None = None, cap: int | None = None) -> int:
    """|Emb(H, G)|: injective homomorphisms."""
    return _plain_counter(H, G, True, False, mod, cap)


def count_strong_emb(H: Graph, G: Graph, mod: int | None = None, cap: int | None = None) -> int:
    """|StrEmb(H, G)|: embeddings that also map non-edges to non-edges."""
    return _plain_counter(H, G, True, True, mod, cap)


def _divide_by_aut(count: int, H: Graph, mod: int | None) -> int:
    aut = len(automorphisms(H))
    q, r = divmod(count, aut)
    if r:
        raise InvariantError(f"count {count} not divisible by |Aut(H)| = {aut}")
    return _red(q, mod)


def count_sub(H: Graph, G: Graph, mod: int | None = None, cap: int | None = None) -> int:
    """|Sub(H, G)| = |Emb(H, G)| / |Aut(H)|."""
    return _divide_by_aut(count_emb(H, G, cap=cap), H, mod)


def count_indsub(H: Graph, G: Graph, mod: int | None = None, cap: int | None = None) -> int:
    """|IndSub(H, G)| = |StrEmb(H, G)| / |Aut(H)|."""
    return _divide_by_aut(count_strong_emb(H, G, cap=cap), H, mod)


# -- colour-prescribed --------------------------------------------------------

def _cp_counter(mask: int, CG: ColoredGraph, strong: bool, mod: int | None, cap: int | None) -> int:
    H, G = CG.pattern, CG.host
    _check_pattern(H, cap)
    check_mask(H, mask)
    classes = CG.classes
    # cp-homs are injective because colour classes are disjoint
    if __debug__:
        seen = 0
        for c in classes:
            if seen & c:
                raise InvariantError("colour classes overlap")
            seen |= c
    sadj = [0] * H.n
    for i, (u, v) in enumerate(H.edges):
        if mask >> i & 1:
            sadj[u] |= 1 << v
            sadj[v] |= 1 << u
    if strong:
        active = list(range(H.n))
        factor = 1
    else:
        # vertices isolated in H[S] contribute a free factor |c^{-1}(v)|
        active = [v for v in range(H.n) if sadj[v]]
        factor = 1
        for v in range(H.n):
            if not sadj[v]:
                factor *= classes[v].bit_count()
        if factor == 0:
            return 0
    order = sorted(active, key=lambda v: (-sadj[v].bit_count(), v))
    earlier = [order[:i] for i in range(len(order))]

    def candidates(i, image, used):
        v = order[i]
        cand = classes[v]
        for u in earlier[i]:
            if sadj[v] >> u & 1:
                cand &= G.adj[image[u]]
            elif strong:
                cand &= ~G.adj[image[u]]
        return cand

    return _red(factor * _search(order, candidates, H.n, False, mod), mod)


def count_cp_hom(mask: int, CG: ColoredGraph, mod: int | None = None, cap: int | None = None) -> int:
    """#cp-Hom(H[S], G) for the edge subset ``mask`` of the pattern."""
    return _cp_counter(mask, CG, False, mod, cap)


def count_cp_strong_emb(mask: int, CG: ColoredGraph, mod: int | None = None,
                        cap: int | None = None) -> int:
    """#cp-StrEmb(H[S], G); equals #cp-IndSub(H[S], G)."""
    return _cp_counter(mask, CG, True, mod, cap)


def transversal_masks(CG: ColoredGraph) -> Counter:
    """For every S, the number of colour transversals inducing exactly H[S].

    A transversal picks one vertex per colour class; the host edges among the
    picked vertices map bijectively (via the colouring) onto an edge set S of H.
    """
    H, G = CG.pattern, CG.host
    if not CG.is_surjective():
        return Counter()
    members = [[x for x in range(G.n) if cls >> x & 1] for cls in CG.classes]
    counts: Counter = Counter()
    for pick in product(*members):
        mask = 0
        for i, (a, b) in enumerate(H.edges):
            if G.adj[pick[a]] >> pick[b] & 1:
                mask |= 1 << i
        counts[mask] += 1
    return counts


def count_cp_indsub_prop(phi: Callable[[Graph], int], CG: ColoredGraph,
                         mod: int | None = None) -> int:
    """#cp-IndSub(Phi, G): colour transversals whose induced subgraph satisfies Phi."""
    H = CG.pattern
    total = 0
    for mask, cnt in transversal_masks(CG).items():
        if phi(edge_subgraph(H, mask)):
            total += cnt
    return _red(total, mod)


# -- uncoloured induced subgraphs with a property --------------------------------

@lru_cache(maxsize=64)
def _combinations_array(n: int, k: int) -> np.ndarray:
    arr = np.fromiter((x for c in combinations(range(n), k) for x in c),
                      dtype=np.int16, count=comb(n, k) * k)
    arr = arr.reshape(-1, k)
    arr.flags.writeable = False
    return arr


def _graph_from_labeled(k: int, mask: int) -> Graph:
    pairs = list(combinations(range(k), 2))
    return Graph(k, tuple(e for i, e in enumerate(pairs) if mask >> i & 1))


def count_indsub_prop(phi: Callable[[Graph], int], k: int, G: Graph, mod: int | None = None,
                      budget: int | None = None) -> int:
    """#IndSub(Phi, k, G): k-vertex subsets whose induced subgraph satisfies Phi.

    Each k-subset is reduced to the labelled graph on its k vertices (a
    C(k,2)-bit mask); Phi is evaluated once per distinct mask.
    """
    if k < 0:
        raise GraphError(f"negative subset size {k}")
    if k > G.n:
        return 0
    budget = caps.indsub_subsets if budget is None else budget
    total_subsets = comb(G.n, k)
    if total_subsets > budget:
        raise CapExceededError(f"C({G.n}, {k}) = {total_subsets} subsets exceed budget {budget}")
    if k <= 1:
        return _red(total_subsets * int(bool(phi(Graph(k, ())))), mod)
    if k * (k - 1) // 2 > 62:
        raise CapExceededError(f"k = {k} too large for labelled masks")
    combos = _combinations_array(G.n, k)
    A = np.zeros((G.n, G.n), dtype=np.int64)
    for u, v in G.edges:
        A[u, v] = A[v, u] = 1
    masks = np.zeros(len(combos), dtype=np.int64)
    for bit, (a, b) in enumerate(combinations(range(k), 2)):
        masks |= A[combos[:, a], combos[:, b]] << bit
    values, counts = np.unique(masks, return_counts=True)
    cache = getattr(phi, "labeled_cache", None)
    if cache is None:
        cache = {}
    total = 0
    for mask, cnt in zip(values.tolist(), counts.tolist()):
        hit = cache.get((k, mask))
        if hit is None:
            hit = cache[(k, mask)] = int(bool(phi(_graph_from_labeled(k, mask))))
        total += hit * cnt
    return _red(total, mod)
