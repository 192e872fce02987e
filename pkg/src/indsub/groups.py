"""Permutation groups given by generators, orbits, and the Sylow p-subgroup of S_{p^k}.

A permutation is a tuple ``g`` of images: ``g[i]`` is where ``i`` goes.
Composition ``compose(g, h)`` applies ``h`` first, then ``g``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import caps, check_cap
from .errors import CapExceededError, GraphError
from .graph import Graph, is_prime

Permutation = tuple[int, ...]


def identity(n: int) -> Permutation:
    return tuple(range(n))


def compose(g: Permutation, h: Permutation) -> Permutation:
    return tuple(g[x] for x in h)


def inverse(g: Permutation) -> Permutation:
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)


def cycle_perm(n: int, *cycles: Sequence[int]) -> Permutation:
    """Permutation of degree n from disjoint cycles, e.g. ``cycle_perm(3, (0, 1, 2))``."""
    img = list(range(n))
    for c in cycles:
        for a, b in zip(c, list(c[1:]) + [c[0]]):
            img[a] = b
    return tuple(img)


def _check_perm(g: Sequence[int], n: int) -> Permutation:
    g = tuple(g)
    if len(g) != n:
        raise ValueError(f"degree mismatch: permutation of length {len(g)}, expected {n}")
    if sorted(g) != list(range(n)):
        raise ValueError(f"not a permutation: {g!r}")
    return g


@dataclass(frozen=True)
class GeneratedGroup:
    n: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...] | None = None

    @property
    def order(self) -> int:
        if self.elements is None:
            raise ValueError("group not materialized; use closure()")
        return len(self.elements)


def closure(gens: Iterable[Sequence[int]], cap: int | None = None, n: int | None = None) -> GeneratedGroup:
    """Materialize the group generated by ``gens`` by breadth-first closure."""
    gens = [tuple(g) for g in gens]
    if n is None:
        if not gens:
            raise ValueError("degree unknown: give generators or n")
        n = len(gens[0])
    gens = [_check_perm(g, n) for g in gens]
    cap = caps.group_order if cap is None else cap
    e = identity(n)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceededError(f"group order exceeds cap {cap}")
                queue.append(y)
    elements = tuple(sorted(seen, key=lambda g: (g != e, g)))
    return GeneratedGroup(n, tuple(gens), elements)


def small_generating_set(elements: Sequence[Permutation]) -> list[Permutation]:
    """Greedy generating set for the group whose full element list is given."""
    if not elements:
        return []
    n = len(elements[0])
    e = identity(n)
    gens: list[Permutation] = []
    span = {e}
    for g in elements:
        if g in span:
            continue
        gens.append(g)
        span = set(closure(gens, cap=max(len(elements), 1), n=n).elements)
        if len(span) == len(elements):
            break
    return gens


def group_of(elements: Sequence[Permutation]) -> GeneratedGroup:
    """Wrap a complete element list (e.g. from ``automorphisms``)."""
    elements = tuple(elements)
    return GeneratedGroup(len(elements[0]), tuple(small_generating_set(elements)), elements)


# -- Sylow p-subgroup of S_{p^k} ----------------------------------------------

def sylow_exponent(p: int, k: int) -> int:
    """e(k) = p^(k-1) + ... + p + 1, the exponent of p in (p^k)!."""
    return sum(p ** i for i in range(k))


def sylow_generators(p: int, k: int, cap: int | None = None) -> list[Permutation]:
    """Generators of the iterated wreath product Gamma(p, k) <= S_{p^k}.

    Gamma(p, 1) is generated by the p-cycle i -> i+1 mod p. Gamma(p, k) places a
    copy of Gamma(p, k-1) on each block {i*b, ..., (i+1)*b - 1}, b = p^(k-1),
    and adds the block rotation j -> j + b mod p^k.
    """
    if not is_prime(p):
        raise GraphError(f"{p} is not prime")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    check_cap(p ** k, caps.sylow_degree if cap is None else cap, "degree p^k")
    if k == 1:
        return [tuple((i + 1) % p for i in range(p))]
    inner = sylow_generators(p, k - 1, cap)
    b = p ** (k - 1)
    n = p * b
    gens = []
    for i in range(p):
        for g in inner:
            img = list(range(n))
            for x in range(b):
                img[i * b + x] = i * b + g[x]
            gens.append(tuple(img))
    gens.append(tuple((j + b) % n for j in range(n)))
    return gens


# -- orbits -------------------------------------------------------------------

def edge_permutation(g: Permutation, H: Graph) -> Permutation:
    """Action of a vertex permutation on the canonical edge indices of H."""
    out = []
    for u, v in H.edges:
        a, b = g[u], g[v]
        key = (a, b) if a < b else (b, a)
        if key not in H.edge_index:
            raise ValueError(f"permutation does not preserve E(H): {(u, v)} -> {key}")
        out.append(H.edge_index[key])
    return tuple(out)


def apply_to_mask(g_edges: Permutation, mask: int) -> int:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << g_edges[i]
        mask >>= 1
        i += 1
    return out


def orbit(group: GeneratedGroup, seed, action: str = "vertex", graph: Graph | None = None) -> set:
    """Orbit of ``seed`` under the group.

    ``vertex``: seed is a vertex. ``edge``: seed is a pair, acted on by
    ``{u, v} -> {g(u), g(v)}``. ``edge_subset``: seed is a mask over the edges
    of ``graph``; generators act by permuting edge indices.
    """
    if action == "vertex":
        if not (isinstance(seed, (int, np.integer)) and 0 <= seed < group.n):
            raise ValueError(f"invalid vertex seed {seed!r}")
        act = lambda g, x: g[x]
        start = int(seed)
    elif action == "edge":
        u, v = seed
        if u == v or not (0 <= u < group.n and 0 <= v < group.n):
            raise ValueError(f"invalid edge seed {seed!r}")
        act = lambda g, e: (min(g[e[0]], g[e[1]]), max(g[e[0]], g[e[1]]))
        start = (min(u, v), max(u, v))
    elif action == "edge_subset":
        if graph is None:
            raise ValueError("edge_subset action needs the graph whose edges are permuted")
        if not 0 <= seed <= graph.full_mask:
            raise ValueError(f"invalid mask seed {seed!r}")
        edge_gens = [edge_permutation(g, graph) for g in group.generators]
        return _bfs(int(seed), edge_gens, apply_to_mask)
    else:
        raise ValueError(f"unknown action {action!r}")
    return _bfs(start, group.generators, act)


def _bfs(start, gens, act) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = act(g, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def _mask_images(g_edges: Permutation, m: int) -> np.ndarray:
    """Image of every mask in [0, 2^m) under an edge permutation."""
    masks = np.arange(1 << m, dtype=np.int64)
    out = np.zeros_like(masks)
    for i, j in enumerate(g_edges):
        out |= ((masks >> i) & 1) << j
    return out


def subset_orbit_reps(group: GeneratedGroup, graph: Graph | None = None,
                      cap: int | None = None) -> list[tuple[int, int]]:
    """``(representative mask, orbit size)`` for every orbit on edge subsets.

    With ``graph`` the group acts on its vertices and hence on its edges;
    without, the group's points are the edge indices themselves. The
    representative is the smallest mask of its orbit.
    """
    if graph is not None:
        m = graph.m
        edge_gens = [edge_permutation(g, graph) for g in group.generators]
    else:
        m = group.n
        edge_gens = list(group.generators)
    check_cap(m, caps.subset_edges if cap is None else cap, "edges for subset orbits")
    # min-label propagation: label[x] converges to the least mask in x's orbit
    label = np.arange(1 << m, dtype=np.int64)
    images = [_mask_images(g, m) for g in edge_gens]
    while True:
        new = label.copy()
        for img in images:
            np.minimum(new, new[img], out=new)
            new[img] = np.minimum(new[img], new)  # img is a bijection
        np.minimum(new, new[new], out=new)
        if np.array_equal(new, label):
            break
        label = new
    reps, sizes = np.unique(label, return_counts=True)
    return [(int(r), int(s)) for r, s in zip(reps, sizes)]
