"""Graph properties: a registry of isomorphism-invariant predicates and checks on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Sequence

import numpy as np

from .config import caps, check_cap
from .errors import GraphError
from .graph import (Graph, complete_bipartite, edge_subgraph, independent_set,
                    is_bipartite, is_connected, prime_power)
from .iso import canonical_form, find_embedding

MaskKernel = Callable[[Graph, np.ndarray], np.ndarray]


@dataclass(eq=False)
class Property:
    """Named predicate Graph -> {0, 1}.

    ``mask_kernel(H, masks)`` optionally evaluates the predicate on H[S] for a
    whole array of edge masks at once. With ``memoize`` results are cached by
    canonical form, which is sound only for isomorphism-invariant predicates.
    """
    name: str
    predicate: Callable[[Graph], bool]
    mask_kernel: MaskKernel | None = None
    memoize: bool = False
    _memo: dict = field(default_factory=dict, repr=False)
    # (k, labelled C(k,2)-bit mask) -> value, filled by count_indsub_prop
    labeled_cache: dict = field(default_factory=dict, repr=False)

    def __call__(self, G: Graph) -> int:
        if not self.memoize:
            return int(bool(self.predicate(G)))
        key = canonical_form(G)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = int(bool(self.predicate(G)))
        return hit

    def on_masks(self, H: Graph, masks: np.ndarray) -> np.ndarray:
        """Phi(H[S]) for every mask S in ``masks`` as an int8 array."""
        masks = np.asarray(masks, dtype=np.int64)
        if self.mask_kernel is not None:
            return self.mask_kernel(H, masks).astype(np.int8)
        return np.fromiter((self(edge_subgraph(H, int(s))) for s in masks),
                           dtype=np.int8, count=len(masks))

    def __repr__(self) -> str:
        return f"Property({self.name!r})"


# -- vectorized kernels over edge masks --------------------------------------------

def _reach_from_zero(H: Graph, masks: np.ndarray) -> np.ndarray:
    """Vertex bitset of the component of vertex 0 in H[S], per mask."""
    n = H.n
    comp = [np.full(len(masks), 1 << v, dtype=np.int64) for v in range(n)]
    present = [((masks >> i) & 1).astype(bool) for i in range(H.m)]
    while True:
        changed = False
        for i, (u, v) in enumerate(H.edges):
            merged = comp[u] | comp[v]
            nu = np.where(present[i], merged, comp[u])
            nv = np.where(present[i], merged, comp[v])
            if not changed and (not np.array_equal(nu, comp[u]) or not np.array_equal(nv, comp[v])):
                changed = True
            comp[u], comp[v] = nu, nv
        if not changed:
            return comp[0]


def _connected_kernel(H: Graph, masks: np.ndarray) -> np.ndarray:
    if H.n == 0:
        return np.zeros(len(masks), dtype=bool)
    return _reach_from_zero(H, masks) == (1 << H.n) - 1


def _even_degrees_kernel(H: Graph, masks: np.ndarray) -> np.ndarray:
    ok = np.ones(len(masks), dtype=bool)
    for v in range(H.n):
        incident = sum(1 << i for i, e in enumerate(H.edges) if v in e)
        if incident:
            ok &= (np.bitwise_count(masks & incident) & 1) == 0
    return ok


def _edge_parity(masks: np.ndarray) -> np.ndarray:
    return np.bitwise_count(masks) & 1


# -- predicates ------------------------------------------------------------------

def _eulerian(G: Graph) -> bool:
    return is_connected(G) and all(d % 2 == 0 for d in G.degrees())


def _hamiltonian(G: Graph) -> bool:
    """Has a Hamiltonian cycle (so n >= 3)."""
    n = G.n
    check_cap(n, caps.hamiltonian_vertices, "vertices for Hamiltonian cycle search")
    if n < 3 or not is_connected(G) or min(G.degrees()) < 2:
        return False
    full = (1 << n) - 1

    def extend(v: int, visited: int) -> bool:
        if visited == full:
            return bool(G.adj[v] & 1)
        cand = G.adj[v] & ~visited
        while cand:
            low = cand & -cand
            cand ^= low
            if extend(low.bit_length() - 1, visited | low):
                return True
        return False

    return extend(0, 1)


def subgraph_free(F: Graph) -> Property:
    """Phi(G) = 1 iff G has no subgraph isomorphic to F."""
    return Property(f"F_subgraph_free({list(F.edges)}@{F.n})",
                    lambda G: find_embedding(F, G) is None)


def table_property(H: Graph, bits: Sequence[int], name: str = "table") -> Property:
    """Property given by a truth table over the edge subsets of H.

    ``bits[S]`` is Phi(H[S]). The table must agree on isomorphic edge-subgraphs;
    graphs not isomorphic to any H[S] get 0.
    """
    check_cap(H.m, caps.subset_edges, "edges for a truth table")
    if len(bits) != 1 << H.m:
        raise GraphError(f"truth table needs {1 << H.m} entries, got {len(bits)}")
    lookup: dict[bytes, int] = {}
    for mask, b in enumerate(bits):
        key = canonical_form(edge_subgraph(H, mask))
        b = int(bool(b))
        if lookup.setdefault(key, b) != b:
            raise GraphError(f"truth table is not isomorphism-invariant (mask {mask:#x})")
    table = np.array([int(bool(b)) for b in bits], dtype=np.int8)

    def kernel(K: Graph, masks: np.ndarray) -> np.ndarray:
        if K == H:
            return table[masks]
        return np.array([lookup.get(canonical_form(edge_subgraph(K, int(s))), 0) for s in masks],
                        dtype=np.int8)

    return Property(name, lambda G: lookup.get(canonical_form(G), 0), mask_kernel=kernel)


def random_table_property(H: Graph, rng, name: str = "random_table") -> Property:
    """Uniformly random isomorphism-invariant truth table over edge subsets of H."""
    choice: dict[bytes, int] = {}
    bits = []
    for mask in range(1 << H.m):
        key = canonical_form(edge_subgraph(H, mask))
        if key not in choice:
            choice[key] = int(rng.integers(0, 2))
        bits.append(choice[key])
    return table_property(H, bits, name)


BUILTINS: dict[str, Property] = {
    "connected": Property("connected", is_connected, _connected_kernel),
    "disconnected": Property("disconnected", lambda G: not is_connected(G),
                             lambda H, s: ~_connected_kernel(H, s)),
    "eulerian": Property("eulerian", _eulerian,
                         lambda H, s: _connected_kernel(H, s) & _even_degrees_kernel(H, s)),
    "even_edges": Property("even_edges", lambda G: G.m % 2 == 0, lambda H, s: _edge_parity(s) == 0),
    "odd_edges": Property("odd_edges", lambda G: G.m % 2 == 1, lambda H, s: _edge_parity(s) == 1),
    "bipartite": Property("bipartite", is_bipartite),
    "hamiltonian": Property("hamiltonian", _hamiltonian, memoize=True),
    "const_true": Property("const_true", lambda G: True,
                           lambda H, s: np.ones(len(s), dtype=bool)),
    "const_false": Property("const_false", lambda G: False,
                            lambda H, s: np.zeros(len(s), dtype=bool)),
}


def builtin(name: str, F: Graph | None = None) -> Property:
    """Look up a built-in property; ``F_subgraph_free`` needs the forbidden graph F."""
    if name == "F_subgraph_free":
        if F is None:
            raise GraphError("F_subgraph_free needs the forbidden graph F")
        return subgraph_free(F)
    if name not in BUILTINS:
        raise KeyError(f"unknown property {name!r}; known: {sorted(BUILTINS) + ['F_subgraph_free', 'table']}")
    return BUILTINS[name]


# -- meta-checks ----------------------------------------------------------------

@dataclass
class InvarianceReport:
    property: str
    max_n: int
    graphs_checked: int
    violations: list[tuple[Graph, tuple[int, ...]]]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_iso_invariance(phi: Property, max_n: int, rng, perms: int = 50) -> InvarianceReport:
    """Compare Phi on every labelled graph with <= max_n vertices against
    ``perms`` random relabellings of it."""
    check_cap(max_n, 6, "max_n for the invariance check")
    violations = []
    checked = 0
    for n in range(max_n + 1):
        pairs = list(combinations(range(n), 2))
        for bits in product((0, 1), repeat=len(pairs)):
            G = Graph(n, tuple(e for e, b in zip(pairs, bits) if b))
            base = phi(G)
            checked += 1
            for _ in range(perms if n > 1 else 0):
                perm = tuple(int(x) for x in rng.permutation(n))
                if phi(G.relabel(perm)) != base:
                    violations.append((G, perm))
                    break
    return InvarianceReport(phi.name, max_n, checked, violations)


def check_edge_monotone(phi: Property, H: Graph) -> bool:
    """True iff Phi(H[T]) = 1 implies Phi(H[S]) = 1 for all S subset of T."""
    check_cap(H.m, caps.subset_edges, "edges for the monotonicity check")
    masks = np.arange(1 << H.m, dtype=np.int64)
    values = phi.on_masks(H, masks).astype(bool)
    # closure under single-edge removal implies closure under all removals
    for i in range(H.m):
        has = (masks >> i & 1).astype(bool)
        if np.any(values & has & ~values[masks ^ (1 << i)]):
            return False
    return True


@dataclass
class WitnessSet:
    bound: int
    members: list[int]


def witness_set(phi: Property, bound: int) -> WitnessSet:
    """Prime powers t <= bound with Phi(IS_{2t}) != Phi(K_{t,t})."""
    check_cap(2 * bound, caps.witness_vertices, "vertices of K_{t,t}")
    members = [t for t in range(2, bound + 1)
               if prime_power(t) and phi(independent_set(2 * t)) != phi(complete_bipartite(t, t))]
    return WitnessSet(bound, members)
