"""Coefficient expansion of colour-prescribed induced-subgraph counts, the
complexity-monotonicity solver, and decolouring by inclusion-exclusion."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable

import numpy as np

from ..config import caps, check_cap
from ..counting import ColoredGraph, count_cp_hom, identity_colored
from ..errors import InvariantError
from ..graph import Graph, induced_subgraph
from ..properties import Property
from .gadgets import tensor
from .linalg import cp_hom_matrix, solve_unitriangular, subset_order
from .transcript import Stage


@dataclass
class LinearCombination:
    """sum over masks W of coefficients[W] * #cp-Hom(H[W], .); zero terms omitted."""
    pattern: Graph
    coefficients: dict[int, int]
    modulus: int | None = None

    def coefficient(self, mask: int) -> int:
        return self.coefficients.get(mask, 0)

    def evaluate(self, CG: ColoredGraph) -> int:
        total = sum(a * count_cp_hom(w, CG, mod=self.modulus) for w, a in self.coefficients.items())
        return total % self.modulus if self.modulus else total


def cp_indsub_coefficients(phi: Property, H: Graph, mod: int | None = None,
                           cap: int | None = None) -> LinearCombination:
    """a(W) = sum over S subset of W of Phi(H[S]) * (-1)^(|W| - |S|).

    Computed as the subset Moebius transform of the truth table of Phi on
    edge subsets of H.
    """
    check_cap(H.m, caps.subset_edges if cap is None else cap, "edges for the coefficient expansion")
    a = phi.on_masks(H, np.arange(1 << H.m, dtype=np.int64)).astype(np.int64)
    for i in range(H.m):
        a = a.reshape(-1, 2, 1 << i)
        a[:, 1, :] -= a[:, 0, :]
        a = a.reshape(-1)
    if mod:
        a %= mod
    coeffs = {int(w): int(v) for w, v in enumerate(a.tolist()) if v}
    return LinearCombination(H, coeffs, mod)


@lru_cache(maxsize=16)
def _evaluation_matrix(H: Graph) -> list[list[int]]:
    # brute-forced when small enough; beyond that the known closed form [S subset of T]
    if H.m <= caps.matrix_edges:
        return cp_hom_matrix(H).entries
    order = subset_order(H.m)
    return [[int(s & ~t == 0) for t in order] for s in order]


def monotonicity_solve(L: LinearCombination, CG: ColoredGraph, oracle: Callable[[ColoredGraph], int],
                       stage: Stage | None = None) -> dict[int, int | None]:
    """Recover #cp-Hom(H[S], CG) for every S from an oracle for the combination L.

    The oracle is queried on CG x H[T] (identity-coloured) for every T; the
    answers q(T) = sum_S a(S) #cp-Hom(H[S], CG) [S subset of T] are solved for
    y(S) = a(S) #cp-Hom(H[S], CG). Terms with a(S) = 0 (or not a unit mod p)
    come back as None.
    """
    H, mod = L.pattern, L.modulus
    if CG.pattern != H:
        raise InvariantError("combination and host use different patterns")
    order = subset_order(H.m)
    q = []
    for t in order:
        host = tensor(CG, identity_colored(H, t))
        r = oracle(host)
        r = r % mod if mod else r
        if stage is not None:
            stage.record(host.host.n, H.n, r)
        q.append(r)
    M = _evaluation_matrix(H)
    y = solve_unitriangular(M, q, mod)
    out: dict[int, int | None] = {}
    for s, ys in zip(order, y):
        a = L.coefficient(s)
        if mod:
            out[s] = ys * pow(a, -1, mod) % mod if a % mod else None
        elif a == 0:
            if ys:
                raise InvariantError(f"oracle answer inconsistent: zero coefficient at {s:#x} but y = {ys}")
            out[s] = None
        else:
            x, r = divmod(ys, a)
            if r:
                raise InvariantError(f"inexact division {ys} / {a} at mask {s:#x}")
            out[s] = x
    return out


def decolor_count(phi: Property, CG: ColoredGraph, oracle: Callable[[Graph, int], int],
                  mod: int | None = None, stage: Stage | None = None) -> int:
    """#cp-IndSub(Phi, CG) from 2^k uncoloured #IndSub(Phi, k, .) queries, k = |V(H)|.

    Query J deletes every vertex whose colour lies in J; the signed sum keeps
    exactly the k-sets meeting all colour classes, i.e. the transversals.
    """
    if not CG.is_surjective():
        return 0
    k = CG.pattern.n
    G = CG.host
    total = 0
    for size in range(k + 1):
        for J in combinations(range(k), size):
            gone = set(J)
            GJ = induced_subgraph(G, [v for v in range(G.n) if CG.coloring[v] not in gone])
            r = oracle(GJ, k)
            if stage is not None:
                stage.record(GJ.n, k, r)
            total += -r if size % 2 else r
    return total % mod if mod else total
