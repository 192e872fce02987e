"""Alternating enumerator: sum of Phi(H[S]) * (-1)^|S| over all edge subsets S of H."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .config import caps, check_cap
from .graph import Graph, edge_subgraph, is_prime, prime_power
from .groups import group_of, subset_orbit_reps
from .iso import automorphisms, is_edge_transitive
from .properties import Property

CHUNK = 1 << 20


@dataclass
class ChiResult:
    value: int
    residues: dict[int, int] = field(default_factory=dict)
    method: str = "naive"
    phi_evaluations: int = 0


def _signed_sum(phi: Property, H: Graph, masks: np.ndarray, weights: np.ndarray | None = None) -> int:
    values = phi.on_masks(H, masks).astype(np.int64)
    sign = 1 - 2 * (np.bitwise_count(masks) & 1).astype(np.int64)
    terms = values * sign
    if weights is not None:
        terms = terms * weights
    return int(terms.sum())


def _residues(value: int, mods: Iterable[int]) -> dict[int, int]:
    return {int(p): value % int(p) for p in mods}


def chi_naive(phi: Property, H: Graph, mods: Iterable[int] = (), cap: int | None = None,
              jobs: int = 1, progress: Callable[[int, int], None] | None = None) -> ChiResult:
    """Direct sum over all 2^|E(H)| masks in ascending order, in chunks.

    ``progress(done, total)`` is called after each chunk. With ``jobs > 1``
    chunks are summed on a thread pool; the total does not depend on order.
    """
    m = H.m
    check_cap(m, caps.subset_edges if cap is None else cap, "edges for naive subset enumeration")
    total = 1 << m
    starts = list(range(0, total, CHUNK))

    def chunk(start: int) -> int:
        stop = min(start + CHUNK, total)
        return _signed_sum(phi, H, np.arange(start, stop, dtype=np.int64))

    value = 0
    done = 0
    if jobs > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for part, start in zip(pool.map(chunk, starts), starts):
                value += part
                done += min(CHUNK, total - start)
                if progress:
                    progress(done, total)
    else:
        for start in starts:
            value += chunk(start)
            done += min(CHUNK, total - start)
            if progress:
                progress(done, total)
    return ChiResult(value, _residues(value, mods), "naive", total)


def chi_orbit(phi: Property, H: Graph, mods: Iterable[int] = (), cap: int | None = None) -> ChiResult:
    """Sum over Aut(H)-orbits of edge subsets: one Phi evaluation per orbit,
    weighted by orbit size. Aut(H) preserves both Phi(H[S]) and |S|."""
    check_cap(H.m, caps.subset_edges if cap is None else cap, "edges for subset orbits")
    group = group_of(automorphisms(H))
    orbits = subset_orbit_reps(group, graph=H, cap=cap)
    reps = np.array([r for r, _ in orbits], dtype=np.int64)
    sizes = np.array([s for _, s in orbits], dtype=np.int64)
    value = _signed_sum(phi, H, reps, sizes)
    return ChiResult(value, _residues(value, mods), "orbit", len(orbits))


@dataclass
class CongruenceReport:
    property: str
    graph: Graph
    p: int | None
    preconditions_met: bool
    unmet: list[str]
    value: int | None = None
    expected_residue: int | None = None
    residue: int | None = None

    @property
    def holds(self) -> bool | None:
        """True/False when checked, None when preconditions fail."""
        if not self.preconditions_met:
            return None
        return self.residue == self.expected_residue


def check_congruence(phi: Property, H: Graph, p: int | None = None, method: str = "naive") -> CongruenceReport:
    """Check chi(Phi, H) = Phi(H[empty]) - Phi(H) (mod p) for edge-transitive H
    with a prime-power number of edges.

    With a single edge every prime works, so ``p`` must then be given.
    """
    unmet = []
    pp = prime_power(H.m)
    if H.m == 1:
        if p is None:
            unmet.append("|E(H)| = 1: give the prime p explicitly")
    elif pp is None:
        unmet.append(f"|E(H)| = {H.m} is not a prime power")
    elif p is None:
        p = pp[0]
    elif p != pp[0]:
        unmet.append(f"p = {p} does not match |E(H)| = {H.m}")
    if p is not None and not is_prime(p):
        unmet.append(f"{p} is not prime")
    if not is_edge_transitive(H):
        unmet.append("H is not edge-transitive")
    empty, full = phi(edge_subgraph(H, 0)), phi(H)
    if empty == full:
        unmet.append("Phi(H[empty]) = Phi(H)")
    report = CongruenceReport(phi.name, H, p, not unmet, unmet)
    if unmet:
        return report
    chi = chi_naive(phi, H) if method == "naive" else chi_orbit(phi, H)
    report.value = chi.value
    report.expected_residue = (empty - full) % p
    report.residue = chi.value % p
    return report
