"""End-to-end reductions that reach their answer only through simulated
#IndSub(Phi, k, .) oracle calls.

Hom(K_{t,t}) -> cp-Hom(K_{t,t}) -> cp-IndSub(Phi) -> IndSub(Phi), and the
clique-decision variant that starts from padding and the biclique gadget.
"""

from __future__ import annotations

import numpy as np

from ..config import caps, check_cap
from ..counting import ColoredGraph, count_cp_hom, count_indsub_prop
from ..errors import GraphError
from ..graph import Graph, complete_bipartite, independent_set, is_prime, prime_power
from ..properties import Property, witness_set
from .expansion import cp_indsub_coefficients, decolor_count, monotonicity_solve
from .gadgets import clique_gadget, hom_gadget, pad_clique, random_isolation
from .transcript import PipelineTranscript


def _check_witness(phi: Property, t: int, mod: int | None) -> None:
    pp = prime_power(t)
    if pp is None:
        raise GraphError(f"t = {t} is not a prime power")
    if phi(independent_set(2 * t)) == phi(complete_bipartite(t, t)):
        raise GraphError(f"t = {t} is not a witness for {phi.name}: Phi(IS_2t) = Phi(K_t,t)")
    if mod is not None:
        if not is_prime(mod):
            raise GraphError(f"modulus {mod} is not prime")
        if pp[0] != mod:
            raise GraphError(f"mod-{mod} reduction needs t a power of {mod}, got {t}")


def cp_hom_through_indsub(phi: Property, CG: ColoredGraph, transcript: PipelineTranscript,
                          mod: int | None = None) -> int:
    """#cp-Hom(H, CG) for the full pattern H, using only #IndSub(Phi, |V(H)|, .)."""
    H = CG.pattern
    L = cp_indsub_coefficients(phi, H, mod)
    full = H.full_mask
    if (L.coefficient(full) % mod if mod else L.coefficient(full)) == 0:
        raise GraphError(f"coefficient of the full pattern vanishes for {phi.name}")
    mono = transcript.stage("monotonicity", query_bound=CG.host.n)
    deco = transcript.stage("decolor", query_bound=CG.host.n)

    def indsub_oracle(G: Graph, k: int) -> int:
        return count_indsub_prop(phi, k, G, mod)

    def cp_indsub_oracle(host: ColoredGraph) -> int:
        return decolor_count(phi, host, indsub_oracle, mod, deco)

    recovered = monotonicity_solve(L, CG, cp_indsub_oracle, mono)
    value = recovered[full]
    mono.output = value
    deco.output = len(deco.queries)
    return value


def pipeline_exact(phi: Property, t: int, G: Graph, mod: int | None = None) -> tuple[int, PipelineTranscript]:
    """#Hom(K_{t,t}, G) (mod p if given) via the full oracle chain."""
    _check_witness(phi, t, mod)
    check_cap(t, caps.pipeline_t, "biclique side t for the oracle chain")
    transcript = PipelineTranscript(modulus=mod)
    H = complete_bipartite(t, t)
    CG = hom_gadget(H, G)
    transcript.stage("hom-gadget").output = {"host_vertices": CG.host.n, "pattern_vertices": H.n}
    value = cp_hom_through_indsub(phi, CG, transcript, mod)
    transcript.final = value
    return value, transcript


def pick_clique_witness(phi: Property, k: int, mod: int | None, bound: int | None = None) -> int:
    """Smallest witness size >= k (a power of mod in mod-p mode)."""
    bound = bound if bound is not None else caps.witness_vertices // 2
    for size in witness_set(phi, bound).members:
        if size < k:
            continue
        if mod is not None and prime_power(size)[0] != mod:
            continue
        return size
    raise GraphError(f"no witness size >= {k} for {phi.name} within bound {bound}"
                     + (f" that is a power of {mod}" if mod else ""))


def _count_cliques_via_chain(phi: Property, Gp: Graph, size: int, transcript: PipelineTranscript,
                             mod: int | None) -> int:
    CG = clique_gadget(Gp, size)
    transcript.stage("clique-gadget").output = {"host_vertices": CG.host.n, "size": size}
    if size <= caps.pipeline_t:
        return cp_hom_through_indsub(phi, CG, transcript, mod)
    # the oracle chain for K_{size,size} is beyond desk scale: count cp-homs directly
    value = count_cp_hom(complete_bipartite(size, size).full_mask, CG, mod=mod)
    transcript.stage("cp-hom (direct)").output = value
    return value


def pipeline_clique_decision(phi: Property, G: Graph, k: int, mod: int | None = None, seed: int = 0,
                             repetitions: int | None = None, bound: int | None = None
                             ) -> tuple[bool, PipelineTranscript]:
    """Does G contain a k-clique? Decided through the reduction chain.

    Exact mode pads G to a witness size and answers yes iff the recovered
    clique count is positive. Mod-p mode isolates a random induced subgraph of
    the padded graph before each of ``2^k`` repetitions and answers yes iff
    some repetition leaves a nonzero residue.
    """
    if k < 1:
        raise GraphError(f"clique size must be >= 1, got {k}")
    size = pick_clique_witness(phi, k, mod, bound)
    padded = pad_clique(G, k, size)
    top = PipelineTranscript(modulus=mod, seed=seed if mod else None)
    top.stage("pad").output = {"k": k, "size": size, "vertices": padded.n}
    if mod is None:
        count = _count_cliques_via_chain(phi, padded, size, top, None)
        top.final = count > 0
        return top.final, top
    reps = 2 ** k if repetitions is None else repetitions
    children = np.random.SeedSequence(seed).spawn(reps)
    answer = False
    for child in children:
        rng = np.random.default_rng(child)
        rep = PipelineTranscript(modulus=mod)
        isolated = random_isolation(padded, rng)
        rep.stage("isolate").output = {"vertices": isolated.n}
        residue = _count_cliques_via_chain(phi, isolated, size, rep, mod)
        rep.final = residue
        top.repetitions.append(rep)
        answer = answer or residue % mod != 0
    top.final = answer
    return answer, top
