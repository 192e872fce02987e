"""Seeded self-check suites, one per identity exercised by the reductions.

Each suite returns a SuiteReport; failures are data, not exceptions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

import numpy as np

from .altenum import chi_naive, chi_orbit, check_congruence
from .counting import (ColoredGraph, count_cp_hom, count_cp_indsub_prop, count_hom,
                       count_indsub, count_indsub_prop, random_colored_graph)
from .graph import (Graph, clique, complete_bipartite, count_cliques, cycle, path, random_graph)
from .properties import builtin, random_table_property
from .reductions import (clique_gadget, cp_hom_matrix, cp_indsub_coefficients, decolor_count,
                         determinant, gauss_solve, hom_gadget, isolation_keep, pipeline_clique_decision,
                         pipeline_exact, random_isolation, solve_unitriangular, tensor)
from .reductions.classify import classify_p_edge_transitive
from .reductions.transcript import Stage

CONGRUENCE_GRAPHS = {
    "C_3": cycle(3), "C_5": cycle(5), "C_7": cycle(7), "K_2,2": complete_bipartite(2, 2),
    "K_2,4": complete_bipartite(2, 4), "K_3,3": complete_bipartite(3, 3), "K_4,4": complete_bipartite(4, 4),
}


@dataclass
class SuiteReport:
    suite: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def check(self, ok: bool, what: str) -> bool:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(what)
        return ok

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "failed": self.failed,
                "skipped": self.skipped, "failures": self.failures, "details": self.details}


def random_pattern(rng, max_vertices: int, max_edges: int | None = None, min_edges: int = 0) -> Graph:
    """Random graph on 1..max_vertices vertices with at most max_edges edges."""
    while True:
        n = int(rng.integers(1, max_vertices + 1))
        pairs = list(combinations(range(n), 2))
        keep = [e for e, b in zip(pairs, rng.random(len(pairs)) < 0.5) if b]
        if max_edges is not None and len(keep) > max_edges:
            order = rng.permutation(len(keep))[:max_edges]
            keep = [keep[i] for i in sorted(order)]
        if len(keep) >= min_edges:
            return Graph(n, tuple(keep))


def random_host(rng, H: Graph, max_vertices: int) -> ColoredGraph:
    n = int(rng.integers(H.n, max_vertices + 1))
    return random_colored_graph(H, n, float(rng.uniform(0.3, 0.9)), rng)


def suite_congruence(seed: int) -> SuiteReport:
    r = SuiteReport("congruence")
    values = {}
    for pname in ("connected", "eulerian", "disconnected", "even_edges", "odd_edges", "bipartite"):
        phi = builtin(pname)
        for gname, H in CONGRUENCE_GRAPHS.items():
            rep = check_congruence(phi, H)
            if not rep.preconditions_met:
                r.skipped += 1
                continue
            values[f"{pname}/{gname}"] = rep.value
            r.check(chi_orbit(phi, H).value == rep.value, f"{pname} on {gname}: orbit sum differs")
            r.check(bool(rep.holds), f"{pname} on {gname}: chi={rep.value}, expected residue "
                                     f"{rep.expected_residue} mod {rep.p}")
    r.details["chi"] = {k: str(v) for k, v in values.items()}
    return r


def suite_tensor(seed: int, trials: int = 100) -> SuiteReport:
    r = SuiteReport("tensor")
    rng = np.random.default_rng(seed)
    for i in range(trials):
        H = random_pattern(rng, 4)
        CG, CF = random_host(rng, H, 6), random_host(rng, H, 6)
        mask = int(rng.integers(0, 1 << H.m))
        T = tensor(CG, CF)
        lhs = count_cp_hom(mask, T)
        rhs = count_cp_hom(mask, CG) * count_cp_hom(mask, CF)
        r.check(lhs == rhs, f"trial {i}: {lhs} != {rhs}")
    return r


def suite_matrix(seed: int) -> SuiteReport:
    r = SuiteReport("matrix")
    rng = np.random.default_rng(seed)
    for name, H in {"K_2": clique(2), "P_3": path(3), "K_3": clique(3),
                    "K_2,2": complete_bipartite(2, 2)}.items():
        for mod in (None, 2, 3, 5):
            M = cp_hom_matrix(H, mod)
            r.check(M.is_unitriangular(), f"{name} mod {mod}: not unitriangular")
            r.check(determinant(M.entries, mod) == 1, f"{name} mod {mod}: determinant != 1")
            q = [int(x) for x in rng.integers(0, 50, size=len(M.order))]
            r.check(solve_unitriangular(M.entries, q, mod) == _transpose_solve(M.entries, q, mod),
                    f"{name} mod {mod}: substitution and elimination disagree")
    r.check(cp_hom_matrix(clique(2)).entries == [[1, 1], [0, 1]], "K_2 matrix is not [[1,1],[0,1]]")
    return r


def _transpose_solve(M, q, mod):
    # y M = q  <=>  M^T y = q
    MT = [list(col) for col in zip(*M)]
    return [int(x) for x in gauss_solve(MT, q, mod)]


def suite_expansion(seed: int, trials: int = 100) -> SuiteReport:
    r = SuiteReport("expansion")
    rng = np.random.default_rng(seed)
    for i in range(trials):
        H = random_pattern(rng, 4, max_edges=4)
        phi = random_table_property(H, rng)
        CG = random_host(rng, H, 8)
        L = cp_indsub_coefficients(phi, H)
        lhs, rhs = L.evaluate(CG), count_cp_indsub_prop(phi, CG)
        r.check(lhs == rhs, f"trial {i}: expansion {lhs} != direct {rhs}")
        chi = chi_naive(phi, H).value
        r.check(abs(L.coefficient(H.full_mask)) == abs(chi), f"trial {i}: |a(E)| != |chi| = {abs(chi)}")
    return r


def suite_decolor(seed: int, trials: int = 50) -> SuiteReport:
    r = SuiteReport("decolor")
    rng = np.random.default_rng(seed)
    names = ("connected", "eulerian", "bipartite", "even_edges")
    for i in range(trials):
        H = random_pattern(rng, 4)
        phi = builtin(names[i % len(names)])
        CG = random_host(rng, H, 8)
        stage = Stage("decolor")
        got = decolor_count(phi, CG, lambda G, k: count_indsub_prop(phi, k, G), stage=stage)
        r.check(got == count_cp_indsub_prop(phi, CG), f"trial {i}: decolor {got} mismatch")
        r.check(len(stage.queries) == 2 ** H.n, f"trial {i}: {len(stage.queries)} oracle calls")
        r.check(all(q.n_vertices <= CG.host.n for q in stage.queries), f"trial {i}: oversized query")
    return r


def suite_clique_gadget(seed: int, trials: int = 50) -> SuiteReport:
    r = SuiteReport("clique-gadget")
    rng = np.random.default_rng(seed)
    r.check(count_cp_hom(complete_bipartite(2, 2).full_mask, clique_gadget(clique(3), 2)) == 3, "K_3, 2")
    r.check(count_cp_hom(complete_bipartite(3, 3).full_mask, clique_gadget(clique(4), 3)) == 4, "K_4, 3")
    for i in range(trials):
        G = random_graph(int(rng.integers(1, 8)), float(rng.uniform(0.2, 0.9)), rng)
        size = int(rng.integers(2, 4))
        got = count_cp_hom(complete_bipartite(size, size).full_mask, clique_gadget(G, size))
        r.check(got == count_cliques(G, size), f"trial {i}: {got} cp-homs vs {count_cliques(G, size)} cliques")
    return r


def suite_classification(seed: int, max_n: int = 6) -> SuiteReport:
    r = SuiteReport("classification")
    rep = classify_p_edge_transitive(max_n)
    r.details = rep.to_dict()
    r.check(not rep.counterexamples, f"{len(rep.counterexamples)} counterexamples")
    return r


def suite_pipeline(seed: int, trials: int = 25) -> SuiteReport:
    r = SuiteReport("pipeline")
    rng = np.random.default_rng(seed)
    K22 = complete_bipartite(2, 2)
    for i in range(trials):
        H = random_pattern(rng, 4)
        G = random_graph(int(rng.integers(1, 7)), float(rng.uniform(0.2, 0.9)), rng)
        got, ref = count_cp_hom(H.full_mask, hom_gadget(H, G)), count_hom(H, G)
        r.check(got == ref, f"gadget trial {i}: cp-hom {got} vs hom {ref}")
    for pname in ("connected", "eulerian"):
        phi = builtin(pname)
        for i in range(trials):
            G = random_graph(int(rng.integers(1, 9)), float(rng.uniform(0.2, 0.9)), rng)
            got, _ = pipeline_exact(phi, 2, G)
            ref = count_hom(K22, G)
            r.check(got == ref, f"{pname} trial {i}: pipeline {got} vs hom {ref}")
            got2, _ = pipeline_exact(phi, 2, G, mod=2)
            r.check(got2 == ref % 2, f"{pname} trial {i}: mod-2 pipeline {got2} vs {ref % 2}")
    phi = builtin("connected")
    for i in range(trials):
        G = random_graph(int(rng.integers(1, 9)), float(rng.uniform(0.2, 0.9)), rng)
        k = int(rng.integers(1, 4))
        got, _ = pipeline_clique_decision(phi, G, k)
        r.check(got == (count_cliques(G, k) > 0), f"clique trial {i}: k={k} answered {got}")
    return r


def planted_clique_instance(rng, n: int = 7, k: int = 3, density: float = 0.5) -> Graph:
    """G(n, density) with a k-clique planted on a random vertex set."""
    G = random_graph(n, density, rng)
    planted = sorted(int(v) for v in rng.choice(n, size=k, replace=False))
    edges = set(G.edges) | set(combinations(planted, 2))
    return Graph(n, tuple(sorted(edges)))


def mod_p_decision_accuracy(seeds: int = 100, p: int = 2, k: int = 3, n: int = 7) -> tuple[float, int]:
    correct = 0
    phi = builtin("connected")
    for s in range(seeds):
        G = planted_clique_instance(np.random.default_rng([s, 0]), n, k)
        got, _ = pipeline_clique_decision(phi, G, k, mod=p, seed=s)
        correct += got == (count_cliques(G, k) > 0)
    return correct / seeds, correct


def isolation_odd_rate(draws: int = 10_000, seed: int = 0) -> float:
    """Fraction of isolation draws on K_5 leaving an odd number of induced K_3."""
    rng = np.random.default_rng(seed)
    K3, K5 = clique(3), clique(5)
    odd = 0
    for _ in range(draws):
        odd += count_indsub(K3, random_isolation(K5, rng)) % 2
    return odd / draws


def suite_isolation(seed: int) -> SuiteReport:
    r = SuiteReport("isolation")
    rng = np.random.default_rng(seed)
    draws = 10_000
    freq = np.zeros(6)
    for _ in range(draws):
        for v in isolation_keep(6, rng):
            freq[v] += 1
    freq /= draws
    r.check(bool(np.all(np.abs(freq - 0.5) <= 0.02)), f"keep frequencies {freq.round(3).tolist()}")
    rate = isolation_odd_rate(draws, seed)
    margin = 3 * np.sqrt(rate * (1 - rate) / draws)
    r.check(rate >= 2 ** -3 - margin, f"odd rate {rate} below 1/8 - {margin:.4f}")
    acc, correct = mod_p_decision_accuracy()
    r.details = {"odd_rate": rate, "margin": float(margin), "mod2_accuracy": acc}
    r.check(acc >= 0.99, f"mod-2 decision accuracy {acc:.2f} < 0.99 ({correct}/100)")
    return r


SUITES: dict[str, Callable[[int], SuiteReport]] = {
    "congruence": suite_congruence,
    "tensor": suite_tensor,
    "matrix": suite_matrix,
    "expansion": suite_expansion,
    "decolor": suite_decolor,
    "clique-gadget": suite_clique_gadget,
    "classification": suite_classification,
    "pipeline": suite_pipeline,
    "isolation": suite_isolation,
}


# names accepted for compatibility with the documented CLI
ALIASES = {"lemma3": "congruence", "lemma7": "tensor", "lemma8": "matrix", "lemma10": "expansion",
           "lemma12": "decolor", "lemma14": "clique-gadget"}


def run_suite(name: str, seed: int = 0) -> list[SuiteReport]:
    name = ALIASES.get(name, name)
    if name == "all":
        return [fn(seed) for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}")
    return [SUITES[name](seed)]

