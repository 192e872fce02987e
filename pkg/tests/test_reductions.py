from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from indsub.altenum import chi_naive
from indsub.counting import (ColoredGraph, count_cp_hom, count_cp_indsub_prop, count_hom,
                             count_indsub_prop, identity_colored, random_colored_graph)
from indsub.errors import CapExceededError, GraphError, InvariantError
from indsub.graph import (Graph, clique, complete_bipartite, cycle, independent_set, induced_subgraph,
                          is_connected, path, random_graph, wreath)
from indsub.iso import is_isomorphic
from indsub.properties import BUILTINS, builtin, random_table_property
from indsub.reductions import (LinearCombination, PipelineTranscript, classify_graph,
                               classify_p_edge_transitive, clique_gadget, cp_hom_matrix,
                               cp_indsub_coefficients, decolor_count, determinant, gauss_solve,
                               hom_gadget, isolation_keep, monotonicity_solve, pad_clique,
                               pick_clique_witness, pipeline_clique_decision, pipeline_exact,
                               random_isolation, solve_unitriangular, subset_order, tensor)
from indsub.verify import random_host, random_pattern

import oracles
from test_graph import graphs

SMALL_PATTERNS = [clique(2), path(3), clique(3), complete_bipartite(2, 2)]


# -- gadgets --------------------------------------------------------------------------

def test_hom_gadget_examples():
    CG = hom_gadget(clique(2), clique(3))
    assert CG.host.n == 6 and count_cp_hom(1, CG) == 6
    G = random_graph(5, 0.5, np.random.default_rng(1))
    assert count_cp_hom(0, hom_gadget(independent_set(2), G)) == 25
    K22 = complete_bipartite(2, 2)
    assert count_cp_hom(K22.full_mask, hom_gadget(K22, cycle(4))) == count_hom(K22, cycle(4))


@given(graphs(4), graphs(6))
@settings(max_examples=100, deadline=None)
def test_hom_gadget_identity(H, G):
    assert count_cp_hom(H.full_mask, hom_gadget(H, G)) == oracles.homs(H, G)


def test_tensor_identity_and_size():
    H = cycle(4)
    rng = np.random.default_rng(5)
    ident = identity_colored(H)
    T = tensor(ident, ident)
    assert T.host == H and T.coloring == ident.coloring
    CG = random_colored_graph(H, 7, 0.6, rng)
    CF = random_colored_graph(H, 6, 0.6, rng)
    P = tensor(CG, CF)
    sizes = sum(CG.coloring.count(w) * CF.coloring.count(w) for w in range(H.n))
    assert P.host.n == sizes
    with pytest.raises(GraphError):
        tensor(CG, identity_colored(path(4)))


@pytest.mark.parametrize("seed", range(30))
def test_tensor_multiplicative(seed):
    rng = np.random.default_rng(seed)
    H = random_pattern(rng, 4)
    CG, CF = random_host(rng, H, 6), random_host(rng, H, 6)
    P = tensor(CG, CF)
    for s in range(1 << H.m):
        assert oracles.cp_homs(s, P) == oracles.cp_homs(s, CG) * oracles.cp_homs(s, CF)


def test_clique_gadget_pinned():
    assert clique_gadget(clique(3), 2).host.n == 12
    assert count_cp_hom(complete_bipartite(2, 2).full_mask, clique_gadget(clique(3), 2)) == 3
    assert count_cp_hom(complete_bipartite(2, 2).full_mask, clique_gadget(independent_set(4), 2)) == 0
    CG = clique_gadget(clique(4), 3)
    assert CG.host.n == 24 and count_cp_hom(complete_bipartite(3, 3).full_mask, CG) == 4
    with pytest.raises(GraphError):
        clique_gadget(clique(3), 1)


@given(graphs(6), st.sampled_from([2, 3]))
@settings(max_examples=40, deadline=None)
def test_clique_gadget_parsimonious(G, size):
    full = complete_bipartite(size, size).full_mask
    assert count_cp_hom(full, clique_gadget(G, size)) == oracles.cliques(G, size)


def test_pad_clique_examples():
    assert is_isomorphic(pad_clique(clique(3), 2, 3), clique(4))
    G = cycle(5)
    assert pad_clique(G, 3, 3) == G
    assert oracles.cliques(pad_clique(independent_set(3), 2, 4), 4) == 0
    with pytest.raises(GraphError):
        pad_clique(G, 3, 2)


@given(graphs(6), st.integers(1, 3), st.integers(0, 2))
@settings(max_examples=80, deadline=None)
def test_pad_clique_preserves_decision(G, k, extra):
    Gp = pad_clique(G, k, k + extra)
    assert (oracles.cliques(G, k) > 0) == (oracles.cliques(Gp, k + extra) > 0)


def test_isolation_frequencies():
    rng = np.random.default_rng(0)
    counts = np.zeros(6)
    draws = 10_000
    for _ in range(draws):
        for v in isolation_keep(6, rng):
            counts[v] += 1
    assert np.all(np.abs(counts / draws - 0.5) <= 0.02)
    outcomes = {random_isolation(independent_set(1), rng).n for _ in range(200)}
    assert outcomes == {0, 1}
    G = cycle(6)
    sub = random_isolation(G, np.random.default_rng(3))
    keep = isolation_keep(6, np.random.default_rng(3))
    assert sub == induced_subgraph(G, keep)


# -- linear algebra -------------------------------------------------------------------

def test_subset_order_extends_inclusion():
    order = subset_order(4)
    pos = {s: i for i, s in enumerate(order)}
    assert order[0] == 0 and order[-1] == 15
    for s in range(16):
        for t in range(16):
            if s & ~t == 0:
                assert pos[s] <= pos[t]


@pytest.mark.parametrize("H", SMALL_PATTERNS, ids=["K2", "P3", "K3", "K22"])
@pytest.mark.parametrize("mod", [None, 2, 3, 5])
def test_cp_hom_matrix_unitriangular(H, mod):
    M = cp_hom_matrix(H, mod)
    assert M.is_unitriangular()
    assert determinant(M.entries, mod) == 1
    # brute-force entries agree with the inclusion indicator
    for i, s in enumerate(M.order):
        for j, t in enumerate(M.order):
            assert M.entries[i][j] == int(s & ~t == 0)


def test_k2_matrix():
    assert cp_hom_matrix(clique(2)).entries == [[1, 1], [0, 1]]
    with pytest.raises(CapExceededError):
        cp_hom_matrix(clique(5))


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("mod", [None, 3])
def test_substitution_matches_gauss(seed, mod):
    rng = np.random.default_rng(seed)
    H = SMALL_PATTERNS[seed % 4]
    M = cp_hom_matrix(H).entries
    q = [int(x) for x in rng.integers(-50, 50, len(M))]
    y = solve_unitriangular(M, q, mod)
    At = [list(col) for col in zip(*M)]
    x = gauss_solve(At, q, mod)
    assert y == ([int(v) for v in x] if mod else [Fraction(v) for v in x])


def test_solver_rejects_bad_diagonal():
    with pytest.raises(InvariantError):
        solve_unitriangular([[2, 0], [0, 1]], [1, 1])
    with pytest.raises(ValueError):
        gauss_solve([[1, 1], [1, 1]], [0, 0])
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[1, 2], [3, 4]], 5) == 3


# -- coefficient expansion ------------------------------------------------------------

def test_const_true_coefficients():
    L = cp_indsub_coefficients(builtin("const_true"), complete_bipartite(2, 2))
    assert L.coefficients == {0: 1}


@pytest.mark.parametrize("name", sorted(n for n in BUILTINS if n != "hamiltonian"))
@pytest.mark.parametrize("H", [clique(2), clique(3), complete_bipartite(2, 2)], ids=["K2", "K3", "K22"])
def test_full_coefficient_is_chi(name, H):
    phi = BUILTINS[name]
    a = cp_indsub_coefficients(phi, H).coefficient(H.full_mask)
    chi = chi_naive(phi, H).value
    assert a == (-1) ** H.m * chi
    assert abs(a) == abs(oracles.chi(phi, H))


def test_coefficients_brute_force():
    phi, H = builtin("connected"), complete_bipartite(2, 2)
    L = cp_indsub_coefficients(phi, H)
    from indsub.graph import edge_subgraph
    for W in range(16):
        expected = sum(phi(edge_subgraph(H, S)) * (-1) ** (bin(W).count("1") - bin(S).count("1"))
                       for S in range(16) if S & ~W == 0)
        assert L.coefficient(W) == expected
    assert all(v % 3 == L.coefficient(w) % 3 for w, v in cp_indsub_coefficients(phi, H, 3).coefficients.items())


@pytest.mark.parametrize("seed", range(40))
def test_expansion_identity(seed):
    rng = np.random.default_rng(seed)
    H = random_pattern(rng, 4, max_edges=4)
    phi = random_table_property(H, rng)
    CG = random_host(rng, H, 8)
    L = cp_indsub_coefficients(phi, H)
    assert L.evaluate(CG) == oracles.cp_induced_with_property(phi, CG)
    assert abs(L.coefficient(H.full_mask)) == abs(oracles.chi(phi, H))


@pytest.mark.parametrize("seed", range(25))
def test_monotonicity_recovers_full_term(seed):
    rng = np.random.default_rng(seed)
    H = complete_bipartite(2, 2)
    CG = random_host(rng, H, 7)
    L = cp_indsub_coefficients(builtin("connected"), H)
    out = monotonicity_solve(L, CG, lambda host: count_cp_indsub_prop(builtin("connected"), host))
    assert out[H.full_mask] == count_cp_hom(H.full_mask, CG)
    for s, v in out.items():
        assert v is None or v == count_cp_hom(s, CG)
    L2 = cp_indsub_coefficients(builtin("connected"), H, mod=2)
    out2 = monotonicity_solve(L2, CG, lambda host: count_cp_indsub_prop(builtin("connected"), host, mod=2))
    assert out2[H.full_mask] == count_cp_hom(H.full_mask, CG) % 2


def test_monotonicity_single_term_and_errors():
    H = cycle(3)
    L = LinearCombination(H, {H.full_mask: 1})
    CG = random_host(np.random.default_rng(2), H, 6)
    out = monotonicity_solve(L, CG, L.evaluate)
    assert out[H.full_mask] == count_cp_hom(H.full_mask, CG)
    assert all(v is None for s, v in out.items() if s != H.full_mask)
    with pytest.raises(InvariantError):
        monotonicity_solve(L, CG, lambda host: 1)
    with pytest.raises(InvariantError):
        monotonicity_solve(LinearCombination(path(3), {3: 1}), CG, L.evaluate)
    with pytest.raises(InvariantError, match="inexact"):
        monotonicity_solve(LinearCombination(H, {0: 2}), CG, lambda host: 1)


def test_decolor_hand_example():
    H = clique(2)
    CG = ColoredGraph(clique(2), H, (0, 1))
    stage = PipelineTranscript().stage("decolor")
    phi = builtin("connected")
    value = decolor_count(phi, CG, lambda G, k: count_indsub_prop(phi, k, G), stage=stage)
    assert value == 1
    assert [q.response for q in stage.queries] == [1, 0, 0, 0]
    assert [q.n_vertices for q in stage.queries] == [2, 1, 1, 0]
    calls = []
    non_surjective = ColoredGraph(Graph(2, ()), H, (0, 0))
    assert decolor_count(phi, non_surjective, lambda G, k: calls.append(1) or 0) == 0
    assert calls == []


@pytest.mark.parametrize("seed", range(25))
def test_decolor_matches_transversals(seed):
    rng = np.random.default_rng(seed)
    H = random_pattern(rng, 4)
    CG = random_host(rng, H, 8)
    phi = random_table_property(H, rng) if seed % 2 else builtin("connected")
    stage = PipelineTranscript().stage("decolor")
    value = decolor_count(phi, CG, lambda G, k: count_indsub_prop(phi, k, G), stage=stage)
    assert value == oracles.cp_induced_with_property(phi, CG)
    assert len(stage.queries) == 2 ** H.n
    assert all(q.n_vertices <= CG.host.n for q in stage.queries)


# -- pipelines ------------------------------------------------------------------------

def test_pipeline_exact_examples():
    phi = builtin("connected")
    K22 = complete_bipartite(2, 2)
    value, tr = pipeline_exact(phi, 2, cycle(4))
    assert value == count_hom(K22, cycle(4))
    assert [s.name for s in tr.stages] == ["hom-gadget", "monotonicity", "decolor"]
    assert len(tr.stages[1].queries) == 16 and len(tr.stages[2].queries) == 16 * 16
    for s in tr.stages[1:]:
        assert all(q.n_vertices <= s.query_bound for q in s.queries)
    assert pipeline_exact(phi, 2, independent_set(5))[0] == 0
    G = random_graph(7, 0.5, np.random.default_rng(11))
    assert pipeline_exact(builtin("eulerian"), 2, G)[0] == count_hom(K22, G)
    assert pipeline_exact(phi, 2, G, mod=2)[0] == count_hom(K22, G) % 2


def test_pipeline_preconditions():
    with pytest.raises(GraphError, match="not a witness"):
        pipeline_exact(builtin("const_true"), 2, cycle(4))
    with pytest.raises(GraphError, match="prime power"):
        pipeline_exact(builtin("connected"), 6, cycle(4))
    with pytest.raises(CapExceededError):
        pipeline_exact(builtin("connected"), 3, cycle(4))
    with pytest.raises(GraphError):
        pipeline_exact(builtin("connected"), 2, cycle(4), mod=3)
    with pytest.raises(GraphError):
        pick_clique_witness(builtin("const_true"), 2, None)


def test_clique_witness_choice():
    assert pick_clique_witness(builtin("connected"), 3, None) == 3
    assert pick_clique_witness(builtin("connected"), 3, 2) == 4
    assert pick_clique_witness(builtin("eulerian"), 3, None) == 4


def test_clique_decision_examples():
    phi = builtin("connected")
    yes, tr = pipeline_clique_decision(phi, clique(4), 2)
    mono = next(s for s in tr.stages if s.name == "monotonicity")
    assert yes and mono.output == 6
    assert not pipeline_clique_decision(phi, independent_set(4), 2)[0]
    assert pipeline_clique_decision(phi, clique(4), 3)[0]
    assert not pipeline_clique_decision(phi, cycle(5), 3)[0]


def test_clique_decision_mod_p_transcript():
    yes, tr = pipeline_clique_decision(builtin("connected"), clique(5), 2, mod=2, seed=4)
    assert len(tr.repetitions) == 4 and tr.seed == 4
    again = pipeline_clique_decision(builtin("connected"), clique(5), 2, mod=2, seed=4)[1]
    assert tr.to_dict() == again.to_dict()
    assert yes == any(r.final % 2 for r in tr.repetitions)


# -- classification -------------------------------------------------------------------

def test_classify_examples():
    assert classify_graph(cycle(3)).branch == "wreath"
    assert classify_graph(complete_bipartite(2, 2)).branch == "bipartite"
    assert classify_graph(path(4)) is None
    assert classify_graph(cycle(6)) is None
    assert classify_graph(wreath(3, 2)).branch == "wreath"


def test_classification_scan():
    report = classify_p_edge_transitive(6)
    assert report.counterexamples == []
    assert report.per_n == {n: oracles.nonisomorphic_count(n) for n in range(1, 7)}
    assert all(is_connected(c.graph) for c in report.candidates)
    assert report.to_dict()["counterexamples"] == []
