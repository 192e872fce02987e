"""Brute-force counting of (induced) subgraph patterns, alternating enumerators
and the oracle reductions between them, at desk scale."""

from .altenum import ChiResult, chi_naive, chi_orbit, check_congruence
from .counting import (ColoredGraph, count_cp_hom, count_cp_indsub_prop, count_cp_strong_emb, count_emb,
                       count_hom, count_indsub, count_indsub_prop, count_strong_emb, count_sub,
                       identity_colored)
from .errors import CapExceededError, GraphError, GraphFormatError, InvariantError
from .graph import (Graph, clique, complete_bipartite, cycle, edge_subgraph, family, independent_set,
                    induced_subgraph, make_graph, path, wreath)
from .properties import Property, builtin, witness_set

__version__ = "0.1.0"
