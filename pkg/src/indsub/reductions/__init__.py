"""Gadgets, linear algebra and oracle pipelines for the reduction chain."""

from .expansion import LinearCombination, cp_indsub_coefficients, decolor_count, monotonicity_solve
from .gadgets import clique_gadget, hom_gadget, isolation_keep, pad_clique, random_isolation, tensor
from .linalg import CpHomMatrix, cp_hom_matrix, determinant, gauss_solve, solve_unitriangular, subset_order
from .pipeline import pick_clique_witness, pipeline_clique_decision, pipeline_exact
from .transcript import PipelineTranscript, Query, Stage
from .classify import ClassificationReport, classify_graph, classify_p_edge_transitive
