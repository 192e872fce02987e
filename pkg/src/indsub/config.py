"""Size caps.

Every brute-force routine refuses inputs beyond a cap. Defaults can be raised
per process with environment variables named ``INDSUB_CAP_<NAME>`` (upper-case
field name), e.g. ``INDSUB_CAP_SUBSET_EDGES=27``, or per call through the
``cap=`` keyword arguments.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .errors import CapExceededError


@dataclass
class Caps:
    aut_vertices: int = 12          # automorphisms / isomorphism search
    group_order: int = 200_000      # materialized permutation groups
    subset_edges: int = 24          # full enumeration of edge subsets
    mask_width: int = 63            # hard limit for EdgeSubset masks
    pattern_vertices: int = 8       # pattern size for hom/emb/cp-hom counting
    indsub_subsets: int = 5_000_000  # C(n, k) budget of count_indsub_prop
    matrix_edges: int = 8           # cp-hom matrix has 2^|E| rows
    sylow_degree: int = 32          # p^k for sylow_generators
    pipeline_t: int = 2             # largest biclique side run through the oracle chain
    classify_vertices: int = 7
    witness_vertices: int = 32      # K_{t,t} evaluated by witness_set
    hamiltonian_vertices: int = 12

    @classmethod
    def from_env(cls, environ=None) -> "Caps":
        environ = os.environ if environ is None else environ
        values = {}
        for f in dataclasses.fields(cls):
            raw = environ.get(f"INDSUB_CAP_{f.name.upper()}")
            if raw is not None:
                values[f.name] = int(raw)
        return cls(**values)


caps = Caps.from_env()


def check_cap(value: int, cap: int, what: str) -> None:
    if value > cap:
        raise CapExceededError(f"{what} = {value} exceeds cap {cap}")
