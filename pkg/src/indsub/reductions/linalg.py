"""The cp-hom evaluation matrix and the solvers applied to it.

Masks are ordered by (popcount, value), a linear extension of inclusion. In
that order M[S][T] = #cp-Hom(H[S], H[T]) = [S subset of T] is upper
unitriangular, so forward substitution solves q = y M without pivoting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..config import caps, check_cap
from ..counting import count_cp_hom, identity_colored
from ..errors import InvariantError
from ..graph import Graph


def subset_order(m: int) -> list[int]:
    return sorted(range(1 << m), key=lambda s: (s.bit_count(), s))


@dataclass
class CpHomMatrix:
    pattern: Graph
    order: list[int]
    entries: list[list[int]]
    modulus: int | None = None

    def is_unitriangular(self) -> bool:
        n = len(self.order)
        return all(self.entries[i][i] == 1 and all(self.entries[i][j] == 0 for j in range(i))
                   for i in range(n))


def cp_hom_matrix(H: Graph, mod: int | None = None, cap: int | None = None) -> CpHomMatrix:
    """M[S][T] = #cp-Hom(H[S], H[T] coloured by the identity), rows and columns
    in (popcount, mask) order."""
    check_cap(H.m, caps.matrix_edges if cap is None else cap, "edges for the cp-hom matrix")
    order = subset_order(H.m)
    hosts = [identity_colored(H, t) for t in order]
    entries = [[count_cp_hom(s, CT, mod=mod) for CT in hosts] for s in order]
    return CpHomMatrix(H, order, entries, mod)


def solve_unitriangular(M: Sequence[Sequence[int]], q: Sequence[int], mod: int | None = None) -> list[int]:
    """y with sum_i y[i] * M[i][j] = q[j], for upper unitriangular M."""
    n = len(q)
    y = [0] * n
    for j in range(n):
        diag = M[j][j] % mod if mod else M[j][j]
        if diag != 1:
            raise InvariantError(f"diagonal entry {j} is {M[j][j]}, not 1")
        acc = q[j] - sum(y[i] * M[i][j] for i in range(j) if M[i][j])
        y[j] = acc % mod if mod else acc
    return y


def _inv(a, mod):
    return pow(int(a), -1, mod) if mod else 1 / a


def _field(x, mod):
    return int(x) % mod if mod else Fraction(x)


def gauss_solve(A: Sequence[Sequence[int]], b: Sequence[int], mod: int | None = None) -> list:
    """x with A x = b by Gaussian elimination with pivoting, over Q (Fractions)
    or GF(mod). Raises ValueError if A is singular."""
    n = len(A)
    rows = [[_field(v, mod) for v in A[i]] + [_field(b[i], mod)] for i in range(n)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        rows[c], rows[pivot] = rows[pivot], rows[c]
        inv = _inv(rows[c][c], mod)
        rows[c] = [(v * inv) % mod if mod else v * inv for v in rows[c]]
        for r in range(n):
            if r != c and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [(a - f * p) % mod if mod else a - f * p for a, p in zip(rows[r], rows[c])]
    return [rows[i][n] for i in range(n)]


def determinant(A: Sequence[Sequence[int]], mod: int | None = None):
    """Determinant by elimination over Q or GF(mod)."""
    n = len(A)
    rows = [[_field(v, mod) for v in row] for row in A]
    det = _field(1, mod)
    for c in range(n):
        pivot = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if pivot is None:
            return _field(0, mod)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = _inv(rows[c][c], mod)
        for r in range(c + 1, n):
            if rows[r][c] != 0:
                f = rows[r][c] * inv
                rows[r] = [(a - f * p) % mod if mod else a - f * p for a, p in zip(rows[r], rows[c])]
    return det % mod if mod else det
