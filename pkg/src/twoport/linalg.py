"""Fraction-free (Bareiss) elimination over Q(sqrt(d))."""
from __future__ import annotations

from typing import Sequence

from .scalars import Scalar


class SingularSystemError(ArithmeticError):
    """The assembled system has no unique solution; for circuits this is an internal bug."""


def solve_exact(A: Sequence[Sequence[Scalar]], B: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    """Solve ``A X = B`` exactly; ``B`` holds one row per equation and one column per right-hand side.

    Pivoting takes the first nonzero entry of the column. Returns the solution
    as rows of ``X`` (one per unknown).
    """
    n = len(A)
    if n == 0:
        return []
    k = len(B[0]) if B else 0
    M = [list(A[i]) + list(B[i]) for i in range(n)]
    width = n + k
    one = M[0][0] * 0 + 1
    prev = one
    for p in range(n):
        piv = p
        while piv < n and M[piv][p].is_zero():
            piv += 1
        if piv == n:
            raise SingularSystemError(f"no pivot in column {p}")
        if piv != p:
            M[p], M[piv] = M[piv], M[p]
        row_p = M[p]
        pp = row_p[p]
        for r in range(p + 1, n):
            row_r = M[r]
            rp = row_r[p]
            if rp.is_zero():
                scale = pp / prev
                for c in range(p + 1, width):
                    if not row_r[c].is_zero():
                        row_r[c] = row_r[c] * scale
            else:
                for c in range(p + 1, width):
                    row_r[c] = (row_r[c] * pp - rp * row_p[c]) / prev
            row_r[p] = rp * 0
        prev = pp
    X = [[None] * k for _ in range(n)]
    for j in range(k):
        for i in range(n - 1, -1, -1):
            s = M[i][n + j]
            row = M[i]
            for c in range(i + 1, n):
                if not row[c].is_zero():
                    s = s - row[c] * X[c][j]
            X[i][j] = s / row[i]
    return X
