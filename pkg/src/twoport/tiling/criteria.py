"""Square-tileability criteria for rectangles and right-angled hexagons."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from ..scalars import Scalar, to_scalar


def dehn_check(w, h) -> bool:
    """A w-by-h rectangle is tileable by squares iff w/h is rational."""
    w, h = to_scalar(w), to_scalar(h)
    if w.sign() <= 0 or h.sign() <= 0:
        raise ValueError("side lengths must be positive")
    return (w / h).is_rational()


class HexagonError(ValueError):
    pass


def _rref(rows: list[list[Fraction]], ncols: int):
    """Reduced row echelon form of an augmented matrix; returns (rows, pivot columns)."""
    rows = [r[:] for r in rows]
    piv = []
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    return rows, piv


def rational_affine_solutions(coeffs: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]):
    """Rational solutions of a system over Q(sqrt(d)) as (particular point, null-space basis), or None."""
    rows = []
    for lhs, b in zip(coeffs, rhs):
        lhs = [to_scalar(c) for c in lhs]
        b = to_scalar(b)
        rows.append([c.a for c in lhs] + [b.a])
        rows.append([c.b for c in lhs] + [b.b])
    nv = len(coeffs[0])
    red, piv = _rref(rows, nv)
    for row in red[len(piv):]:
        if row[nv] != 0:
            return None
    point = [Fraction(0)] * nv
    for i, c in enumerate(piv):
        point[c] = red[i][nv]
    free = [c for c in range(nv) if c not in piv]
    basis = []
    for f in free:
        vec = [Fraction(0)] * nv
        vec[f] = Fraction(1)
        for i, c in enumerate(piv):
            vec[c] = -red[i][f]
        basis.append(vec)
    return point, basis


def lexmin_nonnegative(point, basis):
    """Lexicographically least nonnegative point of {point + span(basis)}, or None.

    The feasible set is a pointed polyhedron, so the optimum is a vertex:
    one where as many coordinates vanish as there are free parameters.
    """
    nv = len(point)
    k = len(basis)
    best = None
    for zeros in itertools.combinations(range(nv), k):
        # solve point[z] + sum_j lam_j basis[j][z] = 0 for z in zeros
        if k:
            rows = [[basis[j][z] for j in range(k)] + [-point[z]] for z in zeros]
            red, piv = _rref(rows, k)
            if len(piv) < k:
                continue
            lam = [Fraction(0)] * k
            for i, c in enumerate(piv):
                lam[c] = red[i][k]
        else:
            lam = []
        cand = tuple(point[i] + sum(lam[j] * basis[j][i] for j in range(k)) for i in range(nv))
        if all(c >= 0 for c in cand) and (best is None or cand < best):
            best = cand
    return best


def hexagon_sides(sides) -> dict:
    """Normalize hexagon side data to a dict with keys A1A2 .. A6A1 (A4A5 optional)."""
    names = ("A1A2", "A2A3", "A3A4", "A4A5", "A5A6", "A6A1")
    if isinstance(sides, dict):
        out = {k: to_scalar(v) for k, v in sides.items() if v is not None}
    else:
        seq = list(sides)
        if len(seq) != 6:
            raise HexagonError("expected six side lengths A1A2, A2A3, A3A4, A4A5, A5A6, A6A1")
        out = {k: to_scalar(v) for k, v in zip(names, seq) if v is not None}
    missing = [k for k in names if k != "A4A5" and k not in out]
    if missing:
        raise HexagonError(f"missing hexagon sides: {', '.join(missing)}")
    for k, v in out.items():
        if v.sign() <= 0:
            raise HexagonError(f"side {k} must be positive")
    return out


def hexagon_closure_problems(s: dict) -> list[str]:
    """A right-angled hexagon enumerated from its reflex vertex closes iff these identities hold."""
    probs = []
    if s["A3A4"] != s["A1A2"] + s["A5A6"]:
        probs.append("A3A4 must equal A1A2 + A5A6")
    if "A4A5" in s and s["A4A5"] != s["A2A3"] + s["A6A1"]:
        probs.append("A4A5 must equal A2A3 + A6A1")
    return probs


def hexagon_square_tileable(sides, *, check_closure: bool = True):
    """Least nonnegative rational (x, y, z) with
    A3A4*x + A1A2*y = A2A3 and A5A6*z - A1A2*y = A6A1, or None when there is none.
    """
    s = hexagon_sides(sides)
    if check_closure:
        probs = hexagon_closure_problems(s)
        if probs:
            raise HexagonError("sides do not close up a right-angled hexagon: " + "; ".join(probs))
    zero = s["A1A2"] * 0
    coeffs = [[s["A3A4"], s["A1A2"], zero], [zero, -s["A1A2"], s["A5A6"]]]
    sol = rational_affine_solutions(coeffs, [s["A2A3"], s["A6A1"]])
    if sol is None:
        return None
    return lexmin_nonnegative(*sol)
