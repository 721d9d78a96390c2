"""Pi-, T- and Z-shaped octagons and the at-most-5-rectangle pipeline."""
from __future__ import annotations

from dataclasses import dataclass

from ..network import TwoPortNetwork
from ..reduction import reduce_rational_floor
from ..solver import Circuit, solve_terminal
from .correspondence import TilingError, circuit_from_tiling, tiling_from_circuit
from .geometry import GeometryError, OrthoPolygon, Rect, Tiling, cover_problems

LABELS = ("B'", "A'", "A", "B", "C", "D", "D'", "C'")


@dataclass(frozen=True)
class OctagonShape:
    tag: str  # "Pi", "T", "Z" or "Other"
    witness: dict | None = None  # label -> point, plus "start" and "rotated"

    @property
    def start(self) -> int | None:
        return None if self.witness is None else self.witness["start"]


def _between(a, x, b) -> bool:
    lo, hi = (a, b) if a < b else (b, a)
    return lo < x < hi


def _match(pts) -> str | None:
    """Tag for the labelling pts = (B', A', A, B, C, D, D', C'), or None."""
    Bp, Ap, A, B, C, D, Dp, Cp = pts
    if Bp[0] != Ap[0]:
        return None
    # A'B'C'D' and ABCD are rectangles with matching orientation
    if not (Bp[1] == Cp[1] and Cp[0] == Dp[0] and Dp[1] == Ap[1]):
        return None
    if not (A[0] == B[0] and B[1] == C[1] and C[0] == D[0]):
        return None
    if not (A[1] == D[1] == Ap[1]):
        return None
    up = (Bp[1] - Ap[1]).sign()  # which side of line A'D' the big rectangle is on
    side = (B[1] - A[1]).sign()
    if side == up:
        inside = _between(Ap[0], B[0], Dp[0]) and _between(Ap[0], C[0], Dp[0]) and _between(Ap[1], B[1], Bp[1])
        if inside and _between(Ap[0], A[0], Dp[0]) and _between(Ap[0], D[0], Dp[0]):
            return "Pi"
        return None
    a_in = _between(Ap[0], A[0], Dp[0])
    d_in = _between(Ap[0], D[0], Dp[0])
    if a_in and d_in:
        return "T"
    if a_in and _between(A[0], Dp[0], D[0]):
        return "Z"  # rectangles meet along AD'
    if d_in and _between(A[0], Ap[0], D[0]):
        return "Z"  # rectangles meet along A'D
    return None


def classify_octagon(poly: OrthoPolygon) -> OctagonShape:
    if len(poly) != 8:
        raise GeometryError(f"not an octagon: {len(poly)} vertices")
    for rotated, p in ((False, poly), (True, poly.rotated_quarter())):
        v = p.vertices
        for k in range(8):
            pts = v[k:] + v[:k]
            tag = _match(pts)
            if tag is None:
                continue
            sides = p.starting_at(k).vertical_sides()
            if not (sides[0].signed_length + sides[3].signed_length).is_zero():  # pragma: no cover
                raise AssertionError("octagon classified without I_1 + I_4 = 0")
            wit = {lab: (str(q[0]), str(q[1])) for lab, q in zip(LABELS, pts)}
            wit.update(start=k, rotated=rotated)
            return OctagonShape(tag, wit)
    return OctagonShape("Other")


def port_frame(poly: OrthoPolygon) -> tuple[OrthoPolygon, OctagonShape]:
    """The octagon rotated (if needed) and re-enumerated so that vertical side 1 is B'A'."""
    shape = classify_octagon(poly)
    if shape.tag == "Other":
        raise GeometryError("octagon is not Pi-, T- or Z-shaped")
    p = poly.rotated_quarter() if shape.witness["rotated"] else poly
    return p.starting_at(shape.start), shape


def _unrotate(t: Tiling) -> Tiling:
    # inverse of (x, y) -> (-y, x) is (x, y) -> (y, -x)
    return Tiling(Rect(r.y0, r.y1, -r.x1, -r.x0) for r in t)


def _rotate(t: Tiling) -> Tiling:
    return Tiling(Rect(-r.y1, -r.y0, r.x0, r.x1) for r in t)


@dataclass
class OctagonTiling:
    tiling: Tiling
    shape: OctagonShape
    network: TwoPortNetwork
    reduction: object


def tile_octagon(poly: OrthoPolygon, square_tiling: Tiling, budget: int | None = None) -> OctagonTiling:
    frame, shape = port_frame(poly)
    rotated = shape.witness["rotated"]
    squares = _rotate(square_tiling) if rotated else square_tiling
    probs = cover_problems(frame, squares)
    if probs:
        raise TilingError("input is not a tiling of the octagon: " + "; ".join(probs))
    if any(r.width != r.height for r in squares):
        raise TilingError("input tiling contains a non-square rectangle")
    circ = circuit_from_tiling(frame, squares, check=False)
    net = TwoPortNetwork.from_network(circ.network)
    res = reduce_rational_floor(net, budget)
    final = res.final
    sol = solve_terminal(final, circ.voltages)
    out, _ = tiling_from_circuit(Circuit(final, voltages=circ.voltages), sol, frame)
    if len(out) > 5 or not all(r.ratio.is_rational() for r in out):  # pragma: no cover
        raise AssertionError("pipeline produced more than 5 rectangles or an irrational ratio")
    if rotated:
        out = _unrotate(out)
        if cover_problems(poly, out):  # pragma: no cover
            raise AssertionError("rotating back broke the cover")
    return OctagonTiling(out, shape, final, res)


def tile_octagon_min(poly: OrthoPolygon, square_tiling: Tiling, budget: int | None = None) -> Tiling:
    """Retile a square-tiled Pi/T/Z octagon with at most 5 rectangles of rational aspect ratio."""
    return tile_octagon(poly, square_tiling, budget).tiling


def square_subdivision(tiling: Tiling) -> Tiling:
    """Split every rectangle with rational ratio p/q into a p-by-q grid of squares."""
    out = []
    for r in tiling:
        ratio = r.ratio
        if not ratio.is_rational():
            raise TilingError(f"rectangle with irrational ratio {ratio} has no square subdivision")
        p, q = ratio.a.numerator, ratio.a.denominator
        side = r.width / p
        for i in range(p):
            for j in range(q):
                out.append(Rect(r.x0 + side * i, r.x0 + side * (i + 1), r.y0 + side * j, r.y0 + side * (j + 1)))
    return Tiling(out)
