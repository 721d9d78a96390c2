"""Orthogonal polygons, rectangles and the exact cover check."""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..scalars import Scalar, to_scalar


class GeometryError(ValueError):
    pass


Point = tuple[Scalar, Scalar]


@dataclass(frozen=True)
class VerticalSide:
    index: int  # 1-based position in the counterclockwise enumeration
    x: Scalar  # U_u
    y0: Scalar  # lower end
    y1: Scalar  # upper end
    signed_length: Scalar  # I_u: positive when the polygon lies to the right of the side

    @property
    def length(self) -> Scalar:
        return self.y1 - self.y0


class OrthoPolygon:
    """A simple orthogonal polygon with vertices stored counterclockwise.

    Clockwise input is reversed. Collinear or repeated vertices are rejected.
    Vertical sides are enumerated starting from the first vertical edge that
    leaves ``vertices[0]`` (or the edge right after it).
    """

    def __init__(self, vertices: Iterable[Sequence]):
        pts = [(to_scalar(x), to_scalar(y)) for x, y in vertices]
        if len(pts) < 4 or len(pts) % 2:
            raise GeometryError(f"an orthogonal polygon needs an even number >= 4 of vertices, got {len(pts)}")
        k = len(pts)
        for i in range(k):
            p, q, r = pts[i], pts[(i + 1) % k], pts[(i + 2) % k]
            if p == q:
                raise GeometryError(f"repeated vertex at position {i}")
            if p[0] != q[0] and p[1] != q[1]:
                raise GeometryError(f"side {i} is not axis-parallel")
            if (p[0] == q[0]) == (q[0] == r[0]):
                raise GeometryError(f"sides {i} and {i + 1} do not alternate between horizontal and vertical")
        if _signed_area2(pts).sign() < 0:
            pts = [pts[0]] + pts[:0:-1]
        self.vertices: tuple[Point, ...] = tuple(pts)
        if not _is_simple(self.vertices):
            raise GeometryError("polygon boundary intersects itself")

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, OrthoPolygon):
            return NotImplemented
        return _cyclic_normal(self.vertices) == _cyclic_normal(other.vertices)

    def __hash__(self):
        return hash(_cyclic_normal(self.vertices))

    def __repr__(self):
        return "OrthoPolygon([" + ", ".join(f"({x}, {y})" for x, y in self.vertices) + "])"

    def sides(self) -> list[tuple[Point, Point]]:
        k = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % k]) for i in range(k)]

    def area(self) -> Scalar:
        return _signed_area2(self.vertices) / 2

    def vertical_sides(self) -> list[VerticalSide]:
        out = []
        for p, q in self.sides():
            if p[0] != q[0]:
                continue
            lo, hi = (q[1], p[1]) if q[1] < p[1] else (p[1], q[1])
            # counterclockwise traversal keeps the interior on the left;
            # moving down, the interior is to the right of the side
            sign = 1 if q[1] < p[1] else -1
            out.append(VerticalSide(len(out) + 1, p[0], lo, hi, (hi - lo) * sign))
        return out

    def U(self) -> tuple[Scalar, ...]:
        return tuple(s.x for s in self.vertical_sides())

    def I(self) -> tuple[Scalar, ...]:
        return tuple(s.signed_length for s in self.vertical_sides())

    def is_generic(self) -> bool:
        xs = self.U()
        return len(set(xs)) == len(xs)

    def contains_strict(self, p: Point) -> bool:
        """Point strictly inside; ``p`` must not lie on the boundary."""
        x, y = p
        crossings = 0
        for a, b in self.sides():
            if a[0] != b[0]:
                continue
            lo, hi = (a[1], b[1]) if a[1] < b[1] else (b[1], a[1])
            if a[0] > x and lo < y < hi:
                crossings += 1
        return crossings % 2 == 1

    def translated(self, dx, dy) -> "OrthoPolygon":
        return OrthoPolygon([(x + dx, y + dy) for x, y in self.vertices])

    def rotated_quarter(self) -> "OrthoPolygon":
        """Rotate by +90 degrees about the origin: (x, y) -> (-y, x)."""
        return OrthoPolygon([(-y, x) for x, y in self.vertices])

    def starting_at(self, k: int) -> "OrthoPolygon":
        v = self.vertices
        return OrthoPolygon(v[k:] + v[:k])

    def bbox(self):
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)


def _signed_area2(pts) -> Scalar:
    s = pts[0][0] * 0
    k = len(pts)
    for i in range(k):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % k]
        s = s + x0 * y1 - x1 * y0
    return s


def _cyclic_normal(pts):
    keys = [(p[0].key(), p[1].key()) for p in pts]
    k = keys.index(min(keys))
    return tuple(keys[k:] + keys[:k])


def _segments_meet(a, b, c, d) -> bool:
    """Closed axis-parallel segments ab and cd share a point."""
    ax0, ax1 = sorted((a[0], b[0]))
    ay0, ay1 = sorted((a[1], b[1]))
    cx0, cx1 = sorted((c[0], d[0]))
    cy0, cy1 = sorted((c[1], d[1]))
    return ax0 <= cx1 and cx0 <= ax1 and ay0 <= cy1 and cy0 <= ay1


def _is_simple(pts) -> bool:
    k = len(pts)
    sides = [(pts[i], pts[(i + 1) % k]) for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if j == i + 1 or (i == 0 and j == k - 1):
                continue
            if _segments_meet(*sides[i], *sides[j]):
                return False
    return True


@dataclass(frozen=True)
class Rect:
    x0: Scalar
    x1: Scalar
    y0: Scalar
    y1: Scalar

    @classmethod
    def make(cls, x0, x1, y0, y1) -> "Rect":
        x0, x1, y0, y1 = (to_scalar(v) for v in (x0, x1, y0, y1))
        if not (x0 < x1 and y0 < y1):
            raise GeometryError(f"degenerate rectangle [{x0}, {x1}] x [{y0}, {y1}]")
        return cls(x0, x1, y0, y1)

    @property
    def width(self) -> Scalar:
        return self.x1 - self.x0

    @property
    def height(self) -> Scalar:
        return self.y1 - self.y0

    @property
    def ratio(self) -> Scalar:
        return self.width / self.height

    def area(self) -> Scalar:
        return self.width * self.height

    def translated(self, dx, dy) -> "Rect":
        return Rect(self.x0 + dx, self.x1 + dx, self.y0 + dy, self.y1 + dy)

    def sort_key(self):
        return (self.x0.key(), self.y0.key(), self.x1.key(), self.y1.key())


class Tiling:
    def __init__(self, rects: Iterable[Rect]):
        rs = list(rects)
        for r in rs:
            if not (r.x0 < r.x1 and r.y0 < r.y1):
                raise GeometryError(f"degenerate rectangle {r}")
        self.rects: tuple[Rect, ...] = tuple(sorted(rs, key=Rect.sort_key))

    def __len__(self):
        return len(self.rects)

    def __iter__(self):
        return iter(self.rects)

    def __eq__(self, other):
        return isinstance(other, Tiling) and self.rects == other.rects

    def ratios(self) -> list[Scalar]:
        return [r.ratio for r in self.rects]

    def translated(self, dx, dy) -> "Tiling":
        return Tiling(r.translated(dx, dy) for r in self.rects)

    def area(self) -> Scalar:
        total = Scalar(0)
        for r in self.rects:
            total = total + r.area()
        return total


def _sort_unique(values):
    out = []
    for v in sorted(set(values)):
        out.append(v)
    return out


def cover_problems(poly: OrthoPolygon, tiling: Tiling) -> list[str]:
    """Reasons why ``tiling`` is not an exact tiling of ``poly`` (empty when it is).

    Coordinates are compressed to a grid; every grid cell must be covered
    exactly once if its centre is inside the polygon and never otherwise.
    The area identity is checked as well.
    """
    probs = []
    if not tiling.rects:
        return ["tiling is empty"]
    xs = _sort_unique([p[0] for p in poly.vertices] + [v for r in tiling for v in (r.x0, r.x1)])
    ys = _sort_unique([p[1] for p in poly.vertices] + [v for r in tiling for v in (r.y0, r.y1)])
    count = [[0] * (len(ys) - 1) for _ in range(len(xs) - 1)]
    for r in tiling:
        i0, i1 = bisect.bisect_left(xs, r.x0), bisect.bisect_left(xs, r.x1)
        j0, j1 = bisect.bisect_left(ys, r.y0), bisect.bisect_left(ys, r.y1)
        for i in range(i0, i1):
            col = count[i]
            for j in range(j0, j1):
                col[j] += 1
    for i in range(len(xs) - 1):
        mx = (xs[i] + xs[i + 1]) / 2
        for j in range(len(ys) - 1):
            c = count[i][j]
            inside = poly.contains_strict((mx, (ys[j] + ys[j + 1]) / 2))
            if c > 1:
                probs.append(f"rectangles overlap near x={xs[i]}, y={ys[j]}")
            elif inside and c == 0:
                probs.append(f"gap near x={xs[i]}, y={ys[j]}")
            elif not inside and c:
                probs.append(f"rectangle leaves the polygon near x={xs[i]}, y={ys[j]}")
            if len(probs) > 5:
                return probs
    if not probs and tiling.area() != poly.area():
        probs.append(f"area mismatch: tiles {tiling.area()} vs polygon {poly.area()}")
    return probs


def is_exact_cover(poly: OrthoPolygon, tiling: Tiling) -> bool:
    return not cover_problems(poly, tiling)
