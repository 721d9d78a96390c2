"""Rectangle tilings of orthogonal polygons versus planar circuits.

A rectangle of width w and height h becomes an edge of resistance w/h
between the maximal vertical segments through its left and right sides.
Potentials are x-coordinates and the current through an edge is the height
of its rectangle. With Ohm's law written as I_kl = c_kl (U_k - U_l), the
incoming current of a terminal is the negated signed length of its side.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..network import ROOT, Network, embedding_problems, find_embedding, trace_faces
from ..solver import Circuit, Solution
from .geometry import GeometryError, OrthoPolygon, Rect, Tiling, cover_problems


class TilingError(ValueError):
    pass


@dataclass(frozen=True)
class Segment:
    x: object
    y0: object
    y1: object


def _merge_intervals(items):
    """Union of closed intervals; touching intervals merge."""
    items = sorted(items, key=lambda p: p[0])
    out = []
    for lo, hi in items:
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append([lo, hi])
    return out


def vertical_segments(poly: OrthoPolygon, tiling: Tiling) -> list[Segment]:
    by_x = {}
    for r in tiling:
        by_x.setdefault(r.x0, []).append((r.y0, r.y1))
        by_x.setdefault(r.x1, []).append((r.y0, r.y1))
    for s in poly.vertical_sides():
        by_x.setdefault(s.x, []).append((s.y0, s.y1))
    segs = []
    for x in sorted(by_x):
        for lo, hi in _merge_intervals(by_x[x]):
            segs.append(Segment(x, lo, hi))
    return segs


def _find_segment(index, x, y0, y1):
    for k, s in index.get(x, ()):
        if s.y0 <= y0 and y1 <= s.y1:
            return k
    raise TilingError(f"no vertical segment at x={x} contains [{y0}, {y1}]")


def circuit_from_tiling(poly: OrthoPolygon, tiling: Tiling, *, check: bool = True) -> Circuit:
    """Build the t-terminal circuit of a tiling; terminal u is the segment through vertical side u."""
    if check:
        probs = cover_problems(poly, tiling)
        if probs:
            raise TilingError("not a tiling of the polygon: " + "; ".join(probs))
    if not poly.is_generic():
        raise TilingError("polygon is not generic: two vertical sides share an x-coordinate")
    segs = vertical_segments(poly, tiling)
    index = {}
    for k, s in enumerate(segs):
        index.setdefault(s.x, []).append((k, s))
    sides = poly.vertical_sides()
    t = len(sides)
    label = {}
    for s in sides:
        k = _find_segment(index, s.x, s.y0, s.y1)
        if k in label:
            raise TilingError("two polygon sides lie on one segment")
        label[k] = s.index
    nxt = t + 1
    for k in range(len(segs)):
        if k not in label:
            label[k] = nxt
            nxt += 1
    n = nxt - 1
    edges = []
    # attachments per vertex: (side, y0, edge id); side "E" = rectangle to the east
    attach = {v: [] for v in range(1, n + 1)}
    for i, r in enumerate(tiling.rects):
        a = label[_find_segment(index, r.x0, r.y0, r.y1)]
        b = label[_find_segment(index, r.x1, r.y0, r.y1)]
        edges.append((a, b, r.width / r.height))
        attach[a].append(("E", r.y0, i))
        attach[b].append(("W", r.y0, i))
    for s in sides:
        # the root sits on the exterior side of the polygon side
        attach[s.index].append(("W" if s.signed_length.sign() > 0 else "E", s.y0, -s.index))
    rot = {}
    for v, items in attach.items():
        east = sorted((it for it in items if it[0] == "E"), key=lambda it: it[1])
        west = sorted((it for it in items if it[0] == "W"), key=lambda it: it[1], reverse=True)
        rot[v] = [it[2] for it in east + west]
    net = Network(n, t, edges, rot, rotation_by="edge", merge_parallel=False)
    if embedding_problems(net):  # pragma: no cover - geometric rotations are planar
        net.rotation = find_embedding(n, t, net.edges)
    voltages = tuple(s.x for s in sides)
    return Circuit(net, voltages=voltages)


def _face_heights(net: Network, sol: Solution, faces, keep):
    """Dual potentials: crossing dart a->b from its left face to its right face adds I_ab."""
    dface = {d: fi for fi, f in enumerate(faces) for d in f}
    incoming = dict(zip(net.terminals, sol.incoming))

    def current(eid, tail):
        if eid < 0:
            u = -eid
            # virtual edge carries the terminal's external supply
            return -incoming[u] if tail == u else incoming[u]
        I = sol.edge_currents[eid]
        return I if net.edges[eid].u == tail else -I

    def head(eid, tail):
        if eid < 0:
            return ROOT if tail == -eid else -eid
        return net.edges[eid].other(tail)

    y = {0: sol.U[1] * 0}
    queue = deque([0])
    while queue:
        fi = queue.popleft()
        for eid, tail in faces[fi]:
            if eid >= 0 and eid not in keep:
                continue
            back = (eid, head(eid, tail))
            fj = dface[back]
            val = y[fi] + current(eid, tail)
            if fj in y:
                if y[fj] != val:
                    raise TilingError("face heights are inconsistent; the embedding does not match the currents")
            else:
                y[fj] = val
                queue.append(fj)
    return y, dface


def _essential_view(net: Network, sol: Solution):
    keep = {i for i, I in enumerate(sol.edge_currents) if not I.is_zero()}
    rot = {v: tuple(e for e in seq if e < 0 or e in keep) for v, seq in net.rotation.items()}
    return keep, rot


def tiling_from_circuit(circuit: Circuit, solution: Solution | None = None,
                        polygon: OrthoPolygon | None = None) -> tuple[Tiling, OrthoPolygon]:
    """Rectangles of the essential edges, stacked by the dual face heights of the embedding.

    Returns the tiling and the polygon spelled out by the boundary data. When
    ``polygon`` is given, the result is translated vertically onto it and the
    exact cover is verified against it.
    """
    net = circuit.network
    sol = solution if solution is not None else circuit.solve()
    if net.rotation is None:
        raise TilingError("circuit has no embedding")
    xs = [sol.U[u] for u in net.terminals]
    if len(set(xs)) != len(xs):
        raise TilingError("boundary data is not generic: two terminals share a potential")
    keep, rot = _essential_view(net, sol)
    faces = trace_faces(net, rot, keep)
    y, dface = _face_heights(net, sol, faces, keep)
    if len(y) != len(faces):
        raise TilingError("essential edges do not form a connected picture")
    rects = []
    for i in sorted(keep):
        e = net.edges[i]
        hi, lo = (e.u, e.v) if sol.U[e.u] > sol.U[e.v] else (e.v, e.u)
        bottom = y[dface[(i, hi)]]
        top = y[dface[(i, lo)]]
        if not bottom < top:
            raise TilingError("stacking produced a rectangle of nonpositive height")
        rects.append(Rect(sol.U[lo], sol.U[hi], bottom, top))
    verts = []
    for u in net.terminals:
        verts.append((sol.U[u], y[dface[(-u, ROOT)]]))
        verts.append((sol.U[u], y[dface[(-u, u)]]))
    try:
        derived = OrthoPolygon(_drop_collinear(verts))
    except GeometryError as exc:
        raise TilingError(f"boundary data does not describe a simple orthogonal polygon: {exc}") from exc
    tiling = Tiling(rects)
    target = derived
    if polygon is not None:
        dy = _vertical_offset(derived, polygon)
        if dy is None:
            raise TilingError("boundary data does not match the given polygon")
        tiling = tiling.translated(0, dy)
        target = polygon
    probs = cover_problems(target, tiling)
    if probs:
        raise TilingError("stacked rectangles do not tile the polygon: " + "; ".join(probs))
    return tiling, target


def _drop_collinear(verts):
    out = []
    for p in verts:
        if out and out[-1] == p:
            continue
        out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    changed = True
    while changed and len(out) >= 3:
        changed = False
        k = len(out)
        for i in range(k):
            a, b, c = out[i - 1], out[i], out[(i + 1) % k]
            if (a[0] == b[0] == c[0]) or (a[1] == b[1] == c[1]):
                out.pop(i)
                changed = True
                break
    return out


def _vertical_offset(a: OrthoPolygon, b: OrthoPolygon):
    if len(a) != len(b):
        return None
    # x-coordinates must match exactly; align on the lowest of the leftmost vertices
    xa = min(p[0] for p in a.vertices)
    xb = min(p[0] for p in b.vertices)
    if xa != xb:
        return None
    ya = min(p[1] for p in a.vertices if p[0] == xa)
    yb = min(p[1] for p in b.vertices if p[0] == xb)
    dy = yb - ya
    if a.translated(0, dy) != b:
        return None
    return dy
