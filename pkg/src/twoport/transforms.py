"""Local moves preserving the response and the voltage drop of a two-port network.

Every move returns a new network whose rotation system is updated locally
around the affected site. The update is then re-certified by face traversal;
if it fails (for instance when a created parallel edge was not adjacent in
the rotation) a fresh embedding is searched for, and a result that is not
circular-planar at all is refused with :class:`MoveError`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .network import (
    ROOT,
    Network,
    TwoPortNetwork,
    canonical_rotation,
    embedding_problems,
    find_embedding,
    trace_faces,
)
from .response import basis_solutions, pi_equivalent
from .scalars import Scalar

KINDS = ("Parallel", "Series", "DeltaY", "YDelta", "MergeSamePotential", "BoxH", "BoxHInverse")


class MoveError(ValueError):
    """A move's pattern is absent or its applicability condition fails."""


class ReplayError(RuntimeError):
    pass


@dataclass(frozen=True)
class Move:
    kind: str
    at: tuple[int, ...]
    resistances: tuple[Scalar, ...] = ()
    note: str = ""

    def to_json(self) -> dict:
        out = {"kind": self.kind, "at": list(self.at), "resistances": [str(r) for r in self.resistances]}
        if self.note:
            out["note"] = self.note
        return out


# -- working copy ----------------------------------------------------------------

class _Draft:
    """Mutable edge table keyed by integer handles, plus a rotation in handle space."""

    def __init__(self, net: Network):
        self.src = net
        self.t = net.t
        self.n = net.n
        self.edges = {i: (e.u, e.v, e.R) for i, e in enumerate(net.edges)}
        self.next_handle = len(net.edges)
        rot = net.rotation or {}
        self.rot = {v: list(seq) for v, seq in rot.items() if v != ROOT}
        self.deleted: set[int] = set()

    def add_vertex(self) -> int:
        self.n += 1
        self.rot[self.n] = []
        return self.n

    def add_edge(self, u, v, R) -> int:
        h = self.next_handle
        self.next_handle += 1
        self.edges[h] = (u, v, R)
        return h

    def drop_edge(self, h):
        del self.edges[h]

    def drop_vertex(self, v):
        self.deleted.add(v)
        self.rot.pop(v, None)

    def replace_pair(self, v, p, q, new) -> bool:
        """Replace the consecutive pair ``p, q`` in ``rot[v]`` by the items of ``new``."""
        seq = self.rot.get(v)
        if not seq:
            return False
        k = len(seq)
        for i in range(k):
            if seq[i] == p and seq[(i + 1) % k] == q:
                if k == 2 and p != q:
                    self.rot[v] = list(new)
                elif i + 1 < k:
                    self.rot[v] = seq[:i] + list(new) + seq[i + 2:]
                else:
                    self.rot[v] = list(new) + seq[1:-1]
                return True
        return False

    def replace_one(self, v, p, new) -> bool:
        seq = self.rot.get(v)
        if not seq or p not in seq:
            return False
        i = seq.index(p)
        self.rot[v] = seq[:i] + list(new) + seq[i + 1:]
        return True

    def build(self, *, merge_parallel=True, local_ok=True) -> Network:
        keep = [v for v in range(1, self.n + 1) if v not in self.deleted]
        vmap = {v: k + 1 for k, v in enumerate(keep)}
        handles = sorted(self.edges)
        raw_index = {h: k for k, h in enumerate(handles)}
        raw = []
        for h in handles:
            u, v, R = self.edges[h]
            raw.append((vmap[u], vmap[v], R))
        rot = None
        if local_ok:
            rot = {}
            try:
                for v in keep:
                    rot[vmap[v]] = [x if x < 0 else raw_index[x] for x in self.rot.get(v, [])]
            except KeyError:
                rot = None
        cls = TwoPortNetwork if isinstance(self.src, TwoPortNetwork) else Network
        kw = dict(rotation_by="edge", merge_parallel=merge_parallel)
        if cls is TwoPortNetwork:
            net = cls(len(keep), raw, rot, **kw)
        else:
            net = cls(len(keep), self.t, raw, rot, **kw)
        if rot is None or embedding_problems(net):
            fresh = find_embedding(net.n, net.t, net.edges)
            if fresh is None:
                raise MoveError("the move would leave no circular-planar embedding")
            net.rotation = canonical_rotation(fresh)
        return net


def _check_vertex(net: Network, v: int):
    if not (1 <= v <= net.n):
        raise MoveError(f"vertex {v} is not in 1..{net.n}")


def _edge(net: Network, u: int, v: int) -> int:
    i = net.edge_between(u, v)
    if i is None:
        raise MoveError(f"edge {u}-{v} is absent")
    return i


# -- elementary moves ----------------------------------------------------------------

def _parallel(net, e1, e2):
    if e1 == e2 or not (0 <= e1 < net.m and 0 <= e2 < net.m):
        raise MoveError(f"edges {e1}, {e2} are not two distinct edges")
    a, b = net.edges[e1], net.edges[e2]
    if a.pair() != b.pair():
        raise MoveError(f"edges {a.u}-{a.v} and {b.u}-{b.v} are not parallel")
    R = a.R * b.R / (a.R + b.R)
    dr = _Draft(net)
    dr.edges[e1] = (a.u, a.v, R)
    dr.drop_edge(e2)
    for v in (a.u, a.v):
        if e2 in dr.rot.get(v, []):
            dr.rot[v].remove(e2)
    return dr.build(merge_parallel=False), (R,)


def _series(net, y):
    _check_vertex(net, y)
    if net.is_terminal(y):
        raise MoveError(f"vertex {y} is a terminal")
    inc = net.incident(y)
    if len(inc) != 2:
        raise MoveError(f"vertex {y} has degree {len(inc)}, not 2")
    e1, e2 = inc
    x, z = net.edges[e1].other(y), net.edges[e2].other(y)
    if x == z:
        raise MoveError("series connection would create a loop")
    R = net.edges[e1].R + net.edges[e2].R
    dr = _Draft(net)
    h = dr.add_edge(x, z, R)
    dr.drop_edge(e1)
    dr.drop_edge(e2)
    dr.replace_one(x, e1, [h])
    dr.replace_one(z, e2, [h])
    dr.drop_vertex(y)
    return dr.build(), (R,)


def _face_has_cycle(faces, darts: Sequence[tuple[int, int]]) -> bool:
    """True if the cyclic dart sequence is exactly one face of the traversal."""
    k = len(darts)
    for f in faces:
        if len(f) != k or darts[0] not in f:
            continue
        i = f.index(darts[0])
        if all(f[(i + j) % k] == darts[j] for j in range(k)):
            return True
    return False


def _delta_y(net, x, y, z):
    for v in (x, y, z):
        _check_vertex(net, v)
    if len({x, y, z}) != 3:
        raise MoveError("triangle vertices must be distinct")
    exy, eyz, ezx = _edge(net, x, y), _edge(net, y, z), _edge(net, z, x)
    faces = trace_faces(net, net.rotation)
    if _face_has_cycle(faces, [(exy, x), (eyz, y), (ezx, z)]):
        a, b, c = x, y, z
    elif _face_has_cycle(faces, [(ezx, x), (eyz, z), (exy, y)]):
        a, b, c = x, z, y
    else:
        raise MoveError(f"triangle {x}{y}{z} does not bound a face")
    Rxy, Ryz, Rzx = net.edges[exy].R, net.edges[eyz].R, net.edges[ezx].R
    s = Rxy + Ryz + Rzx
    Rx, Ry, Rz = Rxy * Rzx / s, Rxy * Ryz / s, Ryz * Rzx / s
    dr = _Draft(net)
    w = dr.add_vertex()
    hx, hy, hz = dr.add_edge(x, w, Rx), dr.add_edge(y, w, Ry), dr.add_edge(z, w, Rz)
    spoke = {x: hx, y: hy, z: hz}
    e = {frozenset((x, y)): exy, frozenset((y, z)): eyz, frozenset((z, x)): ezx}
    for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
        # around p the face a->b->c sits between the edges to q and to r
        dr.replace_pair(p, e[frozenset((p, q))], e[frozenset((r, p))], [spoke[p]])
    dr.rot[w] = [spoke[a], spoke[b], spoke[c]]
    for h in (exy, eyz, ezx):
        dr.drop_edge(h)
    return dr.build(), (Rx, Ry, Rz)


def _y_delta(net, w):
    _check_vertex(net, w)
    if net.is_terminal(w):
        raise MoveError(f"vertex {w} is a terminal")
    inc = net.incident(w)
    if len(inc) != 3:
        raise MoveError(f"vertex {w} has degree {len(inc)}, not 3")
    seq = list(net.rotation[w]) if net.rotation else list(inc)
    a, b, c = (net.edges[i].other(w) for i in seq)
    if len({a, b, c}) != 3:
        raise MoveError("Y-Delta needs three distinct neighbours")
    Ra, Rb, Rc = (net.edges[i].R for i in seq)
    num = Ra * Rb + Rb * Rc + Rc * Ra
    Rab, Rbc, Rca = num / Rc, num / Ra, num / Rb
    dr = _Draft(net)
    hab, hbc, hca = dr.add_edge(a, b, Rab), dr.add_edge(b, c, Rbc), dr.add_edge(c, a, Rca)
    ea, eb, ec = seq
    dr.replace_one(a, ea, [hab, hca])
    dr.replace_one(b, eb, [hbc, hab])
    dr.replace_one(c, ec, [hca, hbc])
    for h in seq:
        dr.drop_edge(h)
    dr.drop_vertex(w)
    return dr.build(), (Rab, Rbc, Rca)


def equal_potentials(net: Network, x: int, y: int, sols=None) -> bool:
    sols = sols if sols is not None else basis_solutions(net)
    return all(s.U[x] == s.U[y] for s in sols)


def _merge(net, x, y, sols=None):
    _check_vertex(net, x)
    _check_vertex(net, y)
    e = _edge(net, x, y)
    if net.is_terminal(x) and net.is_terminal(y):
        raise MoveError("cannot merge two terminals")
    if net.is_terminal(y):
        x, y = y, x
    if not equal_potentials(net, x, y, sols):
        raise MoveError(f"potentials of {x} and {y} differ on a basis input")
    dr = _Draft(net)
    ry = list(dr.rot.get(y, net.incident(y)))
    k = ry.index(e)
    rest = ry[k + 1:] + ry[:k]
    for h in rest:
        u, v, R = dr.edges[h]
        dr.edges[h] = (x if u == y else u, x if v == y else v, R)
    if not dr.replace_one(x, e, rest):
        dr.rot[x] = [h for h in dr.rot.get(x, []) if h != e] + rest
    dr.drop_edge(e)
    dr.drop_vertex(y)
    return dr.build(), ()


# -- Box-H -------------------------------------------------------------------------------

def box_h_resistances(Rxy, Ryz, Rzt, Rtx):
    """(R_xv, R_yv, R_tw, R_zw, R_vw) replacing the 4-cycle x-y-z-t."""
    s = Rxy + Ryz + Rzt + Rtx
    return (Rxy * Rtx / s, Rxy * Ryz / s, Rtx * Rzt / s, Rzt * Ryz / s, Rtx * Ryz / s)


def _components_without(net: Network, removed: set[int]) -> dict[int, int]:
    comp = {}
    for s in range(1, net.n + 1):
        if s in comp:
            continue
        comp[s] = s
        stack = [s]
        while stack:
            a = stack.pop()
            for i in net.incident(a):
                if i in removed:
                    continue
                b = net.edges[i].other(a)
                if b not in comp:
                    comp[b] = s
                    stack.append(b)
    return comp


def box_h_certificate(net: Network, x, y, z, t, sols=None) -> str | None:
    """Which applicability certificate holds for the 4-cycle x-y-z-t: "combinatorial", "analytic" or None."""
    ids = [_edge(net, x, y), _edge(net, y, z), _edge(net, z, t), _edge(net, t, x)]
    comp = _components_without(net, set(ids))
    left = {comp[v] for v in (1, 4, x, t)}
    right = {comp[v] for v in (2, 3, y, z)}
    if not (left & right):
        return "combinatorial"
    sols = sols if sols is not None else basis_solutions(net)
    if all((s.current(x, y) + s.current(t, z)).is_zero() for s in sols):
        return "analytic"
    return None


def _box_h(net, x, y, z, t, sols=None):
    if net.t != 4:
        raise MoveError("Box-H needs a two-port network")
    for v in (x, y, z, t):
        _check_vertex(net, v)
    if len({x, y, z, t}) != 4:
        raise MoveError("4-cycle vertices must be distinct")
    exy, eyz, ezt, etx = _edge(net, x, y), _edge(net, y, z), _edge(net, z, t), _edge(net, t, x)
    cert = box_h_certificate(net, x, y, z, t, sols)
    if cert is None:
        raise MoveError(f"no applicability certificate for the 4-cycle {x}{y}{z}{t}")
    Rs = box_h_resistances(*(net.edges[i].R for i in (exy, eyz, ezt, etx)))
    Rxv, Ryv, Rtw, Rzw, Rvw = Rs
    faces = trace_faces(net, net.rotation)
    e = {frozenset((x, y)): exy, frozenset((y, z)): eyz, frozenset((z, t)): ezt, frozenset((t, x)): etx}
    if _face_has_cycle(faces, [(exy, x), (eyz, y), (ezt, z), (etx, t)]):
        labels = (x, y, z, t)
    elif _face_has_cycle(faces, [(etx, x), (ezt, t), (eyz, z), (exy, y)]):
        labels = (y, x, t, z)
    else:
        labels = None
    dr = _Draft(net)
    v = dr.add_vertex()
    w = dr.add_vertex()
    h = {x: dr.add_edge(x, v, Rxv), y: dr.add_edge(y, v, Ryv), t: dr.add_edge(t, w, Rtw), z: dr.add_edge(z, w, Rzw)}
    hvw = dr.add_edge(v, w, Rvw)
    local = labels is not None
    if local:
        a, b, c, d = labels
        ok = dr.replace_pair(a, e[frozenset((a, b))], e[frozenset((d, a))], [h[a]])
        ok &= dr.replace_pair(b, e[frozenset((b, c))], e[frozenset((a, b))], [h[b]])
        ok &= dr.replace_pair(c, e[frozenset((c, d))], e[frozenset((b, c))], [h[c]])
        ok &= dr.replace_pair(d, e[frozenset((d, a))], e[frozenset((c, d))], [h[d]])
        dr.rot[v] = [hvw, h[a], h[b]]
        dr.rot[w] = [h[c], h[d], hvw]
        local = bool(ok)
    for i in (exy, eyz, ezt, etx):
        dr.drop_edge(i)
    return dr.build(local_ok=local), Rs, cert


def box_h_inverse_resistances(Rxv, Ryv, Rtw, Rzw, Rvw):
    """Invert :func:`box_h_resistances`; returns (R_xy, R_yz, R_zt, R_tx) or None if no Box maps here."""
    if Rxv * Rzw != Ryv * Rtw:
        return None
    b = Rxv + Rvw + Rxv * (Rvw + Rzw) / Ryv
    a = b * Ryv / Rvw
    c = b * Rzw / Rvw
    d = b * Ryv / Rxv
    Rxy, Rtx, Rzt, Ryz = a, b, c, d
    if box_h_resistances(Rxy, Ryz, Rzt, Rtx) != (Rxv, Ryv, Rtw, Rzw, Rvw):
        return None
    return (Rxy, Ryz, Rzt, Rtx)


def _box_h_inverse(net, v, w, x=None, t=None):
    if net.t != 4:
        raise MoveError("Box-H inverse needs a two-port network")
    for q in (v, w):
        _check_vertex(net, q)
        if net.is_terminal(q) or net.degree(q) != 3:
            raise MoveError(f"vertex {q} must be internal of degree 3")
    evw = _edge(net, v, w)
    rv = list(net.rotation[v])
    rw = list(net.rotation[w])
    rv = rv[rv.index(evw):] + rv[:rv.index(evw)]
    rw = rw[rw.index(evw):] + rw[:rw.index(evw)]
    p1, p2 = (net.edges[i].other(v) for i in rv[1:])
    q1, q2 = (net.edges[i].other(w) for i in rw[1:])
    # the embedding suggests x, y, z, t = p1, p2, q1, q2; the crossed pairing is tried next
    candidates = [(p1, p2, q1, q2, True), (p2, p1, q2, q1, True), (p1, p2, q2, q1, False), (p2, p1, q1, q2, False)]
    if x is not None or t is not None:
        candidates = [c for c in candidates if (x is None or c[0] == x) and (t is None or c[3] == t)]
    last = "no labelling of the neighbours inverts Box-H"
    for cx, cy, cz, ct, planar in candidates:
        if len({cx, cy, cz, ct}) != 4:
            last = "the H pattern needs four distinct outer vertices"
            continue
        R = lambda a, b: net.edges[_edge(net, a, b)].R
        rs = box_h_inverse_resistances(R(cx, v), R(cy, v), R(ct, w), R(cz, w), R(v, w))
        if rs is None:
            continue
        Rxy, Ryz, Rzt, Rtx = rs
        dr = _Draft(net)
        hxy, hyz, hzt, htx = (dr.add_edge(cx, cy, Rxy), dr.add_edge(cy, cz, Ryz),
                              dr.add_edge(cz, ct, Rzt), dr.add_edge(ct, cx, Rtx))
        ex, ey, ez, et = (_edge(net, cx, v), _edge(net, cy, v), _edge(net, cz, w), _edge(net, ct, w))
        if planar:
            dr.replace_one(cx, ex, [hxy, htx])
            dr.replace_one(cy, ey, [hyz, hxy])
            dr.replace_one(cz, ez, [hzt, hyz])
            dr.replace_one(ct, et, [htx, hzt])
        for i in (ex, ey, ez, et, evw):
            dr.drop_edge(i)
        dr.drop_vertex(v)
        dr.drop_vertex(w)
        try:
            out = dr.build(local_ok=planar)
        except MoveError as exc:
            last = str(exc)
            continue
        if not pi_equivalent(net, out):
            last = "the recovered Box is not Pi-equivalent"
            continue
        return out, rs, (v, w, cx, ct)
    raise MoveError(last)


# -- public API -----------------------------------------------------------------------------

def apply_parallel(net: Network, e1: int, e2: int) -> Network:
    return _parallel(net, e1, e2)[0]


def apply_series(net: Network, y: int) -> Network:
    return _series(net, y)[0]


def apply_delta_y(net: Network, x: int, y: int, z: int) -> Network:
    return _delta_y(net, x, y, z)[0]


def apply_y_delta(net: Network, w: int) -> Network:
    return _y_delta(net, w)[0]


def merge_same_potential(net: Network, x: int, y: int) -> Network:
    return _merge(net, x, y)[0]


def apply_box_h(net: Network, x: int, y: int, z: int, t: int) -> Network:
    return _box_h(net, x, y, z, t)[0]


def apply_box_h_inverse(net: Network, v: int, w: int) -> Network:
    return _box_h_inverse(net, v, w)[0]


def do_move(net: Network, kind: str, at: Sequence[int], sols=None) -> tuple[Network, Move]:
    """Apply a move by name and return the result with its replayable record."""
    at = tuple(int(a) for a in at)
    note = ""
    if kind == "Parallel":
        out, rs = _parallel(net, *at)
    elif kind == "Series":
        out, rs = _series(net, *at)
    elif kind == "DeltaY":
        out, rs = _delta_y(net, *at)
    elif kind == "YDelta":
        out, rs = _y_delta(net, *at)
    elif kind == "MergeSamePotential":
        out, rs = _merge(net, *at, sols=sols)
    elif kind == "BoxH":
        out, rs, note = _box_h(net, *at, sols=sols)
    elif kind == "BoxHInverse":
        out, rs, at = _box_h_inverse(net, *at)
    else:
        raise MoveError(f"unknown move kind {kind!r}; expected one of {', '.join(KINDS)}")
    return out, Move(kind, at, tuple(rs), note)


def replay(net: Network, moves: Iterable[Move]) -> Network:
    for k, mv in enumerate(moves):
        net, got = do_move(net, mv.kind, mv.at)
        if mv.resistances and got.resistances != tuple(mv.resistances):
            raise ReplayError(f"move {k} ({mv.kind}) produced different resistances on replay")
    return net


# -- enumeration of applicable sites ---------------------------------------------------------------

def facial_triangles(net: Network) -> list[tuple[int, int, int]]:
    out = set()
    for f in trace_faces(net, net.rotation):
        if len(f) == 3 and all(eid >= 0 for eid, _ in f):
            out.add(tuple(sorted(tail for _, tail in f)))
    return sorted(out)


def four_cycles(net: Network) -> list[tuple[int, int, int, int]]:
    """All simple 4-cycles, each reported once as (x, y, z, t) with x smallest."""
    adj = {v: set(net.neighbors(v)) for v in range(1, net.n + 1)}
    seen = set()
    out = []
    for x in range(1, net.n + 1):
        for y, t in itertools.combinations(sorted(adj[x]), 2):
            for z in sorted(adj[y] & adj[t]):
                if z == x or z <= x or y <= x or t <= x:
                    continue
                key = frozenset(((x, y), (y, z), (z, t), (t, x)))
                cyc = frozenset(frozenset(p) for p in key)
                if cyc in seen:
                    continue
                seen.add(cyc)
                out.append((x, y, z, t))
    return out


def candidate_moves(net: Network, sols=None) -> list[tuple[str, tuple[int, ...]]]:
    """Sites where some move might apply (cheap structural filter; certificates are checked on application)."""
    out = []
    by_pair = {}
    for i, e in enumerate(net.edges):
        by_pair.setdefault(e.pair(), []).append(i)
    for ids in by_pair.values():
        for a, b in zip(ids, ids[1:]):
            out.append(("Parallel", (a, b)))
    for v in range(net.t + 1, net.n + 1):
        if net.degree(v) == 2:
            out.append(("Series", (v,)))
    if net.t == 4:
        sols = sols if sols is not None else basis_solutions(net)
        for e in net.edges:
            if not (net.is_terminal(e.u) and net.is_terminal(e.v)) and equal_potentials(net, e.u, e.v, sols):
                out.append(("MergeSamePotential", (e.u, e.v)))
    for tri in facial_triangles(net):
        out.append(("DeltaY", tri))
    for v in range(net.t + 1, net.n + 1):
        if net.degree(v) == 3 and len(set(net.neighbors(v))) == 3:
            out.append(("YDelta", (v,)))
    if net.t == 4:
        for c0, c1, c2, c3 in four_cycles(net):
            # the four distinct placements: which opposite pair of cycle edges gets v and w,
            # and which side faces the port {1, 4}
            for lab in ((c0, c1, c2, c3), (c1, c0, c3, c2), (c1, c2, c3, c0), (c2, c1, c0, c3)):
                out.append(("BoxH", lab))
        for e in net.edges:
            if not net.is_terminal(e.u) and not net.is_terminal(e.v) and net.degree(e.u) == 3 == net.degree(e.v):
                out.append(("BoxHInverse", (e.u, e.v)))
    return out
