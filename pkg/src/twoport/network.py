"""Electrical networks with terminals on the outer face, and their planar embeddings.

Vertices are ``1..n``; the terminals are ``1..t`` in counterclockwise order along
the boundary. The embedding is stored as a rotation system of the network
augmented by a virtual root vertex ``0`` joined to every terminal. The virtual
edge of terminal ``u`` has id ``-u``; real edges use their index in ``edges``.

``rotation[v]`` is the counterclockwise cyclic order of edge ids around ``v``.
The network is circular-planar exactly when the augmented graph satisfies
Euler's formula and the root sees the terminals in the order ``t, ..., 1``
(the root sits outside the disc, which reverses the orientation).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .scalars import Scalar, to_scalar

ROOT = 0


class NetworkError(ValueError):
    """A network violates one of its structural invariants."""


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    R: Scalar

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise KeyError(f"vertex {x} is not an endpoint of {self}")

    @property
    def conductance(self) -> Scalar:
        return 1 / self.R

    def pair(self) -> tuple[int, int]:
        return (self.u, self.v) if self.u <= self.v else (self.v, self.u)


def parallel_resistance(a: Scalar, b: Scalar) -> Scalar:
    return a * b / (a + b)


class Network:
    """A connected weighted graph with ``t`` terminals and a planar embedding.

    Instances are treated as immutable. Parallel edges are merged on
    construction unless ``merge_parallel=False`` (tilings produce genuine
    multigraphs). When no rotation is supplied, one is searched for.
    """

    def __init__(
        self,
        n: int,
        t: int,
        edges: Iterable,
        rotation: Mapping[int, Sequence[int]] | None = None,
        *,
        rotation_by: str = "neighbor",
        merge_parallel: bool = True,
        embed: bool = True,
    ):
        self.n = int(n)
        self.t = int(t)
        raw = []
        for e in edges:
            if isinstance(e, Edge):
                raw.append(e)
            else:
                u, v, R = e
                raw.append(Edge(int(u), int(v), to_scalar(R)))
        if rotation is not None and rotation_by == "neighbor":
            rotation = {int(k): list(v) for k, v in rotation.items()}
        edge_list, rot = _normalize(raw, self.t, rotation, rotation_by, merge_parallel)
        self.edges: tuple[Edge, ...] = tuple(edge_list)
        self.rotation: dict[int, tuple[int, ...]] | None = rot
        if self.rotation is None and embed:
            self.rotation = find_embedding(self.n, self.t, self.edges)
        self.rotation = canonical_rotation(self.rotation)
        self._incident = None
        self._key = None

    # -- basic structure ----------------------------------------------------
    @property
    def terminals(self) -> tuple[int, ...]:
        return tuple(range(1, self.t + 1))

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_terminal(self, v: int) -> bool:
        return 1 <= v <= self.t

    def incident(self, v: int) -> list[int]:
        if self._incident is None:
            inc = {x: [] for x in range(1, self.n + 1)}
            for i, e in enumerate(self.edges):
                inc.setdefault(e.u, []).append(i)
                if e.v != e.u:
                    inc.setdefault(e.v, []).append(i)
            self._incident = inc
        return self._incident.get(v, [])

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    def neighbors(self, v: int) -> list[int]:
        return [self.edges[i].other(v) for i in self.incident(v)]

    def edge_between(self, u: int, v: int) -> int | None:
        for i in self.incident(u):
            if self.edges[i].other(u) == v:
                return i
        return None

    def is_simple(self) -> bool:
        pairs = [e.pair() for e in self.edges]
        return len(set(pairs)) == len(pairs) and all(u != v for u, v in pairs)

    def is_rational(self) -> bool:
        return all(e.R.is_rational() for e in self.edges)

    def edge_set(self) -> frozenset:
        return frozenset(e.pair() for e in self.edges)

    def other_end(self, eid: int, x: int) -> int:
        if eid < 0:
            return ROOT if x == -eid else -eid
        return self.edges[eid].other(x)

    def faces(self) -> list[list[tuple[int, int]]]:
        """Faces of the augmented graph as lists of darts ``(edge id, tail)``."""
        if self.rotation is None:
            raise NetworkError("network has no embedding")
        return trace_faces(self, self.rotation)

    def neighbor_rotation(self) -> dict[int, list[int]]:
        """Rotation as neighbor lists with the boundary gap between the last and first entry."""
        if self.rotation is None:
            return {}
        out = {}
        for v in range(1, self.n + 1):
            cyc = list(self.rotation.get(v, ()))
            if self.is_terminal(v) and -v in cyc:
                k = cyc.index(-v)
                cyc = cyc[k + 1:] + cyc[:k]
            out[v] = [self.edges[i].other(v) for i in cyc]
        return out

    def canonical_key(self):
        if self._key is None:
            self._key = canonical_key(self)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return (self.n, self.t, self.edges, self.rotation) == (other.n, other.t, other.edges, other.rotation)

    def __hash__(self):
        return hash((self.n, self.t, self.edges))

    def __repr__(self):
        es = ", ".join(f"{e.u}{'-'}{e.v}:{e.R}" for e in self.edges)
        return f"{type(self).__name__}(n={self.n}, t={self.t}, [{es}])"


class TwoPortNetwork(Network):
    """A network with four terminals, ports ``{1, 4}`` and ``{2, 3}``."""

    PORTS = ((1, 4), (2, 3))

    def __init__(self, n, edges, rotation=None, **kw):
        kw.pop("t", None)
        super().__init__(n, 4, edges, rotation, **kw)

    @classmethod
    def from_network(cls, net: Network) -> "TwoPortNetwork":
        if net.t != 4:
            raise NetworkError(f"a two-port network needs 4 terminals, got {net.t}")
        if isinstance(net, TwoPortNetwork):
            return net
        obj = cls.__new__(cls)
        obj.n, obj.t, obj.edges, obj.rotation = net.n, 4, net.edges, net.rotation
        obj._incident = None
        obj._key = None
        return obj


def _normalize(raw, t, rotation, rotation_by, merge_parallel):
    """Sort edges by endpoint pair, optionally merge parallels, and translate the rotation to edge ids."""
    order = sorted(range(len(raw)), key=lambda i: (raw[i].pair(), raw[i].R.key(), i))
    edges = []
    remap = {}
    by_pair = {}
    for i in order:
        e = raw[i]
        u, v = e.pair()
        e = Edge(u, v, e.R)
        if merge_parallel and u != v and (u, v) in by_pair:
            j = by_pair[(u, v)]
            edges[j] = Edge(u, v, parallel_resistance(edges[j].R, e.R))
            remap[i] = j
            continue
        by_pair.setdefault((u, v), len(edges))
        remap[i] = len(edges)
        edges.append(e)
    if rotation is None:
        return edges, None
    rot = {}
    if rotation_by == "neighbor":
        index = {}
        for j, e in enumerate(edges):
            index.setdefault((e.u, e.v), j)
        for v, nbrs in rotation.items():
            if v == ROOT:
                continue
            seq = []
            for w in nbrs:
                j = index.get((min(v, w), max(v, w)))
                if j is None:
                    raise NetworkError(f"rotation of vertex {v} lists {w}, which is not a neighbor")
                if j not in seq:
                    seq.append(j)
            if 1 <= v <= t:
                seq.append(-v)
            rot[v] = tuple(seq)
        # a vertex with at most one edge has only one possible rotation
        ends = {}
        for j, e in enumerate(edges):
            ends.setdefault(e.u, []).append(j)
            ends.setdefault(e.v, []).append(j)
        for v, ids in ends.items():
            if v not in rot and len(ids) == 1:
                rot[v] = (ids[0], -v) if 1 <= v <= t else (ids[0],)
        for v in range(1, t + 1):
            rot.setdefault(v, (-v,))
    else:
        for v, ids in rotation.items():
            seq = []
            for i in ids:
                j = i if i < 0 else remap[i]
                if j not in seq:
                    seq.append(j)
            rot[v] = tuple(seq)
    rot[ROOT] = tuple(-u for u in range(t, 0, -1))
    return edges, rot


# -- embedding ---------------------------------------------------------------

def canonical_rotation(rot):
    """Start every cyclic order at its smallest id so equal embeddings compare equal."""
    if rot is None:
        return None
    out = {}
    for v, seq in rot.items():
        seq = tuple(seq)
        if seq:
            k = seq.index(min(seq))
            seq = seq[k:] + seq[:k]
        out[v] = seq
    return out

def _other(edges, eid, x):
    if eid < 0:
        return ROOT if x == -eid else -eid
    return edges[eid].other(x)


def trace_faces(net: Network, rotation, edge_ids=None) -> list[list[tuple[int, int]]]:
    """Trace the faces of the augmented graph; each face keeps itself on the left.

    ``edge_ids`` restricts the traversal to a subset of the real edges, which
    ``rotation`` must then list exclusively.
    """
    edges = net.edges
    pos = {v: {e: k for k, e in enumerate(seq)} for v, seq in rotation.items()}
    darts = []
    for i, e in enumerate(edges):
        if edge_ids is not None and i not in edge_ids:
            continue
        darts.append((i, e.u))
        darts.append((i, e.v))
    for u in range(1, net.t + 1):
        darts.append((-u, u))
        darts.append((-u, ROOT))
    seen = set()
    faces = []
    for start in darts:
        if start in seen:
            continue
        face = []
        d = start
        while d not in seen:
            seen.add(d)
            face.append(d)
            eid, tail = d
            head = _other(edges, eid, tail)
            seq = rotation[head]
            k = pos[head][eid]
            nxt = seq[(k - 1) % len(seq)]
            d = (nxt, head)
        faces.append(face)
    return faces


def dart_face_index(faces) -> dict:
    return {d: fi for fi, f in enumerate(faces) for d in f}


def embedding_problems(net: Network, rotation=None) -> list[str]:
    """Return reasons why ``rotation`` is not a valid circular-planar embedding (empty if valid)."""
    rotation = net.rotation if rotation is None else rotation
    if rotation is None:
        return ["no planar embedding with the terminals in counterclockwise order exists"]
    probs = []
    for v in range(1, net.n + 1):
        want = set(net.incident(v))
        if net.is_terminal(v):
            want.add(-v)
        got = rotation.get(v)
        if got is None or set(got) != want or len(got) != len(want):
            probs.append(f"rotation at vertex {v} does not list exactly its incident edges")
    root = rotation.get(ROOT)
    if root is None or sorted(root) != sorted(-u for u in range(1, net.t + 1)):
        probs.append("root rotation must list every terminal once")
    if probs:
        return probs
    k = root.index(-net.t)
    cyc = root[k:] + root[:k]
    if net.t >= 3 and tuple(cyc) != tuple(-u for u in range(net.t, 0, -1)):
        probs.append("terminals are not in counterclockwise order on the outer face")
    faces = trace_faces(net, rotation)
    chi = (net.n + 1) - (net.m + net.t) + len(faces)
    if chi != 2:
        probs.append(
            f"rotation system is not planar with terminals on one face in order 1..{net.t} "
            f"(V - E + F = {chi}, expected 2)"
        )
    return probs


def find_embedding(n: int, t: int, edges: Sequence[Edge]) -> dict[int, tuple[int, ...]] | None:
    """Search for a rotation system placing the terminals counterclockwise on the outer face.

    Edges are subdivided so multigraphs embed; for ``t >= 3`` a rim cycle
    through the terminals and the root hub form a subdivided wheel, whose
    embedding is unique up to reflection, pinning the terminal order.
    """
    g = nx.Graph()
    g.add_nodes_from(range(0, n + 1))
    for i, e in enumerate(edges):
        if e.u == e.v:
            return None
        g.add_edge(e.u, ("e", i))
        g.add_edge(("e", i), e.v)
    for u in range(1, t + 1):
        g.add_edge(ROOT, u)
    if t >= 3:
        for u in range(1, t + 1):
            w = u % t + 1
            g.add_edge(u, ("c", u))
            g.add_edge(("c", u), w)
    ok, emb = nx.check_planarity(g)
    if not ok:
        return None
    rot = {}
    for v in range(0, n + 1):
        seq = []
        for w in reversed(list(emb.neighbors_cw_order(v))):
            if isinstance(w, tuple):
                if w[0] == "e":
                    seq.append(w[1])
            elif v == ROOT:
                seq.append(-w)
            elif w == ROOT:
                seq.append(-v)
        rot[v] = tuple(seq)
    if t >= 3:
        root = rot[ROOT]
        k = root.index(-t)
        cyc = root[k:] + root[:k]
        if tuple(cyc) != tuple(-u for u in range(t, 0, -1)):
            rot = {v: tuple(reversed(seq)) for v, seq in rot.items()}
    return rot


# -- validation ----------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    faces: int
    vertices: int
    edges: int
    simple: bool


def validate(net: Network) -> ValidationReport:
    """Check every structural invariant of ``net``; raise :class:`NetworkError` on the first failure."""
    if net.n < 1 or net.t < 1 or net.t > net.n:
        raise NetworkError(f"need 1 <= t <= n, got n={net.n}, t={net.t}")
    for e in net.edges:
        if not (1 <= e.u <= net.n and 1 <= e.v <= net.n):
            raise NetworkError(f"edge {e.u}-{e.v} references a vertex outside 1..{net.n}")
        if e.u == e.v:
            raise NetworkError(f"loop at vertex {e.u}")
        if e.R.sign() <= 0:
            raise NetworkError(f"edge {e.u}-{e.v} has nonpositive resistance {e.R}")
    if not is_connected(net):
        raise NetworkError("network is disconnected")
    probs = embedding_problems(net)
    if probs:
        raise NetworkError("; ".join(probs))
    nf = len(net.faces())
    return ValidationReport(faces=nf - net.t + 1, vertices=net.n, edges=net.m, simple=net.is_simple())


def is_connected(net: Network) -> bool:
    if net.n == 0:
        return False
    seen = {1}
    stack = [1]
    while stack:
        x = stack.pop()
        for y in net.neighbors(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == net.n


# -- named shapes --------------------------------------------------------------

@dataclass(frozen=True)
class NamedShape:
    tag: str  # "Box", "H", "I" or "Other"
    witness: dict | None = None


_PATTERNS = {
    "Box": (4, [(1, 2), (2, 3), (3, 4), (1, 4)]),
    "H": (6, [(1, 5), (2, 5), (3, 6), (4, 6), (5, 6)]),
    "I": (6, [(1, 5), (4, 5), (2, 6), (3, 6), (5, 6)]),
}


def classify_shape(net: Network) -> NamedShape:
    if net.t != 4 or not net.is_simple():
        return NamedShape("Other")
    es = net.edge_set()
    internal = list(range(5, net.n + 1))
    for tag, (nv, pattern) in _PATTERNS.items():
        if nv != net.n or len(pattern) != net.m:
            continue
        for perm in itertools.permutations(internal):
            ren = {k + 5: perm[k] for k in range(len(internal))}
            f = lambda x: ren.get(x, x)
            mapped = frozenset(tuple(sorted((f(a), f(b)))) for a, b in pattern)
            if mapped == es:
                return NamedShape(tag, {"internal": {str(k): v for k, v in ren.items()}})
    return NamedShape("Other")


# -- canonical keys --------------------------------------------------------------

def canonical_key(net: Network):
    """Key equal for networks that differ only by renaming non-terminal vertices.

    Colour refinement seeded by terminal identities narrows the candidate
    labellings; the key is the minimum over every labelling consistent with the
    refined cells, which is exhaustive (exponential in the worst case).
    """
    n, t = net.n, net.t
    adj = {v: [] for v in range(1, n + 1)}
    for e in net.edges:
        adj[e.u].append((e.v, e.R.key()))
        adj[e.v].append((e.u, e.R.key()))
    color = {v: (v if v <= t else t + 1) for v in range(1, n + 1)}
    ncls = len(set(color.values()))
    while True:
        sig = {v: (color[v], tuple(sorted((color[w], r) for w, r in adj[v]))) for v in adj}
        ranks = {s: k for k, s in enumerate(sorted(set(sig.values())))}
        color = {v: ranks[sig[v]] for v in adj}
        k = len(ranks)
        if k == ncls:
            break
        ncls = k
    internal = sorted(range(t + 1, n + 1), key=lambda v: color[v])
    cells = [list(g) for _, g in itertools.groupby(internal, key=lambda v: color[v])]
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = [v for cell in choice for v in cell]
        lab = {v: v for v in range(1, t + 1)}
        lab.update({v: t + 1 + k for k, v in enumerate(order)})
        cand = tuple(sorted(
            (min(lab[e.u], lab[e.v]), max(lab[e.u], lab[e.v]), e.R.key()) for e in net.edges
        ))
        if best is None or cand < best:
            best = cand
    return (n, t, best)
