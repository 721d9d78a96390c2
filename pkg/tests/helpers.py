"""Shared builders and random generators for the test-suite."""
from __future__ import annotations

import random
from fractions import Fraction

from twoport.network import Network, TwoPortNetwork, is_connected
from twoport.scalars import Scalar


def rand_r(rng: random.Random, irrational: bool = False) -> Scalar:
    a = Fraction(rng.randint(1, 9), rng.randint(1, 5))
    if irrational and rng.random() < 0.5:
        b = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
        x = Scalar(a, b)
        if x.sign() > 0:
            return x
    return Scalar(a)


def box(a, b, c, d) -> TwoPortNetwork:
    return TwoPortNetwork(4, [(1, 2, a), (1, 4, b), (3, 4, c), (2, 3, d)])


def h_net(r15, r25, r36, r46, r56) -> TwoPortNetwork:
    return TwoPortNetwork(6, [(1, 5, r15), (2, 5, r25), (3, 6, r36), (4, 6, r46), (5, 6, r56)])


def h_from_box(a, b, c, d) -> TwoPortNetwork:
    s = a + b + c + d
    return h_net(a * b / s, a * d / s, c * d / s, b * c / s, b * d / s)


def i_net(r15, r45, r26, r36, r56) -> TwoPortNetwork:
    return TwoPortNetwork(6, [(1, 5, r15), (4, 5, r45), (2, 6, r26), (3, 6, r36), (5, 6, r56)])


def random_network(rng: random.Random, *, max_edges: int = 10, max_n: int = 8, t: int = 4,
                   irrational: bool = False) -> Network:
    """Rejection-sample a connected simple network with terminals 1..t counterclockwise on the outer face."""
    while True:
        n = rng.randint(max(t, 2), max_n)
        pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
        lo = n - 1
        hi = min(max_edges, len(pairs))
        if lo > hi:
            continue
        m = rng.randint(lo, hi)
        chosen = rng.sample(pairs, m)
        edges = [(u, v, rand_r(rng, irrational)) for u, v in chosen]
        if t == 4:
            net = TwoPortNetwork(n, edges)
        else:
            net = Network(n, t, edges)
        if net.rotation is None or not is_connected(net):
            continue
        return net


def _gauss_jordan(rows: list[list[Scalar]], ncols: int) -> list[Scalar]:
    """Solve an overdetermined but consistent augmented system; plain pivoting on any nonzero entry."""
    rows = [r[:] for r in rows]
    piv_cols = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    assert len(piv_cols) == ncols, "oracle system is singular"
    assert all(row[-1].is_zero() for row in rows[r:]), "oracle system is inconsistent"
    return [rows[i][-1] for i in range(ncols)]


def oracle_two_port(net: Network, d14, d23) -> tuple[dict, tuple]:
    """Full nodal analysis with the port currents J1 (into 1, out of 4) and J2 (into 2, out of 3) as unknowns.

    Returns (U, (J1, J2)) with U_1 = 0.
    """
    n = net.n
    zero = Scalar(0)
    cols = n + 2  # U_1..U_n, J1, J2
    rows = []
    inj = {1: (1, 0), 4: (-1, 0), 2: (0, 1), 3: (0, -1)}
    for k in range(1, n + 1):
        row = [zero] * (cols + 1)
        for e in net.edges:
            if k in (e.u, e.v):
                o = e.v if e.u == k else e.u
                c = e.R.inverse()
                row[k - 1] += c
                row[o - 1] -= c
        a, b = inj.get(k, (0, 0))
        row[n] = Scalar(-a)
        row[n + 1] = Scalar(-b)
        rows.append(row)
    def constraint(coeffs, rhs):
        row = [zero] * (cols + 1)
        for v, c in coeffs.items():
            row[v - 1] = Scalar(c)
        row[-1] = rhs
        rows.append(row)
    constraint({1: 1}, zero)
    constraint({1: 1, 4: -1}, Scalar(0) + d14)
    constraint({2: 1, 3: -1}, Scalar(0) + d23)
    x = _gauss_jordan(rows, cols)
    return {v: x[v - 1] for v in range(1, n + 1)}, (x[n], x[n + 1])


def _with_parallel(rng: random.Random, net: Network, irrational: bool):
    i = rng.randrange(net.m)
    e = net.edges[i]
    edges = [(x.u, x.v, x.R) for x in net.edges] + [(e.u, e.v, rand_r(rng, irrational))]
    out = TwoPortNetwork(net.n, edges, merge_parallel=False)
    if out.rotation is None:
        return None
    ids = [j for j, x in enumerate(out.edges) if x.pair() == e.pair()]
    return out, (ids[0], ids[1])


def move_instances(kind: str, count: int, seed: int = 0, *, irrational: bool | None = None):
    """Yield ``count`` triples (net, at, result) where the move ``kind`` applies at ``at``.

    ``irrational=None`` alternates between rational and Q(sqrt 2) resistances.
    """
    from twoport.response import basis_solutions
    from twoport.transforms import MoveError, candidate_moves, do_move

    rng = random.Random(seed)
    made = 0
    rounds = 0
    while made < count:
        rounds += 1
        irr = (rounds % 2 == 0) if irrational is None else irrational
        net = random_network(rng, irrational=irr)
        if kind == "Parallel":
            got = _with_parallel(rng, net, irr)
            if got is None:
                continue
            net, at = got
            sites = [at]
        elif kind == "BoxHInverse":
            sols = basis_solutions(net)
            boxes = [at for k, at in candidate_moves(net, sols) if k == "BoxH"]
            rng.shuffle(boxes)
            for at in boxes:
                try:
                    net = do_move(net, "BoxH", at, sols=sols)[0]
                    break
                except MoveError:
                    continue
            else:
                continue
            sites = [at for k, at in candidate_moves(net) if k == "BoxHInverse"]
        else:
            sites = [at for k, at in candidate_moves(net) if k == kind]
        rng.shuffle(sites)
        sols = basis_solutions(net) if sites else None
        used = 0
        for at in sites:
            try:
                out, mv = do_move(net, kind, at, sols=sols)
            except MoveError:
                continue
            yield net, at, out
            made += 1
            used += 1
            if made >= count or used >= 2:
                break


# -- tilings -------------------------------------------------------------------------------

def poly(*pts):
    from twoport.tiling import OrthoPolygon
    return OrthoPolygon([(Scalar(0) + x, Scalar(0) + y) for x, y in pts])


def rects(*boxes):
    from twoport.tiling import Rect, Tiling
    return Tiling(Rect.make(*(Scalar(0) + v for v in b)) for b in boxes)


R2 = Scalar(0, 1)
OCT_W = 10 - 2 * R2
PAPER_OCTAGON = [(0, 4), (0, 0), (1 + R2, 0), (1 + R2, R2), (9 - 4 * R2, R2), (9 - 4 * R2, 0), (OCT_W, 0), (OCT_W, 4)]
PAPER_T5 = [(0, 1, 0, 4), (1, 1 + R2, 0, R2), (1, 9 - 2 * R2, R2, 4), (9 - 4 * R2, 9 - 2 * R2, 0, R2),
            (9 - 2 * R2, OCT_W, 0, 4)]


def guillotine(rng: random.Random, tiling, splits: int):
    """Refine a tiling by cutting random rectangles at random rational fractions."""
    from twoport.tiling import Rect, Tiling
    out = list(tiling)
    for _ in range(splits):
        r = out.pop(rng.randrange(len(out)))
        f = Fraction(rng.randint(1, 4), 5)
        if rng.random() < 0.5:
            x = r.x0 + r.width * f
            out += [Rect(r.x0, x, r.y0, r.y1), Rect(x, r.x1, r.y0, r.y1)]
        else:
            y = r.y0 + r.height * f
            out += [Rect(r.x0, r.x1, r.y0, y), Rect(r.x0, r.x1, y, r.y1)]
    return Tiling(out)


def grid(nx: int, ny: int, side=1):
    return rects(*[(i * side, (i + 1) * side, j * side, (j + 1) * side) for i in range(nx) for j in range(ny)])


def fixture_tilings():
    """(name, polygon, tiling) triples: squares, grids, the paper's octagon tiling and refinements."""
    from twoport.tiling import square_subdivision
    out = [
        ("unit square", poly((0, 0), (1, 0), (1, 1), (0, 1)), grid(1, 1)),
        ("two squares", poly((0, 0), (2, 0), (2, 1), (0, 1)), grid(2, 1)),
        ("two stacked squares", poly((0, 0), (1, 0), (1, 2), (0, 2)), grid(1, 2)),
        ("grid 3x3", poly((0, 0), (3, 0), (3, 3), (0, 3)), grid(3, 3)),
        ("grid 2x4", poly((0, 0), (2, 0), (2, 4), (0, 4)), grid(2, 4)),
        ("grid 4x2 sqrt2", poly((0, 0), (4 * R2, 0), (4 * R2, 2 * R2), (0, 2 * R2)), grid(4, 2, R2)),
        ("irrational strip", poly((0, 0), (1 + R2, 0), (1 + R2, 1), (0, 1)), rects((0, 1, 0, 1), (1, 1 + R2, 0, 1))),
        ("paper octagon T5", poly(*PAPER_OCTAGON), rects(*PAPER_T5)),
    ]
    out.append(("paper octagon squares", out[-1][1], square_subdivision(out[-1][2])))
    l_shape = poly((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2))
    out.append(("L squares", l_shape, rects((0, 1, 0, 1), (1, 2, 0, 1), (0, 1, 1, 2))))
    pi = poly((0, 3), (0, 0), (2, 0), (2, 1), (3, 1), (3, 0), (5, 0), (5, 3))
    pi_sq = rects(*[(i, i + 1, j, j + 1) for i in range(5) for j in range(3) if (i, j) != (2, 0)])
    out.append(("rational Pi squares", pi, pi_sq))
    t_shape = poly((0, 2), (0, 0), (1, 0), (1, -1), (3, -1), (3, 0), (4, 0), (4, 2))
    out.append(("T squares", t_shape, rects(*[(i, i + 1, j, j + 1) for i in range(4) for j in range(2)],
                                              (1, 2, -1, 0), (2, 3, -1, 0))))
    z_shape = poly((0, 2), (0, 0), (2, 0), (2, -1), (6, -1), (6, 0), (4, 0), (4, 2))
    out.append(("Z squares", z_shape, rects(*[(i, i + 1, j, j + 1) for i in range(4) for j in range(2)],
                                              *[(i, i + 1, -1, 0) for i in range(2, 6)])))
    rng = random.Random(2024)
    bases = [out[3], out[6], out[7], out[9], out[10], out[11], out[12]]
    for k in range(12):
        name, p, t = bases[k % len(bases)]
        out.append((f"{name} refined {k}", p, guillotine(rng, t, 2 + k % 5)))
    return out
