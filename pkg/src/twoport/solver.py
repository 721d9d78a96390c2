"""Exact solution of Ohm's law and Kirchhoff's current law, with or without port constraints."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .linalg import SingularSystemError, solve_exact
from .network import Network
from .scalars import Scalar, to_scalar


@dataclass(frozen=True)
class Circuit:
    """A network with boundary data.

    Terminal mode carries ``voltages`` (one per terminal); two-port mode
    carries ``d14`` and ``d23``, the port voltage differences.
    """

    network: Network
    voltages: tuple[Scalar, ...] | None = None
    d14: Scalar | None = None
    d23: Scalar | None = None

    @property
    def mode(self) -> str:
        return "terminal" if self.voltages is not None else "two-port"

    def solve(self) -> "Solution":
        if self.voltages is not None:
            return solve_terminal(self.network, self.voltages)
        return solve_two_port(self.network, self.d14, self.d23)


@dataclass(frozen=True)
class Solution:
    network: Network
    U: dict  # vertex -> Scalar
    edge_currents: tuple[Scalar, ...]  # current along edges[i] from e.u to e.v

    def current(self, k: int, l: int) -> Scalar:
        """I_kl, summed over parallel edges; zero when k and l are not adjacent."""
        total = self.U[k] * 0
        for i in self.network.incident(k):
            e = self.network.edges[i]
            if e.other(k) == l:
                total = total + (self.edge_currents[i] if e.u == k else -self.edge_currents[i])
        return total

    def outflow(self, k: int) -> Scalar:
        total = self.U[k] * 0
        for i in self.network.incident(k):
            e = self.network.edges[i]
            total = total + (self.edge_currents[i] if e.u == k else -self.edge_currents[i])
        return total

    @property
    def incoming(self) -> tuple[Scalar, ...]:
        """Incoming currents I_u = sum_k I_uk at the terminals."""
        return tuple(self.outflow(u) for u in self.network.terminals)


def _currents(net: Network, U: dict) -> tuple[Scalar, ...]:
    return tuple((U[e.u] - U[e.v]) / e.R for e in net.edges)


def _zero(net: Network) -> Scalar:
    return net.edges[0].R * 0 if net.edges else Scalar(0)


def solve_terminal(net: Network, voltages: Sequence) -> Solution:
    """Solve a t-terminal circuit with prescribed terminal potentials."""
    voltages = [to_scalar(x) for x in voltages]
    if len(voltages) != net.t:
        raise ValueError(f"expected {net.t} terminal voltages, got {len(voltages)}")
    U = {u: voltages[u - 1] for u in range(1, net.t + 1)}
    inner = list(range(net.t + 1, net.n + 1))
    if inner:
        idx = {v: k for k, v in enumerate(inner)}
        zero = _zero(net)
        A = [[zero] * len(inner) for _ in inner]
        b = [[zero] for _ in inner]
        for e in net.edges:
            c = e.conductance
            for x, y in ((e.u, e.v), (e.v, e.u)):
                if x in idx:
                    r = idx[x]
                    A[r][r] = A[r][r] + c
                    if y in idx:
                        A[r][idx[y]] = A[r][idx[y]] - c
                    else:
                        b[r][0] = b[r][0] + c * U[y]
        X = solve_exact(A, b)
        for v, k in idx.items():
            U[v] = X[k][0]
    return Solution(net, U, _currents(net, U))


def _two_port_matrix(net: Network):
    """Assemble (I) at internal vertices, (P), and (B) in the unknowns U_2..U_n with U_1 = 0."""
    if net.t != 4:
        raise ValueError("two-port mode needs exactly 4 terminals")
    zero = _zero(net)
    n = net.n
    col = {v: v - 2 for v in range(2, n + 1)}
    rows = []

    def kcl_row(vertices):
        row = [zero] * (n - 1)
        for v in vertices:
            for i in net.incident(v):
                e = net.edges[i]
                c = e.conductance
                w = e.other(v)
                if v != 1:
                    row[col[v]] = row[col[v]] + c
                if w != 1:
                    row[col[w]] = row[col[w]] - c
        return row

    for k in range(5, n + 1):
        rows.append(kcl_row([k]))
    rows.append(kcl_row([1, 4]))
    b1 = [zero] * (n - 1)
    b1[col[4]] = zero - 1  # U_1 - U_4 = dU14 with U_1 = 0
    rows.append(b1)
    b2 = [zero] * (n - 1)
    b2[col[2]] = zero + 1
    b2[col[3]] = zero - 1
    rows.append(b2)
    return rows


def solve_two_port_many(net: Network, inputs: Sequence[tuple]) -> list[Solution]:
    """Solve the two-port system for several ``(dU14, dU23)`` inputs sharing one elimination."""
    A = _two_port_matrix(net)
    zero = _zero(net)
    ins = [(to_scalar(a), to_scalar(b)) for a, b in inputs]
    nrows = len(A)
    B = [[zero] * len(ins) for _ in range(nrows)]
    for j, (d14, d23) in enumerate(ins):
        B[nrows - 2][j] = d14
        B[nrows - 1][j] = d23
    try:
        X = solve_exact(A, B)
    except SingularSystemError as exc:  # pragma: no cover - guarded by the uniqueness theorem
        raise SingularSystemError(f"two-port system singular for {net!r}: {exc}") from exc
    out = []
    for j in range(len(ins)):
        U = {1: zero}
        for v in range(2, net.n + 1):
            U[v] = X[v - 2][j]
        out.append(Solution(net, U, _currents(net, U)))
    return out


def solve_two_port(net: Network, d14, d23) -> Solution:
    """Solve (C), (I), (P), (B) normalized by U_1 = 0."""
    return solve_two_port_many(net, [(d14, d23)])[0]


def energy_identity(sol: Solution) -> tuple[Scalar, Scalar]:
    """Both sides of sum_{k<l} (U_k - U_l) I_kl = sum_u U_u I_u."""
    net = sol.network
    lhs = _zero(net)
    for e, I in zip(net.edges, sol.edge_currents):
        lhs = lhs + (sol.U[e.u] - sol.U[e.v]) * I
    rhs = _zero(net)
    for u, I in zip(net.terminals, sol.incoming):
        rhs = rhs + sol.U[u] * I
    return lhs, rhs


def axiom_violations(sol: Solution, d14=None, d23=None) -> list[str]:
    """Re-check the circuit axioms on a computed solution; empty when all hold exactly."""
    net = sol.network
    bad = []
    for i, e in enumerate(net.edges):
        if sol.edge_currents[i] * e.R != sol.U[e.u] - sol.U[e.v]:
            bad.append(f"Ohm's law fails on edge {e.u}-{e.v}")
    for k in range(net.t + 1, net.n + 1):
        if not sol.outflow(k).is_zero():
            bad.append(f"Kirchhoff's law fails at vertex {k}")
    if d14 is not None:
        inc = sol.incoming
        if not (inc[0] + inc[3]).is_zero():
            bad.append("port isolation fails")
        if sol.U[1] - sol.U[4] != to_scalar(d14) or sol.U[2] - sol.U[3] != to_scalar(d23):
            bad.append("boundary conditions fail")
    return bad
