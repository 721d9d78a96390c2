"""Reduction of planar two-port networks to at most 4 edges or an H-network."""
from __future__ import annotations

import heapq
import itertools
import os
from dataclasses import dataclass, field

from .network import Network, TwoPortNetwork, classify_shape
from .response import basis_solutions, pi_equivalent
from .solver import solve_two_port
from .transforms import (
    Move,
    MoveError,
    candidate_moves,
    do_move,
    equal_potentials,
    facial_triangles,
    four_cycles,
    replay,
)

DEFAULT_BUDGET = 100_000
BUDGET_ENV = "TWOPORT_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_BUDGET


class BudgetExhausted(RuntimeError):
    def __init__(self, msg, best: "ReductionResult"):
        super().__init__(msg)
        self.best = best


@dataclass
class ReductionResult:
    initial: Network
    final: Network
    moves: list[Move]
    states: int = 0
    depth: int = 0
    stage: str = "greedy"  # "greedy", "guided" or "search"
    stats: dict = field(default_factory=dict)

    @property
    def shape(self) -> str:
        return classify_shape(self.final).tag


def is_target(net: Network) -> bool:
    return net.m <= 4 or classify_shape(net).tag == "H"


# -- greedy closure -----------------------------------------------------------------

def _greedy_step(net: Network):
    """One edge-count-reducing move, or None at a fixpoint."""
    seen = {}
    for i, e in enumerate(net.edges):
        j = seen.setdefault(e.pair(), i)
        if j != i:
            return do_move(net, "Parallel", (j, i))
    for v in range(net.t + 1, net.n + 1):
        if net.degree(v) == 2:
            try:
                return do_move(net, "Series", (v,))
            except MoveError:
                pass
    sols = basis_solutions(net)
    for e in net.edges:
        if net.is_terminal(e.u) and net.is_terminal(e.v):
            continue
        if equal_potentials(net, e.u, e.v, sols):
            try:
                return do_move(net, "MergeSamePotential", (e.u, e.v), sols=sols)
            except MoveError:
                pass
    return None


def greedy(net: Network, moves: list[Move] | None = None) -> tuple[Network, list[Move]]:
    moves = [] if moves is None else moves
    while True:
        step = _greedy_step(net)
        if step is None:
            return net, moves
        net, mv = step
        moves.append(mv)


# -- guided pass ------------------------------------------------------------------------

def _guided(net: Network, moves: list[Move], limit: int = 50):
    """Proof-shaped moves: Box-H on 4-cycles and Delta-Y on triangles, kept when the closure gains."""
    for _ in range(limit):
        if is_target(net):
            return net, moves, True
        improved = False
        sites = [("BoxH", c) for cyc in four_cycles(net)
                 for c in ((cyc[0], cyc[1], cyc[2], cyc[3]), (cyc[1], cyc[0], cyc[3], cyc[2]),
                           (cyc[1], cyc[2], cyc[3], cyc[0]), (cyc[2], cyc[1], cyc[0], cyc[3]))]
        sites += [("DeltaY", tri) for tri in facial_triangles(net)]
        sols = basis_solutions(net) if sites else None
        for kind, at in sites:
            try:
                nxt, mv = do_move(net, kind, at, sols=sols)
            except MoveError:
                continue
            nxt, extra = greedy(nxt, [mv])
            if nxt.m < net.m or is_target(nxt):
                net = nxt
                moves.extend(extra)
                improved = True
                break
        if not improved:
            return net, moves, is_target(net)
    return net, moves, is_target(net)


# -- best-first search --------------------------------------------------------------------

def _priority(net: Network):
    return (net.m, -net.n, net.canonical_key())


def _search(start: Network, prefix: list[Move], budget: int):
    counter = itertools.count()
    heap = [(_priority(start), next(counter), start, prefix)]
    visited = {start.canonical_key()}
    best = (start, prefix)
    expanded = 0
    while heap:
        _, _, net, moves = heapq.heappop(heap)
        if is_target(net):
            return net, moves, expanded, True
        if _priority(net) < _priority(best[0]):
            best = (net, moves)
        if expanded >= budget:
            break
        expanded += 1
        sols = basis_solutions(net)
        for kind, at in candidate_moves(net, sols):
            try:
                nxt, mv = do_move(net, kind, at, sols=sols)
            except MoveError:
                continue
            nxt, path = greedy(nxt, moves + [mv])
            key = nxt.canonical_key()
            if key in visited:
                continue
            visited.add(key)
            heapq.heappush(heap, (_priority(nxt), next(counter), nxt, path))
    return best[0], best[1], expanded, False


def reduce(net: Network, budget: int | None = None, *, verify: bool = True) -> ReductionResult:
    """Reduce ``net`` by Pi-equivalent moves until it has at most 4 edges or is an H-network.

    The greedy closure runs first, then the guided pass, then a best-first
    search over all applicable moves with at most ``budget`` expansions.
    """
    if net.t != 4:
        raise ValueError("reduce expects a two-port network (4 terminals)")
    if not isinstance(net, TwoPortNetwork):
        net = TwoPortNetwork.from_network(net)
    budget = default_budget() if budget is None else budget
    cur, moves = greedy(net)
    stage = "greedy"
    states = 0
    if not is_target(cur):
        cur, moves, ok = _guided(cur, moves)
        stage = "guided"
        if not ok:
            cur, moves, states, ok = _search(cur, moves, budget)
            stage = "search"
            if not ok:
                res = ReductionResult(net, cur, moves, states, len(moves), stage)
                raise BudgetExhausted(
                    f"budget of {budget} states exhausted; best network has {cur.m} edges", res
                )
    res = ReductionResult(net, cur, moves, states, len(moves), stage)
    if verify and not pi_equivalent(net, cur):  # pragma: no cover - would mean a broken move
        raise AssertionError("reduction result is not Pi-equivalent to its input")
    return res


def reduce_rational_floor(net: Network, budget: int | None = None) -> ReductionResult:
    """:func:`reduce` for rational resistances; every network along the way stays rational."""
    if not net.is_rational():
        raise ValueError("reduce_rational_floor needs all resistances rational")
    res = reduce(net, budget)
    if not res.final.is_rational():  # pragma: no cover - moves are rational maps
        raise AssertionError("a move produced an irrational resistance from rational input")
    return res


# -- sharpness --------------------------------------------------------------------------------

def counterexample_quantities(net: Network, d14, d23) -> dict:
    sol = solve_two_port(net, d14, d23)
    I = sol.incoming
    return {
        "U1-U2": sol.U[1] - sol.U[2],
        "U3-U4": sol.U[3] - sol.U[4],
        "I1": I[0],
        "I2": I[1],
        "dU14": sol.U[1] - sol.U[4],
        "dU23": sol.U[2] - sol.U[3],
    }


def verify_counterexample(net: Network, d14, d23) -> bool:
    """True iff all 15 pairwise ratios of the six boundary quantities are irrational."""
    if classify_shape(net).tag != "H":
        raise ValueError("verify_counterexample expects an H-network")
    if not net.is_rational():
        raise ValueError("verify_counterexample expects rational resistances")
    vals = list(counterexample_quantities(net, d14, d23).values())
    if any(v.is_zero() for v in vals):
        return False
    return all(not (p / q).is_rational() for p, q in itertools.combinations(vals, 2))


__all__ = [
    "ReductionResult",
    "BudgetExhausted",
    "reduce",
    "reduce_rational_floor",
    "verify_counterexample",
    "counterexample_quantities",
    "greedy",
    "is_target",
    "replay",
    "default_budget",
]
