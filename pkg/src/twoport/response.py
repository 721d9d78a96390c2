"""Response matrix and voltage drops of a two-port network."""
from __future__ import annotations

from dataclasses import dataclass

from .network import Network
from .scalars import Scalar
from .solver import solve_two_port_many


@dataclass(frozen=True)
class ResponseSummary:
    """``M`` maps (dU14, dU23) to (I_1, I_2); ``drop`` maps it to U_1 - U_2."""

    M: tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]]
    drop: tuple[Scalar, Scalar]

    @property
    def second_drop(self) -> tuple[Scalar, Scalar]:
        # U_3 - U_4 = dU14 - dU23 - (U_1 - U_2)
        return (1 - self.drop[0], -1 - self.drop[1])

    def fingerprint(self) -> tuple:
        return (self.M[0][0], self.M[0][1], self.M[1][0], self.M[1][1], self.drop[0], self.drop[1])

    def is_symmetric(self) -> bool:
        return self.M[0][1] == self.M[1][0]

    def apply(self, d14, d23) -> dict:
        return {
            "I1": self.M[0][0] * d14 + self.M[0][1] * d23,
            "I2": self.M[1][0] * d14 + self.M[1][1] * d23,
            "drop": self.drop[0] * d14 + self.drop[1] * d23,
            "second_drop": self.second_drop[0] * d14 + self.second_drop[1] * d23,
        }


def basis_solutions(net: Network):
    """Solutions for the basis inputs (1, 0) and (0, 1)."""
    return solve_two_port_many(net, [(1, 0), (0, 1)])


def summarize(net: Network) -> ResponseSummary:
    s1, s2 = basis_solutions(net)
    i1, i2 = s1.incoming, s2.incoming
    M = ((i1[0], i2[0]), (i1[1], i2[1]))
    drop = (s1.U[1] - s1.U[2], s2.U[1] - s2.U[2])
    return ResponseSummary(M, drop)


def pi_equivalent(n1: Network, n2: Network) -> bool:
    """Equal responses and equal voltage drops."""
    return summarize(n1).fingerprint() == summarize(n2).fingerprint()


def response_equivalent(n1: Network, n2: Network) -> bool:
    return summarize(n1).M == summarize(n2).M
