import random
from fractions import Fraction

import pytest

from helpers import box, h_net, i_net, oracle_two_port, random_network
from twoport.network import Network, TwoPortNetwork, classify_shape
from twoport.reduction import (
    BUDGET_ENV,
    BudgetExhausted,
    counterexample_quantities,
    default_budget,
    is_target,
    reduce,
    reduce_rational_floor,
    verify_counterexample,
)
from twoport.response import pi_equivalent
from twoport.scalars import Scalar, sqrt_d
from twoport.transforms import do_move, replay

F = Fraction
R2 = sqrt_d()
SHARP = dict(r15=4, r25=1, r36=2, r46=4, r56=2)
SHARP_IN = (10 - 2 * R2, 8 - 5 * R2)

# needs the search stage: a wheel around vertex 5 with an irrational spoke
WHEEL = TwoPortNetwork(5, [(1, 2, 1), (2, 3, 2), (3, 4, 3), (4, 1, F(1, 2)),
                           (1, 5, 1), (2, 5, R2), (3, 5, 1), (4, 5, 2)])


def test_i_network_reduces():
    net = i_net(1, 2, 3, 4, 5)
    res = reduce(net)
    assert res.final.m == 4 and pi_equivalent(net, res.final)
    assert res.moves[0].kind == "MergeSamePotential"


def test_cycle_with_pendant_gives_h():
    net = TwoPortNetwork(5, [(1, 2, 1), (2, 3, 2), (3, 5, 3), (5, 1, 4), (5, 4, 5)])
    res = reduce(net)
    assert res.shape == "H"
    assert [m.kind for m in res.moves][:1] == ["BoxH"]
    assert pi_equivalent(net, res.final)


def test_sharp_h_unchanged():
    net = h_net(**SHARP)
    res = reduce(net)
    assert res.final == net and res.moves == [] and res.final.m == 5


def test_sharpness_quantities():
    q = counterexample_quantities(h_net(**SHARP), *SHARP_IN)
    U, (J1, J2) = oracle_two_port(h_net(**SHARP), *SHARP_IN)
    assert (q["U1-U2"], q["U3-U4"], q["I1"], q["I2"]) == (U[1] - U[2], U[3] - U[4], J1, J2)
    # frozen after the oracle check above
    assert q["U1-U2"] == F(38, 23) + R2
    assert q["U3-U4"] == F(8, 23) + 2 * R2
    assert q["I1"] == Scalar(F(17, 23))
    assert q["I2"] == F(30, 23) - R2


def test_verify_counterexample():
    assert verify_counterexample(h_net(**SHARP), *SHARP_IN)
    assert verify_counterexample(h_net(**SHARP), -SHARP_IN[0], -SHARP_IN[1])
    assert not verify_counterexample(h_net(**SHARP), 0, 0)
    assert not verify_counterexample(h_net(1, 1, 1, 1, 1), 1, 0)
    with pytest.raises(ValueError):
        verify_counterexample(box(1, 1, 1, 1), 1, 0)
    with pytest.raises(ValueError):
        verify_counterexample(h_net(R2, 1, 1, 1, 1), 1, 0)


def test_rational_floor():
    res = reduce_rational_floor(box(1, 2, 3, 4))
    assert res.final.m <= 5 and res.final.is_rational()
    single = TwoPortNetwork(4, [(1, 2, 1), (2, 3, 1), (3, 4, 1)])
    assert reduce_rational_floor(single).final == single
    with pytest.raises(ValueError):
        reduce_rational_floor(WHEEL)


def test_search_stage_and_budget():
    res = reduce(WHEEL)
    assert res.stage == "search" and is_target(res.final)
    with pytest.raises(BudgetExhausted) as info:
        reduce(WHEEL, budget=0)
    assert pi_equivalent(info.value.best.final, WHEEL)


def test_budget_env(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV, "7")
    assert default_budget() == 7
    monkeypatch.setenv(BUDGET_ENV, "junk")
    assert default_budget() == 100_000


def test_rejects_non_two_port():
    with pytest.raises(ValueError):
        reduce(Network(2, 2, [(1, 2, 1)]))


def _corpus(count, seed, irrational):
    rng = random.Random(seed)
    return [random_network(rng, max_edges=10, irrational=irrational) for _ in range(count)]


@pytest.mark.parametrize("irrational", [False, True])
def test_corpus(irrational):
    for net in _corpus(40, 5 + irrational, irrational):
        res = reduce(net)
        assert is_target(res.final)
        assert res.final.m <= 4 or classify_shape(res.final).tag == "H"
        assert pi_equivalent(net, res.final)
        assert replay(net, res.moves) == res.final
        if not irrational:
            cur = net
            for mv in res.moves:
                cur = do_move(cur, mv.kind, mv.at)[0]
                assert cur.is_rational()
