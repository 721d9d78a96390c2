import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import box, h_from_box, h_net, i_net, random_network
from twoport import jsonio
from twoport.network import (
    Network,
    NetworkError,
    TwoPortNetwork,
    canonical_key,
    classify_shape,
    embedding_problems,
    validate,
)
from twoport.scalars import Scalar, sqrt_d

ONE = Scalar(1)
FIXTURES = Path(__file__).parent / "fixtures"


def test_box_valid():
    rep = validate(box(ONE, 2, 3, sqrt_d()))
    assert (rep.vertices, rep.edges, rep.faces) == (4, 4, 2)
    assert rep.simple


def test_box_wrong_terminal_order():
    # outer face visits the terminals 1, 3, 2, 4
    rot = {1: [4, 3], 3: [1, 2], 2: [3, 4], 4: [2, 1]}
    net = TwoPortNetwork(4, [(1, 3, 1), (3, 2, 1), (2, 4, 1), (4, 1, 1)], rot)
    with pytest.raises(NetworkError):
        validate(net)


def test_terminal_order_unembeddable():
    # the 4-cycle 1-3-2-4 has no embedding with 1, 2, 3, 4 counterclockwise on the outer face
    net = TwoPortNetwork(4, [(1, 3, 1), (3, 2, 1), (2, 4, 1), (4, 1, 1)])
    assert net.rotation is None
    with pytest.raises(NetworkError):
        validate(net)


def test_parallel_edges_merged():
    net = Network(2, 2, [(1, 2, 1), (1, 2, 1)])
    assert net.m == 1 and net.edges[0].R == Scalar(1, 0) / 2
    validate(net)


def test_parallel_kept_on_request():
    net = Network(2, 2, [(1, 2, 1), (1, 2, 1)], merge_parallel=False)
    assert net.m == 2 and not net.is_simple()
    validate(net)


MALFORMED = {
    "loop": lambda: Network(3, 2, [(1, 2, 1), (2, 3, 1), (3, 3, 1)]),
    "zero resistance": lambda: Network(2, 2, [(1, 2, 0)]),
    "negative resistance": lambda: Network(2, 2, [(1, 2, 1 - sqrt_d())]),
    "disconnected": lambda: Network(4, 2, [(1, 2, 1), (3, 4, 1)]),
    "vertex out of range": lambda: Network(2, 2, [(1, 3, 1)]),
    "more terminals than vertices": lambda: Network(2, 3, [(1, 2, 1)]),
    "K5 with a terminal": lambda: Network(5, 1, [(u, v, 1) for u in range(1, 6) for v in range(u + 1, 6)]),
    "rotation lists a non-neighbor": lambda: Network(3, 2, [(1, 2, 1), (2, 3, 1)], {2: [1, 3], 3: [1]}),
    "twisted rotation": lambda: TwoPortNetwork(
        5, [(1, 5, 1), (2, 5, 1), (3, 5, 1), (4, 5, 1)], {5: [1, 3, 2, 4]}),
}


@pytest.mark.parametrize("name", sorted(MALFORMED))
def test_malformed_rejected(name):
    with pytest.raises(NetworkError):
        validate(MALFORMED[name]())


NETWORK_FIXTURES = [p for p in sorted(FIXTURES.glob("*.json")) if "edges" in jsonio.load_file(str(p))]


@pytest.mark.parametrize("path", NETWORK_FIXTURES, ids=lambda p: p.name)
def test_fixture_networks_valid(path):
    validate(jsonio.network_from_json(jsonio.load_file(str(path))))


def test_star_rotation_valid():
    net = TwoPortNetwork(5, [(1, 5, 1), (2, 5, 1), (3, 5, 1), (4, 5, 1)], {5: [1, 2, 3, 4]})
    assert not embedding_problems(net)


@pytest.mark.parametrize("net,tag", [
    (h_net(1, 1, 1, 1, 1), "H"),
    (box(1, 1, 1, 1), "Box"),
    (i_net(1, 2, 3, 4, 5), "I"),
    (Network(4, 4, [(1, 2, 1), (2, 3, 1), (3, 4, 1)]), "Other"),
])
def test_classify(net, tag):
    assert classify_shape(net).tag == tag


def test_classify_single_edge():
    net = TwoPortNetwork(4, [(1, 2, 1), (2, 3, 1), (3, 4, 1)])
    assert classify_shape(Network(2, 2, [(1, 2, 1)])).tag == "Other"
    assert classify_shape(net).tag == "Other"


def test_classify_h_relabelled():
    net = TwoPortNetwork(6, [(1, 6, 1), (2, 6, 1), (3, 5, 1), (4, 5, 1), (5, 6, 1)])
    assert classify_shape(net).tag == "H"


def test_key_relabel_h():
    a = h_net(1, 2, 3, 4, 5)
    b = TwoPortNetwork(6, [(1, 6, 1), (2, 6, 2), (3, 5, 3), (4, 5, 4), (5, 6, 5)])
    assert canonical_key(a) == canonical_key(b)


def test_key_distinguishes():
    assert canonical_key(h_net(1, 1, 1, 1, 1)) != canonical_key(h_net(2, 1, 1, 1, 1))
    assert canonical_key(box(1, 2, 3, 4)) != canonical_key(h_from_box(*map(Scalar, (1, 2, 3, 4))))


def _relabel(net: Network, perm: dict) -> Network:
    f = lambda x: perm.get(x, x)
    edges = [(f(e.u), f(e.v), e.R) for e in net.edges]
    return type(net)(net.n, edges, {f(v): [f(w) for w in nb] for v, nb in net.neighbor_rotation().items()})


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_key_relabel_invariance(seed):
    rng = random.Random(seed)
    net = random_network(rng, max_edges=9, max_n=8)
    inner = list(range(5, net.n + 1))
    shuffled = inner[:]
    rng.shuffle(shuffled)
    other = _relabel(net, dict(zip(inner, shuffled)))
    validate(other)
    assert canonical_key(other) == canonical_key(net)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_random_networks_valid(seed):
    net = random_network(random.Random(seed), irrational=True)
    rep = validate(net)
    assert rep.vertices - rep.edges + rep.faces == 2
