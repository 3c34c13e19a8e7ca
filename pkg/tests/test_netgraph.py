import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kirchhoff import Edge, Network, Partition, Resistor, flip_edges, incidence, is_connected
from kirchhoff.errors import (
    DanglingReference,
    DuplicateId,
    InvalidPartition,
    NonPositiveValue,
    SelfLoop,
    UnknownEdge,
)
from kirchhoff.netgraph import Capacitor, n_components

from conftest import path3, triangle
from strategies import connected_networks


def test_incidence_path():
    D = incidence(path3())
    np.testing.assert_array_equal(D.matrix, [[1, 0], [-1, 1], [0, -1]])
    assert D.matrix.dtype.kind == "i"


def test_incidence_single_edge():
    net = Network.resistive(["1", "2"], [("1", "2")], 1.0)
    np.testing.assert_array_equal(incidence(net).matrix, [[1], [-1]])


def test_incidence_triangle_columns():
    D = incidence(triangle()).matrix
    np.testing.assert_array_equal(D.T, [[1, -1, 0], [0, 1, -1], [1, 0, -1]])


@pytest.mark.parametrize(
    "net, expected",
    [
        (path3(), True),
        (Network(("1", "2"), ()), False),
        (Network.resistive(list("abcd"), [("a", "b"), ("c", "d")], 1.0), False),
    ],
)
def test_is_connected(net, expected):
    assert is_connected(net) is expected


def test_two_disjoint_edges_kernel_dimension():
    net = Network.resistive(list("abcd"), [("a", "b"), ("c", "d")], 1.0)
    D = incidence(net).matrix
    assert net.N - np.linalg.matrix_rank(D) == 2
    assert n_components(net) == 2


def test_multi_edges_allowed():
    net = Network.resistive(["1", "2"], [("1", "2"), ("2", "1")], [1.0, 2.0])
    assert net.M == 2


@pytest.mark.parametrize(
    "nodes, edges, exc",
    [
        (("1", "2"), (Edge("e", "1", "1", Resistor(1.0)),), SelfLoop),
        (("1", "1"), (), DuplicateId),
        (("1", "2"), (Edge("e", "1", "2", Resistor(1.0)), Edge("e", "2", "1", Resistor(1.0))), DuplicateId),
        (("1", "2"), (Edge("e", "1", "3", Resistor(1.0)),), DanglingReference),
        (("1", "2"), (Edge("e", "1", "2", Resistor(0.0)),), NonPositiveValue),
        (("1", "2"), (Edge("e", "1", "2", Capacitor(-1.0)),), NonPositiveValue),
    ],
)
def test_invalid_networks(nodes, edges, exc):
    with pytest.raises(exc):
        Network(nodes, edges)


def test_self_loop_error_names_edge():
    with pytest.raises(SelfLoop) as info:
        Network(("1", "2"), (Edge("loop7", "2", "2", Resistor(1.0)),))
    assert info.value.context["edge"] == "loop7"


def test_flip_single_edge():
    net = Network.resistive(["1", "2"], [("1", "2")], 1.0)
    e = flip_edges(net, {"e0"}).edges[0]
    assert (e.tail, e.head) == ("2", "1")


def test_flip_nothing_is_identity():
    net = triangle()
    assert flip_edges(net, set()) == net


def test_flip_twice_is_identity():
    net = triangle()
    ids = {e.id for e in net.edges}
    assert flip_edges(flip_edges(net, ids), ids) == net


def test_flip_unknown_edge():
    with pytest.raises(UnknownEdge):
        flip_edges(path3(), {"nope"})


def test_partition_validation():
    net = path3()
    part = Partition.from_boundary(net, ["3", "1"])
    assert part.boundary == ("1", "3") and part.internal == ("2",)
    with pytest.raises(InvalidPartition):
        Partition.from_boundary(net, [])
    with pytest.raises(InvalidPartition):
        Partition.from_boundary(net, ["9"])
    with pytest.raises(InvalidPartition):
        Partition(("1",), ("2",)).check(net.nodes)


def _bfs_connected(net):
    adj = {n: set() for n in net.nodes}
    for e in net.edges:
        adj[e.tail].add(e.head)
        adj[e.head].add(e.tail)
    seen, todo = {net.nodes[0]}, [net.nodes[0]]
    while todo:
        for m in adj[todo.pop()]:
            if m not in seen:
                seen.add(m)
                todo.append(m)
    return len(seen) == net.N


@st.composite
def any_networks(draw):
    n = draw(st.integers(1, 8))
    nodes = [str(i) for i in range(n)]
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12))
    edges = [(nodes[i], nodes[j]) for i, j in pairs if i != j]
    return Network.resistive(nodes, edges, 1.0)


@given(any_networks())
def test_connectivity_matches_rank_and_bfs(net):
    D = incidence(net).matrix
    rank = np.linalg.matrix_rank(D) if net.M else 0
    assert is_connected(net) == (rank == net.N - 1) == _bfs_connected(net)


@given(any_networks())
def test_columns_sum_to_zero(net):
    D = incidence(net).matrix
    assert not np.any(D.sum(axis=0))
    assert np.all(np.abs(D).sum(axis=0) == 2)


@settings(max_examples=50)
@given(connected_networks(n_max=8), st.data())
def test_flip_negates_columns(net, data):
    flip = data.draw(st.sets(st.sampled_from([e.id for e in net.edges])))
    D = incidence(net).matrix
    Df = incidence(flip_edges(net, flip)).matrix
    sign = np.array([-1 if e.id in flip else 1 for e in net.edges])
    np.testing.assert_array_equal(Df, D * sign)
