import numpy as np
import pytest

from kirchhoff import Capacitor, Edge, Inductor, Network, Partition, Resistor

ACCEPTANCE_LINES = []


def path3(g=(1.0, 1.0)):
    return Network.resistive(["1", "2", "3"], [("1", "2"), ("2", "3")], g)


def triangle(g=(1.0, 1.0, 1.0)):
    return Network.resistive(["1", "2", "3"], [("1", "2"), ("2", "3"), ("1", "3")], g)


def star3(g=(1.0, 1.0, 1.0)):
    """Center node c internal, leaves a, b, d."""
    return Network.resistive(["a", "b", "d", "c"], [("c", "a"), ("c", "b"), ("c", "d")], g)


def cycle4(g=(1.0, 2.0, 3.0, 4.0)):
    return Network.resistive(list("abcd"), [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")], g)


def rc_divider(order="cr"):
    """Series C and R between nodes 1 and 3 through midpoint 2 (C=1, g=1)."""
    first, second = (Capacitor(1.0), Resistor(1.0)) if order == "cr" else (Resistor(1.0), Capacitor(1.0))
    return Network(("1", "2", "3"), (Edge("x", "1", "2", first), Edge("y", "2", "3", second)))


def lc_series(L=1.0, C=1.0):
    return Network(("1", "2", "3"), (Edge("l", "1", "2", Inductor(L)), Edge("c", "2", "3", Capacitor(C))))


def ends(net):
    return Partition.from_boundary(net, [net.nodes[0], net.nodes[-1]])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
