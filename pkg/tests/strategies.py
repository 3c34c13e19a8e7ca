"""Hypothesis strategies for connected resistive networks and partitions."""
from hypothesis import strategies as st

from kirchhoff import Network, Partition


@st.composite
def connected_networks(draw, n_min=2, n_max=12, m_extra=18, g_min=0.1, g_max=10.0):
    n = draw(st.integers(n_min, n_max))
    nodes = [f"n{i}" for i in range(n)]
    pairs = [(draw(st.integers(0, k - 1)), k) for k in range(1, n)]
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=m_extra))
    pairs += [(i, j) for i, j in extra if i != j]
    flips = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [(nodes[j], nodes[i]) if f else (nodes[i], nodes[j]) for (i, j), f in zip(pairs, flips)]
    g = draw(
        st.lists(
            st.floats(g_min, g_max, allow_nan=False, allow_infinity=False),
            min_size=len(edges),
            max_size=len(edges),
        )
    )
    return Network.resistive(nodes, edges, g)


@st.composite
def partitioned_networks(draw, min_internal=0, **kwargs):
    net = draw(connected_networks(n_min=max(2, min_internal + 1), **kwargs))
    mask = draw(st.lists(st.booleans(), min_size=net.N, max_size=net.N))
    boundary = [n for n, b in zip(net.nodes, mask) if b]
    internal = [n for n in net.nodes if n not in boundary]
    if not boundary:
        boundary = [internal.pop()]
    while len(internal) < min_internal:
        internal.append(boundary.pop())
    return net, Partition.from_boundary(net, boundary)
