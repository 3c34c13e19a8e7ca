"""Random connected resistive networks for experiments and property tests."""
from __future__ import annotations

from .netgraph import Network, Partition


def random_connected_network(rng, n_min=2, n_max=12, m_max=30, g_range=(0.1, 10.0)) -> Network:
    """Random spanning tree plus extra (possibly parallel) edges, random orientation."""
    n = int(rng.integers(n_min, n_max + 1))
    nodes = [f"n{i}" for i in range(n)]
    pairs = []
    order = rng.permutation(n)
    for k in range(1, n):
        pairs.append((order[int(rng.integers(0, k))], order[k]))
    extra = int(rng.integers(0, m_max - len(pairs) + 1))
    for _ in range(extra):
        i, j = rng.choice(n, size=2, replace=False)
        pairs.append((i, j))
    rng.shuffle(pairs)
    edges = [(nodes[i], nodes[j]) if rng.random() < 0.5 else (nodes[j], nodes[i]) for i, j in pairs]
    g = rng.uniform(*g_range, len(edges))
    return Network.resistive(nodes, edges, g)


def random_partition(rng, nodes, min_boundary=1, min_internal=0) -> Partition:
    nodes = tuple(getattr(nodes, "nodes", nodes))
    n = len(nodes)
    n_b = int(rng.integers(min_boundary, n - min_internal + 1))
    boundary = rng.choice(n, size=n_b, replace=False)
    return Partition.from_boundary(nodes, [nodes[i] for i in boundary])
