"""Directed multigraphs carrying circuit elements, and their incidence matrices."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Union

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    DanglingReference,
    DuplicateId,
    InvalidPartition,
    NonPositiveValue,
    NotResistive,
    SelfLoop,
    UnknownEdge,
)


@dataclass(frozen=True)
class Resistor:
    conductance: float  # siemens

    @property
    def value(self):
        return self.conductance


@dataclass(frozen=True)
class Capacitor:
    capacitance: float  # farads

    @property
    def value(self):
        return self.capacitance


@dataclass(frozen=True)
class Inductor:
    inductance: float  # henries

    @property
    def value(self):
        return self.inductance


Element = Union[Resistor, Capacitor, Inductor]


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    element: Element

    def flipped(self) -> "Edge":
        return replace(self, tail=self.head, head=self.tail)


@dataclass(frozen=True)
class Network:
    """Oriented multigraph with one element per edge.

    Node and edge order is declaration order; every matrix built from a
    network uses it for row and column indices.
    """

    nodes: tuple
    edges: tuple
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(str(n) for n in self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        index = {}
        for i, node in enumerate(self.nodes):
            if node in index:
                raise DuplicateId(f"duplicate node id {node!r}", id=node)
            index[node] = i
        seen = set()
        for e in self.edges:
            if e.id in seen:
                raise DuplicateId(f"duplicate edge id {e.id!r}", id=e.id)
            seen.add(e.id)
            for end in (e.tail, e.head):
                if end not in index:
                    raise DanglingReference(
                        f"edge {e.id!r} references unknown node {end!r}", edge=e.id, id=end
                    )
            if e.tail == e.head:
                raise SelfLoop(f"edge {e.id!r} is a self-loop at node {e.tail!r}", edge=e.id)
            value = e.element.value
            if not (np.isfinite(value) and value > 0):
                raise NonPositiveValue(
                    f"edge {e.id!r} has non-positive element value {value!r}", edge=e.id
                )
        object.__setattr__(self, "_index", index)

    @property
    def N(self) -> int:
        return len(self.nodes)

    @property
    def M(self) -> int:
        return len(self.edges)

    def index(self, node: str) -> int:
        return self._index[node]

    @property
    def is_resistive(self) -> bool:
        return all(isinstance(e.element, Resistor) for e in self.edges)

    def conductances(self) -> np.ndarray:
        if not self.is_resistive:
            bad = [e.id for e in self.edges if not isinstance(e.element, Resistor)]
            raise NotResistive(
                "real analysis needs a resistor-only network; use the phasor commands",
                edges=bad,
            )
        return np.array([e.element.conductance for e in self.edges], dtype=float)

    @classmethod
    def resistive(cls, nodes, edges: Iterable[tuple], g) -> "Network":
        """Build from ``(tail, head)`` pairs and a conductance vector; edge ids are e0, e1, ..."""
        edges = list(edges)
        g = np.broadcast_to(np.asarray(g, dtype=float), (len(edges),))
        return cls(
            nodes,
            tuple(Edge(f"e{k}", str(t), str(h), Resistor(float(gk))) for k, ((t, h), gk) in enumerate(zip(edges, g))),
        )


@dataclass(frozen=True)
class IncidenceMatrix:
    """Signed integer N x M matrix; +1 at the tail row, -1 at the head row."""

    matrix: np.ndarray
    nodes: tuple
    edges: tuple

    def rows(self, nodes) -> np.ndarray:
        index = {n: i for i, n in enumerate(self.nodes)}
        return self.matrix[[index[n] for n in nodes], :]


@dataclass(frozen=True)
class Partition:
    """Split of the nodes into boundary (B) and internal (C) nodes, each in network order."""

    boundary: tuple
    internal: tuple

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(self.boundary))
        object.__setattr__(self, "internal", tuple(self.internal))
        if not self.boundary:
            raise InvalidPartition("partition needs at least one boundary node")
        overlap = set(self.boundary) & set(self.internal)
        if overlap:
            raise InvalidPartition("boundary and internal sets overlap", nodes=sorted(overlap))

    @classmethod
    def from_boundary(cls, nodes, boundary) -> "Partition":
        nodes = tuple(getattr(nodes, "nodes", nodes))
        boundary = set(boundary)
        unknown = boundary - set(nodes)
        if unknown:
            raise InvalidPartition("unknown boundary nodes", nodes=sorted(unknown))
        return cls(
            tuple(n for n in nodes if n in boundary),
            tuple(n for n in nodes if n not in boundary),
        )

    @classmethod
    def from_internal(cls, nodes, internal) -> "Partition":
        nodes = tuple(getattr(nodes, "nodes", nodes))
        internal = set(internal)
        return cls.from_boundary(nodes, [n for n in nodes if n not in internal])

    @property
    def N_B(self) -> int:
        return len(self.boundary)

    @property
    def N_C(self) -> int:
        return len(self.internal)

    def check(self, nodes) -> None:
        if set(self.boundary) | set(self.internal) != set(nodes) or len(self.boundary) + len(
            self.internal
        ) != len(nodes):
            raise InvalidPartition("partition does not cover the node set exactly")

    def indices(self, nodes):
        """Row indices (boundary, internal) of the partition within ``nodes``."""
        self.check(nodes)
        index = {n: i for i, n in enumerate(nodes)}
        return (
            np.array([index[n] for n in self.boundary], dtype=int),
            np.array([index[n] for n in self.internal], dtype=int),
        )


def incidence(net: Network) -> IncidenceMatrix:
    D = np.zeros((net.N, net.M), dtype=np.int64)
    for k, e in enumerate(net.edges):
        D[net.index(e.tail), k] = 1
        D[net.index(e.head), k] = -1
    return IncidenceMatrix(D, net.nodes, tuple(e.id for e in net.edges))


def n_components(net: Network) -> int:
    if net.N == 0:
        return 0
    rows = [net.index(e.tail) for e in net.edges]
    cols = [net.index(e.head) for e in net.edges]
    adj = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(net.N, net.N))
    n, _ = connected_components(adj, directed=False)
    return int(n)


def is_connected(net: Network) -> bool:
    return n_components(net) == 1


def flip_edges(net: Network, edge_ids) -> Network:
    edge_ids = set(edge_ids)
    known = {e.id for e in net.edges}
    missing = edge_ids - known
    if missing:
        raise UnknownEdge(f"unknown edge ids {sorted(missing)}", edges=sorted(missing))
    return Network(net.nodes, tuple(e.flipped() if e.id in edge_ids else e for e in net.edges))
