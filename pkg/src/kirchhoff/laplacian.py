"""Weighted Laplacians L = D G D^T, circuit quantities and power balance."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidLaplacian
from .netgraph import Edge, IncidenceMatrix, Network, Resistor, incidence

# Absolute tolerance, relative to max |L_ij|, for structural checks on
# floating-point Laplacians.
TAU_STRUCT = 1e-9


@dataclass(frozen=True)
class Laplacian:
    matrix: np.ndarray
    nodes: tuple

    def __post_init__(self):
        A = np.asarray(self.matrix)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] != len(self.nodes):
            raise ValueError(f"Laplacian shape {A.shape} does not match {len(self.nodes)} nodes")
        object.__setattr__(self, "matrix", A)
        object.__setattr__(self, "nodes", tuple(self.nodes))

    @property
    def N(self) -> int:
        return len(self.nodes)

    @property
    def scale(self) -> float:
        """Largest absolute entry; 1.0 for an all-zero matrix."""
        s = float(np.max(np.abs(self.matrix))) if self.matrix.size else 0.0
        return s if s > 0 else 1.0

    def index(self, node) -> int:
        return self.nodes.index(node)


@dataclass(frozen=True)
class CircuitState:
    """Node potentials psi, nodal currents J, edge voltages V and edge currents I."""

    psi: np.ndarray
    J: np.ndarray
    V: np.ndarray
    I: np.ndarray

    @classmethod
    def from_potentials(cls, D, g, psi) -> "CircuitState":
        D = np.asarray(getattr(D, "matrix", D), dtype=float)
        psi = np.asarray(psi, dtype=float)
        V = D.T @ psi
        I = np.asarray(g, dtype=float) * V
        return cls(psi=psi, J=D @ I, V=V, I=I)


def _matrix(L) -> np.ndarray:
    return np.asarray(getattr(L, "matrix", L))


def build_laplacian(D: IncidenceMatrix, g) -> Laplacian:
    Dm = np.asarray(D.matrix, dtype=float)
    g = np.asarray(g, dtype=float)
    if g.shape != (Dm.shape[1],):
        raise ValueError(f"conductance vector of length {g.shape} for {Dm.shape[1]} edges")
    return Laplacian((Dm * g) @ Dm.T, D.nodes)


def network_laplacian(net: Network) -> Laplacian:
    return build_laplacian(incidence(net), net.conductances())


def laplacian_violations(L, tol: float = TAU_STRUCT) -> list:
    """Names of the structural Laplacian properties that ``L`` violates.

    Checks symmetry, non-positive off-diagonals, zero row sums and positive
    diagonal (a 1 x 1 Laplacian is the zero matrix). Tolerances are absolute
    after scaling by max |L_ij|.
    """
    A = _matrix(L)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return ["square"]
    if not np.all(np.isfinite(A)):
        return ["finite"]
    n = A.shape[0]
    s = np.max(np.abs(A)) if A.size else 0.0
    s = s if s > 0 else 1.0
    bad = []
    if np.max(np.abs(A - A.T), initial=0.0) > tol * s:
        bad.append("symmetric")
    off = A - np.diag(np.diag(A))
    if np.max(off, initial=0.0) > tol * s:
        bad.append("off-diagonal non-positive")
    if np.max(np.abs(A.sum(axis=1)), initial=0.0) > tol * s:
        bad.append("zero row sums")
    if n > 1 and np.min(np.diag(A)) <= tol * s:
        bad.append("diagonal positive")
    return bad


def validate_laplacian(L, tol: float = TAU_STRUCT) -> None:
    bad = laplacian_violations(L, tol)
    if bad:
        raise InvalidLaplacian(f"not a Laplacian: violates {', '.join(bad)}", violations=bad)


def laplacian_to_network(L: Laplacian, tol: float = TAU_STRUCT):
    """Recover a resistive network realizing ``L``.

    One edge per strictly negative off-diagonal entry (i < j), oriented
    from the earlier node to the later one, with conductance -L_ij.
    Returns ``(network, g)``.
    """
    validate_laplacian(L, tol)
    A = L.matrix
    s = L.scale
    edges = []
    g = []
    n = L.N
    for i in range(n):
        for j in range(i + 1, n):
            gij = -0.5 * (A[i, j] + A[j, i])
            if gij > tol * s:
                edges.append(
                    Edge(f"{L.nodes[i]}-{L.nodes[j]}", L.nodes[i], L.nodes[j], Resistor(float(gij)))
                )
                g.append(gij)
    return Network(L.nodes, tuple(edges)), np.array(g, dtype=float)


def power_balance(state: CircuitState):
    """Total edge power V^T I and total nodal power psi^T J."""
    return float(state.V @ state.I), float(state.psi @ state.J)


def dissipated_power(L, psi) -> float:
    psi = np.asarray(psi)
    return float(psi @ _matrix(L) @ psi)
