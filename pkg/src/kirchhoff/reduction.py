"""Kron reduction: Schur complements of Laplacians onto boundary nodes."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import linalg

from .errors import SingularInterior, ZeroPivot
from .laplacian import TAU_STRUCT, Laplacian, laplacian_to_network, validate_laplacian
from .netgraph import Network, Partition

# L_CC is declared singular when its smallest eigenvalue falls below this
# fraction of its largest diagonal entry.
SINGULAR_RTOL = 1e-12


class InteriorFactor:
    """Cholesky factorization of the interior block L_CC."""

    def __init__(self, Lcc: np.ndarray):
        Lcc = np.asarray(Lcc, dtype=float)
        self.n = Lcc.shape[0]
        self._A = Lcc
        if self.n == 0:
            self._cho = None
            return
        dmax = float(np.max(np.diag(Lcc)))
        lam_min = float(linalg.eigvalsh(Lcc, subset_by_index=[0, 0])[0])
        if not dmax > 0 or lam_min <= SINGULAR_RTOL * dmax:
            raise SingularInterior(
                "interior block is singular: graph disconnected or partition invalid",
                smallest_eigenvalue=lam_min,
            )
        try:
            self._cho = linalg.cho_factor(Lcc, lower=True)
        except linalg.LinAlgError as exc:
            raise SingularInterior(f"Cholesky factorization of interior block failed: {exc}")

    def solve(self, rhs) -> np.ndarray:
        rhs = np.asarray(rhs, dtype=float)
        if self.n == 0:
            return np.zeros_like(rhs)
        x = linalg.cho_solve(self._cho, rhs)
        # one step of iterative refinement
        return x + linalg.cho_solve(self._cho, rhs - self._A @ x)


class BlockLaplacian:
    """A Laplacian split into boundary/internal blocks under a partition.

    Blocks follow the order of ``part.boundary`` and ``part.internal``.
    """

    def __init__(self, L: Laplacian, part: Partition):
        self.laplacian = L
        self.partition = part
        self.b_idx, self.c_idx = part.indices(L.nodes)
        A = L.matrix
        self.LBB = A[np.ix_(self.b_idx, self.b_idx)]
        self.LBC = A[np.ix_(self.b_idx, self.c_idx)]
        self.LCB = A[np.ix_(self.c_idx, self.b_idx)]
        self.LCC = A[np.ix_(self.c_idx, self.c_idx)]

    @property
    def N_B(self) -> int:
        return len(self.b_idx)

    @property
    def N_C(self) -> int:
        return len(self.c_idx)

    @property
    def scale(self) -> float:
        return self.laplacian.scale

    @cached_property
    def factor(self) -> InteriorFactor:
        return InteriorFactor(self.LCC)

    def assemble(self, x_B, x_C) -> np.ndarray:
        """Scatter block vectors back into network node order."""
        x_B, x_C = np.asarray(x_B), np.asarray(x_C)
        x = np.zeros(self.laplacian.N, dtype=np.result_type(x_B, x_C, float))
        x[self.b_idx] = x_B
        x[self.c_idx] = x_C
        return x

    def schur(self) -> np.ndarray:
        if self.N_C == 0:
            return self.LBB.copy()
        return self.LBB - self.LBC @ self.factor.solve(self.LCB)


def _clean(S: np.ndarray, tol: float = TAU_STRUCT) -> np.ndarray:
    """Symmetrize, snap round-off off-diagonals to zero and rebalance the diagonal."""
    S = 0.5 * (S + S.T)
    s = np.max(np.abs(S)) if S.size else 0.0
    s = s if s > 0 else 1.0
    off = S - np.diag(np.diag(S))
    off[off > -tol * s] = 0.0
    return off - np.diag(off.sum(axis=1))


@dataclass(frozen=True)
class ReducedNetwork:
    laplacian: Laplacian
    network: Network
    g: np.ndarray

    @property
    def L_S(self) -> np.ndarray:
        return self.laplacian.matrix


def schur_laplacian(L: Laplacian, part: Partition) -> Laplacian:
    """The cleaned Schur complement L_BB - L_BC L_CC^-1 L_CB as a Laplacian on the boundary nodes."""
    S = _clean(BlockLaplacian(L, part).schur())
    out = Laplacian(S, part.boundary)
    validate_laplacian(out)
    return out


def kron_reduce(L: Laplacian, part: Partition) -> ReducedNetwork:
    LS = schur_laplacian(L, part)
    net, g = laplacian_to_network(LS)
    return ReducedNetwork(LS, net, g)


def eliminate_one(L: Laplacian, node) -> Laplacian:
    """Schur complement with respect to a single diagonal entry."""
    k = L.index(node)
    A = L.matrix
    pivot = A[k, k]
    if pivot <= TAU_STRUCT * L.scale:
        raise ZeroPivot(f"diagonal entry of node {node!r} is not positive", node=node, pivot=float(pivot))
    keep = [i for i in range(L.N) if i != k]
    col = A[keep, k]
    S = A[np.ix_(keep, keep)] - np.outer(col, A[k, keep]) / pivot
    return Laplacian(_clean(S), tuple(L.nodes[i] for i in keep))


def quotient_check(L: Laplacian, part_P: Partition, part_Q: Partition) -> float:
    """Max-entry distance between L/P and (L/Q)/(P/Q).

    ``part_Q`` must eliminate a subset of the nodes eliminated by ``part_P``.
    """
    if not set(part_Q.internal) <= set(part_P.internal):
        raise ValueError("Q must eliminate a subset of the nodes eliminated by P")
    direct = schur_laplacian(L, part_P).matrix
    LQ = schur_laplacian(L, part_Q)
    rest = Partition.from_boundary(LQ.nodes, part_P.boundary)
    nested = schur_laplacian(LQ, rest).matrix
    return float(np.max(np.abs(direct - nested))) if direct.size else 0.0


def effective_resistance(L: Laplacian, a, b) -> float:
    if a == b:
        raise ValueError("effective resistance needs two distinct nodes")
    LS = schur_laplacian(L, Partition.from_boundary(L.nodes, [a, b]))
    g = LS.matrix[0, 0]
    if not g > 0:
        raise SingularInterior(f"nodes {a!r} and {b!r} are not connected")
    return float(1.0 / g)
