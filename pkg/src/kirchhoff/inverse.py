"""Discrete Calderon problem: conductances from the boundary Laplacian.

The topology (incidence matrix and partition) is known; the forward map
sends edge conductances g to the Kron-reduced Laplacian L_S.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import linalg

from .boundary import interpolation_matrix
from .errors import InconsistentCurrents, NoConvergence, RankDeficient, SingularInterior
from .laplacian import Laplacian, build_laplacian, validate_laplacian
from .netgraph import IncidenceMatrix, Partition
from .reduction import SINGULAR_RTOL, BlockLaplacian, schur_laplacian

RANK_RTOL = 1e-9


def vech(S) -> np.ndarray:
    """Strict upper triangle of a symmetric matrix, row-major."""
    S = np.asarray(S)
    return S[np.triu_indices(S.shape[0], k=1)]


def dof(n_boundary: int) -> int:
    return n_boundary * (n_boundary - 1) // 2


def forward_map(D: IncidenceMatrix, part: Partition, g) -> np.ndarray:
    """Boundary Laplacian L_S of the network with conductances ``g``."""
    return schur_laplacian(build_laplacian(D, g), part).matrix


def _effective_incidence(D: IncidenceMatrix, part: Partition, g) -> np.ndarray:
    # E = D_B + P^T D_C with P = -L_CC^-1 L_CB, so that dT(g)(k) = E [k] E^T.
    bl = BlockLaplacian(build_laplacian(D, g), part)
    D_B = D.rows(part.boundary).astype(float)
    if bl.N_C == 0:
        return D_B
    return D_B + interpolation_matrix(bl).T @ D.rows(part.internal).astype(float)


def forward_differential(D: IncidenceMatrix, part: Partition, g, kappa) -> np.ndarray:
    """Directional derivative of ``forward_map`` at ``g`` along ``kappa``.

    Closed form W D [kappa] D^T W^T with W = [I, -L_BC L_CC^-1], i.e. the
    quadratic form of D [kappa] D^T restricted to open-circuit potentials.
    """
    E = _effective_incidence(D, part, g)
    return (E * np.asarray(kappa, dtype=float)) @ E.T


def forward_jacobian(D: IncidenceMatrix, part: Partition, g) -> np.ndarray:
    """dof x M matrix; column k is vech of the differential along the k-th unit vector."""
    E = _effective_incidence(D, part, g)
    iu = np.triu_indices(E.shape[0], k=1)
    return E[iu[0], :] * E[iu[1], :]


def _rank(A) -> int:
    if A.size == 0:
        return 0
    s = linalg.svdvals(A)
    return int(np.sum(s > s[0] * RANK_RTOL)) if s[0] > 0 else 0


@dataclass(frozen=True)
class IdentifiabilityReport:
    """Local injectivity of g -> L_S at sampled points; not a global certificate."""

    M: int
    N_B: int
    dof: int
    necessary_ok: bool
    jacobian_rank: int
    ranks: tuple
    locally_injective: bool
    probe_points: tuple

    def to_dict(self) -> dict:
        return {
            "M": self.M,
            "N_B": self.N_B,
            "dof": self.dof,
            "necessary_ok": self.necessary_ok,
            "jacobian_rank": self.jacobian_rank,
            "ranks": list(self.ranks),
            "locally_injective_at_probes": self.locally_injective,
            "probe_points": [list(map(float, p)) for p in self.probe_points],
        }


def identifiability(D: IncidenceMatrix, part: Partition, probes: int = 3, seed=0) -> IdentifiabilityReport:
    M = D.matrix.shape[1]
    n_b = part.N_B
    rng = np.random.default_rng(seed)
    points = [np.ones(M)] + [np.exp(rng.uniform(np.log(0.1), np.log(10.0), M)) for _ in range(probes)]
    ranks = tuple(_rank(forward_jacobian(D, part, g)) for g in points)
    return IdentifiabilityReport(
        M=M,
        N_B=n_b,
        dof=dof(n_b),
        necessary_ok=M <= dof(n_b),
        jacobian_rank=min(ranks),
        ranks=ranks,
        locally_injective=all(r == M for r in ranks),
        probe_points=tuple(points),
    )


class FitResult(NamedTuple):
    g: np.ndarray
    misfit: float
    iterations: int


def reconstruct(
    D: IncidenceMatrix,
    part: Partition,
    target,
    g0=None,
    max_iter: int = 100,
    strict: bool = False,
    seed=0,
) -> FitResult:
    """Fit conductances to a target boundary Laplacian by Gauss-Newton in log g.

    Steps are minimum-norm least-squares solutions, so non-identifiable
    topologies still converge to some zero-misfit preimage. With
    ``strict=True`` a rank-deficient Jacobian raises ``RankDeficient``.
    """
    target = target if isinstance(target, Laplacian) else Laplacian(np.asarray(target, float), part.boundary)
    validate_laplacian(target)
    if tuple(target.nodes) != tuple(part.boundary):
        idx = [target.nodes.index(n) for n in part.boundary]
        target = Laplacian(target.matrix[np.ix_(idx, idx)], part.boundary)
    t = vech(target.matrix)
    scale = target.scale
    M = D.matrix.shape[1]
    theta = np.log(np.ones(M) if g0 is None else np.asarray(g0, dtype=float))

    def misfit(th):
        r = vech(forward_map(D, part, np.exp(th))) - t
        return r, float(np.linalg.norm(r))

    r, m = misfit(theta)
    it = 0
    for it in range(1, max_iter + 1):
        g = np.exp(theta)
        Jt = forward_jacobian(D, part, g) * g
        if strict and _rank(Jt) < M:
            raise RankDeficient(
                "Gauss-Newton normal matrix is singular",
                identifiability=identifiability(D, part, seed=seed).to_dict(),
            )
        if m <= 1e-15 * scale:
            break
        step = np.linalg.lstsq(Jt, -r, rcond=None)[0]
        lam = 1.0
        for _ in range(31):
            r_new, m_new = misfit(theta + lam * step)
            if m_new < m:
                break
            lam *= 0.5
        else:
            break
        theta = theta + lam * step
        done = np.max(np.abs(lam * step)) <= 1e-13
        r, m = r_new, m_new
        if done:
            break
    if m > 1e-8 * scale:
        raise NoConvergence(f"misfit {m:.3e} after {it} iterations", misfit=m, iterations=it)
    return FitResult(np.exp(theta), m, it)


def neumann_to_dirichlet(L_S, J_B) -> np.ndarray:
    """Potentials with zero mean that produce boundary currents ``J_B``."""
    A = np.asarray(getattr(L_S, "matrix", L_S), dtype=float)
    J_B = np.asarray(J_B, dtype=float)
    total = float(J_B.sum())
    if abs(total) > 1e-10 * max(float(np.abs(J_B).sum()), np.finfo(float).tiny):
        raise InconsistentCurrents("boundary currents must sum to zero", total=total)
    n = A.shape[0]
    # L_S + 11^T/n is SPD for a connected L_S and agrees with L_S on 1-perp.
    K = A + np.full((n, n), 1.0 / n)
    lam = linalg.eigvalsh(K, subset_by_index=[0, 0])[0]
    if lam <= SINGULAR_RTOL * max(float(np.max(np.diag(K))), 1.0 / n):
        raise SingularInterior("boundary Laplacian is disconnected", smallest_eigenvalue=float(lam))
    return linalg.cho_solve(linalg.cho_factor(K), J_B)
