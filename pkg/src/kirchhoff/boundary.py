"""Boundary-value problems on a partitioned network.

Open circuit: boundary potentials fixed, no current injected at internal
nodes. Short circuit: boundary grounded, internal currents prescribed.
Combined: both prescribed at once, solved by superposition.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .reduction import BlockLaplacian


@dataclass(frozen=True)
class BoundarySolution:
    psi_B: np.ndarray
    psi_C: np.ndarray
    J_B: np.ndarray
    J_C: np.ndarray
    prescribed: frozenset
    boundary: tuple = ()
    internal: tuple = ()

    def residual(self, bl: BlockLaplacian) -> float:
        """Max-entry residual of [J_B; J_C] = L [psi_B; psi_C]."""
        rB = bl.LBB @ self.psi_B + bl.LBC @ self.psi_C - self.J_B
        rC = bl.LCB @ self.psi_B + bl.LCC @ self.psi_C - self.J_C
        return float(np.max(np.abs(np.concatenate([rB, rC])), initial=0.0))

    def potentials(self) -> dict:
        return dict(zip(self.boundary + self.internal, np.concatenate([self.psi_B, self.psi_C])))

    def currents(self) -> dict:
        return dict(zip(self.boundary + self.internal, np.concatenate([self.J_B, self.J_C])))

    def __add__(self, other: "BoundarySolution") -> "BoundarySolution":
        return BoundarySolution(
            self.psi_B + other.psi_B,
            self.psi_C + other.psi_C,
            self.J_B + other.J_B,
            self.J_C + other.J_C,
            self.prescribed | other.prescribed,
            self.boundary,
            self.internal,
        )


def _solution(bl, psi_B, psi_C, J_B, J_C, prescribed):
    return BoundarySolution(
        psi_B, psi_C, J_B, J_C, frozenset(prescribed), bl.partition.boundary, bl.partition.internal
    )


def interpolation_matrix(bl: BlockLaplacian) -> np.ndarray:
    """-L_CC^-1 L_CB: maps boundary potentials to open-circuit internal potentials."""
    return -bl.factor.solve(bl.LCB)


def transfer_matrix(bl: BlockLaplacian) -> np.ndarray:
    """L_BC L_CC^-1: maps internal currents to short-circuit boundary currents."""
    return bl.factor.solve(bl.LCB).T if bl.N_C else np.zeros((bl.N_B, 0))


def open_circuit(bl: BlockLaplacian, psi_B) -> BoundarySolution:
    psi_B = np.asarray(psi_B, dtype=float)
    psi_C = -bl.factor.solve(bl.LCB @ psi_B)
    J_B = bl.LBB @ psi_B + bl.LBC @ psi_C
    return _solution(bl, psi_B, psi_C, J_B, np.zeros(bl.N_C), {"psi_B"})


def interpolation_max_norm(bl: BlockLaplacian) -> float:
    """Induced max-norm (largest absolute row sum) of -L_CC^-1 L_CB."""
    if bl.N_C == 0:
        raise ValueError("no internal nodes")
    return float(np.max(np.abs(interpolation_matrix(bl)).sum(axis=1)))


def transfer_one_norm(bl: BlockLaplacian) -> float:
    """Induced 1-norm (largest absolute column sum) of L_BC L_CC^-1."""
    if bl.N_C == 0:
        raise ValueError("no internal nodes")
    return float(np.max(np.abs(transfer_matrix(bl)).sum(axis=0)))


def short_circuit(bl: BlockLaplacian, J_C) -> BoundarySolution:
    J_C = np.asarray(J_C, dtype=float)
    psi_C = bl.factor.solve(J_C)
    J_B = bl.LBC @ psi_C
    return _solution(bl, np.zeros(bl.N_B), psi_C, J_B, J_C, {"J_C"})


def duality_gap(bl: BlockLaplacian, psi_B, J_C) -> float:
    """|J_C^T psi_C* + J_B^T psi_B*| for the open- and short-circuit solutions."""
    oc = open_circuit(bl, psi_B)
    sc = short_circuit(bl, J_C)
    return float(abs(sc.J_C @ oc.psi_C + sc.J_B @ oc.psi_B))


def combined_solve(bl: BlockLaplacian, psi_B, J_C) -> BoundarySolution:
    return open_circuit(bl, psi_B) + short_circuit(bl, J_C)


def power(bl: BlockLaplacian, psi_B, psi_C) -> float:
    """Dissipated power [psi_B; psi_C]^T L [psi_B; psi_C]."""
    return float(
        psi_B @ bl.LBB @ psi_B + 2.0 * (psi_B @ bl.LBC @ psi_C) + psi_C @ bl.LCC @ psi_C
    )


class ThomsonCertificate(NamedTuple):
    improvement: float  # max over trials of P(psi_C*) - P(psi_C* + delta)
    gradient_norm: float  # max-entry norm of 2 (L_CB psi_B + L_CC psi_C*)


def thomson_certificate(bl: BlockLaplacian, psi_B, trials: int = 100, seed=0) -> ThomsonCertificate:
    """Probe that the open-circuit potentials minimize dissipated power.

    Perturbations are uniform on [-1, 1] per entry, scaled by max |psi_B|.
    """
    rng = np.random.default_rng(seed)
    psi_B = np.asarray(psi_B, dtype=float)
    oc = open_circuit(bl, psi_B)
    p0 = power(bl, psi_B, oc.psi_C)
    amp = float(np.max(np.abs(psi_B), initial=0.0)) or 1.0
    best = -np.inf
    for _ in range(trials):
        delta = rng.uniform(-1.0, 1.0, bl.N_C) * amp
        best = max(best, p0 - power(bl, psi_B, oc.psi_C + delta))
    grad = 2.0 * (bl.LCB @ psi_B + bl.LCC @ oc.psi_C)
    return ThomsonCertificate(float(best), float(np.max(np.abs(grad), initial=0.0)))
