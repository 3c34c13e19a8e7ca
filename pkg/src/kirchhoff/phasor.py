"""Sinusoidal steady state of RLC networks at a fixed angular frequency.

Edge admittances are g for resistors, j w C for capacitors and 1/(j w L)
for inductors. The complex Laplacian is complex-symmetric, not Hermitian,
so interior solves use LU with partial pivoting.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .boundary import BoundarySolution
from .errors import InvalidLaplacian, MissingFrequency, ResonantInterior
from .netgraph import Capacitor, Inductor, Network, Partition, Resistor, incidence

RESONANCE_RTOL = 1e-12
CHECK_RTOL = 1e-12


@dataclass(frozen=True)
class PhasorAdmittance:
    omega: float | None
    y: np.ndarray


@dataclass(frozen=True)
class ComplexLaplacian:
    matrix: np.ndarray
    nodes: tuple

    @property
    def N(self):
        return len(self.nodes)

    @property
    def scale(self) -> float:
        s = float(np.max(np.abs(self.matrix))) if self.matrix.size else 0.0
        return s if s > 0 else 1.0


def admittances(net: Network, omega=None) -> PhasorAdmittance:
    y = np.empty(net.M, dtype=complex)
    for k, e in enumerate(net.edges):
        el = e.element
        if isinstance(el, Resistor):
            y[k] = el.conductance
            continue
        if omega is None:
            raise MissingFrequency(
                f"edge {e.id!r} is reactive but no frequency was given", edge=e.id
            )
        if not omega > 0:
            raise ValueError(f"angular frequency must be positive, got {omega}")
        if isinstance(el, Capacitor):
            y[k] = 1j * omega * el.capacitance
        elif isinstance(el, Inductor):
            y[k] = 1.0 / (1j * omega * el.inductance)
        else:
            raise TypeError(f"unknown element {el!r}")
    return PhasorAdmittance(omega, y)


def complex_laplacian(net: Network, omega=None) -> ComplexLaplacian:
    y = admittances(net, omega).y
    D = incidence(net).matrix.astype(float)
    return ComplexLaplacian((D * y) @ D.T, net.nodes)


def _blocks(Lc: ComplexLaplacian, part: Partition):
    b, c = part.indices(Lc.nodes)
    A = Lc.matrix
    return (
        A[np.ix_(b, b)],
        A[np.ix_(b, c)],
        A[np.ix_(c, b)],
        A[np.ix_(c, c)],
    )


def _interior_lu(Lcc, scale):
    """LU factors of L_CC and its 2-norm condition number."""
    if Lcc.shape[0] == 0:
        return None, 1.0
    s = linalg.svdvals(Lcc)
    if s[-1] <= RESONANCE_RTOL * max(s[0], scale):
        raise ResonantInterior(
            "interior block is singular at this frequency (resonance or disconnection)",
            smallest_singular_value=float(s[-1]),
        )
    return linalg.lu_factor(Lcc), float(s[0] / s[-1])


def _solve(lu, rhs):
    if lu is None:
        return np.zeros_like(rhs, dtype=complex)
    return linalg.lu_solve(lu, rhs)


def complex_kron_reduce(Lc: ComplexLaplacian, part: Partition) -> ComplexLaplacian:
    """Schur complement on the boundary nodes.

    Only complex symmetry and zero row sums are guaranteed; the reduced
    entries need not correspond to single R, L or C elements.
    """
    LBB, LBC, LCB, LCC = _blocks(Lc, part)
    lu, cond = _interior_lu(LCC, Lc.scale)
    S = LBB - LBC @ _solve(lu, LCB) if lu is not None else LBB.copy()
    S = 0.5 * (S + S.T)
    # round-off in the row sums grows with the conditioning of L_CC
    tol = CHECK_RTOL * max(float(np.max(np.abs(S))) if S.size else 0.0, Lc.scale) * cond * Lc.N
    if np.max(np.abs(S.sum(axis=1)), initial=0.0) > tol:
        raise InvalidLaplacian("reduced complex Laplacian lost zero row sums")
    return ComplexLaplacian(S, part.boundary)


def complex_boundary_solve(Lc: ComplexLaplacian, part: Partition, psi_B) -> BoundarySolution:
    psi_B = np.asarray(psi_B, dtype=complex)
    LBB, LBC, LCB, LCC = _blocks(Lc, part)
    lu, _ = _interior_lu(LCC, Lc.scale)
    psi_C = -_solve(lu, LCB @ psi_B)
    J_B = LBB @ psi_B + LBC @ psi_C
    return BoundarySolution(
        psi_B,
        psi_C,
        J_B,
        np.zeros(part.N_C, dtype=complex),
        frozenset({"psi_B"}),
        part.boundary,
        part.internal,
    )
