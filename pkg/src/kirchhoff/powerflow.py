"""Prescribed-power problem at internal nodes.

Find psi_C with [psi_C] L_CC (psi_C - psi_C*) = P_C, where psi_C* are the
open-circuit potentials for the fixed boundary potentials. The equation is
quadratic and generally has several roots; ``pf_solve`` runs damped Newton
from several starts and reports every distinct root it finds.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .boundary import open_circuit
from .errors import NoConvergence, SingularJacobian
from .reduction import BlockLaplacian

MAX_ITER = 50
MAX_HALVINGS = 30
DEDUP_RTOL = 1e-6
DEGENERATE_ATOL = 1e-12
N_RANDOM_STARTS = 8


@dataclass(frozen=True)
class PowerSpec:
    psi_B: np.ndarray
    P_C: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "psi_B", np.asarray(self.psi_B, dtype=float))
        object.__setattr__(self, "P_C", np.asarray(self.P_C, dtype=float))


@dataclass(frozen=True)
class PowerFlowSolution:
    psi_C: np.ndarray
    residual: float
    iterations: int
    degenerate: bool


@dataclass
class PowerFlowResult:
    """Roots found from the attempted starts; not guaranteed to be all roots."""

    solutions: list
    starts: int
    converged: int
    failures: list = field(default_factory=list)
    tol: float = 0.0


def _check(bl: BlockLaplacian, spec: PowerSpec):
    if spec.psi_B.shape != (bl.N_B,) or spec.P_C.shape != (bl.N_C,):
        raise ValueError(
            f"power spec shapes {spec.psi_B.shape}, {spec.P_C.shape} do not match "
            f"partition ({bl.N_B}, {bl.N_C})"
        )


def open_circuit_potentials(bl: BlockLaplacian, spec: PowerSpec) -> np.ndarray:
    return open_circuit(bl, spec.psi_B).psi_C


def pf_tolerance(bl: BlockLaplacian, spec: PowerSpec) -> float:
    psi_max = float(np.max(np.abs(spec.psi_B), initial=0.0))
    p_max = float(np.max(np.abs(spec.P_C), initial=0.0))
    return 1e-10 * max(p_max, bl.scale * psi_max**2, np.finfo(float).tiny)


def pf_residual(bl: BlockLaplacian, spec: PowerSpec, psi_C, psi_star=None) -> np.ndarray:
    """F(psi_C) = [psi_C] L_CC (psi_C - psi_C*) - P_C."""
    _check(bl, spec)
    psi_C = np.asarray(psi_C, dtype=float)
    if psi_star is None:
        psi_star = open_circuit_potentials(bl, spec)
    return psi_C * (bl.LCC @ (psi_C - psi_star)) - spec.P_C


def pf_residual_deviation(bl: BlockLaplacian, spec: PowerSpec, psi_C, psi_star=None) -> np.ndarray:
    """Same residual written in the deviation d = psi_C - psi_C*.

    [d] L_CC d + [psi_C*] L_CC d - P_C.
    """
    _check(bl, spec)
    if psi_star is None:
        psi_star = open_circuit_potentials(bl, spec)
    d = np.asarray(psi_C, dtype=float) - psi_star
    Ld = bl.LCC @ d
    return d * Ld + psi_star * Ld - spec.P_C


def pf_jacobian(bl: BlockLaplacian, spec: PowerSpec, psi_C, psi_star=None) -> np.ndarray:
    """diag(L_CC (psi_C - psi_C*)) + [psi_C] L_CC."""
    _check(bl, spec)
    psi_C = np.asarray(psi_C, dtype=float)
    if psi_star is None:
        psi_star = open_circuit_potentials(bl, spec)
    return np.diag(bl.LCC @ (psi_C - psi_star)) + psi_C[:, None] * bl.LCC


def default_starts(psi_star, n_random=N_RANDOM_STARTS, seed=0) -> list:
    rng = np.random.default_rng(seed)
    starts = [psi_star.copy(), 0.5 * psi_star, 1.5 * psi_star]
    for _ in range(n_random):
        starts.append(psi_star * (1.0 + rng.uniform(-0.9, 0.9, psi_star.shape)))
    return starts


def _newton_step(J, F):
    if not np.all(np.isfinite(J)) or np.linalg.cond(J) > 1e14:
        raise SingularJacobian("Jacobian is singular at the current iterate")
    return np.linalg.solve(J, -F)


def _newton(bl, spec, psi_star, x0, tol):
    """Damped Newton from ``x0``. Returns (x, residual_norm, iterations)."""
    res = lambda x: pf_residual(bl, spec, x, psi_star)
    x = np.array(x0, dtype=float)
    F = res(x)
    nF = np.max(np.abs(F), initial=0.0)
    for it in range(1, MAX_ITER + 1):
        if nF <= tol:
            return _polish(bl, spec, psi_star, x, tol), it - 1
        dx = _newton_step(pf_jacobian(bl, spec, x, psi_star), F)
        t = 1.0
        for _ in range(MAX_HALVINGS + 1):
            x_new = x + t * dx
            F_new = res(x_new)
            n_new = np.max(np.abs(F_new), initial=0.0)
            if n_new < nF:
                break
            t *= 0.5
        else:
            raise NoConvergence("line search failed to reduce the residual", iterations=it)
        x, F, nF = x_new, F_new, n_new
    if nF <= tol:
        return _polish(bl, spec, psi_star, x, tol), MAX_ITER
    raise NoConvergence(f"no convergence in {MAX_ITER} iterations", residual=float(nF))


def _polish(bl, spec, psi_star, x, tol):
    """Refine a converged root.

    Regular roots get extra Newton steps while the residual does not grow.
    Near-singular roots (folds, where Newton only converges linearly) are
    refined by Gauss-Newton on the bordered system F(x) = 0, J(x) v = 0,
    |v| = 1, which is well conditioned at a fold.
    """
    res = lambda z: pf_residual(bl, spec, z, psi_star)
    J = pf_jacobian(bl, spec, x, psi_star)
    sv = np.linalg.svd(J, compute_uv=False)
    size = max(float(np.max(np.abs(x))), float(np.max(np.abs(psi_star), initial=0.0)), 1e-300)
    fold_tol = 1e-3 * float(np.max(np.abs(bl.LCC))) * size
    if sv[-1] > fold_tol:
        for _ in range(3):
            try:
                dx = _newton_step(J, res(x))
            except SingularJacobian:
                break
            x_new = x + dx
            if np.max(np.abs(res(x_new))) > np.max(np.abs(res(x))):
                break
            x = x_new
            J = pf_jacobian(bl, spec, x, psi_star)
        return x
    return _polish_fold(bl, spec, psi_star, x, tol, size)


def _polish_fold(bl, spec, psi_star, x0, tol, size):
    n = len(x0)
    Lcc = bl.LCC
    _, _, vt = np.linalg.svd(pf_jacobian(bl, spec, x0, psi_star))
    z = np.concatenate([x0, vt[-1]])

    def system(z):
        x, v = z[:n], z[n:]
        J = pf_jacobian(bl, spec, x, psi_star)
        G = np.concatenate([pf_residual(bl, spec, x, psi_star), J @ v, [0.5 * (v @ v - 1.0)]])
        # d(J v)/dx = diag(v) L_CC + diag(L_CC v)
        dJv = v[:, None] * Lcc + np.diag(Lcc @ v)
        top = np.hstack([J, np.zeros((n, n))])
        mid = np.hstack([dJv, J])
        bot = np.concatenate([np.zeros(n), v])[None, :]
        return G, np.vstack([top, mid, bot])

    for _ in range(20):
        G, A = system(z)
        dz = np.linalg.lstsq(A, -G, rcond=None)[0]
        z = z + dz
        if np.max(np.abs(dz[:n])) <= 1e-15 * size:
            break
    x = z[:n]
    if np.max(np.abs(x - x0)) > 1e-3 * size or np.max(np.abs(pf_residual(bl, spec, x, psi_star))) > tol:
        return x0
    return x


def pf_solve(bl: BlockLaplacian, spec: PowerSpec, starts=None, n_random=N_RANDOM_STARTS, seed=0) -> PowerFlowResult:
    _check(bl, spec)
    psi_star = open_circuit_potentials(bl, spec)
    if bl.N_C == 0:
        return PowerFlowResult([PowerFlowSolution(psi_star, 0.0, 0, False)], 1, 1)
    if starts is None:
        starts = default_starts(psi_star, n_random, seed)
    tol = pf_tolerance(bl, spec)
    found, failures = [], []
    for k, x0 in enumerate(starts):
        try:
            x, iters = _newton(bl, spec, psi_star, x0, tol)
        except (NoConvergence, SingularJacobian) as exc:
            failures.append({"start": k, "error": type(exc).__name__, "message": exc.message})
            continue
        found.append((x, iters))
    if not found:
        raise NoConvergence("no Newton start converged", starts=len(starts), failures=failures)

    found.sort(key=lambda item: tuple(item[0]))
    size = max(float(np.max(np.abs(psi_star), initial=0.0)), float(np.max(np.abs(spec.psi_B), initial=0.0)), 1.0)
    solutions = []
    for x, iters in found:
        if any(np.max(np.abs(x - s.psi_C)) <= DEDUP_RTOL * size for s in solutions):
            continue
        r = float(np.max(np.abs(pf_residual(bl, spec, x, psi_star)), initial=0.0))
        solutions.append(PowerFlowSolution(x, r, iters, bool(np.any(np.abs(x) <= DEGENERATE_ATOL))))
    return PowerFlowResult(solutions, len(starts), len(found), failures, tol)
