"""Edge integrals of x^k dx / z and the big period matrix."""
from __future__ import annotations

import copy
from dataclasses import dataclass

import numpy as np

from .cover import DoubleCover
from .errors import QuadratureStalled, RiemannRelationViolation
from .homology import CycleBasis, PathSystem
from .quadrature import de_integrate
from .tracking import TrackedBranch, tracked_sqrt

DEFAULT_TOL = 1e-10
RIEMANN_TOL = 1e-6
MAX_SPLITS = 24


@dataclass
class EdgeIntegrals:
    values: np.ndarray  # (edges, genus): integral of x^k dx/z from b_i to b_{i+1}
    errors: np.ndarray
    evaluations: int = 0


@dataclass
class BigPeriodMatrix:
    matrix: np.ndarray  # genus x 2 genus, columns a_1..a_g, b_1..b_g
    errors: np.ndarray
    tau: np.ndarray
    symmetry_defect: float
    min_imag_eigenvalue: float

    @property
    def genus(self) -> int:
        return self.matrix.shape[0]


def _piece_integrand(branch: TrackedBranch, k: int, genus: int):
    pc = branch.pieces[k]
    powers = np.arange(genus)[:, None]

    def f(tau, omt):
        x = pc.point(tau, omt)
        return (x[None, :] ** powers) * (pc.derivative(tau) / branch.z(k, tau, omt))[None, :]

    return f


def integrate_branch(branch: TrackedBranch, genus: int, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray, int]:
    """Integrals of x^k dx / z, k < genus, along a tracked branch.

    Pieces whose double-exponential estimate does not settle are halved
    (the branch object is modified in place).
    """
    total = np.zeros(genus, dtype=complex)
    err = np.zeros(genus)
    evals = 0
    k = 0
    splits = 0
    while k < len(branch.pieces):
        res = de_integrate(_piece_integrand(branch, k, genus), tol)
        evals += res.evaluations
        if not res.converged:
            splits += 1
            if splits > MAX_SPLITS:
                raise QuadratureStalled(
                    f"edge integral did not reach tol {tol:g} after {MAX_SPLITS} bisections (last error {res.error.max():.3g})"
                )
            branch.split(k)
            continue
        total += res.value
        err += res.error
        k += 1
    return total, err, evals


def edge_integral(c: DoubleCover, edge, k: int, tol: float = DEFAULT_TOL) -> tuple[complex, float]:
    """Integral of x^k dx / z along one edge, on the sheet fixed by ``tracked_sqrt``."""
    if not 0 <= k:
        raise ValueError("k must be non-negative")
    branch = tracked_sqrt(c.finite_branch, c.scale, edge)
    vals, errs, _ = integrate_branch(branch, k + 1, tol)
    return complex(vals[k]), float(errs[k])


def edge_integrals(c: DoubleCover, cb: CycleBasis, tol: float = DEFAULT_TOL) -> EdgeIntegrals:
    vals, errs, evals = [], [], 0
    for br in cb.branches:
        v, e, n = integrate_branch(copy.deepcopy(br), c.genus, tol)
        vals.append(v)
        errs.append(e)
        evals += n
    return EdgeIntegrals(np.array(vals), np.array(errs), evals)


def riemann_check(matrix: np.ndarray) -> tuple[np.ndarray, float, float]:
    g = matrix.shape[0]
    pa, pb = matrix[:, :g], matrix[:, g:]
    tau = np.linalg.solve(pa, pb)
    defect = float(np.linalg.norm(tau - tau.T) / max(np.linalg.norm(tau), 1e-300))
    im = tau.imag
    min_eig = float(np.linalg.eigvalsh(0.5 * (im + im.T)).min())
    return tau, defect, min_eig


def big_period_matrix(
    c: DoubleCover,
    ps: PathSystem,
    cb: CycleBasis,
    tol: float = DEFAULT_TOL,
    riemann_tol: float = RIEMANN_TOL,
    check: bool = True,
) -> BigPeriodMatrix:
    """Periods of x^k dx/z (rows) over the symplectic cycles (columns).

    A chain cycle integrates to twice its edge integral; symplectic periods
    are the integer combinations given by ``cb.S``.
    """
    g = c.genus
    ei = edge_integrals(c, cb, tol)
    orient = np.array(cb.orientation, dtype=float)
    chain = 2.0 * (ei.values * orient[:, None]).T  # (g, edges)
    chain_err = 2.0 * ei.errors.T
    S = cb.S[:, : 2 * g]
    matrix = chain @ S
    errors = chain_err @ np.abs(S)
    tau, defect, min_eig = riemann_check(matrix)
    if check and (defect > riemann_tol or not min_eig > 0):
        raise RiemannRelationViolation(
            f"Riemann relations fail: symmetry defect {defect:.3g}, min eigenvalue of Im(tau) {min_eig:.3g}"
        )
    return BigPeriodMatrix(matrix, errors, tau, defect, min_eig)
