"""Royden's norm ||q|| = integral of |q| from the periods of the double cover."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .cover import DoubleCover, build_double_cover
from .errors import DegreeOverflow, RoydenError
from .homology import DEFAULT_CLEARANCE, build_path_system, chain_cycles
from .periods import DEFAULT_TOL, RIEMANN_TOL, BigPeriodMatrix, big_period_matrix
from .quaddiff import QuadDiff, validate


@dataclass
class NormResult:
    value: float
    error_estimate: float
    genus: int
    orientation_flipped: bool
    diagnostics: dict = field(default_factory=dict)
    periods: BigPeriodMatrix | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "norm": self.value,
            "error": self.error_estimate,
            "genus": self.genus,
            "orientation_flipped": self.orientation_flipped,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def omega_periods(pm: BigPeriodMatrix | np.ndarray, c: DoubleCover) -> np.ndarray:
    """Periods of omega_q = (g/s) dx/z: a combination of the rows of the period matrix."""
    mat = pm.matrix if isinstance(pm, BigPeriodMatrix) else np.asarray(pm)
    coeffs = c.omega_numerator.coeffs
    if len(coeffs) > mat.shape[0]:
        raise DegreeOverflow(f"numerator degree {len(coeffs) - 1} exceeds genus - 1 = {mat.shape[0] - 1}")
    return coeffs @ mat[: len(coeffs)]


def norm_from_periods(pers) -> float:
    """sum_j Im(conj(x_j) y_j) for periods (x_1..x_g, y_1..y_g) over a symplectic basis."""
    pers = np.asarray(pers)
    if pers.ndim != 1 or len(pers) % 2:
        raise ValueError("need an even-length period vector")
    g = len(pers) // 2
    return float(np.sum((np.conj(pers[:g]) * pers[g:]).imag))


def _stage(name, fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except RoydenError as exc:
        exc.stage = exc.stage or name
        raise


def royden_norm(
    q: QuadDiff,
    tol: float = DEFAULT_TOL,
    clearance: float = DEFAULT_CLEARANCE,
    riemann_tol: float = RIEMANN_TOL,
) -> NormResult:
    """||q|| via the abelian double cover: half the area of |omega_q|^2 on the cover."""
    if not q.reduced:
        q = _stage("validate", validate, q.g, q.h)
    cover = _stage("cover", build_double_cover, q)
    ps = _stage("paths", build_path_system, cover, clearance)
    cb = _stage("homology", chain_cycles, ps, cover)
    pm = _stage("periods", big_period_matrix, cover, ps, cb, tol, riemann_tol)
    pers = _stage("norm", omega_periods, pm, cover)
    raw = norm_from_periods(pers)

    g = cover.genus
    coeff_abs = np.abs(cover.omega_numerator.coeffs)
    pers_err = coeff_abs @ pm.errors[: len(coeff_abs)]
    err = 0.5 * float(np.sum(np.abs(pers[:g]) * pers_err[g:] + np.abs(pers[g:]) * pers_err[:g]))
    return NormResult(
        value=0.5 * abs(raw),
        error_estimate=err,
        genus=g,
        orientation_flipped=raw < 0,
        diagnostics={
            "symmetry_defect": pm.symmetry_defect,
            "min_imag_eigenvalue": pm.min_imag_eigenvalue,
            "chain_order": ps.order,
            "detours": ps.detours,
        },
        periods=pm,
    )
