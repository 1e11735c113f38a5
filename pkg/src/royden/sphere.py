"""The unit sphere of Q(X) when Q(X) is two-dimensional.

Real directions ``q_theta = (cos(theta) + sin(theta) x) / h(x) dx^2`` are
sampled on a uniform grid and the polar radius ``r(theta) = 1/||q_theta||``
is recorded, so the curve ``theta -> r(theta) (cos, sin)`` is the real unit
sphere in the basis ``(1/h, x/h)``.
"""
from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, RoydenError
from .norm import royden_norm
from .periods import DEFAULT_TOL
from .homology import DEFAULT_CLEARANCE
from .polyfield import Poly, roots
from .quaddiff import dimension_of_q, validate

CANCEL_WINDOW = 1e-6  # radians; closer than this to a zero-free angle we cancel exactly
REAL_ROOT_TOL = 1e-9
CSV_COLUMNS = ("theta", "r", "d1", "d2", "d3", "near_singular")
THREADS_ENV = "ROYDEN_THREADS"


@dataclass
class SphereSample:
    theta: float
    r: float
    d1: float | None = None
    d2: float | None = None
    d3: float | None = None
    near_singular: bool = False
    genus: int | None = field(default=None, compare=False)
    unit_defect: float | None = field(default=None, compare=False)
    symmetry_defect: float | None = field(default=None, compare=False)
    min_imag_eigenvalue: float | None = field(default=None, compare=False)


@dataclass
class SampleFailure:
    theta: float
    stage: str | None
    message: str


@dataclass
class SweepResult:
    samples: list[SphereSample]
    failures: list[SampleFailure]
    n_grid: int

    @property
    def complete(self) -> bool:
        return not self.failures


def _real_roots(h: Poly) -> list[float]:
    return sorted(
        float(r.real) for r in roots(h).locations if abs(r.imag) <= REAL_ROOT_TOL * max(1.0, abs(r))
    )


def zero_free_angles(h: Poly) -> list[float]:
    """Angles in [0, pi) where a + b x shares its root with a real root of h.

    At ``theta = atan2(1, -x0)`` the numerator ``cos + sin x`` vanishes at
    ``x0``, which cancels a pole and leaves a differential without zeros.
    """
    return sorted(math.atan2(1.0, -x0) % math.pi for x0 in _real_roots(h))


def _angle_gap(theta: float, alpha: float) -> float:
    d = (theta - alpha) % math.pi
    return min(d, math.pi - d)


def direction(theta: float, h: Poly, real_roots: list[float] | None = None) -> tuple[Poly, Poly]:
    """(g, h) for q_theta, with the shared root removed exactly near a zero-free angle."""
    c, s = math.cos(theta), math.sin(theta)
    for x0 in real_roots if real_roots is not None else _real_roots(h):
        if _angle_gap(theta, math.atan2(1.0, -x0) % math.pi) <= CANCEL_WINDOW:
            return Poly([-x0, 1.0]) * s, h
    return Poly([c, s]), h


def _one_sample(args) -> SphereSample | SampleFailure:
    theta, h_coeffs, real_roots, tol, clearance, verify, near = args
    h = Poly(h_coeffs)
    try:
        g, h = direction(theta, h, real_roots)
        q = validate(g, h)
        res = royden_norm(q, tol=tol, clearance=clearance)
        r = 1.0 / res.value
        defect = None
        if verify:
            defect = abs(royden_norm(q.scaled(r), tol=tol, clearance=clearance).value - 1.0)
        return SphereSample(
            theta=theta,
            r=r,
            near_singular=near,
            genus=res.genus,
            unit_defect=defect,
            symmetry_defect=res.diagnostics["symmetry_defect"],
            min_imag_eigenvalue=res.diagnostics["min_imag_eigenvalue"],
        )
    except RoydenError as exc:
        return SampleFailure(theta, exc.stage, str(exc))


def worker_count(requested: int | None = None) -> int:
    """Workers for a sweep: the request, capped by ROYDEN_THREADS and the CPU count."""
    n = requested or os.cpu_count() or 1
    cap = os.environ.get(THREADS_ENV)
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return max(1, n)


def sweep(
    h: Poly,
    samples: int,
    tol: float = DEFAULT_TOL,
    clearance: float = DEFAULT_CLEARANCE,
    verify: bool = False,
    workers: int | None = None,
) -> SweepResult:
    """Sample r(theta) on ``samples`` uniform angles in [0, 2 pi).

    Failed samples are left out of ``samples`` and listed in ``failures``.
    ``verify`` recomputes ``||r q_theta||`` at every sample.
    """
    if dimension_of_q(h) != 2:
        raise DimensionError(f"sweep needs dim Q(X) = 2, got {dimension_of_q(h)}")
    if samples < 1:
        raise ValueError("samples must be positive")
    rr = _real_roots(h)
    angles = [math.atan2(1.0, -x0) % math.pi for x0 in rr]
    step = 2 * math.pi / samples
    jobs = []
    for i in range(samples):
        theta = step * i
        near = any(_angle_gap(theta, a) < step / 2 for a in angles)
        jobs.append((theta, tuple(h.coeffs), rr, tol, clearance, verify, near))

    n = min(worker_count(workers), samples)
    if n == 1:
        out = [_one_sample(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=n) as pool:
            out = list(pool.map(_one_sample, jobs, chunksize=max(1, samples // (4 * n))))
    good = [o for o in out if isinstance(o, SphereSample)]
    bad = [o for o in out if isinstance(o, SampleFailure)]
    return SweepResult(good, bad, samples)


def finite_difference_derivatives(samples: list[SphereSample], order: int = 3) -> list[SphereSample]:
    """Fill d1..d_order by periodic centred differences on a uniform grid.

    d1 and d2 use the three-point stencils, d3 the five-point stencil
    ``(r[i+2] - 2 r[i+1] + 2 r[i-1] - r[i-2]) / (2 h^3)``.
    """
    if not 1 <= order <= 3:
        raise ValueError("order must be 1, 2 or 3")
    n = len(samples)
    if n < 7:
        raise ValueError(f"need at least 7 grid points, got {n}")
    theta = np.array([s.theta for s in samples])
    step = 2 * math.pi / n
    if np.max(np.abs(theta - theta[0] - step * np.arange(n))) > 1e-9 * max(1.0, step):
        raise ValueError("samples must form a complete uniform grid over [0, 2 pi)")
    r = np.array([s.r for s in samples])

    def sh(k):
        return np.roll(r, -k)

    d = {
        1: (sh(1) - sh(-1)) / (2 * step),
        2: (sh(1) - 2 * r + sh(-1)) / step**2,
        3: (sh(2) - 2 * sh(1) + 2 * sh(-1) - sh(-2)) / (2 * step**3),
    }
    out = []
    for i, s in enumerate(samples):
        vals = {k: float(d[k][i]) if k <= order else None for k in (1, 2, 3)}
        out.append(
            SphereSample(
                s.theta, s.r, vals[1], vals[2], vals[3], s.near_singular,
                s.genus, s.unit_defect, s.symmetry_defect, s.min_imag_eigenvalue,
            )
        )
    return out


def _fmt(v) -> str:
    return "" if v is None else repr(float(v))


def write_csv(samples: list[SphereSample], stream, failures: list[SampleFailure] = ()) -> None:
    """Write the sweep table; failures are appended as ``#`` comment lines."""
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for s in samples:
        w.writerow([_fmt(s.theta), _fmt(s.r), _fmt(s.d1), _fmt(s.d2), _fmt(s.d3), "1" if s.near_singular else "0"])
    for f in failures:
        stream.write(f"# failed theta={f.theta!r} stage={f.stage} {f.message}\n")


def to_csv(samples: list[SphereSample], failures: list[SampleFailure] = ()) -> str:
    buf = io.StringIO()
    write_csv(samples, buf, failures)
    return buf.getvalue()


def _opt(text: str) -> float | None:
    return float(text) if text.strip() else None


def read_csv(stream) -> tuple[list[SphereSample], list[str]]:
    """Parse a sweep table. Raises ValueError on any schema mismatch."""
    lines = stream.read().splitlines()
    comments = [ln for ln in lines if ln.startswith("#")]
    body = [ln for ln in lines if ln.strip() and not ln.startswith("#")]
    if not body:
        raise ValueError("empty CSV")
    rows = list(csv.reader(body))
    if tuple(c.strip() for c in rows[0]) != CSV_COLUMNS:
        raise ValueError(f"expected header {','.join(CSV_COLUMNS)}, got {','.join(rows[0])}")
    out = []
    for k, row in enumerate(rows[1:], start=2):
        if len(row) != len(CSV_COLUMNS):
            raise ValueError(f"row {k}: expected {len(CSV_COLUMNS)} fields, got {len(row)}")
        flag = row[5].strip().lower()
        if flag not in ("0", "1", "true", "false"):
            raise ValueError(f"row {k}: near_singular must be 0/1")
        try:
            s = SphereSample(float(row[0]), float(row[1]), _opt(row[2]), _opt(row[3]), _opt(row[4]), flag in ("1", "true"))
        except ValueError as exc:
            raise ValueError(f"row {k}: {exc}") from exc
        if not s.r > 0 or not math.isfinite(s.r):
            raise ValueError(f"row {k}: r must be positive")
        out.append(s)
    return out, comments
