"""Brute-force area of |q| = |g/h| |dx|^2 over the plane.

The plane is split into

* a box ``[-R, R]^2`` (``R = chart_factor * max |zero or pole|``) handled by
  adaptive tensor Gauss-Legendre cubature,
* small squares centred at every zero and pole of q, each cut into eight
  triangles and integrated in Duffy (collapsed polar) coordinates, where the
  ``1/|x - p|`` pole and the ``|x - z|`` kink become smooth,
* the outside of the box, mapped by ``u = 1/x`` and integrated in polar
  coordinates about ``u = 0`` with the ``|u|^-4`` factor from ``dx^2``.

Regions are refined in order of the gap between a region's own estimate and
the sum over its four children.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .polyfield import Poly
from .quaddiff import QuadDiff, validate

PLANE, DUFFY, OUTER = 0, 1, 2
DEFAULT_ORACLE_TOL = 1e-5
DEFAULT_POLE_RADIUS = 0.05
DEFAULT_CHART_FACTOR = 2.0


@dataclass
class AreaEstimate:
    value: float
    tolerance: float
    cells_used: int
    certified: bool = True

    def to_dict(self) -> dict:
        return {"norm": self.value, "error": self.tolerance, "cells_used": self.cells_used, "certified": self.certified}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _reversed(p: Poly) -> Poly:
    return Poly(p.coeffs[::-1])


class _Integrand:
    def __init__(self, q: QuadDiff, R: float):
        self.g, self.h, self.R = q.g, q.h, R
        self.grev, self.hrev = _reversed(q.g), _reversed(q.h)
        self.excess = q.h.degree - q.g.degree - 4

    def __call__(self, kind: int, params: np.ndarray, U: np.ndarray, V: np.ndarray) -> np.ndarray:
        if kind == PLANE:
            x = U + 1j * V
            return np.abs(self.g(x) / self.h(x))
        if kind == DUFFY:
            p, A, B = params[:, 0:1], params[:, 1:2], params[:, 2:3]
            x = p + U * ((A - p) + V * (B - A))
            jac = np.abs(((A - p).conj() * (B - p)).imag)
            return np.abs(self.g(x) / self.h(x)) * U * jac
        # OUTER: U = angle, V = radial fraction of the chart boundary
        m = np.maximum(np.abs(np.cos(U)), np.abs(np.sin(U))) / self.R
        r = V * m
        u = r * np.exp(1j * U)
        return r ** (self.excess + 1) * np.abs(self.grev(u) / self.hrev(u)) * m


def _subtract(rect, sq):
    x0, x1, y0, y1 = rect
    s0, s1, t0, t1 = sq
    if s0 >= x1 or s1 <= x0 or t0 >= y1 or t1 <= y0:
        return [rect]
    out = []
    if x0 < s0:
        out.append((x0, s0, y0, y1))
    if s1 < x1:
        out.append((s1, x1, y0, y1))
    mx0, mx1 = max(x0, s0), min(x1, s1)
    if y0 < t0:
        out.append((mx0, mx1, y0, t0))
    if t1 < y1:
        out.append((mx0, mx1, t1, y1))
    return out


def _quadrant(z: complex) -> int:
    if z.real >= 0:
        return 1 if z.imag >= 0 else 4
    return 2 if z.imag >= 0 else 3


class _Cubature:
    def __init__(self, f: _Integrand, order: int):
        x, w = np.polynomial.legendre.leggauss(order)
        X, Y = np.meshgrid((x + 1) / 2, (x + 1) / 2, indexing="ij")
        self.nu, self.nv = X.ravel(), Y.ravel()
        self.w = np.outer(w, w).ravel() / 4
        self.f = f

    def _rule(self, kind, params, rects):
        u0, u1, v0, v1 = (rects[:, i : i + 1] for i in range(4))
        U = u0 + (u1 - u0) * self.nu
        V = v0 + (v1 - v0) * self.nv
        vals = self.f(kind, params, U, V)
        return (vals @ self.w) * ((u1 - u0) * (v1 - v0))[:, 0]

    @staticmethod
    def children(rects):
        u0, u1, v0, v1 = rects.T
        um, vm = (u0 + u1) / 2, (v0 + v1) / 2
        kids = np.stack(
            [
                np.stack([u0, um, v0, vm], 1),
                np.stack([um, u1, v0, vm], 1),
                np.stack([u0, um, vm, v1], 1),
                np.stack([um, u1, vm, v1], 1),
            ],
            1,
        )
        return kids.reshape(-1, 4)

    def evaluate(self, kinds, params, rects):
        """Own estimate and children-sum estimate for each region."""
        own = np.empty(len(rects))
        fine = np.empty(len(rects))
        for kind in np.unique(kinds):
            sel = np.flatnonzero(kinds == kind)
            own[sel] = self._rule(kind, params[sel], rects[sel])
            kr = self.children(rects[sel])
            kp = np.repeat(params[sel], 4, axis=0)
            fine[sel] = self._rule(kind, kp, kr).reshape(-1, 4).sum(axis=1)
        return own, fine


def direct_norm(
    q: QuadDiff,
    tol: float = DEFAULT_ORACLE_TOL,
    pole_radius: float = DEFAULT_POLE_RADIUS,
    chart_factor: float = DEFAULT_CHART_FACTOR,
    quadrants=(1, 2, 3, 4),
    order: int = 7,
    max_regions: int = 400_000,
) -> AreaEstimate:
    """Area integral of |q| over the plane (or over a union of closed quadrants).

    ``tol`` is relative. If the region budget runs out the best estimate is
    returned with ``certified=False``.
    """
    if not q.reduced:
        q = validate(q.g, q.h)
    special = [complex(p) for p in q.h_roots.locations] + [complex(z) for z, _ in q.g_roots]
    R = chart_factor * max(abs(s) for s in special)
    full = set(quadrants) == {1, 2, 3, 4}
    snap = 1e-12 * R

    kinds, params, rects = [], [], []

    def add(kind, rect, par=(0j, 0j, 0j)):
        kinds.append(kind)
        rects.append(rect)
        params.append(par)

    squares = []
    sp = np.array(special)
    for i, p in enumerate(special):
        others = np.delete(sp, i)
        w = pole_radius * float(np.min(np.abs(others - p)))
        if not full:
            re, im = p.real, p.imag
            if abs(im) <= snap:
                im = 0.0
            else:
                w = min(w, 0.5 * abs(im))
            if abs(re) <= snap:
                re = 0.0
            else:
                w = min(w, 0.5 * abs(re))
            p = complex(re, im)
        squares.append((p.real - w, p.real + w, p.imag - w, p.imag + w))
        ring = [p + w * v for v in (1, 1 + 1j, 1j, -1 + 1j, -1, -1 - 1j, -1j, 1 - 1j)]
        for k in range(8):
            A, B = ring[k], ring[(k + 1) % 8]
            if _quadrant((p + A + B) / 3) in quadrants:
                add(DUFFY, (0.0, 1.0, 0.0, 1.0), (p, A, B))

    boxes = [(-R, R, -R, R)] if full else [
        {1: (0, R, 0, R), 2: (-R, 0, 0, R), 3: (-R, 0, -R, 0), 4: (0, R, -R, 0)}[k] for k in sorted(quadrants)
    ]
    for sq in squares:
        boxes = [piece for b in boxes for piece in _subtract(b, sq)]
    for b in boxes:
        if b[1] > b[0] and b[3] > b[2]:
            add(PLANE, b)

    for k in range(8):
        lo, hi = k * np.pi / 4, (k + 1) * np.pi / 4
        if _quadrant(complex(np.cos((lo + hi) / 2), np.sin((lo + hi) / 2))) in quadrants:
            add(OUTER, (lo, hi, 0.0, 1.0))

    cub = _Cubature(_Integrand(q, R), order)
    kinds = np.array(kinds)
    params = np.array(params, dtype=complex)
    rects = np.array(rects, dtype=float)
    own, fine = cub.evaluate(kinds, params, rects)
    err = np.abs(own - fine)

    certified = True
    while True:
        total = float(fine.sum())
        if err.sum() <= tol * abs(total):
            break
        if len(rects) * 4 > max_regions:
            certified = False
            break
        idx = np.argsort(-err, kind="stable")
        cum = np.cumsum(err[idx])
        cut = int(np.searchsorted(cum, 0.5 * cum[-1])) + 1
        pick = np.zeros(len(rects), dtype=bool)
        pick[idx[:cut]] = True
        new_rects = _Cubature.children(rects[pick])
        new_kinds = np.repeat(kinds[pick], 4)
        new_params = np.repeat(params[pick], 4, axis=0)
        n_own, n_fine = cub.evaluate(new_kinds, new_params, new_rects)
        keep = ~pick
        kinds = np.concatenate([kinds[keep], new_kinds])
        params = np.concatenate([params[keep], new_params])
        rects = np.concatenate([rects[keep], new_rects])
        fine = np.concatenate([fine[keep], n_fine])
        err = np.concatenate([err[keep], np.abs(n_own - n_fine)])

    # deterministic summation order, independent of refinement history
    key = np.lexsort((rects[:, 3], rects[:, 2], rects[:, 1], rects[:, 0], params[:, 0].imag, params[:, 0].real, kinds))
    value = float(np.sum(fine[key]))
    return AreaEstimate(value=value, tolerance=float(err.sum()), cells_used=len(rects), certified=certified)
