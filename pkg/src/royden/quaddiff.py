"""Integrable quadratic differentials ``g(x)/h(x) dx^2`` on a punctured sphere.

The punctures are the zeros of ``h`` (simple), and integrability forces
``deg g <= deg h - 4``. The point at infinity is never a puncture here.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DegreeBoundViolated, DimensionError, NotSquarefree, ValidationError, ZeroNumerator
from .polyfield import Poly, RootSet, roots

CANCEL_TOL = 1e-7


@dataclass(frozen=True)
class QuadDiff:
    g: Poly
    h: Poly
    reduced: bool = False
    h_roots: RootSet | None = field(default=None, compare=False, repr=False)
    g_roots: RootSet | None = field(default=None, compare=False, repr=False)

    def __call__(self, x):
        """Coefficient function g(x)/h(x)."""
        return self.g(x) / self.h(x)

    @property
    def punctures(self) -> np.ndarray:
        return self.h_roots.locations

    def scaled(self, lam: complex) -> QuadDiff:
        """The differential ``lam * q`` (same punctures, same root data)."""
        if lam == 0:
            raise ZeroNumerator("scaling by zero")
        return replace(self, g=self.g * lam)


@dataclass(frozen=True)
class Divisor:
    """Zeros (positive order) and simple poles (order -1) of q, plus the order at infinity."""

    points: tuple[tuple[complex, int], ...]
    infinity_order: int

    @property
    def degree(self) -> int:
        return sum(o for _, o in self.points) + self.infinity_order

    def odd_points(self) -> list[complex]:
        return [p for p, o in self.points if o % 2]


def validate(g: Poly, h: Poly, tol: float = CANCEL_TOL) -> QuadDiff:
    """Check integrability and cancel root clusters shared by g and h.

    A root of g lying within ``tol`` (relative) of a root of h is treated as
    the same point; both polynomials are deflated by the root of h.

    Raises
    ------
    ZeroNumerator, NotSquarefree, DegreeBoundViolated
    """
    g, h = Poly(g.coeffs).trimmed(), Poly(h.coeffs).trimmed()
    if g.is_zero:
        raise ZeroNumerator("numerator g is identically zero")
    if h.is_zero:
        raise ValidationError("denominator h is identically zero")
    _check_degrees(g, h)

    hr = roots(h)
    if any(m > 1 for m in hr.multiplicities):
        bad = [r for r, m in hr if m > 1]
        raise NotSquarefree(f"h has repeated roots near {bad}")
    h_locs = list(hr.locations)
    g_locs = list(roots(g).expanded()) if g.degree >= 1 else []

    kept_g = []
    for r in g_locs:
        hit = None
        for j, s in enumerate(h_locs):
            if abs(r - s) <= tol * max(1.0, abs(s)):
                hit = j
                break
        if hit is None:
            kept_g.append(r)
            continue
        s = h_locs.pop(hit)
        g, _ = g.divide_linear(s)
        h, _ = h.divide_linear(s)
    _check_degrees(g, h)

    return QuadDiff(
        g=g,
        h=h,
        reduced=True,
        h_roots=RootSet(tuple((complex(s), 1) for s in h_locs)),
        g_roots=_group(kept_g),
    )


def _check_degrees(g: Poly, h: Poly) -> None:
    if h.degree < 4:
        raise DegreeBoundViolated(f"deg h = {h.degree} < 4: Q(X) is trivial")
    if g.degree > h.degree - 4:
        raise DegreeBoundViolated(f"deg g = {g.degree} exceeds deg h - 4 = {h.degree - 4}")


def _group(locs) -> RootSet:
    # regroup the expanded root list of g into (location, multiplicity)
    out: list[list] = []
    for r in locs:
        for item in out:
            if abs(item[0] - r) <= 1e-8 * max(1.0, abs(r)):
                item[1] += 1
                break
        else:
            out.append([complex(r), 1])
    return RootSet(tuple((r, m) for r, m in out))


def divisor(q: QuadDiff) -> Divisor:
    if not q.reduced:
        q = validate(q.g, q.h)
    pts = [(complex(p), -1) for p in q.h_roots.locations]
    pts += [(complex(z), m) for z, m in q.g_roots]
    return Divisor(tuple(pts), q.h.degree - q.g.degree - 4)


def affine_pullback(q: QuadDiff, a: complex, b: complex) -> QuadDiff:
    """Pull q back along x -> a*x + b, normalising the denominator to be monic."""
    if a == 0:
        raise ValidationError("affine map needs a != 0")
    g2 = q.g.compose_affine(a, b) * (a * a)
    h2 = q.h.compose_affine(a, b)
    lead = h2.lead
    return validate(g2 / lead, h2 / lead)


def dimension_of_q(h: Poly) -> int:
    """Complex dimension of Q(X) for X the sphere minus the zeros of h."""
    h = h.trimmed()
    if h.degree < 4:
        raise DimensionError(f"deg h = {h.degree} < 4: Q(X) is trivial")
    if any(m > 1 for m in roots(h).multiplicities):
        raise NotSquarefree("h must have simple roots")
    return h.degree - 3


def _pairs(p: Poly) -> list[list[float]]:
    return [[float(c.real), float(c.imag)] for c in p.coeffs]


def to_json(q: QuadDiff) -> str:
    return json.dumps({"g": _pairs(q.g), "h": _pairs(q.h)})


def from_json(text: str, tol: float = CANCEL_TOL) -> QuadDiff:
    try:
        data = json.loads(text)
        g = Poly([complex(re, im) for re, im in data["g"]])
        h = Poly([complex(re, im) for re, im in data["h"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed quadratic differential JSON: {exc}") from exc
    return validate(g, h, tol)
