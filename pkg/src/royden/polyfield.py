"""Complex univariate polynomials and root clusters.

Coefficients are stored low-to-high degree. Root finding uses the
Aberth-Ehrlich simultaneous iteration started from a fixed circle, so results
are reproducible for a given input.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import RootFindingError

_EPS = np.finfo(float).eps

# |lead| below this fraction of max|coeff| is treated as a numerical zero
LEADING_TRUNCATION = 1e-13


class Poly:
    """Immutable polynomial with complex coefficients, ``coeffs[k]`` multiplying x**k."""

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex)).copy()
        if c.ndim != 1:
            raise ValueError("coefficients must be one-dimensional")
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else np.zeros(1, dtype=complex)
        c.setflags(write=False)
        self._c = c

    @classmethod
    def from_roots(cls, roots, lead=1.0) -> Poly:
        roots = np.asarray(list(roots), dtype=complex)
        if roots.size == 0:
            return cls([lead])
        return cls(lead * npoly.polyfromroots(roots))

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def is_zero(self) -> bool:
        return len(self._c) == 1 and self._c[0] == 0

    @property
    def lead(self) -> complex:
        return complex(self._c[-1])

    def __call__(self, x):
        # Horner, vectorised over x
        x = np.asarray(x, dtype=complex)
        acc = np.full(x.shape, self._c[-1], dtype=complex)
        for a in self._c[-2::-1]:
            acc = acc * x + a
        return acc if acc.ndim else complex(acc)

    def scale_at(self, x):
        """Magnitude scale ``sum |a_k| |x|^k`` used to judge residuals."""
        ax = np.abs(np.asarray(x, dtype=complex))
        acc = np.full(ax.shape, abs(self._c[-1]))
        for a in self._c[-2::-1]:
            acc = acc * ax + abs(a)
        return acc if acc.ndim else float(acc)

    def deriv(self, m: int = 1) -> Poly:
        if self.degree < m:
            return Poly([0])
        return Poly(npoly.polyder(self._c, m))

    def monic(self) -> Poly:
        if self.is_zero:
            raise ZeroDivisionError("zero polynomial has no monic form")
        return Poly(self._c / self._c[-1])

    def trimmed(self, rel: float = LEADING_TRUNCATION) -> Poly:
        """Drop leading coefficients that are negligible relative to the largest."""
        c = self._c
        big = np.max(np.abs(c))
        n = len(c)
        while n > 1 and abs(c[n - 1]) < rel * big:
            n -= 1
        return Poly(c[:n])

    def divide_linear(self, r: complex) -> tuple[Poly, complex]:
        """Synthetic division by (x - r); returns quotient and remainder."""
        c = self._c
        if len(c) == 1:
            return Poly([0]), complex(c[0])
        q = np.empty(len(c) - 1, dtype=complex)
        acc = c[-1]
        for k in range(len(c) - 2, -1, -1):
            q[k] = acc
            acc = c[k] + acc * r
        return Poly(q), complex(acc)

    def compose_affine(self, a: complex, b: complex) -> Poly:
        """Return p(a*x + b)."""
        lin = np.array([b, a], dtype=complex)
        acc = np.array([self._c[-1]], dtype=complex)
        for c in self._c[-2::-1]:
            acc = npoly.polymul(acc, lin)
            acc[0] += c
        return Poly(acc)

    def __add__(self, other):
        other = _as_poly(other)
        return Poly(npoly.polyadd(self._c, other._c))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        return Poly(npoly.polysub(self._c, other._c))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __neg__(self):
        return Poly(-self._c)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Poly(npoly.polymul(self._c, other._c))
        return Poly(self._c * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Poly(self._c / complex(scalar))

    def __eq__(self, other):
        return isinstance(other, Poly) and np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        return f"Poly({[complex(c) for c in self._c]})"

    def allclose(self, other: Poly, rtol=1e-9, atol=1e-12) -> bool:
        n = max(len(self._c), len(other._c))
        a = np.pad(self._c, (0, n - len(self._c)))
        b = np.pad(other._c, (0, n - len(other._c)))
        return bool(np.allclose(a, b, rtol=rtol, atol=atol))


def _as_poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly([x])


@dataclass(frozen=True)
class RootSet:
    """Root clusters of a polynomial: ``roots`` holds (location, multiplicity)."""

    roots: tuple[tuple[complex, int], ...]
    cluster_tol: float = 1e-8

    @property
    def locations(self) -> np.ndarray:
        return np.array([r for r, _ in self.roots], dtype=complex)

    @property
    def multiplicities(self) -> list[int]:
        return [m for _, m in self.roots]

    @property
    def degree(self) -> int:
        return sum(self.multiplicities)

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def expanded(self) -> np.ndarray:
        """Locations repeated according to multiplicity."""
        return np.array([r for r, m in self.roots for _ in range(m)], dtype=complex)


def _fujiwara_bound(a: np.ndarray) -> float:
    # a is monic, low-to-high
    n = len(a) - 1
    terms = [abs(a[n - k]) ** (1.0 / k) for k in range(1, n)]
    terms.append(abs(a[0] / 2) ** (1.0 / n))
    return 2.0 * max(terms + [0.0])


def _aberth(p: Poly, max_iter: int) -> np.ndarray:
    a = p.coeffs / p.lead
    n = p.degree
    monic = Poly(a)
    dmonic = monic.deriv()
    radius = _fujiwara_bound(a)
    if radius == 0.0:
        return np.zeros(n, dtype=complex)
    center = -a[n - 1] / n
    # off-axis phase keeps guesses away from symmetric traps
    z = center + radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    for _ in range(max_iter):
        pz = monic(z)
        if np.all(np.abs(pz) <= 8 * _EPS * monic.scale_at(z)):
            break
        dp = dmonic(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = np.where(dp != 0, pz / dp, 0.0)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            step = w / (1.0 - w * s)
        step = np.where(np.isfinite(step), step, 0.0)
        z = z - step
        if np.all(np.abs(step) <= 2 * _EPS * np.maximum(1.0, np.abs(z))):
            break
    return z


def _link(z: np.ndarray, radius_fn) -> list[list[int]]:
    """Single-linkage groups: i~j when |z_i - z_j| <= radius_fn(z_i, z_j)."""
    n = len(z)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= radius_fn(z[i], z[j]):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _is_multiple_root(p: Poly, pts: np.ndarray) -> bool:
    """Is the spread of ``pts`` explained by rounding around one multiple root?"""
    m = len(pts)
    c = pts.mean()
    taylor = abs(p.deriv(m)(c)) / factorial(m)
    if taylor == 0:
        return True
    radius = 10.0 * (64 * _EPS * p.scale_at(c) / taylor) ** (1.0 / m)
    return bool(np.max(np.abs(pts - c)) <= radius)


def _polish(p: Poly, c: complex, m: int, steps: int = 4) -> complex:
    """Newton on the (m-1)-th derivative, where an m-fold root is simple."""
    d0, d1 = p.deriv(m - 1), p.deriv(m)
    for _ in range(steps):
        den = d1(c)
        if den == 0:
            break
        step = d0(c) / den
        c_new = c - step
        if not np.isfinite(c_new) or abs(d0(c_new)) > abs(d0(c)):
            break
        c = c_new
    return complex(c)


def roots(p: Poly, tol: float = 1e-10, cluster_tol: float = 1e-8, max_iter: int = 500) -> RootSet:
    """All roots of ``p`` with multiplicities.

    Raw Aberth iterates are grouped when they sit within ``cluster_tol``
    (relative) of each other, or when their spread is consistent with the
    rounding-level splitting of a single multiple root.

    Raises
    ------
    RootFindingError
        if a reported location leaves a residual above ``tol`` times
        ``sum |a_k| * max(1, |x|)**n``.
    """
    p = p.trimmed()
    if p.is_zero or p.degree < 1:
        raise ValueError("roots() needs a polynomial of degree >= 1")
    z = _aberth(p, max_iter)

    out: list[tuple[complex, int]] = []
    coarse = _link(z, lambda u, v: 1e-3 * max(1.0, abs(u), abs(v)))
    for grp in coarse:
        pts = z[grp]
        if len(grp) > 1 and _is_multiple_root(p, pts):
            out.append((_polish(p, complex(pts.mean()), len(grp)), len(grp)))
            continue
        fine = _link(pts, lambda u, v: cluster_tol * max(1.0, abs(u), abs(v)))
        for sub in fine:
            c = complex(pts[sub].mean())
            out.append((_polish(p, c, len(sub)) if len(sub) > 1 else c, len(sub)))

    locs = np.array([r for r, _ in out])
    # normwise backward error; the componentwise one is undefined at a root at 0
    scale = np.sum(np.abs(p.coeffs)) * np.maximum(1.0, np.abs(locs)) ** p.degree
    resid = np.abs(p(locs)) / scale
    worst = float(resid.max())
    if worst > tol:
        raise RootFindingError(
            f"root finding did not converge for degree {p.degree}: worst relative residual {worst:.3g}",
            worst_residual=worst,
        )
    out.sort(key=lambda rm: (round(rm[0].real, 12), round(rm[0].imag, 12)))
    return RootSet(tuple(out), cluster_tol)


def evaluate(p: Poly, x):
    return p(x)


def _match(a: RootSet, b: RootSet, tol: float) -> list[tuple[complex, int]]:
    common = []
    used = set()
    for ra, ma in a:
        best, best_d = None, None
        for j, (rb, mb) in enumerate(b):
            if j in used:
                continue
            d = abs(ra - rb)
            if d <= tol * max(1.0, abs(ra), abs(rb)) and (best_d is None or d < best_d):
                best, best_d = j, d
        if best is not None:
            used.add(best)
            rb, mb = b.roots[best]
            common.append(((ra + rb) / 2, min(ma, mb)))
    return common


def gcd_by_roots(p: Poly, q: Poly, tol: float = 1e-8) -> Poly:
    """Monic polynomial vanishing on the root clusters that ``p`` and ``q`` share."""
    if p.is_zero or q.is_zero:
        raise ValueError("gcd_by_roots needs nonzero polynomials")
    if p.degree == 0 or q.degree == 0:
        return Poly([1])
    common = _match(roots(p), roots(q), tol)
    return Poly.from_roots([r for r, m in common for _ in range(m)])


def squarefree_part(p: Poly, tol: float = 1e-8) -> Poly:
    """Monic polynomial with the root locations of ``p``, each of multiplicity one."""
    if p.is_zero:
        raise ValueError("zero polynomial has no squarefree part")
    if p.degree == 0:
        return Poly([1])
    return Poly.from_roots(roots(p, cluster_tol=tol).locations)
