"""Piecewise paths in the plane: straight segments and circular arcs.

Pieces are parametrised by ``tau`` in [0, 1]. Both ``tau`` and ``1 - tau`` are
passed around explicitly so that offsets ``x - b`` to a piece's own endpoints
stay accurate at quadrature nodes packed against those endpoints.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Segment:
    a: complex
    b: complex

    @property
    def start(self) -> complex:
        return self.a

    @property
    def end(self) -> complex:
        return self.b

    @property
    def midpoint(self) -> complex:
        return (self.a + self.b) / 2

    @property
    def length(self) -> float:
        return abs(self.b - self.a)

    def point(self, tau, omt):
        return self.a * omt + self.b * tau

    def offsets(self, pts, tau, omt):
        """x(tau) - pts[j] as a (len(pts), len(tau)) array, exact at the endpoints."""
        pts = np.asarray(pts)[:, None]
        return (self.a - pts) * omt + (self.b - pts) * tau

    def derivative(self, tau):
        return np.full(np.shape(tau), self.b - self.a, dtype=complex)

    def split(self) -> tuple[Segment, Segment]:
        m = self.midpoint
        return Segment(self.a, m), Segment(m, self.b)

    def sample(self, n: int = 2) -> np.ndarray:
        t = np.linspace(0.0, 1.0, n)
        return self.point(t, 1 - t)

    def to_dict(self) -> dict:
        return {"type": "segment", "a": [self.a.real, self.a.imag], "b": [self.b.real, self.b.imag]}


@dataclass(frozen=True)
class Arc:
    center: complex
    radius: float
    phi0: float
    phi1: float

    def _phi(self, tau):
        return self.phi0 + (self.phi1 - self.phi0) * np.asarray(tau)

    @property
    def start(self) -> complex:
        return complex(self.center + self.radius * np.exp(1j * self.phi0))

    @property
    def end(self) -> complex:
        return complex(self.center + self.radius * np.exp(1j * self.phi1))

    @property
    def midpoint(self) -> complex:
        return complex(self.center + self.radius * np.exp(0.5j * (self.phi0 + self.phi1)))

    @property
    def length(self) -> float:
        return self.radius * abs(self.phi1 - self.phi0)

    def point(self, tau, omt=None):
        return self.center + self.radius * np.exp(1j * self._phi(tau))

    def offsets(self, pts, tau, omt):
        pts = np.asarray(pts)[:, None]
        return (self.center - pts) + self.radius * np.exp(1j * self._phi(tau))[None, :]

    def derivative(self, tau):
        return 1j * self.radius * (self.phi1 - self.phi0) * np.exp(1j * self._phi(tau))

    def split(self) -> tuple[Arc, Arc]:
        mid = 0.5 * (self.phi0 + self.phi1)
        return Arc(self.center, self.radius, self.phi0, mid), Arc(self.center, self.radius, mid, self.phi1)

    def sample(self, n: int = 33) -> np.ndarray:
        t = np.linspace(0.0, 1.0, n)
        return self.point(t)

    def to_dict(self) -> dict:
        return {
            "type": "arc",
            "center": [self.center.real, self.center.imag],
            "radius": self.radius,
            "phi0": self.phi0,
            "phi1": self.phi1,
        }


Piece = Segment | Arc


def circle(center: complex, radius: float, start_angle: float = 0.0, n: int = 4) -> list[Arc]:
    """Counterclockwise closed loop as ``n`` arcs."""
    step = 2 * np.pi / n
    return [Arc(center, radius, start_angle + k * step, start_angle + (k + 1) * step) for k in range(n)]


def polyline(pieces) -> np.ndarray:
    """Dense sample of a piecewise path, used for geometric checks and plotting."""
    out = [pieces[0].start]
    for pc in pieces:
        out.extend(pc.sample(2 if isinstance(pc, Segment) else 33)[1:])
    return np.array(out, dtype=complex)


def point_segment_distance(c: complex, a: complex, b: complex) -> float:
    d = b - a
    if d == 0:
        return abs(c - a)
    t = ((c - a) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(c - (a + t * d))


def _cross(u: complex, v: complex) -> float:
    return (u.conjugate() * v).imag


def segments_intersect(p1: complex, p2: complex, q1: complex, q2: complex, eps: float = 1e-14) -> bool:
    """Closed-segment intersection test (touching and collinear overlap count)."""
    d1 = _cross(q2 - q1, p1 - q1)
    d2 = _cross(q2 - q1, p2 - q1)
    d3 = _cross(p2 - p1, q1 - p1)
    d4 = _cross(p2 - p1, q2 - p1)
    scale = eps * max(abs(p2 - p1), abs(q2 - q1), 1e-300) ** 2
    if ((d1 > scale and d2 < -scale) or (d1 < -scale and d2 > scale)) and (
        (d3 > scale and d4 < -scale) or (d3 < -scale and d4 > scale)
    ):
        return True

    def on_seg(a, b, c):
        return (
            min(a.real, b.real) - 1e-14 <= c.real <= max(a.real, b.real) + 1e-14
            and min(a.imag, b.imag) - 1e-14 <= c.imag <= max(a.imag, b.imag) + 1e-14
        )

    if abs(d1) <= scale and on_seg(q1, q2, p1):
        return True
    if abs(d2) <= scale and on_seg(q1, q2, p2):
        return True
    if abs(d3) <= scale and on_seg(p1, p2, q1):
        return True
    if abs(d4) <= scale and on_seg(p1, p2, q2):
        return True
    return False
