"""The abelian double cover of q = g/h dx^2.

The cover is the hyperelliptic curve ``z^2 = c * p(x)`` where ``p`` is the
monic squarefree part of ``g*h`` and ``c`` its leading constant; on it
``omega_q = (g/s) dx / z`` squares to the pullback of q, ``s`` being the square
factor removed by normalisation (``g*h = c * p * s**2``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCover, DegreeOverflow
from .polyfield import Poly
from .quaddiff import QuadDiff, validate


@dataclass(frozen=True)
class DoubleCover:
    p: Poly
    scale: complex
    finite_branch: np.ndarray
    branched_at_infinity: bool
    genus: int
    numerator_g: Poly
    square_factor: Poly
    omega_numerator: Poly

    @property
    def n_branch(self) -> int:
        return len(self.finite_branch) + int(self.branched_at_infinity)

    def z_squared(self, x):
        return self.scale * self.p(x)

    def omega_squared(self, x):
        """Coefficient of omega_q**2 at a non-branch point, to compare with g/h."""
        return self.omega_numerator(x) ** 2 / self.z_squared(x)


def build_double_cover(q: QuadDiff) -> DoubleCover:
    if not q.reduced:
        q = validate(q.g, q.h)
    g, h = q.g, q.h
    branch = [complex(r) for r in q.h_roots.locations]
    square_roots = []
    for r, m in q.g_roots:
        if m % 2:
            branch.append(complex(r))
        square_roots += [r] * (m // 2)
    branch_arr = np.array(branch, dtype=complex)
    p = Poly.from_roots(branch_arr)
    s = Poly.from_roots(square_roots)
    if p.degree < 3:
        raise DegenerateCover(f"squarefree part of g*h has degree {p.degree} < 3")

    omega_num = g
    for r in square_roots:
        omega_num, _ = omega_num.divide_linear(r)

    odd = p.degree % 2 == 1
    n_total = p.degree + int(odd)
    genus = math.ceil(n_total / 2) - 1
    if omega_num.degree > genus - 1:
        raise DegreeOverflow(f"omega_q numerator degree {omega_num.degree} exceeds genus - 1 = {genus - 1}")

    return DoubleCover(
        p=p,
        scale=g.lead * h.lead,
        finite_branch=branch_arr,
        branched_at_infinity=odd,
        genus=genus,
        numerator_g=g,
        square_factor=s,
        omega_numerator=omega_num,
    )


def holomorphic_basis_degree(c: DoubleCover) -> int:
    """Number of basis forms x**k dx/z, k = 0..genus-1."""
    return c.genus
