"""Named test differentials shared by scripts and tests."""
from __future__ import annotations

import numpy as np

from .polyfield import Poly

# h(x) = (x - 2)(x^2 - 4x - 2)(x^2 + 4x + 6): three real roots, one conjugate pair
EXAMPLE_H = Poly([24, 52, -8, -12, -2, 1])
QUARTIC_H = Poly([-1, 0, 0, 0, 1])


def random_differential(seed: int, deg_h: int, radius: float = 2.0) -> tuple[Poly, Poly]:
    """Monic h with ``deg_h`` random simple roots in a disk and a random g of top allowed degree."""
    rng = np.random.default_rng(seed)
    while True:
        r = radius * np.sqrt(rng.uniform(size=deg_h)) * np.exp(2j * np.pi * rng.uniform(size=deg_h))
        gaps = np.abs(r[:, None] - r[None, :]) + np.eye(deg_h) * 1e9
        if gaps.min() > 0.2:
            break
    g = Poly(rng.normal(size=deg_h - 3) + 1j * rng.normal(size=deg_h - 3))
    return g, Poly.from_roots(r)


def oracle_cases() -> dict[str, tuple[Poly, Poly]]:
    return {
        "quartic_1": (Poly([1]), QUARTIC_H),
        "example_1": (Poly([1]), EXAMPLE_H),
        "example_x": (Poly([0, 1]), EXAMPLE_H),
        "example_1_plus_x": (Poly([1, 1]), EXAMPLE_H),
        "random_deg6": random_differential(6, 6),
    }
