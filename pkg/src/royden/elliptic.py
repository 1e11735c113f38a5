"""Closed-form periods of genus-one covers by the arithmetic-geometric mean.

A quartic cover ``z^2 = c (x - e1)(x - e2)(x - e3)(x - e4)`` is moved to the
cubic ``y^2 = 4 (t - f1)(t - f2)(t - f3)`` by ``x = e4 + 1/t``, with
``f_i = 1/(e_i - e4)``; then ``dx/z = -(2 / sqrt(c C)) dt/y`` where
``C = prod_i (e4 - e_i)``. The cubic's lattice is generated by
``pi/AGM(a, b)`` and ``pi i/AGM(a, c)`` with ``a^2 = f1 - f3``,
``b^2 = f1 - f2``, ``c^2 = f2 - f3``, using the optimal sign at each step.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _good_sqrt(x: complex, ref: complex) -> complex:
    s = np.sqrt(complex(x))
    return s if abs(ref - s) <= abs(ref + s) else -s


def agm(a: complex, b: complex, tol: float = 1e-16, max_iter: int = 64) -> complex:
    """Complex AGM taking the optimal (right) square root at every step."""
    a, b = complex(a), complex(b)
    for _ in range(max_iter):
        if abs(a - b) <= tol * abs(a):
            break
        a, b = (a + b) / 2, _good_sqrt(a * b, (a + b) / 2)
    return (a + b) / 2


def cubic_lattice(f1: complex, f2: complex, f3: complex) -> tuple[complex, complex]:
    """Basis of the period lattice of dt/y on y^2 = 4 (t-f1)(t-f2)(t-f3)."""
    a = np.sqrt(complex(f1 - f3))
    b = _good_sqrt(f1 - f2, a)
    c = _good_sqrt(f2 - f3, a)
    w1 = np.pi / agm(a, b)
    w2 = 1j * np.pi / agm(a, c)
    return complex(w1), complex(w2)


def quartic_lattice(roots, lead: complex = 1.0) -> tuple[complex, complex]:
    """Basis of the period lattice of dx/z on z^2 = lead * prod (x - e_i)."""
    e = [complex(r) for r in roots]
    if len(e) != 4:
        raise ValueError("need exactly four branch points")
    e1, e2, e3, e4 = e
    C = (e4 - e1) * (e4 - e2) * (e4 - e3)
    w1, w2 = cubic_lattice(1 / (e1 - e4), 1 / (e2 - e4), 1 / (e3 - e4))
    k = 2 / np.sqrt(complex(lead) * C)
    return complex(k * w1), complex(k * w2)


def cubic_to_lattice(roots, lead: complex = 1.0) -> tuple[complex, complex]:
    """Basis of the period lattice of dx/z on z^2 = lead * prod (x - e_i) for three roots."""
    e1, e2, e3 = (complex(r) for r in roots)
    w1, w2 = cubic_lattice(e1, e2, e3)
    k = 2 / np.sqrt(complex(lead))
    return complex(k * w1), complex(k * w2)


def reduce_tau(tau: complex, max_iter: int = 200) -> complex:
    """Representative of tau in the standard fundamental domain of SL2(Z)."""
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    for _ in range(max_iter):
        tau = tau - round(tau.real)
        if abs(tau) < 1 - 1e-15:
            tau = -1 / tau
        else:
            break
    return tau


def oriented(w1: complex, w2: complex) -> tuple[complex, complex]:
    """Flip w2 if needed so that Im(w2/w1) > 0."""
    return (w1, w2) if (w2 / w1).imag > 0 else (w1, -w2)


@dataclass
class LatticeComparison:
    coordinates: np.ndarray  # integer matrix taking the reference basis to the tested one
    residual: float  # max distance of coordinates from integers
    determinant: float
    tau_difference: float  # relative gap between reduced moduli

    @property
    def relative_error(self) -> float:
        return max(self.residual, self.tau_difference)

    def same_lattice(self, tol: float = 1e-10) -> bool:
        return self.residual <= tol and abs(abs(round(self.determinant)) - 1) == 0 and self.tau_difference <= tol


def compare_lattices(test: tuple[complex, complex], ref: tuple[complex, complex]) -> LatticeComparison:
    """Express ``test`` in the real basis ``ref`` and measure integrality."""
    A = np.array([[ref[0].real, ref[1].real], [ref[0].imag, ref[1].imag]])
    B = np.array([[test[0].real, test[1].real], [test[0].imag, test[1].imag]])
    coords = np.linalg.solve(A, B)
    resid = float(np.max(np.abs(coords - np.round(coords))))
    det = float(np.linalg.det(np.round(coords)))
    t1 = reduce_tau(oriented(*test)[1] / oriented(*test)[0])
    t2 = reduce_tau(oriented(*ref)[1] / oriented(*ref)[0])
    return LatticeComparison(np.round(coords).astype(int), resid, det, float(abs(t1 - t2) / abs(t2)))
