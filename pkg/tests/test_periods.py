import numpy as np
import pytest

from royden.cover import build_double_cover
from royden.homology import build_path_system, chain_cycles
from royden.paths import Segment
from royden.periods import big_period_matrix, edge_integral, riemann_check
from royden.polyfield import Poly
from royden.quaddiff import validate


def pipeline(g, h, tol=1e-10):
    c = build_double_cover(validate(g, h))
    ps = build_path_system(c)
    cb = chain_cycles(ps, c)
    return c, big_period_matrix(c, ps, cb, tol)


def test_edge_integral_against_arcsine():
    # dx / sqrt((x+1)(x-1)) on [-1, 1] over a cover with two far-away points
    pts = np.array([-1, 1, 50, -60], dtype=complex)

    class C:
        finite_branch = pts
        scale = 1.0

    val, err = edge_integral(C, [Segment(-1, 1)], 0)
    # the far factor sqrt((x - 50)(x + 60)) is nearly constant; compare with mpmath
    mp = pytest.importorskip("mpmath")
    ref = mp.quad(lambda x: 1 / mp.sqrt((x + 1) * (x - 1) * (x - 50) * (x + 60)), [-1, 0, 1])
    assert abs(abs(val) - abs(complex(ref))) < 1e-10


@pytest.mark.parametrize("g", [[1], [0, 1], [1, 1], [1, 0.3]])
def test_riemann_relations_example(example_h, g):
    c, pm = pipeline(Poly(g), example_h)
    assert pm.matrix.shape == (2, 4)
    assert pm.symmetry_defect < 1e-8
    assert pm.min_imag_eigenvalue > 1e-10


def test_riemann_check_detects_asymmetry():
    bad = np.array([[1, 0, 1j, 0.5], [0, 1, 0.1, 1j]])
    _, defect, _ = riemann_check(bad)
    assert defect > 0.1


def test_quartic_tau_is_i(quartic_h):
    # x^4 - 1 has the square lattice
    c, pm = pipeline(Poly([1]), quartic_h)
    from royden.elliptic import reduce_tau

    assert abs(reduce_tau(complex(pm.tau[0, 0])) - 1j) < 1e-12
