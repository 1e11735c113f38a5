import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from royden.errors import RootFindingError
from royden.polyfield import Poly, gcd_by_roots, roots, squarefree_part
from strategies import same_points, separated


def sorted_c(a):
    return sorted(np.round(np.asarray(a, dtype=complex), 9), key=lambda z: (z.real, z.imag))


def test_poly_basics():
    p = Poly([1, 2, 3])
    assert p.degree == 2
    assert p.lead == 3
    assert p(2) == 17
    assert Poly([1, 0, 0]).degree == 0
    assert (p * Poly.x()).coeffs.tolist() == [0, 1, 2, 3]
    assert p.deriv() == Poly([2, 6])
    assert p.monic().lead == 1


def test_divide_linear_and_compose():
    p = Poly.from_roots([1, 2, 3])
    q, rem = p.divide_linear(2)
    assert abs(rem) < 1e-14
    assert q.allclose(Poly.from_roots([1, 3]))
    c = p.compose_affine(2, 1)  # p(2x + 1)
    for x in (0.3, -1.2, 2j):
        assert abs(c(x) - p(2 * x + 1)) < 1e-12


@pytest.mark.parametrize(
    "coeffs, expected",
    [
        ([-1, 0, 1], [(-1, 1), (1, 1)]),
        ([9, -6, 1], [(3, 2)]),
        ([-8, 12, -6, 1], [(2, 3)]),
    ],
)
def test_roots_small(coeffs, expected):
    rs = roots(Poly(coeffs))
    assert len(rs) == len(expected)
    for (r, m), (e, k) in zip(rs, expected):
        assert abs(r - e) < 1e-9 and m == k


def test_roots_example_quintic(example_h):
    rs = roots(example_h)
    want = [2, 2 + 6**0.5, 2 - 6**0.5, -2 + 1j * 2**0.5, -2 - 1j * 2**0.5]
    assert rs.multiplicities == [1] * 5
    assert np.allclose(sorted_c(rs.locations), sorted_c(want), atol=1e-10)


def test_quadruple_root_on_imaginary_axis():
    rs = roots(Poly.from_roots([1j] * 4))
    assert rs.multiplicities == [4]
    assert abs(rs.locations[0] - 1j) < 1e-12


def test_constant_has_no_roots():
    with pytest.raises(ValueError):
        roots(Poly([3]))


def test_unreachable_residual_raises():
    with pytest.raises(RootFindingError):
        roots(Poly.from_roots(np.arange(1, 21)), tol=1e-30)


def test_gcd_and_squarefree():
    p = Poly.from_roots([1, 1, 2, 5])
    q = Poly.from_roots([1, 2, 3])
    assert gcd_by_roots(p, q).allclose(Poly.from_roots([1, 2]))
    assert squarefree_part(p).allclose(Poly.from_roots([1, 2, 5]))
    assert gcd_by_roots(Poly([2]), q) == Poly([1])


@given(separated(1, 7, gap=0.2), st.floats(0.5, 3.0))
def test_roots_round_trip(pts, lead):
    p = Poly.from_roots(pts, lead)
    rs = roots(p)
    assert rs.degree == len(pts)
    assert same_points(rs.locations, pts)


@given(separated(1, 5, gap=0.2), separated(1, 5, gap=0.2))
def test_gcd_symmetric(a, b):
    pa, pb = Poly.from_roots(a), Poly.from_roots(b)
    assert gcd_by_roots(pa, pb).allclose(gcd_by_roots(pb, pa), rtol=1e-6, atol=1e-6)


@given(separated(1, 4, gap=0.3), st.lists(st.integers(1, 3), min_size=4, max_size=4))
def test_squarefree_idempotent(pts, mults):
    p = Poly.from_roots([r for r, m in zip(pts, mults) for _ in range(m)])
    s = squarefree_part(p)
    assert s.degree == len(pts)
    assert squarefree_part(s).allclose(s, rtol=1e-7, atol=1e-7)
