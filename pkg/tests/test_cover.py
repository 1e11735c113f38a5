import pytest

from royden.cover import build_double_cover, holomorphic_basis_degree
from royden.errors import DegenerateCover
from royden.polyfield import Poly, RootSet
from royden.quaddiff import QuadDiff, validate


@pytest.mark.parametrize(
    "g, genus, n_branch, infinity",
    [
        ([1], 2, 6, True),  # 5 poles, branched at infinity
        ([0, 1], 2, 6, False),
        ([1, 1], 2, 6, False),
    ],
)
def test_genus(example_h, g, genus, n_branch, infinity):
    c = build_double_cover(validate(Poly(g), example_h))
    assert c.genus == genus and c.n_branch == n_branch
    assert c.branched_at_infinity is infinity
    assert holomorphic_basis_degree(c) == genus


def test_quartic_is_elliptic(quartic_h):
    c = build_double_cover(validate(Poly([1]), quartic_h))
    assert c.genus == 1 and c.n_branch == 4


def test_squared_omega_matches_q(example_h):
    q = validate(Poly([2, 0.5 - 1j]), example_h)
    c = build_double_cover(q)
    for x in (0.3 + 0.2j, -1.5, 4j):
        assert abs(c.omega_squared(x) - q(x)) <= 1e-12 * abs(q(x))


def test_even_zero_is_not_branch():
    h = Poly.from_roots([1, -1, 1j, -1j, 2, -2])
    q = validate(Poly([0, 0, 1]), h)  # double zero at 0
    c = build_double_cover(q)
    assert len(c.finite_branch) == 6
    assert c.square_factor.degree == 1
    assert c.omega_numerator.allclose(Poly([0, 1]))  # x^2 / x


def test_degenerate_cover_detected():
    # an unvalidated differential whose g*h has too few distinct roots
    q = QuadDiff(Poly([1]), Poly([0, -1, 1]), True, RootSet(((0j, 1), (1 + 0j, 1))), RootSet(()))
    with pytest.raises(DegenerateCover):
        build_double_cover(q)
