import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from royden.cover import build_double_cover
from royden.errors import DegreeBoundViolated
from royden.norm import norm_from_periods, omega_periods, royden_norm
from royden.polyfield import Poly
from royden.quaddiff import QuadDiff, affine_pullback, validate
from strategies import coord, differentials


@pytest.mark.parametrize(
    "pers, expected",
    [((1, 1j), 1.0), ((1, 2 + 3j), 3.0), ((1, 1, 1j, 2j), 3.0)],
)
def test_norm_from_periods(pers, expected):
    assert norm_from_periods(np.array(pers)) == pytest.approx(expected)


def test_norm_from_periods_needs_even_length():
    with pytest.raises(ValueError):
        norm_from_periods(np.array([1, 2, 3]))


def test_omega_periods_combines_rows(example_h):
    c = build_double_cover(validate(Poly([2, -0.5j]), example_h))
    mat = np.array([[1, 2, 3, 4], [5j, 6j, 7j, 8j]])
    assert np.allclose(omega_periods(mat, c), 2 * mat[0] - 0.5j * mat[1])


@pytest.mark.parametrize("name", ["quartic_1", "example_1", "example_x", "example_1_plus_x", "random_deg6"])
def test_matches_frozen_oracle(baselines, name):
    case = baselines["cases"][name]
    g = Poly([complex(*c) for c in case["g"]])
    h = Poly([complex(*c) for c in case["h"]])
    res = royden_norm(validate(g, h))
    assert res.value > 0
    assert abs(res.value - case["norm"]) <= 1e-4 * case["norm"]


def test_result_schema(quartic_h):
    d = royden_norm(validate(Poly([1]), quartic_h)).to_dict()
    assert set(d) == {"norm", "error", "genus", "orientation_flipped"}
    assert d["genus"] == 1


def test_errors_carry_stage():
    q = QuadDiff(Poly([1]), Poly([1, 1]))
    with pytest.raises(DegreeBoundViolated) as info:
        royden_norm(q)
    assert info.value.stage == "validate"


@given(differentials(), coord, coord)
def test_homogeneity(gh, re, im):
    lam = complex(re, im)
    if abs(lam) < 0.1:
        lam += 1
    q = validate(*gh)
    a = royden_norm(q).value
    b = royden_norm(q.scaled(lam)).value
    assert abs(b - abs(lam) * a) <= 1e-8 * abs(lam) * a


@given(differentials(deg_min=5, deg_max=6), st.data())
def test_triangle_inequality(gh, data):
    g1, h = gh
    n = h.degree - 3
    g2 = Poly(data.draw(st.lists(st.builds(complex, coord, coord), min_size=n, max_size=n)))
    if g2.trimmed().is_zero or (g1 + g2).trimmed(1e-9).is_zero:
        return
    try:
        n2 = royden_norm(validate(g2, h)).value
        n12 = royden_norm(validate(g1 + g2, h)).value
    except DegreeBoundViolated:
        return
    n1 = royden_norm(validate(g1, h)).value
    assert n12 <= n1 + n2 + 1e-8


@given(differentials(), st.floats(0.5, 2.0), st.floats(0, 2 * np.pi), coord, coord)
def test_affine_invariance(gh, mod, arg, bre, bim):
    q = validate(*gh)
    p = affine_pullback(q, mod * np.exp(1j * arg), complex(bre, bim))
    a, b = royden_norm(q).value, royden_norm(p).value
    assert abs(a - b) <= 1e-6 * a
