import numpy as np
import pytest

from royden.cover import build_double_cover
from royden.elliptic import agm, compare_lattices, cubic_lattice, quartic_lattice, reduce_tau
from royden.norm import royden_norm
from royden.polyfield import Poly
from royden.quaddiff import validate

mp = pytest.importorskip("mpmath")


def test_agm_real():
    assert abs(agm(1, 2) - float(mp.agm(1, 2))) < 1e-15


def test_cubic_lattice_against_mpmath():
    mp.mp.dps = 30
    e = [2.0, 0.5, -1.3]
    w1, w2 = cubic_lattice(*e)
    real = 2 * mp.quad(lambda t: 1 / mp.sqrt(4 * (t - e[0]) * (t - e[1]) * (t - e[2])), [e[0], e[0] + 1, mp.inf])
    imag = 2 * mp.quad(lambda t: 1 / mp.sqrt(-4 * (t - e[0]) * (t - e[1]) * (t - e[2])), [e[1], e[0]])
    assert abs(w1 - float(real)) < 1e-13
    assert abs(w2 - 1j * float(imag)) < 1e-13


def test_reduce_tau():
    t = reduce_tau(complex(3.4, 0.2))
    assert abs(t.real) <= 0.5 and abs(t) >= 1 - 1e-12
    with pytest.raises(ValueError):
        reduce_tau(1 - 1j)


def test_same_lattice_after_basis_change():
    w = (1.0 + 0.2j, 0.3 + 1.1j)
    other = (2 * w[0] + w[1], w[0] + w[1])
    assert compare_lattices(other, w).same_lattice()
    assert not compare_lattices((2 * w[0], w[1]), w).same_lattice()


@pytest.mark.parametrize("seed", range(4))
def test_pipeline_matches_agm(seed):
    rng = np.random.default_rng(seed)
    r = rng.normal(size=4) + 1j * rng.normal(size=4)
    lead = complex(rng.normal(), rng.normal())
    q = validate(Poly([1]), Poly.from_roots(r) * lead)
    P = royden_norm(q).periods.matrix[0]
    c = build_double_cover(q)
    assert compare_lattices((P[0], P[1]), quartic_lattice(c.finite_branch, c.scale)).same_lattice(1e-10)
