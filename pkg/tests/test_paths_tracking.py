import numpy as np
import pytest

from royden.paths import Arc, Segment, circle, point_segment_distance, segments_intersect
from royden.quadrature import de_integrate
from royden.tracking import tracked_sqrt


def test_segment_offsets_exact_at_ends():
    s = Segment(1 + 1j, 3 - 1j)
    pts = np.array([1 + 1j, 3 - 1j, 0j])
    off = s.offsets(pts, np.array([0.0, 1.0]), np.array([1.0, 0.0]))
    assert off[0, 0] == 0 and off[1, 1] == 0
    assert abs(off[2, 0] - (1 + 1j)) < 1e-15


def test_arc_geometry():
    a = Arc(0j, 2.0, 0.0, np.pi / 2)
    assert abs(a.start - 2) < 1e-15 and abs(a.end - 2j) < 1e-15
    assert abs(a.length - np.pi) < 1e-14
    left, right = a.split()
    assert abs(left.end - right.start) < 1e-15


def test_distance_and_intersection():
    assert point_segment_distance(1j, -1, 1) == pytest.approx(1.0)
    assert point_segment_distance(3, -1, 1) == pytest.approx(2.0)
    assert segments_intersect(-1, 1, -1j, 1j)
    assert not segments_intersect(-1, 1, 1j, 2j)


@pytest.mark.parametrize("inside, flips", [([0.1], True), ([0.1, -0.2j], False), ([], False)])
def test_monodromy(inside, flips):
    pts = np.array(inside + [5.0, -6 + 1j], dtype=complex)
    br = tracked_sqrt(pts, 1.0, circle(0j, 1.0))
    z0, z1 = br.start_value, br.end_value
    assert abs(z0**2 - np.prod(1.0 - pts)) < 1e-12 * abs(z0) ** 2
    assert abs(z1 + z0 if flips else z1 - z0) < 1e-12 * abs(z0)


def test_tracked_values_square_to_polynomial():
    pts = np.array([0, 1, 1j, 2 + 2j])
    br = tracked_sqrt(pts, 2 - 1j, [Segment(-1 - 1j, 3 + 0.5j)])
    tau = np.linspace(0.01, 0.99, 9)
    for k, pc in enumerate(br.pieces):
        x = pc.point(tau, 1 - tau)
        z = br.z(k, tau, 1 - tau)
        assert np.allclose(z**2, (2 - 1j) * np.prod(x[None, :] - pts[:, None], axis=0), rtol=1e-12)


def test_continuity_along_path():
    pts = np.array([0.5j, -0.5j, 2.0, -2.0])
    br = tracked_sqrt(pts, 1.0, [Segment(-3 + 0.1j, 3 + 0.1j)])
    vals = np.concatenate([br.z(k, np.linspace(0, 1, 50), 1 - np.linspace(0, 1, 50)) for k in range(len(br.pieces))])
    assert np.max(np.abs(np.diff(vals))) < 0.5 * np.max(np.abs(vals))


@pytest.mark.parametrize(
    "f, exact",
    [
        (lambda t, o: 1 / np.sqrt(t * o)[None, :], np.pi),
        (lambda t, o: np.log(t)[None, :], -1.0),
        (lambda t, o: (t**3)[None, :], 0.25),
    ],
)
def test_tanh_sinh(f, exact):
    res = de_integrate(f, tol=1e-12)
    assert res.converged
    assert abs(res.value[0] - exact) < 1e-11
