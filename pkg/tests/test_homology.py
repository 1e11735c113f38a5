import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from royden.cover import build_double_cover
from royden.errors import PathConstructionFailed
from royden.homology import (
    build_path_system,
    chain_cycles,
    check_path_system,
    standard_form,
    symplectic_reduce,
)
from royden.polyfield import Poly
from royden.quaddiff import validate
from strategies import differentials


def exact_congruence(S, M):
    S = [[int(v) for v in row] for row in S]
    M = [[int(v) for v in row] for row in M]
    n = len(M)
    return [[sum(S[k][i] * M[k][l] * S[l][j] for k in range(n) for l in range(n)) for j in range(n)] for i in range(n)]


def exact_det(A):
    from fractions import Fraction

    A = [[Fraction(int(v)) for v in row] for row in A]
    n, det = len(A), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return int(det)


def tridiagonal(signs):
    n = len(signs) + 1
    M = np.zeros((n, n), dtype=np.int64)
    for i, s in enumerate(signs):
        M[i, i + 1], M[i + 1, i] = s, -s
    return M


@pytest.mark.parametrize(
    "M",
    [
        [[0, 1], [-1, 0]],
        [[0, -1], [1, 0]],
        [[0, 1, 0], [-1, 0, 1], [0, -1, 0]],
    ],
)
def test_symplectic_small(M):
    S = symplectic_reduce(M)
    n = len(M)
    g = np.linalg.matrix_rank(np.array(M, dtype=float)) // 2
    assert exact_congruence(S, M) == standard_form(n, g).tolist()
    assert abs(exact_det(S)) == 1


@given(st.lists(st.sampled_from([-1, 1]), min_size=1, max_size=8))
def test_symplectic_tridiagonal(signs):
    M = tridiagonal(signs)
    S = symplectic_reduce(M)
    g = np.linalg.matrix_rank(M.astype(float)) // 2
    assert exact_congruence(S, M) == standard_form(len(M), g).tolist()
    assert abs(exact_det(S)) == 1


def test_symplectic_rejects_bad_forms():
    with pytest.raises(ValueError):
        symplectic_reduce([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        symplectic_reduce([[0, 2], [-2, 0]])


def test_path_system_example(example_h):
    c = build_double_cover(validate(Poly([1, 1]), example_h))
    ps = build_path_system(c)
    check_path_system(ps)
    assert sorted(ps.order) == list(range(6))
    cb = chain_cycles(ps, c)
    assert cb.rank == 4
    assert len(cb.M) == 5  # one cycle per chain edge
    assert exact_congruence(cb.S, cb.M) == standard_form(5, 2).tolist()


def test_detour_inserted_for_collinear_points():
    # the nearest-neighbour chain along the line must go around nothing, but a
    # point just off the chord forces a detour
    pts = np.array([0, 1, 2, 1.0 + 0.05j, 3, 4], dtype=complex)
    ps = build_path_system(pts)
    check_path_system(ps)


def test_too_few_points():
    with pytest.raises(PathConstructionFailed):
        build_path_system(np.array([0, 1], dtype=complex))


@given(differentials())
def test_cycles_on_random_covers(gh):
    c = build_double_cover(validate(*gh))
    ps = build_path_system(c)
    check_path_system(ps)
    cb = chain_cycles(ps, c)
    assert cb.rank == 2 * c.genus
    assert exact_congruence(cb.S, cb.M) == standard_form(len(cb.M), c.genus).tolist()
