"""Chain path system on the branch points and its symplectic cycle basis.

The finite branch points are joined into a chain b_1 - b_2 - ... - b_n by
non-crossing edges. Each edge lifts to a closed cycle e_i on the double cover
(out on one sheet, back on the other). Two consecutive cycles meet exactly
once, over their shared branch point, and non-consecutive ones not at all,
so the intersection matrix is tridiagonal. An integer symplectic change of
basis then produces a_1..a_g, b_1..b_g.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .cover import DoubleCover
from .errors import PathConstructionFailed, RankMismatch
from .paths import Arc, Segment, point_segment_distance, polyline, segments_intersect
from .tracking import tracked_sqrt

DEFAULT_CLEARANCE = 0.25


@dataclass
class PathSystem:
    points: np.ndarray
    order: list[int]
    edges: list[list]
    clearance: float
    detours: int = 0

    @property
    def chain(self) -> np.ndarray:
        return self.points[self.order]

    def to_json(self) -> str:
        return json.dumps(
            {
                "points": [[p.real, p.imag] for p in self.points],
                "order": self.order,
                "clearance": self.clearance,
                "edges": [[pc.to_dict() for pc in e] for e in self.edges],
            }
        )


@dataclass
class CycleBasis:
    M: np.ndarray
    S: np.ndarray
    rank: int
    orientation: list[int] = field(default_factory=list)
    branches: list = field(default_factory=list, repr=False)


# ---------------------------------------------------------------- geometry


def _spacing(points: np.ndarray) -> np.ndarray:
    d = np.abs(points[:, None] - points[None, :])
    np.fill_diagonal(d, np.inf)
    return d.min(axis=1)


def _nearest_neighbour_order(points: np.ndarray, start: int) -> list[int]:
    left = set(range(len(points))) - {start}
    order = [start]
    while left:
        cur = points[order[-1]]
        nxt = min(left, key=lambda j: (abs(points[j] - cur), j))
        order.append(nxt)
        left.remove(nxt)
    return order


def _two_opt(points: np.ndarray, order: list[int], max_rounds: int = 200) -> list[int]:
    n = len(order)

    def d(i, j):
        return abs(points[order[i]] - points[order[j]])

    for _ in range(max_rounds):
        improved = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                before = (d(i - 1, i) if i > 0 else 0.0) + (d(j, j + 1) if j < n - 1 else 0.0)
                after = (d(i - 1, j) if i > 0 else 0.0) + (d(i, j + 1) if j < n - 1 else 0.0)
                if after < before - 1e-12 * max(1.0, before):
                    order[i : j + 1] = order[i : j + 1][::-1]
                    improved = True
        if not improved:
            break
    return order


def _required(points, spacing, clearance, c_idx, seg_len):
    return clearance * min(spacing[c_idx], seg_len)


def _piece_distance(pc, c: complex) -> float:
    if isinstance(pc, Segment):
        return point_segment_distance(c, pc.a, pc.b)
    if c == pc.center:
        return pc.radius
    return float(np.min(np.abs(pc.sample(65) - c)))


def _violations(edge, ends, points, spacing, clearance, edge_len):
    out = []
    for j, c in enumerate(points):
        if j in ends:
            continue
        need = _required(points, spacing, clearance, j, edge_len)
        for k, pc in enumerate(edge):
            if isinstance(pc, Arc) and pc.center == c:
                continue
            dist = _piece_distance(pc, c)
            if dist < need * (1 - 1e-9):
                out.append((dist / need, j, k))
    return sorted(out)


def _detour_candidates(seg: Segment, c: complex, rho: float):
    u = (seg.b - seg.a) / abs(seg.b - seg.a)
    foot = seg.a + ((c - seg.a) * u.conjugate()).real * u
    d = abs(c - foot)
    half = np.sqrt(max(rho * rho - d * d, 0.0))
    p1, p2 = foot - half * u, foot + half * u
    f1, f2 = np.angle(p1 - c), np.angle(p2 - c)
    ccw = f2 if f2 > f1 else f2 + 2 * np.pi
    cw = f2 if f2 < f1 else f2 - 2 * np.pi
    spans = sorted([(abs(ccw - f1), ccw), (abs(cw - f1), cw)])
    # p1, p2 are rebuilt from the arc so that pieces join exactly
    for _, f_end in spans:
        arc = Arc(c, rho, float(f1), float(f_end))
        yield [Segment(seg.a, arc.start), arc, Segment(arc.end, seg.b)]


def _edges_cross(e1, e2, shared: complex | None) -> bool:
    pl1, pl2 = polyline(e1), polyline(e2)
    for s in range(len(pl1) - 1):
        for t in range(len(pl2) - 1):
            a0, a1, b0, b1 = pl1[s], pl1[s + 1], pl2[t], pl2[t + 1]
            if shared is not None and a1 == shared and b0 == shared:
                u, v = a0 - shared, b1 - shared
                if abs((u.conjugate() * v).imag) <= 1e-12 * abs(u) * abs(v) and (u.conjugate() * v).real > 0:
                    return True
                continue
            if segments_intersect(a0, a1, b0, b1):
                return True
    return False


def _any_crossing(edges, order, points) -> bool:
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            shared = points[order[j]] if j == i + 1 else None
            if _edges_cross(edges[i], edges[j], shared):
                return True
    return False


def _insert_detours(points, order, spacing, clearance, budget):
    edges = [[Segment(points[order[i]], points[order[i + 1]])] for i in range(len(order) - 1)]
    detours = 0
    for i in range(len(edges)):
        ends = {order[i], order[i + 1]}
        edge_len = abs(points[order[i + 1]] - points[order[i]])
        while True:
            bad = _violations(edges[i], ends, points, spacing, clearance, edge_len)
            if not bad:
                break
            budget -= 1
            if budget < 0:
                raise PathConstructionFailed("detour budget exhausted")
            _, j, k = bad[0]
            seg = edges[i][k]
            if not isinstance(seg, Segment):
                raise PathConstructionFailed(f"arc detour on edge {i} still too close to branch point {points[j]}")
            rho = 1.2 * _required(points, spacing, clearance, j, edge_len)
            for cand in _detour_candidates(seg, points[j], rho):
                trial = edges[i][:k] + cand + edges[i][k + 1 :]
                others = [(e, m) for m, e in enumerate(edges) if m != i]
                ok = True
                for e, m in others:
                    lo, hi = min(i, m), max(i, m)
                    shared = points[order[hi]] if hi == lo + 1 else None
                    first, second = (trial, e) if i < m else (e, trial)
                    if _edges_cross(first, second, shared):
                        ok = False
                        break
                if ok:
                    edges[i] = trial
                    detours += 1
                    break
            else:
                raise PathConstructionFailed(f"no crossing-free detour around {points[j]} for edge {i}")
    return edges, detours


def _clearance_ok(edges, order, points, spacing, clearance) -> bool:
    for i, e in enumerate(edges):
        edge_len = abs(points[order[i + 1]] - points[order[i]])
        if _violations(e, {order[i], order[i + 1]}, points, spacing, clearance, edge_len):
            return False
    return True


def build_path_system(
    c: DoubleCover | np.ndarray,
    clearance: float = DEFAULT_CLEARANCE,
    order: list[int] | None = None,
    budget: int = 64,
) -> PathSystem:
    """Join the finite branch points into a non-crossing chain.

    The order is nearest-neighbour from the leftmost point, improved by 2-opt.
    Edges passing closer than ``clearance * min(spacing, edge length)`` to a
    foreign branch point (spacing = distance from that point to its nearest
    neighbour) get a circular detour around it. If the leftmost start cannot
    be made valid, the other start points are tried in turn.
    """
    points = np.asarray(c.finite_branch if isinstance(c, DoubleCover) else c, dtype=complex)
    n = len(points)
    if n < 3:
        raise PathConstructionFailed(f"need at least 3 finite branch points, got {n}")
    spacing = _spacing(points)

    if order is not None:
        candidates = [list(order)]
    else:
        starts = sorted(range(n), key=lambda j: (points[j].real, points[j].imag))
        candidates = (_two_opt(points, _nearest_neighbour_order(points, s)) for s in starts)

    last_err = None
    for cand in candidates:
        try:
            edges, detours = _insert_detours(points, cand, spacing, clearance, budget)
        except PathConstructionFailed as exc:
            last_err = exc
            continue
        if _any_crossing(edges, cand, points):
            last_err = PathConstructionFailed(f"chain {cand} has crossing edges")
            continue
        if not _clearance_ok(edges, cand, points, spacing, clearance):
            last_err = PathConstructionFailed(f"chain {cand} violates clearance")
            continue
        return PathSystem(points, list(cand), edges, clearance, detours)
    raise PathConstructionFailed(f"no valid chain for branch points {points.tolist()}: {last_err}")


def check_path_system(ps: PathSystem) -> None:
    """Assert the geometric invariants; raises PathConstructionFailed."""
    pts = ps.points
    if sorted(ps.order) != list(range(len(pts))):
        raise PathConstructionFailed("chain does not visit every branch point exactly once")
    if _any_crossing(ps.edges, ps.order, pts):
        raise PathConstructionFailed("edges cross")
    if not _clearance_ok(ps.edges, ps.order, pts, _spacing(pts), ps.clearance):
        raise PathConstructionFailed("clearance violated")


# ---------------------------------------------------------------- homology


def _intersection_sign(end_limit: complex, start_limit: complex) -> int:
    # Near a shared branch point b use w with w**2 = x - b. Cycle e_i runs
    # through w = 0 along direction -L, e_{i+1} along +R, where L, R are the
    # limits of z/sqrt(r) on the sheets used for the two edges.
    cross = (np.conj(-end_limit) * start_limit).imag
    if cross == 0:
        raise RankMismatch("adjacent chain edges leave the branch point in the same direction")
    return 1 if cross > 0 else -1


def chain_cycles(ps: PathSystem, c: DoubleCover) -> CycleBasis:
    """Cycles around consecutive branch points, oriented so that e_i . e_{i+1} = +1."""
    branches = [tracked_sqrt(c.finite_branch, c.scale, e) for e in ps.edges]
    m = len(branches)
    raw = [_intersection_sign(branches[i].end_limit, branches[i + 1].start_limit) for i in range(m - 1)]
    orient = [1]
    for s in raw:
        orient.append(orient[-1] * s)
    M = np.zeros((m, m), dtype=np.int64)
    for i in range(m - 1):
        M[i, i + 1], M[i + 1, i] = 1, -1
    rank = int(np.linalg.matrix_rank(M.astype(float)))
    if rank != 2 * c.genus:
        raise RankMismatch(f"intersection matrix rank {rank} != 2 * genus = {2 * c.genus}")
    S = symplectic_reduce(M)
    return CycleBasis(M=M, S=S, rank=rank, orientation=orient, branches=branches)


def standard_form(n: int, g: int) -> np.ndarray:
    """J (size 2g) padded with zeros to size n."""
    J = np.zeros((n, n), dtype=np.int64)
    for i in range(g):
        J[i, g + i], J[g + i, i] = 1, -1
    return J


def symplectic_reduce(M) -> np.ndarray:
    """Unimodular integer S with S^T M S = J (+) 0.

    Exact integer congruence reduction: repeatedly bring the smallest nonzero
    entry to a 2x2 pivot block and clear its rows by Euclidean steps.

    Raises
    ------
    ValueError
        if M is not skew-symmetric, or its nonzero invariant factors are not
        all 1 (no unimodular S can then reach J).
    """
    A = [[int(v) for v in row] for row in np.asarray(M)]
    n = len(A)
    for i in range(n):
        for j in range(n):
            if A[i][j] != -A[j][i]:
                raise ValueError("matrix is not skew-symmetric")
    S = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap(i, j):
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in S:
            row[i], row[j] = row[j], row[i]

    def addmul(dst, src, lam):
        # column dst += lam * column src, and the same on rows (congruence)
        if lam == 0:
            return
        for row in A:
            row[dst] += lam * row[src]
        A[dst] = [a + lam * b for a, b in zip(A[dst], A[src])]
        for row in S:
            row[dst] += lam * row[src]

    k = 0
    blocks = []
    while k < n - 1:
        best = None
        for i in range(k, n):
            for j in range(i + 1, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        swap(k, i)
        swap(k + 1, j if j != k else i)
        if A[k][k + 1] < 0:
            swap(k, k + 1)
        d = A[k][k + 1]
        for l in range(k + 2, n):
            addmul(l, k + 1, -(A[k][l] // d))
            addmul(l, k, A[k + 1][l] // d)
        if any(A[k][l] or A[k + 1][l] for l in range(k + 2, n)):
            continue
        blocks.append(d)
        k += 2

    if any(d != 1 for d in blocks):
        raise ValueError(f"skew form has invariant factors {blocks}; no unimodular symplectic basis")
    g = len(blocks)
    perm = [2 * i for i in range(g)] + [2 * i + 1 for i in range(g)] + list(range(2 * g, n))
    S_out = np.array([[S[r][c] for c in perm] for r in range(n)], dtype=np.int64)
    return S_out
