"""Continuous branches of z = sqrt(scale * prod(x - b_j)) along piecewise paths.

On each piece the branch is stored as its value ``Z`` at the piece midpoint
and evaluated as ``Z * prod_j sqrt((x - b_j) / (mid - b_j))`` with principal
square roots. That formula is a continuous branch as long as no branch point
sees the piece under an angle of pi or more; pieces are halved until every
branch point sees them under less than pi/2.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TrackingLost
from .paths import Arc, Piece

MAX_SPLITS = 60


def _subtended(piece: Piece, b: complex) -> float:
    if isinstance(piece, Arc):
        m = piece.midpoint
        return abs(np.angle((m - b) / (piece.start - b))) + abs(np.angle((piece.end - b) / (m - b)))
    if b == piece.start or b == piece.end:
        return 0.0
    return abs(np.angle((piece.end - b) / (piece.start - b)))


def refine_for_tracking(pieces, points, max_splits: int = MAX_SPLITS) -> list[Piece]:
    out = []
    stack = list(reversed(list(pieces)))
    budget = max_splits * max(1, len(pieces))
    while stack:
        pc = stack.pop()
        worst = max((_subtended(pc, b) for b in points), default=0.0)
        if worst < np.pi / 2:
            out.append(pc)
            continue
        budget -= 1
        if budget < 0 or pc.length < 1e-300:
            raise TrackingLost(f"argument jump {worst:.3f} rad on a piece near a branch point could not be resolved")
        left, right = pc.split()
        stack.append(right)
        stack.append(left)
    return out


def _ratio_sqrt_product(points, num, den, skip=None):
    """prod_j sqrt(num_j / den_j) over branch points, optionally skipping one index."""
    r = np.sqrt(num / den)
    if skip is not None:
        r = np.delete(r, skip, axis=0)
    return np.prod(r, axis=0)


@dataclass
class TrackedBranch:
    points: np.ndarray
    scale: complex
    pieces: list
    mids: list  # z at each piece midpoint

    def z(self, k: int, tau, omt):
        """Branch values at parameters ``tau`` of piece ``k``."""
        pc = self.pieces[k]
        off = pc.offsets(self.points, tau, omt)
        den = (pc.midpoint - self.points)[:, None]
        return self.mids[k] * _ratio_sqrt_product(self.points, off, den)

    def _index_of(self, x: complex):
        hits = np.flatnonzero(self.points == x)
        return int(hits[0]) if hits.size else None

    def _endpoint_value(self, k: int, at_start: bool):
        pc = self.pieces[k]
        tau, omt = (np.zeros(1), np.ones(1)) if at_start else (np.ones(1), np.zeros(1))
        x = pc.start if at_start else pc.end
        j = self._index_of(x)
        off = pc.offsets(self.points, tau, omt)
        den = (pc.midpoint - self.points)[:, None]
        val = self.mids[k] * _ratio_sqrt_product(self.points, off, den, skip=j)
        return complex(val[0]), j

    @property
    def start_value(self) -> complex:
        """z at the start point (0 if the path starts at a branch point)."""
        val, j = self._endpoint_value(0, True)
        return 0j if j is not None else val

    @property
    def end_value(self) -> complex:
        val, j = self._endpoint_value(len(self.pieces) - 1, False)
        return 0j if j is not None else val

    @property
    def start_limit(self) -> complex:
        """lim z / sqrt(tau) at a branch-point start; its argument fixes the sheet direction."""
        val, j = self._endpoint_value(0, True)
        if j is None:
            raise ValueError("path does not start at a branch point")
        # the skipped factor is sqrt((x - b)/(mid - b)) = sqrt(2 tau) on a segment
        return val * np.sqrt(2.0)

    @property
    def end_limit(self) -> complex:
        """lim z / sqrt(1 - tau) at a branch-point end."""
        val, j = self._endpoint_value(len(self.pieces) - 1, False)
        if j is None:
            raise ValueError("path does not end at a branch point")
        return val * np.sqrt(2.0)

    def split(self, k: int) -> None:
        """Halve piece ``k`` in place, carrying the branch to the new midpoints."""
        pc = self.pieces[k]
        left, right = pc.split()
        den = pc.midpoint - self.points
        zl = self.mids[k] * _ratio_sqrt_product(self.points, left.midpoint - self.points, den)
        zr = self.mids[k] * _ratio_sqrt_product(self.points, right.midpoint - self.points, den)
        self.pieces[k : k + 1] = [left, right]
        self.mids[k : k + 1] = [complex(zl), complex(zr)]


def tracked_sqrt(points, scale: complex, pieces, start_value: complex | None = None) -> TrackedBranch:
    """Continue a branch of ``z`` along ``pieces``.

    Without ``start_value`` the sheet is fixed by taking principal square roots
    of ``scale`` and of every ``mid - b_j`` on the first piece. With it, the
    sign is chosen so that z at the start point is closest to ``start_value``.
    """
    points = np.asarray(points, dtype=complex)
    pieces = refine_for_tracking(pieces, points)
    m0 = pieces[0].midpoint
    z0 = complex(np.sqrt(complex(scale)) * np.prod(np.sqrt(m0 - points)))
    mids = [z0]
    for k in range(1, len(pieces)):
        junction = pieces[k - 1].end
        zj = mids[-1] * np.prod(np.sqrt((junction - points) / (pieces[k - 1].midpoint - points)))
        mids.append(complex(zj * np.prod(np.sqrt((pieces[k].midpoint - points) / (junction - points)))))
    tb = TrackedBranch(points, complex(scale), list(pieces), mids)
    if start_value is not None:
        s = tb.start_value
        if abs(s + start_value) < abs(s - start_value):
            tb.mids = [-m for m in tb.mids]
    return tb
