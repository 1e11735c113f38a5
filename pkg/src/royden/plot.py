"""Static SVG figures for sphere sweeps: the polar curve and the derivative panel."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .sphere import SphereSample

STROKE = "#1f3b73"
RAY = "#b03a2e"


def _header(width: int, height: int) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]


def _path(points, close=False) -> str:
    cmds = " ".join(f"{'M' if i == 0 else 'L'}{x:.3f},{y:.3f}" for i, (x, y) in enumerate(points))
    return cmds + (" Z" if close else "")


def polar_svg(samples: list[SphereSample], size: int = 480, title: str = "unit sphere r(theta)") -> str:
    """r(theta) as a closed polar curve, with dashed rays at flagged angles."""
    if not samples:
        raise ValueError("no samples to plot")
    rmax = max(s.r for s in samples)
    c = size / 2
    scale = 0.4 * size / rmax
    pts = [(c + scale * s.r * math.cos(s.theta), c - scale * s.r * math.sin(s.theta)) for s in samples]
    out = _header(size, size)
    out.append(f'<line x1="0" y1="{c}" x2="{size}" y2="{c}" stroke="#999" stroke-width="0.5"/>')
    out.append(f'<line x1="{c}" y1="0" x2="{c}" y2="{size}" stroke="#999" stroke-width="0.5"/>')
    ray = 0.48 * size
    for s in samples:
        if s.near_singular:
            x, y = c + ray * math.cos(s.theta), c - ray * math.sin(s.theta)
            out.append(
                f'<line x1="{c}" y1="{c}" x2="{x:.3f}" y2="{y:.3f}" stroke="{RAY}" '
                'stroke-width="1" stroke-dasharray="6,4"/>'
            )
    out.append(f'<path d="{_path(pts, close=True)}" fill="none" stroke="{STROKE}" stroke-width="1.5"/>')
    out.append(f'<text x="8" y="18" font-family="sans-serif" font-size="13">{escape(title)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _panel(x0, y0, w, h, thetas, values, flags, label) -> list[str]:
    out = [f'<rect x="{x0}" y="{y0}" width="{w}" height="{h}" fill="none" stroke="#444" stroke-width="0.8"/>']
    pairs = [(t, v) for t, v in zip(thetas, values) if v is not None and math.isfinite(v)]
    if pairs:
        lo = min(v for _, v in pairs)
        hi = max(v for _, v in pairs)
        if hi - lo < 1e-300:
            lo, hi = lo - 1, hi + 1
        pad = 0.05 * (hi - lo)
        lo, hi = lo - pad, hi + pad

        def X(t):
            return x0 + w * t / (2 * math.pi)

        def Y(v):
            return y0 + h * (hi - v) / (hi - lo)

        for t, f in zip(thetas, flags):
            if f:
                out.append(
                    f'<line x1="{X(t):.3f}" y1="{y0}" x2="{X(t):.3f}" y2="{y0 + h}" stroke="{RAY}" '
                    'stroke-width="0.8" stroke-dasharray="4,3"/>'
                )
        if lo < 0 < hi:
            out.append(f'<line x1="{x0}" y1="{Y(0):.3f}" x2="{x0 + w}" y2="{Y(0):.3f}" stroke="#bbb" stroke-width="0.5"/>')
        out.append(f'<path d="{_path([(X(t), Y(v)) for t, v in pairs])}" fill="none" stroke="{STROKE}" stroke-width="1"/>')
        out.append(
            f'<text x="{x0 + w - 4}" y="{y0 + 14}" text-anchor="end" font-family="sans-serif" font-size="10">'
            f"[{lo:.4g}, {hi:.4g}]</text>"
        )
    out.append(f'<text x="{x0 + 6}" y="{y0 + 16}" font-family="sans-serif" font-size="13">{escape(label)}</text>')
    return out


def derivatives_svg(samples: list[SphereSample], width: int = 800, height: int = 600) -> str:
    """2x2 panel of r, d1, d2, d3 against theta in [0, 2 pi)."""
    if not samples:
        raise ValueError("no samples to plot")
    thetas = [s.theta for s in samples]
    flags = [s.near_singular for s in samples]
    m = 30
    pw, ph = (width - 3 * m) / 2, (height - 3 * m) / 2
    out = _header(width, height)
    series = [("r", [s.r for s in samples]), ("r'", [s.d1 for s in samples]),
              ("r''", [s.d2 for s in samples]), ("r'''", [s.d3 for s in samples])]
    for k, (label, vals) in enumerate(series):
        i, j = divmod(k, 2)
        out += _panel(m + j * (pw + m), m + i * (ph + m), pw, ph, thetas, vals, flags, label)
    out.append("</svg>")
    return "\n".join(out) + "\n"
