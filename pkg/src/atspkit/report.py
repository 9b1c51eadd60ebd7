"""Static SVG rendering: route maps and runtime scaling plots.

All output is deterministic byte-for-byte (fixed float formatting, pinned
element order), so rendered files are golden-file testable.  SVG keeps the
artifact free of imaging dependencies.
"""

import math

from .bench import _median
from .instance import circular_coords

SVG_SIZE = 560
_MARGIN = 40

_PALETTE = ("#c62828", "#1565c0", "#2e7d32", "#6a1b9a", "#ef6c00",
            "#00838f", "#ad1457", "#558b2f")

AXES_MODES = ("loglog", "loglin", "linlin")


def _fmt(x):
    return f"{x:.2f}"


def circular_layout(n):
    """Fallback coordinates for instances without geometry: node i at angle
    2*pi*i/n on a radius-0.45 circle."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return circular_coords(n)


def render_route(layout, tour, options=None):
    """Route map: the tour polyline with alternating red/black arcs, a large
    green dot on the start node and a large blue dot on the node halfway
    along the tour."""
    n = len(tour.order)
    if len(layout) != n:
        raise ValueError("layout length must equal tour length")
    options = options or {}
    size = int(options.get("size", SVG_SIZE))
    span = size - 2 * _MARGIN

    def pix(pt):
        return (_MARGIN + pt[0] * span, size - _MARGIN - pt[1] * span)

    pts = [pix(layout.coords[v]) for v in tour.order]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}"'
           f' height="{size}" viewBox="0 0 {size} {size}">',
           f'<rect width="{size}" height="{size}" fill="#ffffff"/>']
    for k in range(n):
        x1, y1 = pts[k]
        x2, y2 = pts[(k + 1) % n]
        color = "#c62828" if k % 2 == 0 else "#111111"
        out.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}"'
                   f' y2="{_fmt(y2)}" stroke="{color}" stroke-width="1.2"/>')
    for k in range(n):
        x, y = pts[k]
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.20"'
                   f' fill="#555555"/>')
    sx, sy = pts[0]
    mx, my = pts[n // 2]
    out.append(f'<circle cx="{_fmt(mx)}" cy="{_fmt(my)}" r="7.00"'
               f' fill="#1565c0"/>')
    out.append(f'<circle cx="{_fmt(sx)}" cy="{_fmt(sy)}" r="7.00"'
               f' fill="#2e7d32"/>')
    out.append(f'<text x="{_MARGIN}" y="{size - 12}" font-size="12"'
               f' font-family="monospace">n={n} cost={tour.cost}</text>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def _axis_value(v, log):
    return math.log10(v) if log else float(v)


def render_scaling(records, axes="loglog"):
    """Runtime-vs-n curves, one series per (algorithm, seed, cost range).

    Markers alternate circle/cross through a fixed palette; axes may be
    log-log, log-lin (log y), or lin-lin.
    """
    if axes not in AXES_MODES:
        raise ValueError(f"axes must be one of {AXES_MODES}")
    if not records:
        raise ValueError("no records to plot")
    series = {}
    for r in records:
        series.setdefault((r.algorithm, r.seed, r.cost_range), {}) \
            .setdefault(r.n, []).append(r.runtime_ms)
    keys = sorted(series, key=lambda k: (k[0], k[1], k[2]))
    logx = axes == "loglog"
    logy = axes in ("loglog", "loglin")
    pts_by_key = {}
    for key in keys:
        pts = []
        for n in sorted(series[key]):
            t = max(_median(series[key][n]), 1e-3)  # clamp for log axes
            pts.append((_axis_value(n, logx), _axis_value(t, logy)))
        pts_by_key[key] = pts
    all_x = [x for pts in pts_by_key.values() for x, _ in pts]
    all_y = [y for pts in pts_by_key.values() for _, y in pts]
    x0, x1 = min(all_x), max(all_x)
    y0, y1 = min(all_y), max(all_y)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    w = 720
    h = 480
    span_x = w - 2 * _MARGIN
    span_y = h - 2 * _MARGIN

    def pix(x, y):
        px = _MARGIN + (x - x0) / (x1 - x0) * span_x
        py = h - _MARGIN - (y - y0) / (y1 - y0) * span_y
        return px, py

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}"'
           f' viewBox="0 0 {w} {h}">',
           f'<rect width="{w}" height="{h}" fill="#ffffff"/>',
           f'<line x1="{_MARGIN}" y1="{h - _MARGIN}" x2="{w - _MARGIN}"'
           f' y2="{h - _MARGIN}" stroke="#000000"/>',
           f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}"'
           f' y2="{h - _MARGIN}" stroke="#000000"/>',
           f'<text x="{w // 2}" y="{h - 8}" font-size="12"'
           f' font-family="monospace">n{" (log10)" if logx else ""}</text>',
           f'<text x="8" y="{_MARGIN - 16}" font-size="12"'
           f' font-family="monospace">runtime_ms'
           f'{" (log10)" if logy else ""}</text>']
    for idx, key in enumerate(keys):
        color = _PALETTE[idx % len(_PALETTE)]
        cross = idx % 2 == 1
        pts = [pix(x, y) for x, y in pts_by_key[key]]
        if len(pts) > 1:
            path = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in pts)
            out.append(f'<polyline points="{path}" fill="none"'
                       f' stroke="{color}" stroke-width="1.5"/>')
        for px, py in pts:
            if cross:
                out.append(f'<path d="M {_fmt(px - 4)} {_fmt(py - 4)} L'
                           f' {_fmt(px + 4)} {_fmt(py + 4)} M {_fmt(px - 4)}'
                           f' {_fmt(py + 4)} L {_fmt(px + 4)} {_fmt(py - 4)}"'
                           f' stroke="{color}" stroke-width="1.5"/>')
            else:
                out.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="4.00"'
                           f' fill="none" stroke="{color}"'
                           f' stroke-width="1.5"/>')
        alg, seed, rng = key
        label = f"{alg} seed={seed} range={rng[0]}..{rng[1]}"
        out.append(f'<text x="{w - _MARGIN - 260}" y="{_MARGIN + 14 * idx}"'
                   f' font-size="11" font-family="monospace"'
                   f' fill="{color}">{label}</text>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
