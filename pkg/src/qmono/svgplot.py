"""Minimal SVG scatter/line rendering, no dependencies.

The CSV files are the data contract; these plots exist only to eyeball
the orderings between the curves.  Output is plain well-formed XML.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

__all__ = ["Series", "render_svg"]

_WIDTH, _HEIGHT = 640, 480
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 20, 40, 50
_COLORS = ("#c62828", "#2e7d32", "#212121", "#1565c0", "#6a1b9a")


class Series:
    """One named curve: x values, y values, scatter or line."""

    def __init__(self, name, xs, ys, kind="scatter"):
        if len(xs) != len(ys):
            raise ValueError("series x and y lengths differ")
        if kind not in ("scatter", "line"):
            raise ValueError(f"kind must be scatter or line, got {kind!r}")
        self.name = str(name)
        self.xs = [float(x) for x in xs]
        self.ys = [float(y) for y in ys]
        self.kind = kind


def _bounds(series):
    xs = [x for s in series for x in s.xs]
    ys = [y for s in series for y in s.ys]
    if not xs:
        return 0.0, 1.0, 0.0, 1.0
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    return x0, x1, y0, y1


def render_svg(path, title, xlabel, ylabel, series) -> None:
    """Write the plot to `path` as a standalone SVG document."""
    series = list(series)
    x0, x1, y0, y1 = _bounds(series)
    pw = _WIDTH - _MARGIN_L - _MARGIN_R
    ph = _HEIGHT - _MARGIN_T - _MARGIN_B

    def px(x):
        return _MARGIN_L + (x - x0) / (x1 - x0) * pw

    def py(y):
        return _MARGIN_T + ph - (y - y0) / (y1 - y0) * ph

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="24" text-anchor="middle" font-size="16">{escape(title)}</text>',
        # axes
        f'<line x1="{_MARGIN_L}" y1="{_MARGIN_T + ph}" x2="{_MARGIN_L + pw}" '
        f'y2="{_MARGIN_T + ph}" stroke="black"/>',
        f'<line x1="{_MARGIN_L}" y1="{_MARGIN_T}" x2="{_MARGIN_L}" '
        f'y2="{_MARGIN_T + ph}" stroke="black"/>',
        f'<text x="{_MARGIN_L + pw / 2:.1f}" y="{_HEIGHT - 12}" text-anchor="middle" '
        f'font-size="13">{escape(xlabel)}</text>',
        f'<text x="16" y="{_MARGIN_T + ph / 2:.1f}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 16 {_MARGIN_T + ph / 2:.1f})">{escape(ylabel)}</text>',
        # tick labels at the axis extremes
        f'<text x="{_MARGIN_L}" y="{_MARGIN_T + ph + 16}" text-anchor="middle" '
        f'font-size="11">{x0:.3g}</text>',
        f'<text x="{_MARGIN_L + pw}" y="{_MARGIN_T + ph + 16}" text-anchor="middle" '
        f'font-size="11">{x1:.3g}</text>',
        f'<text x="{_MARGIN_L - 6}" y="{_MARGIN_T + ph + 4}" text-anchor="end" '
        f'font-size="11">{y0:.3g}</text>',
        f'<text x="{_MARGIN_L - 6}" y="{_MARGIN_T + 4}" text-anchor="end" '
        f'font-size="11">{y1:.3g}</text>',
    ]
    for k, s in enumerate(series):
        color = _COLORS[k % len(_COLORS)]
        if s.kind == "line":
            pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(s.xs, s.ys))
            parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        else:
            for x, y in zip(s.xs, s.ys):
                parts.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="2.5" fill="{color}"/>')
        ly = _MARGIN_T + 16 + 16 * k
        parts.append(f'<rect x="{_MARGIN_L + pw - 150}" y="{ly - 9}" width="10" height="10" fill="{color}"/>')
        parts.append(f'<text x="{_MARGIN_L + pw - 135}" y="{ly}" font-size="12">{escape(s.name)}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts))
        fh.write("\n")
