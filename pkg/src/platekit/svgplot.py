"""Minimal hand-rolled SVG output: line plots and heatmaps.

Deliberately dependency-free; CSV/JSON carry the data contract and these
plots are conveniences.  Output is deterministic for identical inputs.
"""

from __future__ import annotations

import math

import numpy as np

_WIDTH, _HEIGHT = 640, 420
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 64, 20, 36, 48
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")
SHADOW_COLOR = "#9e9e9e"


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if not math.isfinite(lo) or not math.isfinite(hi) or hi <= lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10.0 ** math.floor(math.log10(raw))
    step = min(s for s in (1 * mag, 2 * mag, 5 * mag, 10 * mag) if s >= raw)
    first = math.ceil(lo / step) * step
    out = []
    t = first
    while t <= hi + 1e-12 * step:
        out.append(round(t, 12))
        t += step
    return out


def _finite_range(values) -> tuple[float, float]:
    finite = np.asarray(values, dtype=float)
    finite = finite[np.isfinite(finite)]
    if finite.size == 0:
        return 0.0, 1.0
    lo, hi = float(np.min(finite)), float(np.max(finite))
    if hi == lo:
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


def line_plot(
    x,
    y_series: list,
    labels: list[str],
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
) -> str:
    """Render one or more curves over a common x grid as an SVG string.

    Non-finite y values break the polyline (gaps, not drawn).
    """
    x = np.asarray(x, dtype=float)
    series = [np.asarray(y, dtype=float) for y in y_series]
    x_lo, x_hi = _finite_range(x)
    y_lo, y_hi = _finite_range(np.concatenate(series))
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    px_w = _WIDTH - _MARGIN_L - _MARGIN_R
    px_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def sx(v: float) -> float:
        return _MARGIN_L + (v - x_lo) / (x_hi - x_lo) * px_w

    def sy(v: float) -> float:
        return _MARGIN_T + (y_hi - v) / (y_hi - y_lo) * px_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="20" text-anchor="middle" font-size="14">{title}</text>',
    ]
    axis_y = _HEIGHT - _MARGIN_B
    parts.append(
        f'<line x1="{_MARGIN_L}" y1="{axis_y}" x2="{_WIDTH - _MARGIN_R}" y2="{axis_y}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{_MARGIN_L}" y1="{_MARGIN_T}" x2="{_MARGIN_L}" y2="{axis_y}" stroke="black"/>'
    )
    for t in _ticks(x_lo, x_hi):
        parts.append(
            f'<line x1="{sx(t):.1f}" y1="{axis_y}" x2="{sx(t):.1f}" y2="{axis_y + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{sx(t):.1f}" y="{axis_y + 18}" text-anchor="middle" font-size="11">{t:g}</text>'
        )
    for t in _ticks(y_lo, y_hi):
        parts.append(
            f'<line x1="{_MARGIN_L - 5}" y1="{sy(t):.1f}" x2="{_MARGIN_L}" y2="{sy(t):.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_L - 8}" y="{sy(t) + 4:.1f}" text-anchor="end" font-size="11">{t:g}</text>'
        )
    parts.append(
        f'<text x="{_WIDTH / 2:.1f}" y="{_HEIGHT - 10}" text-anchor="middle" font-size="12">{xlabel}</text>'
    )
    parts.append(
        f'<text x="16" y="{_HEIGHT / 2:.1f}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 16 {_HEIGHT / 2:.1f})">{ylabel}</text>'
    )
    for idx, y in enumerate(series):
        color = _COLORS[idx % len(_COLORS)]
        run: list[str] = []
        for xi, yi in zip(x, y):
            if math.isfinite(yi):
                run.append(f"{sx(xi):.2f},{sy(yi):.2f}")
            elif run:
                parts.append(
                    f'<polyline points="{" ".join(run)}" fill="none" stroke="{color}" stroke-width="1.5"/>'
                )
                run = []
        if run:
            parts.append(
                f'<polyline points="{" ".join(run)}" fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
        if idx < len(labels) and labels[idx]:
            ly = _MARGIN_T + 14 + 16 * idx
            parts.append(
                f'<line x1="{_WIDTH - 170}" y1="{ly - 4}" x2="{_WIDTH - 146}" y2="{ly - 4}" '
                f'stroke="{color}" stroke-width="1.5"/>'
            )
            parts.append(f'<text x="{_WIDTH - 140}" y="{ly}" font-size="11">{labels[idx]}</text>')
    parts.append("</svg>")
    return "\n".join(parts)


def _heat_color(frac: float) -> str:
    """Linear blue-to-red scale; frac clipped to [0, 1]."""
    frac = min(1.0, max(0.0, frac))
    r = int(round(40 + 215 * frac))
    g = int(round(60 + 40 * (1 - abs(2 * frac - 1))))
    b = int(round(255 - 215 * frac))
    return f"#{r:02x}{g:02x}{b:02x}"


def heatmap(
    values,
    shadow=None,
    vmin: float | None = None,
    vmax: float | None = None,
    title: str = "",
    legend: str = "",
) -> str:
    """Render a 2-D grid as colored cells; shadowed cells get a gray fill."""
    grid = np.asarray(values, dtype=float)
    if grid.ndim != 2:
        raise ValueError("heatmap expects a 2-D array")
    if shadow is None:
        shadow = ~np.isfinite(grid)
    shadow = np.asarray(shadow, dtype=bool)
    lo, hi = _finite_range(grid)
    if vmin is not None:
        lo = vmin
    if vmax is not None:
        hi = vmax
    if hi <= lo:
        hi = lo + 1.0

    nu, nv = grid.shape
    px_w = _WIDTH - _MARGIN_L - _MARGIN_R
    px_h = _HEIGHT - _MARGIN_T - _MARGIN_B
    cw, ch = px_w / nv, px_h / nu
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="20" text-anchor="middle" font-size="14">{title}</text>',
    ]
    for i in range(nu):
        for j in range(nv):
            x0 = _MARGIN_L + j * cw
            y0 = _MARGIN_T + i * ch
            if shadow[i, j] or not math.isfinite(grid[i, j]):
                color = SHADOW_COLOR
            else:
                color = _heat_color((grid[i, j] - lo) / (hi - lo))
            parts.append(
                f'<rect x="{x0:.2f}" y="{y0:.2f}" width="{cw:.2f}" height="{ch:.2f}" fill="{color}"/>'
            )
    bar_y = _HEIGHT - _MARGIN_B + 16
    for s in range(101):
        parts.append(
            f'<rect x="{_MARGIN_L + s * px_w / 101:.2f}" y="{bar_y}" '
            f'width="{px_w / 101 + 0.5:.2f}" height="10" fill="{_heat_color(s / 100)}"/>'
        )
    parts.append(
        f'<text x="{_MARGIN_L}" y="{bar_y + 24}" font-size="11" text-anchor="start">{lo:.2f}</text>'
    )
    parts.append(
        f'<text x="{_MARGIN_L + px_w}" y="{bar_y + 24}" font-size="11" text-anchor="end">{hi:.2f}</text>'
    )
    if legend:
        parts.append(
            f'<text x="{_WIDTH / 2:.1f}" y="{bar_y + 24}" text-anchor="middle" font-size="11">{legend}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)
