"""Grayscale SVG heatmap of a fidelity scan (no plotting dependency)."""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

PLOT = 512
MARGIN_LEFT = 70
MARGIN_TOP = 40
MARGIN_BOTTOM = 60
MARGIN_RIGHT = 30


def _gray(value: float) -> str:
    level = int(round(255 * min(max(value, 0.0), 1.0)))
    return f"#{level:02x}{level:02x}{level:02x}"


def heatmap_svg(grid, title: str | None = None) -> str:
    """First axis runs left to right, second axis bottom to top; 0 is black, 1 white."""
    xs, ys = grid.values
    fid = np.asarray(grid.fidelity)
    nx, ny = fid.shape
    cw, ch = PLOT / nx, PLOT / ny
    width = MARGIN_LEFT + PLOT + MARGIN_RIGHT
    height = MARGIN_TOP + PLOT + MARGIN_BOTTOM
    x0, y0 = MARGIN_LEFT, MARGIN_TOP
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        '<g shape-rendering="crispEdges">',
    ]
    for i in range(nx):
        for j in range(ny):
            x = x0 + i * cw
            y = y0 + PLOT - (j + 1) * ch
            out.append(
                f'<rect x="{x:.3f}" y="{y:.3f}" width="{cw:.3f}" height="{ch:.3f}" '
                f'fill="{_gray(fid[i, j])}"/>'
            )
    out.append("</g>")
    out.append(f'<rect x="{x0}" y="{y0}" width="{PLOT}" height="{PLOT}" fill="none" stroke="black"/>')

    bi, bj = grid.best_index
    mx, my = x0 + (bi + 0.5) * cw, y0 + PLOT - (bj + 0.5) * ch
    out.append(
        f'<circle cx="{mx:.3f}" cy="{my:.3f}" r="6" fill="none" stroke="red" stroke-width="2"/>'
    )

    font = 'font-family="sans-serif" font-size="12"'
    for frac in (0.0, 0.5, 1.0):
        xv = xs[0] + frac * (xs[-1] - xs[0])
        yv = ys[0] + frac * (ys[-1] - ys[0])
        px = x0 + frac * PLOT
        py = y0 + PLOT - frac * PLOT
        out.append(f'<text x="{px:.1f}" y="{y0 + PLOT + 16}" text-anchor="middle" {font}>{xv:g}</text>')
        out.append(f'<text x="{x0 - 6}" y="{py + 4:.1f}" text-anchor="end" {font}>{yv:g}</text>')
    out.append(
        f'<text x="{x0 + PLOT / 2}" y="{y0 + PLOT + 40}" text-anchor="middle" {font}>'
        f"{escape(grid.axes[0])}</text>"
    )
    out.append(
        f'<text x="20" y="{y0 + PLOT / 2}" text-anchor="middle" {font} '
        f'transform="rotate(-90 20 {y0 + PLOT / 2})">{escape(grid.axes[1])}</text>'
    )
    if title is None:
        title = (f"fidelity, {grid.fixed_axis} = {grid.fixed:g}; "
                 f"best {grid.best_fidelity:.4f}")
    out.append(f'<text x="{x0 + PLOT / 2}" y="24" text-anchor="middle" {font}>{escape(title)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_heatmap_svg(grid, path, title: str | None = None):
    with open(path, "w") as fh:
        fh.write(heatmap_svg(grid, title))
