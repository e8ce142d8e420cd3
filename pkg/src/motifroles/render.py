"""Deterministic SVG rendering of profiles and dendrograms.

Pure string assembly, no drawing libraries: identical inputs produce
identical bytes. Heatmaps lay the 36 motifs out as the standard 6x6 grid,
one grid per position for positioned profiles, shaded white to dark green
on a scale shared across the grids of one figure.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from . import catalog
from .cluster import Dendrogram, cut

_DARK = (0, 68, 27)  # deep green anchor of the single-hue ramp
_PALETTE = (
    "#ff7f0e",  # cluster 0, leftmost
    "#2ca02c",
    "#1f77b4",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)
_LINK = "#555555"

_CELL = 24
_GRID = 6 * _CELL


def _shade(value: float, vmax: float) -> str:
    if vmax <= 0:
        frac = 0.0
    else:
        frac = min(max(value / vmax, 0.0), 1.0)
    r = round(255 + (_DARK[0] - 255) * frac)
    g = round(255 + (_DARK[1] - 255) * frac)
    b = round(255 + (_DARK[2] - 255) * frac)
    return f"#{r:02x}{g:02x}{b:02x}"


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _grid_svg(parts, x0, y0, values, vmax, caption):
    parts.append(
        f'<text x="{x0 + _GRID / 2:g}" y="{y0 - 26}" text-anchor="middle" '
        f'font-size="12" fill="#222">{escape(caption)}</text>'
    )
    for c in range(6):
        parts.append(
            f'<text x="{x0 + c * _CELL + _CELL / 2:g}" y="{y0 - 8}" '
            f'text-anchor="middle" font-size="10" fill="#444">{c + 1}</text>'
        )
    for r in range(6):
        parts.append(
            f'<text x="{x0 - 8}" y="{y0 + r * _CELL + _CELL / 2 + 3:g}" '
            f'text-anchor="end" font-size="10" fill="#444">{r + 1}</text>'
        )
    for r in range(6):
        for c in range(6):
            fill = _shade(float(values[r, c]), vmax)
            parts.append(
                f'<rect x="{x0 + c * _CELL}" y="{y0 + r * _CELL}" '
                f'width="{_CELL}" height="{_CELL}" fill="{fill}" '
                f'stroke="#cccccc" stroke-width="1"/>'
            )


def heatmap_svg(vector, kind: str, title: str) -> str:
    """Profile heatmap; one 6x6 grid per position (positioned) or a single
    grid (positionless). The color scale is shared across grids."""
    vec = np.asarray(vector, dtype=np.float64)
    if kind == "positioned":
        if vec.shape != (catalog.N_POSITIONED_CELLS,):
            raise ValueError(f"positioned vector must have length "
                             f"{catalog.N_POSITIONED_CELLS}, got {vec.shape}")
        wide = np.zeros(catalog.N_CSV_CELLS)
        wide[catalog.LIVE_FLAT] = vec
        grids = [
            (wide.reshape(36, 3)[:, p].reshape(6, 6), f"position {p + 1}")
            for p in range(3)
        ]
    elif kind == "positionless":
        if vec.shape != (catalog.N_MOTIFS,):
            raise ValueError(
                f"positionless vector must have length {catalog.N_MOTIFS}, got {vec.shape}"
            )
        grids = [(vec.reshape(6, 6), "all positions")]
    else:
        raise ValueError(f"bad profile kind {kind!r}")
    vmax = float(vec.max()) if vec.size else 0.0

    margin_left = 30
    margin_top = 64
    gap = 34
    bar_w = 14
    width = margin_left + len(grids) * (_GRID + gap) + bar_w + 46
    height = margin_top + _GRID + 24
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<defs><linearGradient id="ramp" x1="0" y1="1" x2="0" y2="0">'
        f'<stop offset="0" stop-color="{_shade(0.0, 1.0)}"/>'
        f'<stop offset="1" stop-color="{_shade(1.0, 1.0)}"/>'
        "</linearGradient></defs>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        f'<text x="{margin_left}" y="18" font-size="13" fill="#111">{escape(title)}</text>',
        f'<text x="{margin_left}" y="34" font-size="10" fill="#666">'
        "cells are motifs M(row,col), rows 1-6 top to bottom</text>",
    ]
    for g, (values, caption) in enumerate(grids):
        _grid_svg(parts, margin_left + g * (_GRID + gap), margin_top, values, vmax, caption)
    bar_x = margin_left + len(grids) * (_GRID + gap)
    parts.append(
        f'<rect x="{bar_x}" y="{margin_top}" width="{bar_w}" height="{_GRID}" '
        'fill="url(#ramp)" stroke="#cccccc" stroke-width="1"/>'
    )
    parts.append(
        f'<text x="{bar_x + bar_w + 4}" y="{margin_top + 8}" font-size="10" '
        f'fill="#444">{_fmt(vmax)}</text>'
    )
    parts.append(
        f'<text x="{bar_x + bar_w + 4}" y="{margin_top + _GRID}" font-size="10" '
        'fill="#444">0</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def dendrogram_svg(
    dendrogram: Dendrogram, node_names, k_highlight: int = 1
) -> str:
    """Dendrogram drawing; the k_highlight flat clusters are colored, with
    cluster 0 (leftmost) taking the first palette entry."""
    n = dendrogram.n_leaves
    if len(node_names) != n:
        raise ValueError("name count does not match leaf count")
    labels = cut(dendrogram, k_highlight).labels
    order = dendrogram.leaf_order()
    slot = {leaf: i for i, leaf in enumerate(order)}
    kids = dendrogram.children()

    leaf_space = 36
    margin = 40
    plot_h = 320
    label_band = 14 + 7 * max(len(str(nm)) for nm in node_names)
    width = 2 * margin + (n - 1) * leaf_space + 1
    height = margin + plot_h + label_band
    hmax = max((m.height for m in dendrogram.merges), default=0.0)
    scale = plot_h / hmax if hmax > 0 else 0.0

    def ypos(h: float) -> float:
        return margin + plot_h - h * scale

    xpos: dict[int, float] = {leaf: margin + slot[leaf] * leaf_space for leaf in order}
    hpos: dict[int, float] = {leaf: 0.0 for leaf in order}
    cluster_of: dict[int, int] = {leaf: int(labels[leaf]) for leaf in order}
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    for node_id in range(n, 2 * n - 1):
        left, right = kids[node_id]
        merge = dendrogram.merges[node_id - n]
        xl, xr = xpos[left], xpos[right]
        yl, yr = ypos(hpos[left]), ypos(hpos[right])
        y = ypos(merge.height)
        same = cluster_of.get(left) is not None and cluster_of.get(left) == cluster_of.get(right)
        color = _PALETTE[cluster_of[left] % len(_PALETTE)] if same else _LINK
        path = (
            f'M {xl:.2f} {yl:.2f} L {xl:.2f} {y:.2f} '
            f'L {xr:.2f} {y:.2f} L {xr:.2f} {yr:.2f}'
        )
        parts.append(
            f'<path d="{path}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        xpos[node_id] = (xl + xr) / 2.0
        hpos[node_id] = merge.height
        cluster_of[node_id] = cluster_of[left] if same else None
    for leaf in order:
        x = xpos[leaf]
        color = _PALETTE[int(labels[leaf]) % len(_PALETTE)]
        parts.append(
            f'<circle cx="{x:.2f}" cy="{ypos(0.0):.2f}" r="3" fill="{color}"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{margin + plot_h + 12}" font-size="10" fill="#222" '
            f'transform="rotate(90 {x:.2f} {margin + plot_h + 12})">'
            f"{escape(str(node_names[leaf]))}</text>"
        )
    parts.append(
        f'<text x="{margin}" y="{margin - 16}" font-size="11" fill="#444">'
        f"merge height: sum-of-squares increase, max {_fmt(hmax)}</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
