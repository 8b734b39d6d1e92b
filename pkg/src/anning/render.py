"""Deterministic SVG rendering of diagrams, cells, and triple points.

Ownership is rasterized with `cell_raster` and emitted as row-wise
run-length rectangles; bisector curves of general strict norms have no
closed form, so raster fidelity is the intended output.  All numbers are
formatted at 12 significant digits, making outputs byte-stable.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .fields import NormPlane
from .voronoi import (
    DEGENERATE_RAY,
    Diagram,
    TriplePointSet,
    cell_raster,
    classify_sites,
    owner,
)

DEFAULT_PALETTE = (
    "#ffd977",
    "#9ecbff",
    "#ff9e9e",
    "#a8e6a1",
    "#d7b3ff",
    "#ffc4e0",
    "#c2f0ee",
    "#e6dfa8",
)

MIN_RESOLUTION = 16
MAX_RESOLUTION = 8192


@dataclass(frozen=True)
class RenderSpec:
    """Viewport and toggles for diagram rendering."""

    bbox: Tuple[float, float, float, float]
    resolution: int = 800
    palette: Tuple[str, ...] = DEFAULT_PALETTE
    show: Tuple[str, ...] = ("sites", "triple_points", "rays")

    def __post_init__(self):
        if not MIN_RESOLUTION <= self.resolution <= MAX_RESOLUTION:
            raise ValueError(
                f"resolution must be in [{MIN_RESOLUTION}, {MAX_RESOLUTION}], "
                f"got {self.resolution}"
            )
        xmin, ymin, xmax, ymax = self.bbox
        if not (xmax > xmin and ymax > ymin):
            raise ValueError(f"degenerate bbox {self.bbox}")


def _fmt(v: float) -> str:
    out = f"{float(v):.12g}"
    return "0" if out == "-0" else out


def _runs(row: np.ndarray):
    """(start, end, value) runs of equal labels along one raster row."""
    breaks = np.flatnonzero(np.diff(row)) + 1
    starts = np.concatenate(([0], breaks))
    ends = np.concatenate((breaks, [len(row)]))
    for s, e in zip(starts, ends):
        yield int(s), int(e), int(row[s])


def _ray_extent(diagram: Diagram, i: int, direction, limit: float) -> float:
    """How far site i keeps owning points along its degenerate ray."""
    s = diagram.sites[i].point
    lo, hi = 0.0, 1e-6
    while hi < limit and i in owner(diagram, (s[0] + hi * direction[0], s[1] + hi * direction[1])):
        lo = hi
        hi *= 2.0
    if hi >= limit:
        return limit
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if i in owner(diagram, (s[0] + mid * direction[0], s[1] + mid * direction[1])):
            lo = mid
        else:
            hi = mid
    return lo


def render_svg(
    diagram: Diagram,
    spec: RenderSpec,
    triple: Optional[TriplePointSet] = None,
) -> str:
    """Render the diagram to an SVG document string.

    The viewBox equals the RenderSpec bbox; the y axis is flipped at emit
    time so geometry reads with y pointing up.
    """
    xmin, ymin, xmax, ymax = spec.bbox
    res = spec.resolution
    dx = (xmax - xmin) / res
    dy = (ymax - ymin) / res
    flip = ymin + ymax

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        (
            f'<svg xmlns="http://www.w3.org/2000/svg" '
            f'viewBox="{_fmt(xmin)} {_fmt(ymin)} {_fmt(xmax - xmin)} {_fmt(ymax - ymin)}">'
        ),
    ]

    grid = cell_raster(diagram, spec.bbox, res)
    palette = spec.palette
    for iy in range(res):
        y_low = ymin + iy * dy
        y_high = y_low + dy
        y_svg = flip - y_high
        for s, e, label in _runs(grid[iy]):
            parts.append(
                f'<rect x="{_fmt(xmin + s * dx)}" y="{_fmt(y_svg)}" '
                f'width="{_fmt((e - s) * dx)}" height="{_fmt(dy)}" '
                f'fill="{palette[label % len(palette)]}"/>'
            )

    marker = 0.012 * max(xmax - xmin, ymax - ymin)
    if "grid" in spec.show:
        stroke = f'stroke="#888888" stroke-width="{_fmt(0.08 * marker)}"'
        for gx in range(math.ceil(xmin), math.floor(xmax) + 1):
            parts.append(
                f'<line x1="{_fmt(gx)}" y1="{_fmt(ymin)}" '
                f'x2="{_fmt(gx)}" y2="{_fmt(ymax)}" {stroke}/>'
            )
        for gy in range(math.ceil(ymin), math.floor(ymax) + 1):
            y = flip - gy
            parts.append(
                f'<line x1="{_fmt(xmin)}" y1="{_fmt(y)}" '
                f'x2="{_fmt(xmax)}" y2="{_fmt(y)}" {stroke}/>'
            )

    rays_possible = isinstance(diagram.field, NormPlane) and diagram.field.strict
    if "rays" in spec.show and rays_possible:
        limit = 4.0 * math.hypot(xmax - xmin, ymax - ymin)
        for i, cls in enumerate(classify_sites(diagram)):
            if cls.kind != DEGENERATE_RAY:
                continue
            s = diagram.sites[i].point
            t = _ray_extent(diagram, i, cls.direction, limit)
            parts.append(
                f'<line x1="{_fmt(s[0])}" y1="{_fmt(flip - s[1])}" '
                f'x2="{_fmt(s[0] + t * cls.direction[0])}" '
                f'y2="{_fmt(flip - (s[1] + t * cls.direction[1]))}" '
                f'stroke="#b00000" stroke-width="{_fmt(0.3 * marker)}"/>'
            )

    if "sites" in spec.show:
        for i, s in enumerate(diagram.sites):
            parts.append(
                f'<circle cx="{_fmt(s.point[0])}" cy="{_fmt(flip - s.point[1])}" '
                f'r="{_fmt(marker)}" fill="#202020" stroke="#ffffff" '
                f'stroke-width="{_fmt(0.25 * marker)}"/>'
            )

    if triple is not None and "triple_points" in spec.show:
        for x, y in triple.points:
            parts.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(flip - y)}" '
                f'r="{_fmt(0.8 * marker)}" fill="none" stroke="#000000" '
                f'stroke-width="{_fmt(0.35 * marker)}"/>'
            )

    parts.append("</svg>")
    return "\n".join(parts)


def write_svg(path: str, svg_text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg_text)
