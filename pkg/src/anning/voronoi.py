"""Additively weighted Voronoi machinery over a pluggable distance field.

Cells are never materialized; everything is evaluated pointwise:
membership (`owner`), degenerate-site classification, ownership rasters,
and the triple-equidistant-point solver.  The solver caps its result counts
at 2 on strict planes and 6 on tori (Euler genus 2), which is exactly what
the counting theory allows.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np

from . import _kernels
from .errors import CollinearSites, NonStrictNorm
from .fields import (
    DistanceField,
    NormPlane,
    chart_gradient_bound,
    collinear_area_test,
)
from .norms import as_xy
from .surfaces import FlatTorus, InfiniteCone

RESIDUAL_TOL = 1e-9
OWNER_TOL = 1e-9
DEDUP_RADIUS = 1e-5
SITE_SEPARATION = 1e-9
FD_STEP = 1e-6
SEED_GRID = 64
MARGIN_FACTOR = 4.0
MAX_NEWTON_ITER = 50
MAX_SEEDS = 512

PLANE_TRIPLE_CAP = 2
TORUS_TRIPLE_CAP = 6  # 2 * euler_genus + 2 with euler_genus = 2

NON_DEGENERATE = "non-degenerate"
DEGENERATE_RAY = "degenerate-ray"
EMPTY_CELL = "empty"


@dataclass(frozen=True)
class WeightedSite:
    """Site with an additive weight, in the same units as distance."""

    point: Tuple[float, float]
    weight: float = 0.0

    def __post_init__(self):
        x, y = as_xy(self.point)
        object.__setattr__(self, "point", (x, y))
        if not math.isfinite(self.weight):
            raise ValueError(f"non-finite weight {self.weight}")


@dataclass(frozen=True)
class Diagram:
    """Distance field plus weighted sites; cells are derived, not stored."""

    field: DistanceField
    sites: Tuple[WeightedSite, ...]

    def __post_init__(self):
        sites = tuple(
            s if isinstance(s, WeightedSite) else WeightedSite(*s) for s in self.sites
        )
        object.__setattr__(self, "sites", sites)
        if len(sites) < 1:
            raise ValueError("diagram needs at least one site")
        for i in range(len(sites)):
            for j in range(i + 1, len(sites)):
                if self.field.dist(sites[i].point, sites[j].point) <= SITE_SEPARATION:
                    raise ValueError(f"sites {i} and {j} coincide under the field metric")


@dataclass(frozen=True)
class SiteClass:
    """Cell shape class of one site: full cell, ray segment, or empty."""

    kind: str
    direction: Optional[Tuple[float, float]] = None


@dataclass
class TriplePointSet:
    """Points equidistant (with weights) from three sites, with diagnostics."""

    points: List[Tuple[float, float]]
    residuals: List[float]
    solver_stats: dict

    def to_json(self) -> dict:
        return {
            "points": [[x, y] for x, y in self.points],
            "residuals": list(self.residuals),
            "solver_stats": dict(self.solver_stats),
        }


def weighted_distance(diagram: Diagram, i: int, p) -> float:
    """field.dist(p, s_i) + w_i."""
    if not 0 <= i < len(diagram.sites):
        raise IndexError(f"site index {i} out of range")
    s = diagram.sites[i]
    return diagram.field.dist(p, s.point) + s.weight


def owner(diagram: Diagram, p, tol: float = OWNER_TOL) -> Set[int]:
    """Indices of all sites whose weighted distance is within tol of the minimum."""
    d = np.array([weighted_distance(diagram, i, p) for i in range(len(diagram.sites))])
    return set(np.flatnonzero(d <= d.min() + tol).tolist())


def classify_sites(diagram: Diagram, tol: float = OWNER_TOL) -> List[SiteClass]:
    """Classify each site as non-degenerate, degenerate ray, or empty cell.

    Only defined on strictly convex planar norms, where degenerate cells are
    rays along the line to the responsible site.
    """
    if not isinstance(diagram.field, NormPlane):
        raise TypeError("site classification needs a planar norm field")
    if not diagram.field.strict:
        raise NonStrictNorm("site classification needs a strictly convex norm")
    out = []
    n = len(diagram.sites)
    for i in range(n):
        si = diagram.sites[i]
        here = si.point
        own = si.weight
        others = [
            (weighted_distance(diagram, j, here), j) for j in range(n) if j != i
        ]
        if others and min(d for d, _ in others) < own - tol:
            out.append(SiteClass(EMPTY_CELL))
            continue
        equal = [(diagram.field.dist(here, diagram.sites[j].point), j)
                 for d, j in others if abs(d - own) <= tol]
        if equal:
            _, j = min(equal)
            sj = diagram.sites[j].point
            ux, uy = here[0] - sj[0], here[1] - sj[1]
            length = math.hypot(ux, uy)
            out.append(SiteClass(DEGENERATE_RAY, (ux / length, uy / length)))
        else:
            out.append(SiteClass(NON_DEGENERATE))
    return out


def cell_raster(diagram: Diagram, bbox, resolution: int) -> np.ndarray:
    """Ownership grid over bbox = (xmin, ymin, xmax, ymax).

    Returns a (resolution, resolution) int array indexed [row, col] with
    row 0 at ymin; ties go to the lowest site index.
    """
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    xmin, ymin, xmax, ymax = bbox
    xs = xmin + (np.arange(resolution) + 0.5) * (xmax - xmin) / resolution
    ys = ymin + (np.arange(resolution) + 0.5) * (ymax - ymin) / resolution
    out = np.empty((resolution, resolution), dtype=np.intp)
    # row blocks keep the per-site distance stack bounded in memory
    block = max(1, 4_000_000 // (resolution * len(diagram.sites)))
    for start in range(0, resolution, block):
        gx, gy = np.meshgrid(xs, ys[start : start + block])
        px = gx.ravel()
        py = gy.ravel()
        stack = np.empty((len(diagram.sites), px.size))
        for i, s in enumerate(diagram.sites):
            stack[i] = diagram.field.dist_many(px, py, s.point) + s.weight
        out[start : start + block] = np.argmin(stack, axis=0).reshape(-1, resolution)
    return out


# ---------------------------------------------------------------------------
# triple-point solver


def _site_arrays(sites: Sequence[WeightedSite]):
    pts = [s.point for s in sites]
    sx = np.array([p[0] for p in pts])
    sy = np.array([p[1] for p in pts])
    w = np.array([s.weight for s in sites])
    return pts, sx, sy, w


def _spread(field: DistanceField, pts, w, x, y) -> float:
    d = [field.dist((x, y), pts[i]) + w[i] for i in range(3)]
    return max(d) - min(d)


def _plane_degenerate_roots(field, pts, w, tol, t_max, stats):
    """Roots of diagrams where some site's cell is empty or a ray.

    Returns (handled, roots).  When a site s_i has another site at equal
    weighted distance, every triple point lies on the ray from s_i away from
    that site, where the difference against the third site is strictly
    monotone; a single bisection finds the root.  Sign-change seeding cannot
    see these roots because one difference field touches zero without
    crossing, so this branch runs first.
    """
    at = [[field.dist(pts[i], pts[j]) + w[j] for j in range(3)] for i in range(3)]
    degenerate = {}
    for i in range(3):
        best_other = min(at[i][j] for j in range(3) if j != i)
        if best_other < w[i] - tol:
            return True, []  # V_i is empty, so the triple intersection is too
        equal = [j for j in range(3) if j != i and abs(at[i][j] - w[i]) <= tol]
        if equal:
            degenerate[i] = equal
    if not degenerate:
        return False, []

    candidates = []
    for i, js in degenerate.items():
        if len(js) >= 2:
            candidates.append(pts[i])
            continue
        j = js[0]
        k = 3 - i - j
        ux = pts[i][0] - pts[j][0]
        uy = pts[i][1] - pts[j][1]
        scale = math.hypot(ux, uy)
        ux /= scale
        uy /= scale
        speed = field.dist(pts[i], (pts[i][0] + ux, pts[i][1] + uy))

        def phi(t, i=i, k=k, ux=ux, uy=uy, speed=speed):
            x = pts[i][0] + t * ux
            y = pts[i][1] + t * uy
            return (w[i] + t * speed) - (field.dist((x, y), pts[k]) + w[k])

        f0 = phi(0.0)
        if abs(f0) <= tol:
            candidates.append(pts[i])
            continue
        if f0 > 0.0:
            continue  # phi is strictly increasing: no root on the ray
        lo, hi = 0.0, 1.0
        while phi(hi) <= 0.0:
            lo = hi
            hi *= 2.0
            if hi > t_max:
                break
        if hi > t_max:
            continue
        while hi - lo > 1e-15 * max(1.0, hi):
            mid = 0.5 * (lo + hi)
            if phi(mid) <= 0.0:
                lo = mid
            else:
                hi = mid
        t = 0.5 * (lo + hi)
        candidates.append((pts[i][0] + t * ux, pts[i][1] + t * uy))
        stats["seeds"] += 1

    roots = []
    for x, y in candidates:
        res = _spread(field, pts, w, x, y)
        if res <= tol:
            roots.append((x, y, res))
    return True, roots


def _seed_nodes(field, pts, w, grid_n, margin_factor):
    """Node grid ((n+1, n+1) point arrays) covering the search region."""
    if isinstance(field, FlatTorus):
        a = np.linspace(0.0, 1.0, grid_n + 1)
        ga, gb = np.meshgrid(a, a)
        px = ga * field.u[0] + gb * field.v[0]
        py = ga * field.u[1] + gb * field.v[1]
        return px, py
    max_pair = max(
        field.dist(pts[i], pts[j]) for i in range(3) for j in range(i + 1, 3)
    )
    max_w = max(abs(v) for v in w)
    reach = margin_factor * (max_pair + max_w)
    if isinstance(field, InfiniteCone):
        rmin = max(1e-9, min(p[0] for p in pts) - reach)
        rmax = max(p[0] for p in pts) + reach
        tlo = min(p[1] for p in pts) - math.pi - 0.5
        thi = max(p[1] for p in pts) + math.pi + 0.5
        xs = np.linspace(rmin, rmax, grid_n + 1)
        ys = np.linspace(tlo, thi, grid_n + 1)
    else:
        cx = sum(p[0] for p in pts) / 3.0
        cy = sum(p[1] for p in pts) / 3.0
        xs = np.linspace(cx - reach, cx + reach, grid_n + 1)
        ys = np.linspace(cy - reach, cy + reach, grid_n + 1)
    return np.meshgrid(xs, ys)


def _cell_corners(a: np.ndarray):
    return a[:-1, :-1], a[1:, :-1], a[:-1, 1:], a[1:, 1:]


def _local_min_mask(a: np.ndarray) -> np.ndarray:
    padded = np.pad(a, 1, mode="constant", constant_values=np.inf)
    best = np.full_like(a, np.inf)
    for di in (0, 1, 2):
        for dj in (0, 1, 2):
            if di == 1 and dj == 1:
                continue
            np.minimum(best, padded[di : di + a.shape[0], dj : dj + a.shape[1]], out=best)
    return a <= best


def _candidate_seeds(px, py, g1, g2, grad_bound):
    """Cell centers worth a Newton start: sign changes plus residual pockets."""
    c1 = _cell_corners(g1)
    c2 = _cell_corners(g2)
    min1 = np.minimum.reduce(c1)
    max1 = np.maximum.reduce(c1)
    min2 = np.minimum.reduce(c2)
    max2 = np.maximum.reduce(c2)
    sign_cells = (min1 < 0.0) & (max1 > 0.0) & (min2 < 0.0) & (max2 > 0.0)

    resid = np.maximum(np.abs(g1), np.abs(g2))
    cell_res = np.minimum.reduce(_cell_corners(resid))
    dxs = px[1:, 1:] - px[:-1, :-1]
    dys = py[1:, 1:] - py[:-1, :-1]
    diag = float(np.max(np.hypot(dxs, dys)))
    near_zero = (cell_res <= 3.0 * diag * grad_bound) & _local_min_mask(cell_res)

    mask = sign_cells | near_zero
    rows, cols = np.nonzero(mask)
    if rows.size == 0:
        return np.empty((0, 2))
    cx = 0.25 * (px[:-1, :-1] + px[1:, :-1] + px[:-1, 1:] + px[1:, 1:])
    cy = 0.25 * (py[:-1, :-1] + py[1:, :-1] + py[:-1, 1:] + py[1:, 1:])
    order = np.argsort(cell_res[rows, cols], kind="stable")[:MAX_SEEDS]
    rows = rows[order]
    cols = cols[order]
    return np.column_stack((cx[rows, cols], cy[rows, cols]))


def _dedup_sorted(field, roots, radius):
    """Greedy metric clustering of (x, y, res) roots; keeps the best residual."""
    roots = sorted(roots, key=lambda r: (r[0], r[1]))
    clusters = []
    for r in roots:
        for c in clusters:
            if field.dist((r[0], r[1]), (c[0][0], c[0][1])) <= radius:
                c.append(r)
                break
        else:
            clusters.append([r])
    reps = [min(c, key=lambda r: r[2]) for c in clusters]
    return sorted(reps, key=lambda r: (r[0], r[1]))


def triple_points(
    field: DistanceField,
    sites: Sequence[WeightedSite],
    *,
    tol: float = RESIDUAL_TOL,
    dedup_radius: float = DEDUP_RADIUS,
    grid_n: int = SEED_GRID,
    margin_factor: float = MARGIN_FACTOR,
    max_iter: int = MAX_NEWTON_ITER,
) -> TriplePointSet:
    """All points whose weighted distances to the three sites agree within tol.

    With exactly three sites these are precisely the triple cell
    intersection.  Counts are capped by theory: at most 2 on a strict norm
    plane (non-collinear sites), at most 6 on a flat torus.
    """
    if len(sites) != 3:
        raise ValueError(f"need exactly 3 sites, got {len(sites)}")
    sites = [s if isinstance(s, WeightedSite) else WeightedSite(*s) for s in sites]
    pts, sx, sy, w = _site_arrays(sites)
    for i in range(3):
        for j in range(i + 1, 3):
            if field.dist(pts[i], pts[j]) <= SITE_SEPARATION:
                raise ValueError(f"sites {i} and {j} coincide")

    stats = {"seeds": 0, "newton_iterations": 0}
    roots = []
    is_plane = isinstance(field, NormPlane)
    if is_plane:
        if not field.strict:
            raise NonStrictNorm("triple points need a strictly convex norm")
        if collinear_area_test(*pts):
            raise CollinearSites(f"sites {pts} are collinear")
        max_pair = max(
            field.dist(pts[i], pts[j]) for i in range(3) for j in range(i + 1, 3)
        )
        reach = margin_factor * (max_pair + max(abs(v) for v in w))
        handled, roots = _plane_degenerate_roots(
            field, pts, w, tol, 2.0 * reach + 1.0, stats
        )
        if not handled:
            roots = None
    else:
        roots = None

    if roots is None:
        kind, params = field.kernel_args()
        px, py = _seed_nodes(field, pts, w, grid_n, margin_factor)
        g1, g2 = _kernels.weighted_diffs(kind, params, sx, sy, w, px.ravel(), py.ravel())
        g1 = g1.reshape(px.shape)
        g2 = g2.reshape(px.shape)
        seeds = _candidate_seeds(px, py, g1, g2, chart_gradient_bound(field, pts))
        stats["seeds"] = len(seeds)
        roots = []
        for x0, y0 in seeds:
            x, y, res, iters, ok = _kernels.newton3(
                kind, params, sx, sy, w, x0, y0, FD_STEP, tol, max_iter
            )
            stats["newton_iterations"] += iters
            if ok:
                roots.append((x, y, res))
        if is_plane:
            cx = float(np.mean(sx))
            cy = float(np.mean(sy))
            max_pair = max(
                field.dist(pts[i], pts[j]) for i in range(3) for j in range(i + 1, 3)
            )
            reach = margin_factor * (max_pair + max(abs(v) for v in w))
            roots = [
                r
                for r in roots
                if max(abs(r[0] - cx), abs(r[1] - cy)) <= reach * 1.0001
            ]
        elif isinstance(field, InfiniteCone):
            roots = [r for r in roots if r[0] > 0.0]
        if isinstance(field, FlatTorus):
            roots = [(*field.reduce((r[0], r[1])), r[2]) for r in roots]

    roots = _dedup_sorted(field, roots, dedup_radius)

    if is_plane and len(roots) > PLANE_TRIPLE_CAP:
        raise RuntimeError(
            f"strict-norm triple intersection produced {len(roots)} points; "
            f"theory caps it at {PLANE_TRIPLE_CAP}"
        )
    if isinstance(field, FlatTorus) and len(roots) > TORUS_TRIPLE_CAP:
        raise RuntimeError(
            f"torus triple intersection produced {len(roots)} points; "
            f"theory caps it at {TORUS_TRIPLE_CAP}"
        )
    return TriplePointSet(
        points=[(float(r[0]), float(r[1])) for r in roots],
        residuals=[float(r[2]) for r in roots],
        solver_stats=stats,
    )
