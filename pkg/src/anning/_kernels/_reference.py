"""Pure-Python reference kernels.

Scalar and vectorized primitives shared by every distance field, plus the
damped-Newton polish used by the triple-point solver.  The compiled backend
(`_speedups.pyx`) implements the same functions with identical semantics;
`anning._kernels` picks one at import time.

Field encoding (kind, params) used throughout:

  kind 0  Lp plane norm        params = [p]           (p = 1 is the L1 ball)
  kind 1  Linf plane norm      params = []
  kind 2  arc-boundary norm    params = [m, then per arc: cx, cy, r, phi0, phi1]
                               (phi0/phi1: origin-angle span, sorted by phi0,
                               spans partition [0, 2pi); origin strictly
                               inside every arc circle)
  kind 3  flat torus           params = [ux, uy, vx, vy, b00, b01, b10, b11]
                               (b = inverse basis matrix, row-major)
  kind 4  infinite-angle cone  params = []            (point coords are (r, theta))
"""

import math

import numpy as np

BACKEND = "python"

KIND_LP = 0
KIND_LINF = 1
KIND_ARCS = 2
KIND_TORUS = 3
KIND_CONE = 4

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# scalar distance


def _lp_norm(dx, dy, p):
    ax = abs(dx)
    ay = abs(dy)
    if p == 2.0:
        return math.sqrt(ax * ax + ay * ay)
    if p == 1.0:
        return ax + ay
    m = ax if ax > ay else ay
    if m == 0.0:
        return 0.0
    return m * ((ax / m) ** p + (ay / m) ** p) ** (1.0 / p)


def _arc_radial(params, theta):
    m = int(params[0])
    t = theta % TWO_PI
    # rightmost arc with phi0 <= t; wraps to the last arc for t < phi0[0]
    lo, hi = 0, m - 1
    if t < params[1 + 3]:
        idx = m - 1
    else:
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if params[1 + 5 * mid + 3] <= t:
                lo = mid
            else:
                hi = mid - 1
        idx = lo
    base = 1 + 5 * idx
    cx = params[base]
    cy = params[base + 1]
    r = params[base + 2]
    ux = math.cos(t)
    uy = math.sin(t)
    b = ux * cx + uy * cy
    disc = b * b - (cx * cx + cy * cy) + r * r
    if disc < 0.0:
        disc = 0.0
    return b + math.sqrt(disc)


def _arc_norm(params, dx, dy):
    if dx == 0.0 and dy == 0.0:
        return 0.0
    return math.hypot(dx, dy) / _arc_radial(params, math.atan2(dy, dx))


def _torus_dist(params, px, py, qx, qy):
    ux, uy, vx, vy, b00, b01, b10, b11 = params
    # reduce both points to fundamental-domain coefficients in [0, 1)
    pa = b00 * px + b01 * py
    pb = b10 * px + b11 * py
    qa = b00 * qx + b01 * qy
    qb = b10 * qx + b11 * qy
    da = (qa - math.floor(qa)) - (pa - math.floor(pa))
    db = (qb - math.floor(qb)) - (pb - math.floor(pb))
    dx = da * ux + db * vx
    dy = da * uy + db * vy
    best = math.inf
    for i in (-2, -1, 0, 1, 2):
        for j in (-2, -1, 0, 1, 2):
            tx = dx + i * ux + j * vx
            ty = dy + i * uy + j * vy
            d = tx * tx + ty * ty
            if d < best:
                best = d
    return math.sqrt(best)


def _cone_dist(r1, t1, r2, t2):
    dt = abs(t1 - t2)
    if dt >= math.pi:
        return r1 + r2
    # cancellation can push the radicand a few ulp below zero for near-equal points
    sq = r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * math.cos(dt)
    return math.sqrt(sq) if sq > 0.0 else 0.0


def dist_one(kind, params, px, py, qx, qy):
    """Distance between single points (px,py) and (qx,qy) under the field."""
    if kind == KIND_LP:
        return _lp_norm(qx - px, qy - py, params[0])
    if kind == KIND_LINF:
        return max(abs(qx - px), abs(qy - py))
    if kind == KIND_ARCS:
        return _arc_norm(params, qx - px, qy - py)
    if kind == KIND_TORUS:
        return _torus_dist(params, px, py, qx, qy)
    if kind == KIND_CONE:
        return _cone_dist(px, py, qx, qy)
    raise ValueError(f"unknown field kind {kind}")


def radial_one(kind, params, theta):
    """Boundary radius of the unit ball in direction theta (norm kinds only)."""
    if kind == KIND_LP:
        n = _lp_norm(math.cos(theta), math.sin(theta), params[0])
        return 1.0 / n
    if kind == KIND_LINF:
        n = max(abs(math.cos(theta)), abs(math.sin(theta)))
        return 1.0 / n
    if kind == KIND_ARCS:
        return _arc_radial(params, theta)
    raise ValueError(f"field kind {kind} has no radial function")


# ---------------------------------------------------------------------------
# vectorized distance


def _lp_norm_arr(dx, dy, p):
    ax = np.abs(dx)
    ay = np.abs(dy)
    if p == 2.0:
        return np.sqrt(ax * ax + ay * ay)
    if p == 1.0:
        return ax + ay
    m = np.maximum(ax, ay)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = m * ((ax / m) ** p + (ay / m) ** p) ** (1.0 / p)
    return np.where(m == 0.0, 0.0, out)


def _arc_norm_arr(params, dx, dy):
    m = int(params[0])
    rows = np.asarray(params[1:]).reshape(m, 5)
    theta = np.mod(np.arctan2(dy, dx), TWO_PI)
    idx = np.searchsorted(rows[:, 3], theta, side="right") - 1
    idx = np.where(idx < 0, m - 1, idx)
    cx = rows[idx, 0]
    cy = rows[idx, 1]
    r = rows[idx, 2]
    ux = np.cos(theta)
    uy = np.sin(theta)
    b = ux * cx + uy * cy
    disc = np.maximum(b * b - (cx * cx + cy * cy) + r * r, 0.0)
    rho = b + np.sqrt(disc)
    return np.hypot(dx, dy) / rho


def _torus_dist_arr(params, px, py, qx, qy):
    ux, uy, vx, vy, b00, b01, b10, b11 = params
    pa = b00 * px + b01 * py
    pb = b10 * px + b11 * py
    qa = b00 * qx + b01 * qy
    qb = b10 * qx + b11 * qy
    da = (qa - np.floor(qa)) - (pa - np.floor(pa))
    db = (qb - np.floor(qb)) - (pb - np.floor(pb))
    dx = da * ux + db * vx
    dy = da * uy + db * vy
    best = np.full(np.shape(dx), np.inf)
    for i in (-2, -1, 0, 1, 2):
        for j in (-2, -1, 0, 1, 2):
            tx = dx + i * ux + j * vx
            ty = dy + i * uy + j * vy
            np.minimum(best, tx * tx + ty * ty, out=best)
    return np.sqrt(best)


def _cone_dist_arr(r1, t1, r2, t2):
    dt = np.abs(t1 - t2)
    law = np.sqrt(
        np.maximum(r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * np.cos(np.minimum(dt, math.pi)), 0.0)
    )
    return np.where(dt >= math.pi, r1 + r2, law)


def dist_many(kind, params, px, py, qx, qy):
    """Distances from each point of (px, py) to the single point (qx, qy)."""
    px = np.asarray(px, dtype=float)
    py = np.asarray(py, dtype=float)
    if kind == KIND_LP:
        return _lp_norm_arr(qx - px, qy - py, params[0])
    if kind == KIND_LINF:
        return np.maximum(np.abs(qx - px), np.abs(qy - py))
    if kind == KIND_ARCS:
        return _arc_norm_arr(params, qx - px, qy - py)
    if kind == KIND_TORUS:
        return _torus_dist_arr(params, px, py, float(qx), float(qy))
    if kind == KIND_CONE:
        return _cone_dist_arr(px, py, float(qx), float(qy))
    raise ValueError(f"unknown field kind {kind}")


def dist_pairs(kind, params, ax, ay, bx, by):
    """Row-wise distances between point arrays (ax, ay) and (bx, by)."""
    ax = np.asarray(ax, dtype=float)
    ay = np.asarray(ay, dtype=float)
    bx = np.asarray(bx, dtype=float)
    by = np.asarray(by, dtype=float)
    if kind == KIND_LP:
        return _lp_norm_arr(bx - ax, by - ay, params[0])
    if kind == KIND_LINF:
        return np.maximum(np.abs(bx - ax), np.abs(by - ay))
    if kind == KIND_ARCS:
        return _arc_norm_arr(params, bx - ax, by - ay)
    if kind == KIND_TORUS:
        return _torus_dist_arr(params, ax, ay, bx, by)
    if kind == KIND_CONE:
        return _cone_dist_arr(ax, ay, bx, by)
    raise ValueError(f"unknown field kind {kind}")


def weighted_diffs(kind, params, sx, sy, w, px, py):
    """Difference fields (D1-D2, D1-D3) of three weighted sites over points."""
    d0 = dist_many(kind, params, px, py, sx[0], sy[0]) + w[0]
    d1 = dist_many(kind, params, px, py, sx[1], sy[1]) + w[1]
    d2 = dist_many(kind, params, px, py, sx[2], sy[2]) + w[2]
    return d0 - d1, d0 - d2


# ---------------------------------------------------------------------------
# Newton polish


def _g3(kind, params, sx, sy, w, x, y):
    d0 = dist_one(kind, params, x, y, sx[0], sy[0]) + w[0]
    d1 = dist_one(kind, params, x, y, sx[1], sy[1]) + w[1]
    d2 = dist_one(kind, params, x, y, sx[2], sy[2]) + w[2]
    return d0 - d1, d0 - d2


def _spread3(kind, params, sx, sy, w, x, y):
    d0 = dist_one(kind, params, x, y, sx[0], sy[0]) + w[0]
    d1 = dist_one(kind, params, x, y, sx[1], sy[1]) + w[1]
    d2 = dist_one(kind, params, x, y, sx[2], sy[2]) + w[2]
    return max(d0, d1, d2) - min(d0, d1, d2)


def newton3(kind, params, sx, sy, w, x0, y0, fd_step, tol, max_iter):
    """Damped Newton iteration on the two weighted-distance differences.

    Jacobian by central finite differences.  Returns
    (x, y, residual, iterations, converged) where residual is the spread
    max(D_i) - min(D_i) at the final point.
    """
    x = float(x0)
    y = float(y0)
    g1, g2 = _g3(kind, params, sx, sy, w, x, y)
    err = max(abs(g1), abs(g2))
    iters = 0
    h = fd_step
    while err > 0.25 * tol and iters < max_iter:
        iters += 1
        a1, b1 = _g3(kind, params, sx, sy, w, x + h, y)
        a2, b2 = _g3(kind, params, sx, sy, w, x - h, y)
        a3, b3 = _g3(kind, params, sx, sy, w, x, y + h)
        a4, b4 = _g3(kind, params, sx, sy, w, x, y - h)
        j11 = (a1 - a2) / (2.0 * h)
        j12 = (a3 - a4) / (2.0 * h)
        j21 = (b1 - b2) / (2.0 * h)
        j22 = (b3 - b4) / (2.0 * h)
        det = j11 * j22 - j12 * j21
        if abs(det) < 1e-14:
            break
        dx = (j22 * g1 - j12 * g2) / det
        dy = (j11 * g2 - j21 * g1) / det
        # damped step: halve until the error decreases
        scale = 1.0
        improved = False
        for _ in range(8):
            nx = x - scale * dx
            ny = y - scale * dy
            n1, n2 = _g3(kind, params, sx, sy, w, nx, ny)
            nerr = max(abs(n1), abs(n2))
            if nerr < err:
                x, y, g1, g2, err = nx, ny, n1, n2, nerr
                improved = True
                break
            scale *= 0.5
        if not improved:
            break
    res = _spread3(kind, params, sx, sy, w, x, y)
    return x, y, res, iters, res <= tol
