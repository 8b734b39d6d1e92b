# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: same contract as `_reference`, C speed.

Field encoding and semantics are documented in `_reference.py`; this module
must stay behaviorally identical so the backends are interchangeable.
"""

from libc.math cimport atan2, cos, fabs, floor, fmax, fmin, hypot, sin, sqrt, pow, M_PI

import numpy as np

BACKEND = "compiled"

cdef int KIND_LP = 0
cdef int KIND_LINF = 1
cdef int KIND_ARCS = 2
cdef int KIND_TORUS = 3
cdef int KIND_CONE = 4

cdef double TWO_PI = 2.0 * M_PI


cdef inline double _lp_norm(double dx, double dy, double p) nogil:
    cdef double ax = fabs(dx)
    cdef double ay = fabs(dy)
    cdef double m
    if p == 2.0:
        return sqrt(ax * ax + ay * ay)
    if p == 1.0:
        return ax + ay
    m = ax if ax > ay else ay
    if m == 0.0:
        return 0.0
    return m * pow(pow(ax / m, p) + pow(ay / m, p), 1.0 / p)


cdef double _arc_radial(double[::1] params, double theta) nogil:
    cdef int m = <int> params[0]
    cdef double t = theta - TWO_PI * floor(theta / TWO_PI)
    cdef int lo = 0
    cdef int hi = m - 1
    cdef int mid, idx, base
    cdef double cx, cy, r, ux, uy, b, disc
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
    ux = cos(t)
    uy = sin(t)
    b = ux * cx + uy * cy
    disc = b * b - (cx * cx + cy * cy) + r * r
    if disc < 0.0:
        disc = 0.0
    return b + sqrt(disc)


cdef inline double _arc_norm(double[::1] params, double dx, double dy) nogil:
    if dx == 0.0 and dy == 0.0:
        return 0.0
    return hypot(dx, dy) / _arc_radial(params, atan2(dy, dx))


cdef double _torus_dist(double[::1] params, double px, double py,
                        double qx, double qy) nogil:
    cdef double ux = params[0]
    cdef double uy = params[1]
    cdef double vx = params[2]
    cdef double vy = params[3]
    cdef double b00 = params[4]
    cdef double b01 = params[5]
    cdef double b10 = params[6]
    cdef double b11 = params[7]
    cdef double pa = b00 * px + b01 * py
    cdef double pb = b10 * px + b11 * py
    cdef double qa = b00 * qx + b01 * qy
    cdef double qb = b10 * qx + b11 * qy
    cdef double da = (qa - floor(qa)) - (pa - floor(pa))
    cdef double db = (qb - floor(qb)) - (pb - floor(pb))
    cdef double dx = da * ux + db * vx
    cdef double dy = da * uy + db * vy
    cdef double best = 1e308
    cdef double tx, ty, d
    cdef int i, j
    for i in range(-2, 3):
        for j in range(-2, 3):
            tx = dx + i * ux + j * vx
            ty = dy + i * uy + j * vy
            d = tx * tx + ty * ty
            if d < best:
                best = d
    return sqrt(best)


cdef inline double _cone_dist(double r1, double t1, double r2, double t2) nogil:
    cdef double dt = fabs(t1 - t2)
    cdef double sq
    if dt >= M_PI:
        return r1 + r2
    # cancellation can push the radicand a few ulp below zero for near-equal points
    sq = r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * cos(dt)
    return sqrt(sq) if sq > 0.0 else 0.0


cdef double _field_dist(int kind, double[::1] params, double px, double py,
                        double qx, double qy) nogil:
    if kind == 0:  # Lp
        return _lp_norm(qx - px, qy - py, params[0])
    if kind == 1:  # Linf
        return fmax(fabs(qx - px), fabs(qy - py))
    if kind == 2:  # arcs
        return _arc_norm(params, qx - px, qy - py)
    if kind == 3:  # torus
        return _torus_dist(params, px, py, qx, qy)
    return _cone_dist(px, py, qx, qy)


def dist_one(int kind, params, double px, double py, double qx, double qy):
    """Distance between single points (px,py) and (qx,qy) under the field."""
    cdef double[::1] pview = np.ascontiguousarray(params, dtype=np.float64)
    return _field_dist(kind, pview, px, py, qx, qy)


def radial_one(int kind, params, double theta):
    """Boundary radius of the unit ball in direction theta (norm kinds only)."""
    cdef double[::1] pview = np.ascontiguousarray(params, dtype=np.float64)
    cdef double n
    if kind == 0:
        n = _lp_norm(cos(theta), sin(theta), pview[0])
        return 1.0 / n
    if kind == 1:
        n = fmax(fabs(cos(theta)), fabs(sin(theta)))
        return 1.0 / n
    if kind == 2:
        return _arc_radial(pview, theta)
    raise ValueError(f"field kind {kind} has no radial function")


def dist_many(int kind, params, px, py, double qx, double qy):
    """Distances from each point of (px, py) to the single point (qx, qy)."""
    cdef double[::1] pview = np.ascontiguousarray(params, dtype=np.float64)
    px_arr = np.ascontiguousarray(px, dtype=np.float64).ravel()
    py_arr = np.ascontiguousarray(py, dtype=np.float64).ravel()
    cdef double[::1] xv = px_arr
    cdef double[::1] yv = py_arr
    cdef Py_ssize_t n = xv.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            ov[i] = _field_dist(kind, pview, xv[i], yv[i], qx, qy)
    return out


def dist_pairs(int kind, params, ax, ay, bx, by):
    """Row-wise distances between point arrays (ax, ay) and (bx, by)."""
    cdef double[::1] pview = np.ascontiguousarray(params, dtype=np.float64)
    ax_arr = np.ascontiguousarray(ax, dtype=np.float64).ravel()
    ay_arr = np.ascontiguousarray(ay, dtype=np.float64).ravel()
    bx_arr = np.ascontiguousarray(bx, dtype=np.float64).ravel()
    by_arr = np.ascontiguousarray(by, dtype=np.float64).ravel()
    cdef double[::1] axv = ax_arr
    cdef double[::1] ayv = ay_arr
    cdef double[::1] bxv = bx_arr
    cdef double[::1] byv = by_arr
    cdef Py_ssize_t n = axv.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            ov[i] = _field_dist(kind, pview, axv[i], ayv[i], bxv[i], byv[i])
    return out


def weighted_diffs(int kind, params, sx, sy, w, px, py):
    """Difference fields (D1-D2, D1-D3) of three weighted sites over points."""
    cdef double[::1] pview = np.ascontiguousarray(params, dtype=np.float64)
    cdef double[::1] sxv = np.ascontiguousarray(sx, dtype=np.float64)
    cdef double[::1] syv = np.ascontiguousarray(sy, dtype=np.float64)
    cdef double[::1] wv = np.ascontiguousarray(w, dtype=np.float64)
    px_arr = np.ascontiguousarray(px, dtype=np.float64).ravel()
    py_arr = np.ascontiguousarray(py, dtype=np.float64).ravel()
    cdef double[::1] xv = px_arr
    cdef double[::1] yv = py_arr
    cdef Py_ssize_t n = xv.shape[0]
    g1 = np.empty(n, dtype=np.float64)
    g2 = np.empty(n, dtype=np.float64)
    cdef double[::1] g1v = g1
    cdef double[::1] g2v = g2
    cdef Py_ssize_t i
    cdef double d0, d1, d2
    with nogil:
        for i in range(n):
            d0 = _field_dist(kind, pview, xv[i], yv[i], sxv[0], syv[0]) + wv[0]
            d1 = _field_dist(kind, pview, xv[i], yv[i], sxv[1], syv[1]) + wv[1]
            d2 = _field_dist(kind, pview, xv[i], yv[i], sxv[2], syv[2]) + wv[2]
            g1v[i] = d0 - d1
            g2v[i] = d0 - d2
    return g1, g2


cdef inline void _g3(int kind, double[::1] params, double[::1] sx, double[::1] sy,
                     double[::1] w, double x, double y, double* g1, double* g2) nogil:
    cdef double d0 = _field_dist(kind, params, x, y, sx[0], sy[0]) + w[0]
    cdef double d1 = _field_dist(kind, params, x, y, sx[1], sy[1]) + w[1]
    cdef double d2 = _field_dist(kind, params, x, y, sx[2], sy[2]) + w[2]
    g1[0] = d0 - d1
    g2[0] = d0 - d2


def newton3(int kind, params, sx, sy, w, double x0, double y0,
            double fd_step, double tol, int max_iter):
    """Damped Newton iteration on the two weighted-distance differences."""
    cdef double[::1] pview = np.ascontiguousarray(params, dtype=np.float64)
    cdef double[::1] sxv = np.ascontiguousarray(sx, dtype=np.float64)
    cdef double[::1] syv = np.ascontiguousarray(sy, dtype=np.float64)
    cdef double[::1] wv = np.ascontiguousarray(w, dtype=np.float64)
    cdef double x = x0
    cdef double y = y0
    cdef double g1, g2, err, a1, b1, a2, b2, a3, b3, a4, b4
    cdef double j11, j12, j21, j22, det, dx, dy, scale, nx, ny, n1, n2, nerr
    cdef double h = fd_step
    cdef double d0, d1, d2, hi, lo, res
    cdef int iters = 0
    cdef int k
    cdef bint improved
    with nogil:
        _g3(kind, pview, sxv, syv, wv, x, y, &g1, &g2)
        err = fmax(fabs(g1), fabs(g2))
        while err > 0.25 * tol and iters < max_iter:
            iters += 1
            _g3(kind, pview, sxv, syv, wv, x + h, y, &a1, &b1)
            _g3(kind, pview, sxv, syv, wv, x - h, y, &a2, &b2)
            _g3(kind, pview, sxv, syv, wv, x, y + h, &a3, &b3)
            _g3(kind, pview, sxv, syv, wv, x, y - h, &a4, &b4)
            j11 = (a1 - a2) / (2.0 * h)
            j12 = (a3 - a4) / (2.0 * h)
            j21 = (b1 - b2) / (2.0 * h)
            j22 = (b3 - b4) / (2.0 * h)
            det = j11 * j22 - j12 * j21
            if fabs(det) < 1e-14:
                break
            dx = (j22 * g1 - j12 * g2) / det
            dy = (j11 * g2 - j21 * g1) / det
            scale = 1.0
            improved = False
            for k in range(8):
                nx = x - scale * dx
                ny = y - scale * dy
                _g3(kind, pview, sxv, syv, wv, nx, ny, &n1, &n2)
                nerr = fmax(fabs(n1), fabs(n2))
                if nerr < err:
                    x = nx
                    y = ny
                    g1 = n1
                    g2 = n2
                    err = nerr
                    improved = True
                    break
                scale *= 0.5
            if not improved:
                break
        d0 = _field_dist(kind, pview, x, y, sxv[0], syv[0]) + wv[0]
        d1 = _field_dist(kind, pview, x, y, sxv[1], syv[1]) + wv[1]
        d2 = _field_dist(kind, pview, x, y, sxv[2], syv[2]) + wv[2]
        hi = fmax(d0, fmax(d1, d2))
        lo = fmin(d0, fmin(d1, d2))
        res = hi - lo
    return x, y, res, iters, res <= tol
