"""Convex distance functions from centrally symmetric unit balls.

A norm is described by its unit ball: an Lp ball (1 < p <= 64), the square
balls of L1/Linf, or a piecewise-circular-arc boundary (ArcBody).  The value
of the norm in a direction is the Euclidean length divided by the boundary
radius in that direction, which equals the smallest scale factor putting the
vector inside the scaled ball.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .errors import InvalidSpec

TWO_PI = 2.0 * math.pi

MAX_LP_EXPONENT = 64.0

# sampled strict-convexity test: direction count and acceptance tolerance
STRICTNESS_SAMPLES = 4096
STRICTNESS_TOL = 1e-9

Point = Tuple[float, float]


def as_xy(p) -> Tuple[float, float]:
    """Coerce a point-like (tuple, list, ndarray) to a float (x, y) pair."""
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidSpec(f"non-finite point {p!r}")
    return x, y


@dataclass(frozen=True)
class Arc:
    """Circular-arc piece of an ArcBody boundary.

    (cx, cy) is the circle center, r its radius; a0 -> a1 is the traversed
    span in circle angles, counterclockwise with a1 > a0.
    """

    cx: float
    cy: float
    r: float
    a0: float
    a1: float

    def point_at(self, a: float) -> Tuple[float, float]:
        return (self.cx + self.r * math.cos(a), self.cy + self.r * math.sin(a))

    @property
    def start(self) -> Tuple[float, float]:
        return self.point_at(self.a0)

    @property
    def end(self) -> Tuple[float, float]:
        return self.point_at(self.a1)


def _origin_angle(p: Tuple[float, float]) -> float:
    return math.atan2(p[1], p[0]) % TWO_PI


@dataclass(frozen=True)
class ArcBody:
    """Centrally symmetric convex body bounded by a closed chain of arcs.

    The chain is ordered counterclockwise around the origin, endpoints
    connected, closing up after one full turn.  Every arc circle must
    strictly contain the origin (true for the large-radius arcs produced by
    the norm construction), which makes the radial function single-valued.
    """

    arcs: Tuple[Arc, ...]

    def __post_init__(self):
        if len(self.arcs) < 2:
            raise InvalidSpec("ArcBody needs at least two arcs")
        scale = max(max(abs(a.cx), abs(a.cy)) + a.r for a in self.arcs)
        tol = 1e-9 * max(scale, 1.0)
        for a in self.arcs:
            if not (a.r > 0.0) or not all(
                math.isfinite(v) for v in (a.cx, a.cy, a.r, a.a0, a.a1)
            ):
                raise InvalidSpec(f"bad arc {a}")
            if not a.a1 > a.a0:
                raise InvalidSpec(f"arc span must be increasing: {a}")
            if math.hypot(a.cx, a.cy) >= a.r - tol:
                raise InvalidSpec("arc circle does not strictly contain the origin")
        # endpoint chain, closing up
        for a, b in zip(self.arcs, self.arcs[1:] + self.arcs[:1]):
            ex, ey = a.end
            sx, sy = b.start
            if math.hypot(ex - sx, ey - sy) > tol:
                raise InvalidSpec("arc chain is not endpoint-connected")
        # winds exactly once, counterclockwise, with single-valued radius
        spans = []
        total = 0.0
        for a in self.arcs:
            t0 = _origin_angle(a.start)
            t1 = _origin_angle(a.end)
            span = (t1 - t0) % TWO_PI
            if span <= 0.0 or span >= math.pi:
                raise InvalidSpec("arc spans more than a half turn around the origin")
            spans.append((t0, span))
            total += span
        if abs(total - TWO_PI) > 1e-6:
            raise InvalidSpec("arc chain does not wind exactly once around the origin")
        # central symmetry: every arc has an antipodal partner
        for a in self.arcs:
            if not any(
                abs(a.r - b.r) <= tol
                and math.hypot(a.cx + b.cx, a.cy + b.cy) <= tol
                and math.hypot(a.start[0] + b.start[0], a.start[1] + b.start[1]) <= tol
                for b in self.arcs
            ):
                raise InvalidSpec("arc chain is not centrally symmetric")

    def packed(self) -> np.ndarray:
        """Kernel parameter vector: [m, (cx, cy, r, phi0, phi1) per arc]."""
        rows = []
        for a in self.arcs:
            t0 = _origin_angle(a.start)
            t1 = _origin_angle(a.end)
            rows.append((a.cx, a.cy, a.r, t0, t1))
        rows.sort(key=lambda r: r[3])
        out = np.empty(1 + 5 * len(rows))
        out[0] = len(rows)
        for i, r in enumerate(rows):
            out[1 + 5 * i : 6 + 5 * i] = r
        return out


@dataclass(frozen=True)
class NormSpec:
    """Unit-ball description: one of lp / l1 / linf / arcs."""

    kind: str
    p: Optional[float] = None
    body: Optional[ArcBody] = None

    def __post_init__(self):
        if self.kind == "lp":
            if self.p is None or not (1.0 < self.p <= MAX_LP_EXPONENT):
                raise InvalidSpec(
                    f"Lp exponent must satisfy 1 < p <= {MAX_LP_EXPONENT}, got {self.p}"
                )
        elif self.kind == "arcs":
            if self.body is None:
                raise InvalidSpec("arcs norm needs a body")
        elif self.kind not in ("l1", "linf"):
            raise InvalidSpec(f"unknown norm kind {self.kind!r}")

    @property
    def strict(self) -> bool:
        return self.kind in ("lp", "arcs")

    def kernel_args(self):
        return _kernel_args(self)


@lru_cache(maxsize=256)
def _kernel_args(spec: NormSpec):
    if spec.kind == "lp":
        return _kernels.KIND_LP, np.array([spec.p])
    if spec.kind == "l1":
        return _kernels.KIND_LP, np.array([1.0])
    if spec.kind == "linf":
        return _kernels.KIND_LINF, np.empty(0)
    return _kernels.KIND_ARCS, spec.body.packed()


def lp(p: float) -> NormSpec:
    return NormSpec("lp", p=float(p))


def l1() -> NormSpec:
    return NormSpec("l1")


def linf() -> NormSpec:
    return NormSpec("linf")


def arc_body(arcs: Sequence[Arc]) -> NormSpec:
    return NormSpec("arcs", body=ArcBody(tuple(arcs)))


def euclidean() -> NormSpec:
    return lp(2.0)


def norm(spec: NormSpec, v) -> float:
    """Smallest s >= 0 such that v lies in s times the unit ball."""
    x, y = as_xy(v)
    if x == 0.0 and y == 0.0:
        return 0.0
    kind, params = spec.kernel_args()
    return _kernels.dist_one(kind, params, 0.0, 0.0, x, y)


def distance(spec: NormSpec, p, q) -> float:
    """norm of q - p; a metric because the ball is centrally symmetric."""
    px, py = as_xy(p)
    qx, qy = as_xy(q)
    kind, params = spec.kernel_args()
    return _kernels.dist_one(kind, params, px, py, qx, qy)


def radial(spec: NormSpec, theta: float) -> float:
    """Euclidean distance from the origin to the unit-ball boundary at angle theta."""
    kind, params = spec.kernel_args()
    return _kernels.radial_one(kind, params, float(theta))


def boundary_points(spec: NormSpec, n: int) -> np.ndarray:
    """n boundary points of the unit ball at evenly spaced angles, shape (n, 2)."""
    thetas = np.arange(n) * (TWO_PI / n)
    ux = np.cos(thetas)
    uy = np.sin(thetas)
    kind, params = spec.kernel_args()
    rho = 1.0 / _kernels.dist_many(kind, params, ux, uy, 0.0, 0.0)
    return np.column_stack((rho * ux, rho * uy))


def is_strictly_convex(spec: NormSpec, samples: int = STRICTNESS_SAMPLES) -> float:
    """Sampled strict-convexity margin of the unit ball.

    Minimum, over consecutive boundary-point triples at spacing 2pi/samples,
    of the perpendicular sag of the middle point outside the chord of its
    neighbors, divided by the chord length.  Positive margin means strictly
    convex at the sampling resolution; L1/Linf report exactly 0.
    """
    if spec.kind in ("l1", "linf"):
        return 0.0
    pts = boundary_points(spec, samples)
    a = np.roll(pts, 1, axis=0)
    c = np.roll(pts, -1, axis=0)
    chord = c - a
    rel = pts - a
    cross = chord[:, 0] * rel[:, 1] - chord[:, 1] * rel[:, 0]
    chord_len = np.hypot(chord[:, 0], chord[:, 1])
    sag = -cross / chord_len
    return float(np.min(sag / chord_len))


# ---------------------------------------------------------------------------
# JSON


def norm_to_json(spec: NormSpec) -> dict:
    if spec.kind == "lp":
        return {"type": "lp", "p": spec.p}
    if spec.kind == "l1":
        return {"type": "l1"}
    if spec.kind == "linf":
        return {"type": "linf"}
    return {
        "type": "arcs",
        "arcs": [
            {"cx": a.cx, "cy": a.cy, "r": a.r, "a0": a.a0, "a1": a.a1}
            for a in spec.body.arcs
        ],
    }


def norm_from_json(obj: dict) -> NormSpec:
    try:
        kind = obj["type"]
    except (TypeError, KeyError):
        raise InvalidSpec(f"norm spec needs a 'type' field: {obj!r}")
    if kind == "lp":
        return lp(obj["p"])
    if kind == "l1":
        return l1()
    if kind == "linf":
        return linf()
    if kind == "arcs":
        arcs = [
            Arc(float(a["cx"]), float(a["cy"]), float(a["r"]), float(a["a0"]), float(a["a1"]))
            for a in obj["arcs"]
        ]
        return arc_body(arcs)
    raise InvalidSpec(f"unknown norm type {kind!r}")
