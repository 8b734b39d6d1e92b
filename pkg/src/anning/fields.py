"""Distance fields: planar norms, flat tori, and the infinite cone.

A field exposes `dist`, vectorized `dist_many`, `kernel_args` for the
compiled kernels, and a chart-space bounding hint.  Torus and cone live in
`surfaces`; this module adds the norm-backed plane and the JSON codec for
all three.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import _kernels
from .errors import InvalidSpec
from .norms import NormSpec, norm_from_json, norm_to_json
from .surfaces import FlatTorus, InfiniteCone


@dataclass(frozen=True)
class NormPlane:
    """The plane R^2 under a convex distance function."""

    norm: NormSpec

    @property
    def strict(self) -> bool:
        return self.norm.strict

    def kernel_args(self):
        return self.norm.kernel_args()

    def dist(self, p, q) -> float:
        kind, params = self.kernel_args()
        return _kernels.dist_one(kind, params, p[0], p[1], q[0], q[1])

    def dist_many(self, px, py, q) -> np.ndarray:
        kind, params = self.kernel_args()
        return _kernels.dist_many(kind, params, px, py, q[0], q[1])


DistanceField = Union[NormPlane, FlatTorus, InfiniteCone]


def bounding_hint(field: DistanceField, points, radius: float = 0.0):
    """Chart rectangle (xmin, ymin, xmax, ymax) containing the geometry.

    For tori this is the bounding box of one fundamental domain; for the
    plane and cone it is the box of the points inflated by `radius`.
    """
    if isinstance(field, FlatTorus):
        xs = [0.0, field.u[0], field.v[0], field.u[0] + field.v[0]]
        ys = [0.0, field.u[1], field.v[1], field.u[1] + field.v[1]]
        return (min(xs), min(ys), max(xs), max(ys))
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    if isinstance(field, InfiniteCone):
        # x is the radial coordinate and must stay positive
        return (
            max(min(xs) - radius, 1e-9),
            min(ys) - radius,
            max(xs) + radius,
            max(ys) + radius,
        )
    return (min(xs) - radius, min(ys) - radius, max(xs) + radius, max(ys) + radius)


def field_to_json(field: DistanceField) -> dict:
    if isinstance(field, NormPlane):
        return {"type": "norm-plane", "norm": norm_to_json(field.norm)}
    if isinstance(field, FlatTorus):
        return {"type": "torus", "u": list(field.u), "v": list(field.v)}
    if isinstance(field, InfiniteCone):
        return {"type": "cone"}
    raise InvalidSpec(f"unknown field {field!r}")


def field_from_json(obj: dict) -> DistanceField:
    try:
        kind = obj["type"]
    except (TypeError, KeyError):
        raise InvalidSpec(f"field spec needs a 'type' field: {obj!r}")
    if kind == "norm-plane":
        return NormPlane(norm_from_json(obj["norm"]))
    if kind == "torus":
        u = obj["u"]
        v = obj["v"]
        return FlatTorus((float(u[0]), float(u[1])), (float(v[0]), float(v[1])))
    if kind == "cone":
        return InfiniteCone()
    raise InvalidSpec(f"unknown field type {kind!r}")


def euclidean_plane() -> NormPlane:
    from .norms import euclidean

    return NormPlane(euclidean())


def min_radial(spec: NormSpec, samples: int = 256) -> float:
    """Sampled minimum unit-ball radius; bounds the chart gradient of the norm."""
    from .norms import boundary_points

    pts = boundary_points(spec, samples)
    return float(np.min(np.hypot(pts[:, 0], pts[:, 1])))


def chart_gradient_bound(field: DistanceField, points) -> float:
    """Upper estimate of |grad dist| in chart coordinates over the region."""
    if isinstance(field, NormPlane):
        return 1.0 / min_radial(field.norm)
    if isinstance(field, FlatTorus):
        return 1.0
    # cone chart (r, theta): |d dist / d theta| <= max r in play
    rmax = max(p[0] for p in points)
    return max(1.0, rmax)


def collinear_area_test(p1, p2, p3) -> bool:
    """Scale-invariant collinearity test: area < 1e-9 * longest_side^2."""
    ax, ay = p2[0] - p1[0], p2[1] - p1[1]
    bx, by = p3[0] - p1[0], p3[1] - p1[1]
    cx, cy = p3[0] - p2[0], p3[1] - p2[1]
    area = 0.5 * abs(ax * by - ay * bx)
    longest_sq = max(ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy)
    return area < 1e-9 * longest_sq


def segment_point(p, q, t: float):
    """Point p + t * (q - p); the geodesic interpolant for planar norms."""
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
