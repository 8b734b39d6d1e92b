"""Generators for integer-distance point sets and the constructive norm.

The rational-circle sets live entirely in exact big-integer fractions; the
constructive norm bends a unit circle outward through per-pair direction
vectors so that every pairwise distance of a slope-distinct point set lands
exactly on an integer.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    ConstructionFailed,
    DuplicatePoint,
    NotPythagorean,
    SlopeCollision,
)
from .norms import Arc, ArcBody, NormSpec, distance, is_strictly_convex

SLOPE_ANGLE_TOL = 1e-9
SCALE_CAP = 1e12
TARGET_DISTANCE_TOL = 1e-6


@dataclass(frozen=True)
class PythagoreanTriple:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) <= 0:
            raise NotPythagorean(f"side lengths must be positive: {self}")
        if self.a * self.a + self.b * self.b != self.c * self.c:
            raise NotPythagorean(f"{self.a}^2 + {self.b}^2 != {self.c}^2")


@dataclass(frozen=True)
class RationalPointSet:
    """Points with exact rational coordinates and rational pairwise distances."""

    points: Tuple[Tuple[Fraction, Fraction], ...]
    scale: int

    def distance_matrix(self) -> List[List[Fraction]]:
        n = len(self.points)
        m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                m[i][j] = m[j][i] = _exact_distance(self.points[i], self.points[j])
        return m

    def scaled_points(self) -> List[Tuple[Fraction, Fraction]]:
        return [(self.scale * x, self.scale * y) for x, y in self.points]


def _exact_distance(p, q) -> Fraction:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    sq = dx * dx + dy * dy
    num = math.isqrt(sq.numerator)
    den = math.isqrt(sq.denominator)
    if num * num != sq.numerator or den * den != sq.denominator:
        raise ArithmeticError(f"squared distance {sq} is not a rational square")
    return Fraction(num, den)


def pythagorean_circle_set(
    t: PythagoreanTriple, n: int, include_center: bool = False
) -> RationalPointSet:
    """Unit-circle points obtained by repeated rotation by twice the triangle angle.

    The rotation is multiplication by q^2 where q = a/c + i b/c; every power
    stays on the unit circle with rational coordinates, so all chords are
    exact rationals.  `scale` is the least common multiple of the chord
    denominators (and of the radius denominators when the center is kept),
    so the scaled set has integer pairwise distances.
    """
    if n < 1:
        raise ValueError(f"need n >= 1 points, got {n}")
    q2 = (
        Fraction(t.a * t.a - t.b * t.b, t.c * t.c),
        Fraction(2 * t.a * t.b, t.c * t.c),
    )
    pts = [(Fraction(1), Fraction(0))]
    for _ in range(n - 1):
        x, y = pts[-1]
        pts.append((x * q2[0] - y * q2[1], x * q2[1] + y * q2[0]))
    if include_center:
        pts.append((Fraction(0), Fraction(0)))
    denominators = [1]
    for p, r in combinations(pts, 2):
        denominators.append(_exact_distance(p, r).denominator)
    scale = math.lcm(*denominators)
    return RationalPointSet(tuple(pts), scale)


def grid_set(n: int) -> List[Tuple[int, int]]:
    """The n-by-n integer grid, whose L1 and Linf distances are all integers."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return [(i, j) for i in range(n) for j in range(n)]


def slope_distinctness_check(points: Sequence) -> Optional[tuple]:
    """None when all connecting lines have distinct slopes, else the offending pairs.

    Slopes are compared as direction angles modulo pi; angles closer than
    1e-9 count as equal.  The offending value is ((i, j), (k, l)) with point
    indices of the two parallel connecting lines.
    """
    n = len(points)
    if n < 2:
        raise ValueError("need at least two points")
    for i in range(n):
        for j in range(i + 1, n):
            if (
                math.hypot(
                    float(points[i][0]) - float(points[j][0]),
                    float(points[i][1]) - float(points[j][1]),
                )
                < 1e-12
            ):
                raise DuplicatePoint(f"points {i} and {j} coincide")
    angles = []
    for i, j in combinations(range(n), 2):
        dx = float(points[j][0]) - float(points[i][0])
        dy = float(points[j][1]) - float(points[i][1])
        angles.append((math.atan2(dy, dx) % math.pi, (i, j)))
    angles.sort()
    for (a1, pair1), (a2, pair2) in zip(angles, angles[1:]):
        if a2 - a1 < SLOPE_ANGLE_TOL:
            return (pair1, pair2)
    # wraparound: angles near 0 and near pi are the same slope class
    if len(angles) >= 2:
        a_first, pair_first = angles[0]
        a_last, pair_last = angles[-1]
        if (a_first + math.pi) - a_last < SLOPE_ANGLE_TOL:
            return (pair_last, pair_first)
    return None


def _direction_vectors(points) -> List[Tuple[float, Tuple[int, int]]]:
    """Euclidean-normalized pair directions as (angle in [0, 2pi), pair), both signs."""
    out = []
    for i, j in combinations(range(len(points)), 2):
        dx = float(points[j][0]) - float(points[i][0])
        dy = float(points[j][1]) - float(points[i][1])
        theta = math.atan2(dy, dx) % (2.0 * math.pi)
        out.append((theta, (i, j)))
        out.append(((theta + math.pi) % (2.0 * math.pi), (i, j)))
    out.sort()
    return out


def _unit_circle_margin(angles: Sequence[float]) -> float:
    """Minimum relative sag over consecutive unit-vector triples."""
    n = len(angles)
    worst = math.inf
    for k in range(n):
        a = angles[(k - 1) % n]
        b = angles[k]
        c = angles[(k + 1) % n]
        ax, ay = math.cos(a), math.sin(a)
        bx, by = math.cos(b), math.sin(b)
        cx, cy = math.cos(c), math.sin(c)
        chord = math.hypot(cx - ax, cy - ay)
        sag = -((cx - ax) * (by - ay) - (cy - ay) * (bx - ax)) / chord
        worst = min(worst, sag / chord)
    return worst


def _arc_through(a: Tuple[float, float], b: Tuple[float, float], radius: float) -> Arc:
    """CCW arc from a to b on a circle of the given radius, bulging outward."""
    mx = 0.5 * (a[0] + b[0])
    my = 0.5 * (a[1] + b[1])
    half = 0.5 * math.hypot(b[0] - a[0], b[1] - a[1])
    if radius <= half:
        raise ConstructionFailed(f"arc radius {radius} below half-chord {half}")
    # normal to the chord pointing away from the origin
    nx = -(b[1] - a[1])
    ny = b[0] - a[0]
    nlen = math.hypot(nx, ny)
    nx /= nlen
    ny /= nlen
    if nx * mx + ny * my < 0.0:
        nx, ny = -nx, -ny
    q = math.sqrt(radius * radius - half * half)
    cx = mx - q * nx
    cy = my - q * ny
    a0 = math.atan2(a[1] - cy, a[0] - cx)
    a1 = math.atan2(b[1] - cy, b[0] - cx)
    while a1 <= a0:
        a1 += 2.0 * math.pi
    return Arc(cx, cy, radius, a0, a1)


def norm_for_integer_distances(points: Sequence) -> dict:
    """Build a strictly convex norm assigning integer distances to all pairs.

    Follows the constructive recipe: collect the +-pair directions, find an
    expansion budget epsilon from the sampled convexity margin, scale the
    point set until every distance exceeds 1/epsilon, round distances down,
    stretch each direction vector by the same factor its distance was
    shrunk, and join the stretched vectors in cyclic order with large
    circular arcs.  The result is verified before it is returned.
    """
    if len(points) < 3:
        raise ValueError("need at least three points")
    offending = slope_distinctness_check(points)
    if offending is not None:
        raise SlopeCollision(f"parallel connecting lines: {offending[0]} and {offending[1]}")

    dirs = _direction_vectors(points)
    angles = [theta for theta, _ in dirs]
    margin = _unit_circle_margin(angles)
    if margin <= 0.0:
        raise SlopeCollision("direction vectors are not in strictly convex position")
    eps = margin / 4.0

    pts = [(float(p[0]), float(p[1])) for p in points]
    dmin = min(
        math.hypot(pts[j][0] - pts[i][0], pts[j][1] - pts[i][1])
        for i, j in combinations(range(len(pts)), 2)
    )
    scale = max(1.0, (1.0 + 1e-9) / (eps * dmin))
    if scale > SCALE_CAP:
        raise ConstructionFailed(
            f"needed scale {scale:.3e} exceeds the cap {SCALE_CAP:.0e} "
            "(directions too close to parallel)"
        )
    scaled = [(scale * x, scale * y) for x, y in pts]

    n = len(pts)
    targets = np.zeros((n, n), dtype=int)
    stretch = {}
    for i, j in combinations(range(n), 2):
        d = math.hypot(scaled[j][0] - scaled[i][0], scaled[j][1] - scaled[i][1])
        m = math.floor(d)
        targets[i, j] = targets[j, i] = m
        stretch[(i, j)] = d / m

    vectors = []
    for theta, pair in dirs:
        f = stretch[pair]
        vectors.append((f * math.cos(theta), f * math.sin(theta)))

    max_len = max(math.hypot(x, y) for x, y in vectors)
    radius = 100.0 * max_len
    body = None
    for _ in range(40):
        arcs = [
            _arc_through(vectors[k], vectors[(k + 1) % len(vectors)], radius)
            for k in range(len(vectors))
        ]
        body = ArcBody(tuple(arcs))
        spec = NormSpec("arcs", body=body)
        if is_strictly_convex(spec) > 0.0:
            break
        radius *= 2.0
    else:
        raise ConstructionFailed("no arc radius produced a strictly convex body")

    spec = NormSpec("arcs", body=body)
    worst = 0.0
    for i, j in combinations(range(n), 2):
        got = distance(spec, scaled[i], scaled[j])
        worst = max(worst, abs(got - targets[i, j]))
    if worst > TARGET_DISTANCE_TOL:
        raise ConstructionFailed(
            f"constructed distances deviate from integer targets by {worst:.3e}"
        )
    return {
        "body": body,
        "norm": spec,
        "scaled_points": scaled,
        "target_distances": targets,
        "scale": scale,
        "epsilon": eps,
    }
