"""Enumeration of points at integer distance from a triangle.

A point has integer distances to all three sites exactly when the pairwise
differences of those distances are integers (w2, w3) and the base distance
is itself an integer.  Sweeping the finitely many admissible integer
difference pairs and collecting the triple points of each weighted diagram
therefore finds every candidate; the sweep size times the per-diagram cap
of 2 is the counting bound.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from .errors import (
    CollinearSites,
    NonPositiveDistance,
    NonStrictNorm,
    NotIntegerDistanceSet,
)
from .fields import DistanceField, NormPlane, collinear_area_test
from .surfaces import FlatTorus
from .voronoi import SITE_SEPARATION, WeightedSite, triple_points

INTEGRALITY_TOL = 1e-6
DIFFERENCE_TOL = 1e-6


@dataclass(frozen=True)
class TriangleSpec:
    """Three pairwise distinct sites; non-collinear when planar."""

    s1: Tuple[float, float]
    s2: Tuple[float, float]
    s3: Tuple[float, float]
    field: DistanceField

    def __post_init__(self):
        pts = (self.s1, self.s2, self.s3)
        for i in range(3):
            for j in range(i + 1, 3):
                if self.field.dist(pts[i], pts[j]) <= SITE_SEPARATION:
                    raise ValueError(f"triangle corners {i} and {j} coincide")
        if isinstance(self.field, NormPlane) and collinear_area_test(*pts):
            raise CollinearSites(f"triangle corners {pts} are collinear")


@dataclass(frozen=True)
class Candidate:
    """One triple point of a swept diagram, with its distances to the corners."""

    point: Tuple[float, float]
    w2: int
    w3: int
    d: Tuple[float, float, float]


@dataclass
class EnumerationReport:
    candidates: List[Candidate]
    integer_points: List[Candidate]
    bound: int
    weight_pairs_swept: int
    diameter: float

    def to_json(self, triangle: TriangleSpec = None) -> dict:
        from .fields import field_to_json

        out = {
            "bound": self.bound,
            "weight_pairs_swept": self.weight_pairs_swept,
            "diameter": self.diameter,
            "candidates": [
                {
                    "w2": c.w2,
                    "w3": c.w3,
                    "x": c.point[0],
                    "y": c.point[1],
                    "d": list(c.d),
                }
                for c in self.candidates
            ],
            "integer_points": [
                {
                    "w2": c.w2,
                    "w3": c.w3,
                    "x": c.point[0],
                    "y": c.point[1],
                    "d": list(c.d),
                }
                for c in self.integer_points
            ],
        }
        if triangle is not None:
            out["triangle"] = {
                "s1": list(triangle.s1),
                "s2": list(triangle.s2),
                "s3": list(triangle.s3),
                "field": field_to_json(triangle.field),
            }
        return out


def candidate_bound(d12: float, d13: float) -> int:
    """Sweep size bound 2 * (2*floor(d12) + 1) * (2*floor(d13) + 1).

    Integer difference weights satisfy |w_i| <= d(s1, s_i) by the triangle
    inequality, and each weighted diagram contributes at most two points.
    """
    if not d12 > 0.0 or not d13 > 0.0:
        raise NonPositiveDistance(f"triangle side distances must be positive: {d12}, {d13}")
    return 2 * (2 * math.floor(d12) + 1) * (2 * math.floor(d13) + 1)


def enumerate_candidates(
    triangle: TriangleSpec,
    *,
    tol: float = INTEGRALITY_TOL,
    solver_tol: float = None,
) -> EnumerationReport:
    """Sweep integer weight pairs and collect triple points per diagram.

    Candidates are exactly the points whose distance differences to the
    triangle are the swept integers; `integer_points` additionally require
    the base distance d1 to be within `tol` of an integer (which forces the
    whole distance triple to be near-integer).
    """
    field = triangle.field
    if isinstance(field, NormPlane):
        if not field.strict:
            raise NonStrictNorm("enumeration needs a strictly convex norm")
        per_diagram_cap = 2
    elif isinstance(field, FlatTorus):
        # Euler genus 2 allows up to 2g + 2 = 6 points per weighted diagram
        per_diagram_cap = 2 * field.euler_genus + 2
    else:
        raise TypeError("enumeration runs on strict norm planes or flat tori")
    s1, s2, s3 = triangle.s1, triangle.s2, triangle.s3
    d12 = field.dist(s1, s2)
    d13 = field.dist(s1, s3)
    d23 = field.dist(s2, s3)
    bound = (per_diagram_cap * candidate_bound(d12, d13)) // 2

    solver_kwargs = {}
    if solver_tol is not None:
        solver_kwargs["tol"] = solver_tol
    candidates = []
    swept = 0
    for w2 in range(-math.floor(d12), math.floor(d12) + 1):
        for w3 in range(-math.floor(d13), math.floor(d13) + 1):
            swept += 1
            sites = [
                WeightedSite(s1, 0.0),
                WeightedSite(s2, float(w2)),
                WeightedSite(s3, float(w3)),
            ]
            found = triple_points(field, sites, **solver_kwargs)
            for p in found.points:
                d1 = field.dist(p, s1)
                d2 = field.dist(p, s2)
                d3 = field.dist(p, s3)
                if abs((d1 - d2) - w2) > DIFFERENCE_TOL or abs((d1 - d3) - w3) > DIFFERENCE_TOL:
                    raise RuntimeError(
                        f"solver point {p} violates the weight differences "
                        f"({w2}, {w3}): distances {(d1, d2, d3)}"
                    )
                candidates.append(Candidate(p, w2, w3, (d1, d2, d3)))

    candidates.sort(key=lambda c: (c.w2, c.w3, c.point[0], c.point[1]))
    if len(candidates) > bound:
        raise RuntimeError(
            f"enumeration produced {len(candidates)} candidates, above the bound {bound}"
        )
    integer_points = [
        c for c in candidates if abs(c.d[0] - round(c.d[0])) <= tol
    ]
    return EnumerationReport(
        candidates=candidates,
        integer_points=integer_points,
        bound=bound,
        weight_pairs_swept=swept,
        diameter=max(d12, d13, d23),
    )


def _is_exact(points) -> bool:
    return all(
        isinstance(p[0], (int, Fraction)) and isinstance(p[1], (int, Fraction))
        for p in points
    )


def _exact_euclidean(field) -> bool:
    return isinstance(field, NormPlane) and field.norm.kind == "lp" and field.norm.p == 2.0


def verify_integer_distances(field: DistanceField, points: Sequence, tol: float):
    """Check that all pairwise distances are within tol of positive integers.

    Euclidean inputs with exact rational coordinates are verified in exact
    arithmetic, so tol = 0 is meaningful for the scaled rational-circle sets.
    Returns {"ok": bool, "matrix": ndarray, "worst": float}.
    """
    n = len(points)
    if n < 2:
        raise ValueError("need at least two points")
    matrix = np.zeros((n, n))
    worst = 0.0
    ok = True
    exact = _exact_euclidean(field) and _is_exact(points)
    for i in range(n):
        for j in range(i + 1, n):
            if exact:
                dx = Fraction(points[i][0]) - Fraction(points[j][0])
                dy = Fraction(points[i][1]) - Fraction(points[j][1])
                sq = dx * dx + dy * dy
                root = _exact_integer_sqrt(sq)
                if root is not None and root >= 1:
                    d = float(root)
                    dev = 0.0
                else:
                    d = math.sqrt(float(sq))
                    dev = abs(d - max(1.0, round(d)))
            else:
                d = field.dist(points[i], points[j])
                dev = abs(d - max(1.0, round(d)))
            matrix[i, j] = matrix[j, i] = d
            worst = max(worst, dev)
            if dev > tol:
                ok = False
    return {"ok": ok, "matrix": matrix, "worst": worst}


def _exact_integer_sqrt(sq: Fraction):
    """Integer square root of an exact rational, or None if not a perfect square."""
    if sq.denominator != 1:
        return None
    root = math.isqrt(sq.numerator)
    return root if root * root == sq.numerator else None


def check_diameter_bound(field: DistanceField, points: Sequence):
    """Size-to-diameter ratio of an integer-distance set (for reporting).

    The linear size bound has a norm-dependent constant, so no hard
    assertion here; callers compare the ratio against their own cap.
    """
    if not isinstance(field, NormPlane) or not field.strict:
        raise TypeError("diameter check runs on strict norm planes")
    result = verify_integer_distances(field, points, INTEGRALITY_TOL)
    if not result["ok"]:
        raise NotIntegerDistanceSet(
            f"pairwise distances deviate from integers by up to {result['worst']}"
        )
    d = float(np.max(result["matrix"]))
    n = len(points)
    return {"n": n, "D": d, "ratio": n / max(d, 1.0)}
