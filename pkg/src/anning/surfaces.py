"""Flat tori and the infinite-angle cone as concrete distance fields.

Both are geodesic metrics: the torus inherits Euclidean distance minimized
over lattice translates, the cone uses unwrapped polar coordinates (r, theta)
with the sum-of-radii rule once the angular gap reaches pi.
"""

import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from . import _kernels
from .errors import DegenerateLattice, NegativeGenus, NonPositiveRadius

# lattice-translate window for distance minimization; reduced points need at
# most one cell of slack, so +-2 is safe margin (checked against +-5 in tests)
TRANSLATE_WINDOW = 2


@dataclass(frozen=True)
class FlatTorus:
    """Flat torus R^2 / Lambda with lattice Lambda spanned by u and v.

    Euler genus is 2 (orientable genus-1 surface), which caps the number of
    points equidistant from three sites at 2*2 + 2 = 6.
    """

    u: Tuple[float, float]
    v: Tuple[float, float]
    euler_genus: int = field(default=2, init=False)

    def __post_init__(self):
        det = self.u[0] * self.v[1] - self.u[1] * self.v[0]
        if abs(det) <= 1e-12:
            raise DegenerateLattice(f"basis {self.u}, {self.v} is numerically dependent")

    @property
    def _basis_inverse(self):
        det = self.u[0] * self.v[1] - self.u[1] * self.v[0]
        return (
            self.v[1] / det,
            -self.v[0] / det,
            -self.u[1] / det,
            self.u[0] / det,
        )

    def kernel_args(self):
        b00, b01, b10, b11 = self._basis_inverse
        params = np.array(
            [self.u[0], self.u[1], self.v[0], self.v[1], b00, b01, b10, b11]
        )
        return _kernels.KIND_TORUS, params

    def reduce(self, p) -> Tuple[float, float]:
        """Canonical representative with lattice coefficients in [0, 1)."""
        b00, b01, b10, b11 = self._basis_inverse
        a = b00 * p[0] + b01 * p[1]
        b = b10 * p[0] + b11 * p[1]
        a -= math.floor(a)
        b -= math.floor(b)
        return (
            a * self.u[0] + b * self.v[0],
            a * self.u[1] + b * self.v[1],
        )

    def dist(self, p, q) -> float:
        kind, params = self.kernel_args()
        return _kernels.dist_one(kind, params, p[0], p[1], q[0], q[1])

    def dist_many(self, px, py, q) -> np.ndarray:
        kind, params = self.kernel_args()
        return _kernels.dist_many(kind, params, px, py, q[0], q[1])


def torus_distance(t: FlatTorus, p, q) -> float:
    """Shortest Euclidean distance between p and q modulo the lattice."""
    return t.dist(p, q)


def square_torus(side: float = 1.0) -> FlatTorus:
    return FlatTorus((side, 0.0), (0.0, side))


def hexagonal_torus(circumradius: float):
    """Torus glued from a regular hexagon, with its three marked points.

    The lattice is spanned by two of the three opposite-edge gluing
    translations (perpendicular to the edges, length sqrt(3) * circumradius).
    The hexagon's six vertices fall into exactly two lattice orbits; the
    returned dict carries the center and one representative per orbit.
    """
    r = float(circumradius)
    if r <= 0.0:
        raise NonPositiveRadius(f"circumradius must be positive, got {r}")
    t_len = math.sqrt(3.0) * r
    u = (t_len * math.cos(math.pi / 6.0), t_len * math.sin(math.pi / 6.0))
    v = (0.0, t_len)
    torus = FlatTorus(u, v)
    return {
        "torus": torus,
        "center": (0.0, 0.0),
        "vclass1": (r, 0.0),
        "vclass2": (r * 0.5, r * math.sqrt(3.0) / 2.0),
    }


def hexagon_vertices(circumradius: float):
    """The six vertices of the glued hexagon, before identification."""
    return [
        (
            circumradius * math.cos(k * math.pi / 3.0),
            circumradius * math.sin(k * math.pi / 3.0),
        )
        for k in range(6)
    ]


@dataclass(frozen=True)
class InfiniteCone:
    """Locally Euclidean cone of infinite total angle with the apex removed.

    Points are (r, theta) with r > 0 and theta unwrapped (never reduced mod
    2*pi).  Once the angular gap reaches pi, every path must pass near the
    missing apex and the distance becomes r1 + r2.
    """

    def kernel_args(self):
        return _kernels.KIND_CONE, np.empty(0)

    def dist(self, p, q) -> float:
        return cone_distance(p, q)

    def dist_many(self, px, py, q) -> np.ndarray:
        kind, params = self.kernel_args()
        return _kernels.dist_many(kind, params, px, py, q[0], q[1])


def cone_distance(p, q) -> float:
    """Geodesic distance between cone points p = (r1, theta1), q = (r2, theta2)."""
    r1, t1 = float(p[0]), float(p[1])
    r2, t2 = float(q[0]), float(q[1])
    if r1 <= 0.0 or r2 <= 0.0:
        raise NonPositiveRadius(f"cone radii must be positive, got {r1}, {r2}")
    return _kernels.dist_one(_kernels.KIND_CONE, np.empty(0), r1, t1, r2, t2)


def cone_equilateral_set(k: int):
    """k points (1/2, i*pi) with all pairwise cone distances exactly 1."""
    if k < 2:
        raise ValueError(f"need at least two points, got {k}")
    return [(0.5, i * math.pi) for i in range(k)]


def max_equidistant_bound(euler_genus: int) -> int:
    """Cap 2g + 2 on points equidistant from three sites on a genus-g surface."""
    if euler_genus < 0:
        raise NegativeGenus(f"Euler genus must be nonnegative, got {euler_genus}")
    return 2 * euler_genus + 2
