"""Weighted Voronoi geometry over strictly convex distance functions.

Evaluates convex distance functions from unit-ball descriptions, solves for
triple-equidistant points of additively weighted diagrams on planes, flat
tori, and the infinite cone, and enumerates points at integer distance from
a triangle together with the counting bound that makes the enumeration
finite.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .enumeration import (
    EnumerationReport,
    TriangleSpec,
    candidate_bound,
    check_diameter_bound,
    enumerate_candidates,
    verify_integer_distances,
)
from .fields import DistanceField, NormPlane, euclidean_plane, field_from_json, field_to_json
from .norms import (
    Arc,
    ArcBody,
    NormSpec,
    arc_body,
    distance,
    euclidean,
    is_strictly_convex,
    l1,
    linf,
    lp,
    norm,
    norm_from_json,
    norm_to_json,
    radial,
)
from .surfaces import (
    FlatTorus,
    InfiniteCone,
    cone_distance,
    cone_equilateral_set,
    hexagonal_torus,
    max_equidistant_bound,
    square_torus,
    torus_distance,
)
from .voronoi import (
    Diagram,
    SiteClass,
    TriplePointSet,
    WeightedSite,
    cell_raster,
    classify_sites,
    owner,
    triple_points,
    weighted_distance,
)

__version__ = "0.1.0"
