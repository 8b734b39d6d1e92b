"""Domain error types shared across the package."""


class AnningError(ValueError):
    """Base class for all domain errors raised by this package."""


class InvalidSpec(AnningError):
    """A norm specification violates its invariants (bad Lp exponent, broken arc chain, ...)."""


class NonStrictNorm(AnningError):
    """Operation requires a strictly convex norm but got L1/Linf or a flat body."""


class CollinearSites(AnningError):
    """Three planar sites are (numerically) collinear; the triple solver refuses."""


class NotPythagorean(AnningError):
    """Integer triple with a**2 + b**2 != c**2."""


class SlopeCollision(AnningError):
    """Two connecting lines of the point set share a slope."""


class DuplicatePoint(AnningError):
    """Point set contains two coincident points."""


class ConstructionFailed(AnningError):
    """Norm construction could not certify its postconditions."""


class NonPositiveDistance(AnningError):
    """Distance argument that must be positive was not."""


class NotIntegerDistanceSet(AnningError):
    """Point set fails the pairwise integer-distance check."""


class DegenerateLattice(AnningError):
    """Torus basis vectors are (numerically) linearly dependent."""


class NonPositiveRadius(AnningError):
    """Cone point with r <= 0."""


class NegativeGenus(AnningError):
    """Euler genus must be nonnegative."""
