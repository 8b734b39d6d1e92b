import math

import numpy as np
import pytest

from anning.errors import CollinearSites, NonStrictNorm
from anning.fields import NormPlane, euclidean_plane
from anning.norms import l1, lp
from anning.surfaces import hexagonal_torus, square_torus
from anning.voronoi import WeightedSite, triple_points
from oracles import lp_dist, lp_dist_grid, triple_points_scan


def sites(*triples):
    return [WeightedSite((x, y), w) for x, y, w in triples]


def test_circumcenter(euclid):
    tp = triple_points(euclid, sites((0, 0, 0), (1, 0, 0), (0, 1, 0)))
    assert len(tp.points) == 1
    assert tp.points[0] == pytest.approx((0.5, 0.5), abs=1e-9)
    assert tp.residuals[0] <= 1e-9


def test_weighted_diagonal_golden(euclid):
    """Golden from the dense-scan + diagonal-bisection oracle: exactly one
    point at x = y = 2.900471551271301 in the oracle window [-10, 10]^2."""
    tp = triple_points(euclid, sites((0, 0, 0), (4, 0, 1), (0, 4, 1)))
    assert len(tp.points) == 1
    assert tp.points[0][0] == pytest.approx(2.900471551271301, abs=1e-9)
    assert tp.points[0][1] == pytest.approx(2.900471551271301, abs=1e-9)


def test_degenerate_ray_roots(euclid):
    """Boundary-weight diagrams of the 3-4-5 triangle: roots on degenerate rays."""
    cases = {
        (-3.0, -2.0): (-3.0, 0.0),
        (-1.0, -4.0): (0.0, -4.0),
        (-3.0, -4.0): (0.0, 0.0),
        (3.0, -2.0): (3.0, 0.0),
        (-1.0, 4.0): (0.0, 4.0),
    }
    for (w2, w3), expected in cases.items():
        tp = triple_points(euclid, sites((0, 0, 0), (3, 0, w2), (0, 4, w3)))
        assert len(tp.points) == 1, (w2, w3, tp.points)
        assert tp.points[0] == pytest.approx(expected, abs=1e-9)
        assert tp.residuals[0] <= 1e-9


def test_degenerate_empty_cell(euclid):
    # site 2's weight makes its own weighted distance beat site 1 at s1
    tp = triple_points(euclid, sites((0, 0, 0), (3, 0, -4.0), (0, 4, 0)))
    assert tp.points == []


def test_collinear_rejected(euclid):
    with pytest.raises(CollinearSites):
        triple_points(euclid, sites((0, 0, 0), (1, 0, 0), (2, 0, 0)))


def test_non_strict_rejected():
    with pytest.raises(NonStrictNorm):
        triple_points(NormPlane(l1()), sites((0, 0, 0), (1, 0, 0), (0, 1, 0)))


def test_coincident_sites_rejected(euclid):
    with pytest.raises(ValueError):
        triple_points(euclid, sites((0, 0, 0), (0, 0, 1), (0, 1, 0)))


def test_lp_instance_matches_scan_oracle():
    power = 3.0
    field = NormPlane(lp(power))
    pts = [(0.0, 0.0), (2.0, 0.3), (0.4, 1.8)]
    weights = [0.1, -0.2, 0.3]
    tp = triple_points(field, [WeightedSite(p, w) for p, w in zip(pts, weights)])
    max_pair = max(
        field.dist(pts[i], pts[j]) for i in range(3) for j in range(i + 1, 3)
    )
    reach = 4.0 * (max_pair + 0.3)
    cx = sum(p[0] for p in pts) / 3.0
    cy = sum(p[1] for p in pts) / 3.0
    oracle = triple_points_scan(
        lambda gx, gy, s: lp_dist_grid(gx, gy, s, power),
        lambda p, s: lp_dist(p, s, power),
        pts,
        weights,
        (cx - reach, cy - reach, cx + reach, cy + reach),
    )
    assert len(oracle) == len(tp.points)
    for op in oracle:
        assert any(math.hypot(op[0] - q[0], op[1] - q[1]) < 1e-6 for q in tp.points)


def test_two_point_instance():
    """Frozen instance with two roots, verified against the scan oracle."""
    field = NormPlane(lp(2.0491458001256544))
    pts = [
        (2.3086767474029113, -0.15508777300322985),
        (1.8276594618362312, -2.6005155313550787),
        (0.5688788194815446, 2.1918717256494373),
    ]
    weights = [0.8218260704999081, -1.1066404585346512, 0.0486292476749373]
    tp = triple_points(field, [WeightedSite(p, w) for p, w in zip(pts, weights)])
    assert len(tp.points) == 2
    assert tp.points[0] == pytest.approx((1.3236748343794906, 0.4271182321906289), abs=1e-6)
    assert tp.points[1] == pytest.approx((7.75386976101182, 3.5212674386870404), abs=1e-6)


def test_results_sorted_and_capped(rng):
    for _ in range(40):
        field = NormPlane(lp(float(rng.uniform(1.2, 8.0))))
        while True:
            pts = rng.uniform(-3, 3, size=(3, 2))
            a = pts[1] - pts[0]
            b = pts[2] - pts[0]
            if abs(a[0] * b[1] - a[1] * b[0]) > 0.5:
                break
        min_pair = min(
            field.dist(pts[i], pts[j]) for i in range(3) for j in range(i + 1, 3)
        )
        w = rng.uniform(-0.45, 0.45, size=3) * min_pair
        tp = triple_points(field, [WeightedSite(tuple(p), float(v)) for p, v in zip(pts, w)])
        assert len(tp.points) <= 2
        assert tp.points == sorted(tp.points)
        assert all(r <= 1e-9 for r in tp.residuals)


def test_k36_hexagonal_torus():
    """Center plus the two vertex classes are equidistant from six points."""
    hx = hexagonal_torus(1.0)
    torus = hx["torus"]
    tp = triple_points(
        torus,
        [WeightedSite(hx["center"]), WeightedSite(hx["vclass1"]), WeightedSite(hx["vclass2"])],
    )
    assert len(tp.points) == 6
    assert max(tp.residuals) < 1e-9
    # all six sit at the same distance from all three marked points
    for p in tp.points:
        for key in ("center", "vclass1", "vclass2"):
            assert torus.dist(p, hx[key]) == pytest.approx(
                1.0 / math.sqrt(3.0), abs=1e-9
            )


def test_k36_scales_with_circumradius():
    hx = hexagonal_torus(2.5)
    tp = triple_points(
        hx["torus"],
        [WeightedSite(hx["center"]), WeightedSite(hx["vclass1"]), WeightedSite(hx["vclass2"])],
    )
    assert len(tp.points) == 6
    for p in tp.points:
        assert hx["torus"].dist(p, hx["center"]) == pytest.approx(
            2.5 / math.sqrt(3.0), abs=1e-9
        )


def test_square_torus_symmetric_triple():
    torus = square_torus(1.0)
    tp = triple_points(
        torus,
        [WeightedSite((0.0, 0.0)), WeightedSite((0.5, 0.0)), WeightedSite((0.0, 0.5))],
    )
    assert 1 <= len(tp.points) <= 6
    assert max(tp.residuals) < 1e-9


def test_square_torus_four_point_instance():
    """Frozen random instance with four genuine triple points (cap is 6),
    two of them only 0.005 apart; verified against the scan oracle at high
    resolution.  Guards the dedup radius and torus seeding."""
    torus = square_torus(1.0)
    pts = [
        (0.22948012640141724, 0.06234436049109626),
        (0.5415686409685118, 0.44220111583194066),
        (0.025108339322997386, 0.15591910712277546),
    ]
    weights = [0.05646911785716161, -0.0494139791869993, -0.017083633646075472]
    tp = triple_points(torus, [WeightedSite(p, w) for p, w in zip(pts, weights)])
    expected = [
        (0.09068195565192762, 0.6820523265284978),
        (0.285218309100694, 0.2621147505955602),
        (0.6066086254508236, 0.9458501354240695),
        (0.6070474113980582, 0.9405316647459504),
    ]
    assert len(tp.points) == 4
    for e in expected:
        assert any(torus.dist(e, q) < 1e-6 for q in tp.points)
    assert max(tp.residuals) < 1e-12


def test_torus_sites_reduced_mod_lattice():
    """Site coordinates outside the fundamental domain behave identically."""
    torus = square_torus(1.0)
    a = triple_points(
        torus,
        [WeightedSite((0.1, 0.1)), WeightedSite((0.6, 0.2)), WeightedSite((0.3, 0.7))],
    )
    b = triple_points(
        torus,
        [WeightedSite((1.1, 0.1)), WeightedSite((0.6, 1.2)), WeightedSite((-0.7, 0.7))],
    )
    assert len(a.points) == len(b.points)
    for p, q in zip(a.points, b.points):
        assert torus.dist(p, q) < 1e-8


def test_solver_stats_populated(euclid):
    tp = triple_points(euclid, sites((0, 0, 0), (1, 0, 0), (0, 1, 0)))
    assert tp.solver_stats["seeds"] > 0
    assert tp.solver_stats["newton_iterations"] > 0


# ---------------------------------------------------------------------------
# arc-body norm planes


def test_arcbody_constructed_point_is_triple_point():
    """The 4th point of a constructed integer-distance set is recovered as the
    triple point of the (p1, p2, p3) diagram with its integer difference
    weights; ties the constructions module to the solver end to end."""
    from anning.constructions import norm_for_integer_distances
    from anning.suites import seeded_general_position_points

    out = norm_for_integer_distances(seeded_general_position_points(4, 42))
    field = NormPlane(out["norm"])
    sp = out["scaled_points"]
    d = [field.dist(sp[3], sp[i]) for i in range(3)]
    w2 = round(d[0] - d[1])
    w3 = round(d[0] - d[2])
    tp = triple_points(
        field,
        [
            WeightedSite(sp[0], 0.0),
            WeightedSite(sp[1], float(w2)),
            WeightedSite(sp[2], float(w3)),
        ],
    )
    assert any(
        math.hypot(p[0] - sp[3][0], p[1] - sp[3][1]) < 1e-6 for p in tp.points
    )


def test_arcbody_degenerate_vertex_case():
    """Boundary integer weights on an arc-body norm: the apex site itself is
    the unique triple point (degenerate-ray branch on a non-Euclidean norm)."""
    from anning.constructions import norm_for_integer_distances
    from anning.suites import seeded_general_position_points

    out = norm_for_integer_distances(seeded_general_position_points(4, 42))
    field = NormPlane(out["norm"])
    sp = out["scaled_points"]
    t = out["target_distances"]
    tp = triple_points(
        field,
        [
            WeightedSite(sp[0], 0.0),
            WeightedSite(sp[1], -float(t[0, 1])),
            WeightedSite(sp[2], -float(t[0, 2])),
        ],
    )
    assert len(tp.points) == 1
    assert tp.points[0] == pytest.approx(sp[0], abs=1e-9)


def test_arcbody_unweighted_matches_scan_oracle():
    from anning.constructions import norm_for_integer_distances
    from anning.suites import _scan_equidistant, seeded_general_position_points

    out = norm_for_integer_distances(seeded_general_position_points(4, 42))
    field = NormPlane(out["norm"])
    sp = out["scaled_points"][:3]
    tp = triple_points(field, [WeightedSite(p) for p in sp])
    reach = 4.0 * max(
        field.dist(sp[i], sp[j]) for i in range(3) for j in range(i + 1, 3)
    )
    cx = sum(p[0] for p in sp) / 3.0
    cy = sum(p[1] for p in sp) / 3.0
    oracle = _scan_equidistant(
        field, sp, [0.0, 0.0, 0.0], (cx - reach, cy - reach, cx + reach, cy + reach)
    )
    assert len(oracle) == len(tp.points) == 1
    # geometry spans hundreds of units; 1e-6 relative agreement
    assert math.hypot(oracle[0][0] - tp.points[0][0], oracle[0][1] - tp.points[0][1]) < 1e-4


# ---------------------------------------------------------------------------
# infinite cone


def test_cone_triple_point_matches_oracle():
    """Frozen cone instance with one equidistant point; also guards the
    scalar cone-distance clamp for nearly identical points (was nan)."""
    from anning.surfaces import InfiniteCone, cone_distance
    from anning.suites import _scan_equidistant

    cone = InfiniteCone()
    assert cone.dist((2.6241481450465, -0.52937675), (2.6241481452591, -0.52937675)) >= 0.0
    cone_sites = [
        (0.7141233550829632, -0.7895683520441162),
        (2.5031864956368597, 0.24648576953324906),
        (0.7353215530928259, -0.20061932677255455),
    ]
    tp = triple_points(cone, [WeightedSite(s) for s in cone_sites])
    assert len(tp.points) == 1
    assert tp.points[0] == pytest.approx((2.6241481452591238, -0.5293767503552828), abs=1e-6)
    for s in cone_sites:
        assert cone_distance(tp.points[0], s) == pytest.approx(
            cone_distance(tp.points[0], cone_sites[0]), abs=1e-9
        )


def test_cone_no_equidistant_point():
    """Spread-out cone sites: no common point, solver and oracle agree."""
    from anning.surfaces import InfiniteCone

    cone = InfiniteCone()
    tp = triple_points(
        cone,
        [WeightedSite((1.0, 0.0)), WeightedSite((2.0, 1.5)), WeightedSite((1.5, -2.0))],
    )
    assert tp.points == []
