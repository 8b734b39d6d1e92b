"""Command-line surface: triple, enumerate, construct, verify, render.

Exit codes: 0 success, 1 usage or parse error, 2 domain error,
3 counting-bound assertion failure.
"""

import argparse
import json
import sys
from fractions import Fraction

from .constructions import (
    PythagoreanTriple,
    grid_set,
    norm_for_integer_distances,
    pythagorean_circle_set,
)
from .enumeration import TriangleSpec, enumerate_candidates
from .errors import AnningError
from .fields import bounding_hint, field_from_json
from .norms import norm_to_json
from .render import RenderSpec, render_svg, write_svg
from .suites import SUITES, run_suite
from .surfaces import cone_equilateral_set
from .voronoi import Diagram, WeightedSite, triple_points

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_BOUND = 3


def _round_floats(obj):
    """Clamp every float to 12 significant digits for stable output."""
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def emit_json(obj, path=None):
    text = json.dumps(_round_floats(obj), indent=2, sort_keys=True)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path}: {exc}")


class UsageError(Exception):
    pass


def _field_for(obj, field_path):
    """Field from --field FILE (overriding) or the document's own field."""
    if field_path:
        return field_from_json(_load_json(field_path))
    if "field" not in obj:
        raise UsageError("no field in the input JSON and no --field given")
    return field_from_json(obj["field"])


def _parse_diagram(obj, field_path=None) -> Diagram:
    try:
        field = _field_for(obj, field_path)
        sites = tuple(
            WeightedSite((float(s["x"]), float(s["y"])), float(s.get("w", 0.0)))
            for s in obj["sites"]
        )
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed diagram JSON: {exc}")
    return Diagram(field, sites)


def _parse_triangle(obj, field_path=None) -> TriangleSpec:
    try:
        field = _field_for(obj, field_path)
        s1 = tuple(map(float, obj["s1"]))
        s2 = tuple(map(float, obj["s2"]))
        s3 = tuple(map(float, obj["s3"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed triangle JSON: {exc}")
    return TriangleSpec(s1, s2, s3, field)


def _default_render_spec(diagram, resolution, bbox=None) -> RenderSpec:
    if bbox is None:
        pts = [s.point for s in diagram.sites]
        span = max(
            max(p[0] for p in pts) - min(p[0] for p in pts),
            max(p[1] for p in pts) - min(p[1] for p in pts),
            1.0,
        )
        bbox = bounding_hint(diagram.field, pts, radius=0.75 * span)
    return RenderSpec(bbox=bbox, resolution=resolution)


def cmd_triple(args) -> int:
    diagram = _parse_diagram(_load_json(args.diagram), args.field)
    if len(diagram.sites) != 3:
        raise UsageError(f"triple needs exactly 3 sites, got {len(diagram.sites)}")
    kwargs = {}
    if args.tol is not None:
        kwargs["tol"] = args.tol
    result = triple_points(diagram.field, list(diagram.sites), **kwargs)
    emit_json(result.to_json(), args.out)
    if args.svg:
        spec = _default_render_spec(diagram, args.resolution, _parse_bbox(args.bbox))
        write_svg(args.svg, render_svg(diagram, spec, triple=result))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    triangle = _parse_triangle(_load_json(args.triangle), args.field)
    kwargs = {}
    if args.tol is not None:
        kwargs["tol"] = args.tol
    try:
        report = enumerate_candidates(triangle, **kwargs)
    except RuntimeError as exc:
        if args.assert_bound:
            print(f"bound assertion failed: {exc}", file=sys.stderr)
            return EXIT_BOUND
        raise
    emit_json(report.to_json(triangle), args.out)
    return EXIT_OK


def _rational_str(value: Fraction) -> str:
    return str(value)


def cmd_construct(args) -> int:
    if args.what == "pythagorean":
        rs = pythagorean_circle_set(
            PythagoreanTriple(args.a, args.b, args.c), args.n, args.include_center
        )
        pts = rs.scaled_points() if args.scaled else rs.points
        if args.exact:
            payload = {
                "points": [[_rational_str(x), _rational_str(y)] for x, y in pts],
                "scale": rs.scale,
            }
        else:
            payload = {
                "points": [[float(x), float(y)] for x, y in pts],
                "scale": rs.scale,
            }
        emit_json(payload, args.out)
    elif args.what == "grid":
        emit_json({"points": [[x, y] for x, y in grid_set(args.n)]}, args.out)
    elif args.what == "norm-for-set":
        obj = _load_json(args.points)
        try:
            pts = [_parse_coordinate_pair(p) for p in obj["points"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed point-set JSON: {exc}")
        out = norm_for_integer_distances(pts)
        emit_json(
            {
                "norm": norm_to_json(out["norm"]),
                "scaled_points": [[x, y] for x, y in out["scaled_points"]],
                "target_distances": out["target_distances"].tolist(),
                "scale": out["scale"],
            },
            args.out,
        )
    elif args.what == "cone-equilateral":
        pts = cone_equilateral_set(args.k)
        emit_json({"points": [{"r": r, "theta": t} for r, t in pts]}, args.out)
    else:
        raise UsageError(f"unknown construction {args.what!r}")
    return EXIT_OK


def _parse_coordinate_pair(p):
    """Accept [x, y] with floats or 'num/den' rational strings."""

    def one(v):
        if isinstance(v, str):
            return float(Fraction(v))
        return float(v)

    return (one(p[0]), one(p[1]))


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(
            f"unknown suite {args.suite!r}; choose from {', '.join(sorted(SUITES))}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    result = run_suite(args.suite, seed=args.seed)
    print(result.summary())
    return EXIT_OK if result.passed else EXIT_DOMAIN


def cmd_render(args) -> int:
    diagram = _parse_diagram(_load_json(args.diagram), args.field)
    spec = _default_render_spec(diagram, args.resolution, _parse_bbox(args.bbox))
    write_svg(args.svg, render_svg(diagram, spec))
    return EXIT_OK


def _parse_bbox(text):
    if text is None:
        return None
    try:
        xmin, ymin, xmax, ymax = (float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"bbox must be 'xmin,ymin,xmax,ymax', got {text!r}")
    return (xmin, ymin, xmax, ymax)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anning",
        description="Weighted Voronoi geometry and integer-distance enumeration",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("triple", help="triple-equidistant points of a 3-site diagram")
    p.add_argument("--diagram", required=True, help="diagram JSON file")
    p.add_argument("--field", help="field-spec JSON file overriding the document field")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.add_argument("--svg", help="also write an SVG rendering")
    p.add_argument("--tol", type=float, help="solver residual tolerance")
    p.add_argument("--resolution", type=int, default=800)
    p.add_argument("--bbox", help="render bbox as 'xmin,ymin,xmax,ymax'")
    p.set_defaults(func=cmd_triple)

    p = sub.add_parser("enumerate", help="integer-distance candidates of a triangle")
    p.add_argument("--triangle", required=True, help="triangle JSON file")
    p.add_argument("--field", help="field-spec JSON file overriding the document field")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.add_argument("--tol", type=float, help="integrality tolerance")
    p.add_argument("--assert-bound", action="store_true", dest="assert_bound")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("construct", help="example point sets and norms")
    psub = p.add_subparsers(dest="what", required=True)

    pc = psub.add_parser("pythagorean")
    pc.add_argument("--a", type=int, required=True)
    pc.add_argument("--b", type=int, required=True)
    pc.add_argument("--c", type=int, required=True)
    pc.add_argument("--n", type=int, default=4)
    pc.add_argument("--include-center", action="store_true", dest="include_center")
    pc.add_argument("--exact", action="store_true", help="emit rational strings")
    pc.add_argument("--scaled", action="store_true", help="emit the integer-distance scaling")
    pc.add_argument("--out")
    pc.set_defaults(func=cmd_construct)

    pg = psub.add_parser("grid")
    pg.add_argument("--n", type=int, required=True)
    pg.add_argument("--out")
    pg.set_defaults(func=cmd_construct)

    pn = psub.add_parser("norm-for-set")
    pn.add_argument("--points", required=True, help="point-set JSON file")
    pn.add_argument("--out")
    pn.set_defaults(func=cmd_construct)

    pe = psub.add_parser("cone-equilateral")
    pe.add_argument("--k", type=int, required=True)
    pe.add_argument("--out")
    pe.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="run a named property suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="render a diagram to SVG")
    p.add_argument("--diagram", required=True)
    p.add_argument("--field", help="field-spec JSON file overriding the document field")
    p.add_argument("--svg", required=True)
    p.add_argument("--resolution", type=int, default=800)
    p.add_argument("--bbox", help="'xmin,ymin,xmax,ymax'")
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except AnningError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ValueError, IndexError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
