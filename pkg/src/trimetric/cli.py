"""Command-line front end.

Subcommands::

    dist       evaluate s, j, k or rho between two points
    ball       trace B_s(x, r), write CSV and optionally SVG with comparison curves
    convexity  estimate the convexity radius and classify an r grid
    verify     run inclusion, lemma and conjecture suites as JSON reports

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 domain or precondition error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Callable

import numpy as np

from . import balls, inclusions
from .geometry import (
    Angular,
    Domain,
    DomainError,
    HalfSpace,
    Polygon,
    PuncturedHalfSpace,
    PuncturedSpace,
    _norm,
    as_point,
    boundary_distance_unchecked,
    boundary_pieces,
    ray_exit_distance,
    require_inside,
)
from .inclusions import CheckReport
from .metrics import MetricKind, distance, j_unchecked, s_unchecked
from .render import Curve, RenderSpec, render_svg

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3
DOMAINS = ("punctured", "halfspace", "punctured-halfspace", "angular", "polygon")
SUITES = ("euclid", "j", "k", "lemmas", "conjectures", "all")
UNIT_SQUARE = ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0))


class UsageError(Exception):
    pass


def parse_point(text: str) -> np.ndarray:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse point {text!r}; expected comma-separated numbers") from None
    if not vals or not all(math.isfinite(v) for v in vals):
        raise UsageError(f"point {text!r} must have finite coordinates")
    return np.array(vals)


def parse_floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"cannot parse number list {text!r}") from None


def build_domain(args: argparse.Namespace, dim: int) -> Domain:
    try:
        return _make_domain(args, dim)
    except DomainError:
        raise
    except ValueError as exc:
        # constructor invariants (bad polygon, sector opening) are usage errors
        raise UsageError(str(exc)) from exc


def _make_domain(args: argparse.Namespace, dim: int) -> Domain:
    name = args.domain
    if name == "punctured":
        p = parse_point(args.puncture) if args.puncture else np.zeros(dim)
        if len(p) != dim:
            raise UsageError("puncture and point dimensions differ")
        return PuncturedSpace(p)
    if name == "halfspace":
        return HalfSpace(dim)
    if name == "punctured-halfspace":
        p = parse_point(args.puncture) if args.puncture else np.eye(dim)[-1]
        if len(p) != dim:
            raise UsageError("puncture and point dimensions differ")
        return PuncturedHalfSpace(p)
    if name == "angular":
        if args.alpha is None:
            raise UsageError("--domain angular needs --alpha")
        return Angular(args.alpha)
    if name == "polygon":
        if args.vertices:
            verts = [parse_point(v) for v in args.vertices.split(";")]
        else:
            verts = [np.array(v) for v in UNIT_SQUARE]
        return Polygon(np.array(verts))
    raise UsageError(f"unknown domain {name!r}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, default=_json_default)


def _json_default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.floating, np.integer, np.bool_)):
        return o.item()
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


# ---------------------------------------------------------------------------
# dist


def cmd_dist(args: argparse.Namespace) -> int:
    x = parse_point(args.x)
    y = parse_point(args.y)
    if len(x) != len(y):
        raise UsageError("x and y dimensions differ")
    G = build_domain(args, len(x))
    value = distance(MetricKind(args.metric), G, x, y)
    print(f"{value:.15g}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# ball


def trace_for(G: Domain, x: np.ndarray, r: float, samples: int) -> balls.BoundaryTrace:
    """Analytic traces where a closed form exists, root finding otherwise."""
    if isinstance(G, PuncturedSpace):
        return balls.trace_punctured_ball(x, r, samples=max(samples // 2, 8) | 1, puncture=G.puncture)
    if isinstance(G, HalfSpace):
        disk = balls.halfspace_s_ball(x, r)
        theta = 2.0 * np.pi * np.arange(samples) / samples
        pts = disk.boundary_points(samples)
        res = np.abs(s_unchecked(G, x, pts) - r)
        return balls.BoundaryTrace(x, r, pts, theta, res, balls.ANALYTIC_TRACE_TOL)
    return balls.trace_ball_generic(G, x, r, directions=samples)


def level_set_curve(G: Domain, x: np.ndarray, f: Callable[[np.ndarray], np.ndarray], level: float,
                    extent: float, directions: int) -> np.ndarray:
    """First crossing of f = level along rays from x, used for j-ball overlays."""
    theta = 2.0 * np.pi * np.arange(directions) / directions
    u = np.column_stack([np.cos(theta), np.sin(theta)])
    hi = np.minimum(ray_exit_distance(G, x, u), extent) * (1 - 1e-12)
    steps = np.linspace(0, 1, 257)[1:]
    pts = x + (hi[:, None] * steps)[..., None] * u[:, None, :]
    vals = f(pts.reshape(-1, 2)).reshape(directions, -1)
    hit = vals >= level
    keep = hit.any(axis=1)
    k = np.argmax(hit, axis=1)
    top = hi * steps[k]
    lo = np.where(k > 0, hi * steps[np.maximum(k - 1, 0)], 0.0)
    for _ in range(60):
        mid = 0.5 * (lo + top)
        below = f(x + mid[:, None] * u) < level
        lo = np.where(below, mid, lo)
        top = np.where(below, top, mid)
    t = 0.5 * (lo + top)
    return (x + t[:, None] * u)[keep]


def overlay_curves(kind: str, G: Domain, x: np.ndarray, r: float, samples: int) -> list[Curve]:
    d = float(boundary_distance_unchecked(G, x))
    out = []
    theta = 2.0 * np.pi * np.arange(samples) / samples
    circle = np.column_stack([np.cos(theta), np.sin(theta)])
    if kind == "euclid":
        r_in, r_out = inclusions.euclid_radii(d, r)
        out.append(Curve("euclid", x + r_in * circle, label=f"inner euclidean r={r:g} radius={r_in:.6g}"))
        out.append(Curve("euclid", x + r_out * circle, label=f"outer euclidean r={r:g} radius={r_out:.6g}"))
    elif kind == "j":
        m, M = inclusions.j_radii(G, r)
        for label, level in (("inner", m), ("outer", M)):
            if level is None:
                continue
            # on the j-sphere |x - y| <= (e^level - 1) d_G(x)
            extent = 1.05 * math.expm1(level) * d
            pts = level_set_curve(G, x, lambda y: j_unchecked(G, x, y), level, extent, samples)
            res = float(np.max(np.abs(j_unchecked(G, x, pts) - level))) if len(pts) else None
            out.append(Curve("j-ball", pts, label=f"{label} j-ball r={r:g} radius={level:.6g}", max_residual=res))
    elif kind == "k":
        if isinstance(G, PuncturedSpace):
            K = math.log1p(2.0 * r)
            pts = inclusions.punctured_k_sphere(x, G.puncture, K, samples)
            out.append(Curve("k-ball", pts, label=f"inner k-ball r={r:g} radius={K:.6g}"))
            if r < 0.5:
                K2 = 2.0 * math.asin(r / (1.0 - r))
                if K2 < math.pi:
                    pts = inclusions.punctured_k_sphere(x, G.puncture, K2, samples)
                    out.append(Curve("k-ball", pts, label=f"outer k-ball r={r:g} radius={K2:.6g}"))
        elif isinstance(G, HalfSpace):
            K = math.log1p(2.0 * r / (1.0 - r))
            pts = balls.hyperbolic_ball_disk(x, K).boundary_points(samples)
            out.append(Curve("k-ball", pts, label=f"k-ball r={r:g} radius={K:.6g}"))
        else:
            raise DomainError("k overlays need the punctured plane or the half-plane")
    else:
        raise UsageError(f"unknown overlay {kind!r}")
    return out


def boundary_curves(G: Domain, view: tuple) -> list[Curve]:
    (x0, y0), (x1, y1) = view
    big = 4.0 * max(x1 - x0, y1 - y0) + max(abs(x0), abs(x1), abs(y0), abs(y1))
    if isinstance(G, (HalfSpace, PuncturedHalfSpace)):
        line = [Curve("boundary", np.array([[x0 - big, 0.0], [x1 + big, 0.0]]), closed=False, label="boundary line")]
        if isinstance(G, PuncturedHalfSpace):
            line.append(Curve("boundary", G.puncture + 0.003 * (x1 - x0) * _unit_circle(32), label="puncture"))
        return line
    if isinstance(G, PuncturedSpace):
        return [Curve("boundary", G.puncture + 0.003 * (x1 - x0) * _unit_circle(32), label="puncture")]
    if isinstance(G, Polygon):
        return [Curve("boundary", G.vertices, label="polygon")]
    if isinstance(G, Angular):
        return [Curve("boundary", np.array([p.a + big * p.direction, p.a]), closed=False, label="sector side")
                for p in boundary_pieces(G)]
    return []


def _unit_circle(k: int) -> np.ndarray:
    th = 2.0 * np.pi * np.arange(k) / k
    return np.column_stack([np.cos(th), np.sin(th)])


def _csv_path(base: Path, r: float, many: bool) -> Path:
    if not many:
        return base
    return base.with_name(f"{base.stem}-r{r:g}{base.suffix or '.csv'}")


def cmd_ball(args: argparse.Namespace) -> int:
    x = parse_point(args.x)
    if len(x) != 2:
        raise UsageError("ball tracing is planar; give a 2-D --x")
    if not args.r:
        raise UsageError("--r is required")
    radii = parse_floats(args.r)
    G = build_domain(args, 2)
    require_inside(G, x)
    for r in radii:
        if not 0.0 < r < 1.0:
            raise DomainError(f"s-radius must lie in (0, 1), got {r}")
    traces = [trace_for(G, x, r, args.samples) for r in radii]

    many = len(traces) > 1
    if args.out:
        for tr in traces:
            _csv_path(Path(args.out), tr.radius, many).write_text(tr.to_csv())
    elif not args.svg:
        for tr in traces:
            if many:
                sys.stdout.write(f"# radius={tr.radius!r}\n")
            sys.stdout.write(tr.to_csv())

    if args.svg:
        curves = []
        for tr in traces:
            v = balls.polyline_is_convex(tr)
            curves.append(Curve("s-ball", tr.vertices, label=f"r={tr.radius:g} convex={v.convex}",
                                max_residual=tr.max_residual))
            for kind in args.overlay or ():
                curves.extend(overlay_curves(kind, G, x, tr.radius, args.samples))
        view = _view_from(curves)
        curves = boundary_curves(G, view) + curves
        Path(args.svg).write_text(render_svg(curves, RenderSpec(view, resolution=max(args.samples, 64)),
                                             title=f"s-balls in {args.domain} domain around x={args.x}"))
    return EXIT_OK


def _view_from(curves: list[Curve]) -> tuple:
    pts = np.concatenate([c.points for c in curves])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    pad = 0.05 * float(np.max(hi - lo))
    return (float(lo[0] - pad), float(lo[1] - pad)), (float(hi[0] + pad), float(hi[1] + pad))


# ---------------------------------------------------------------------------
# convexity


def convexity_report(G: Domain, x: np.ndarray, grid: list[float], expect: float | None, tol: float,
                     directions: int = 2048, label: str = "") -> CheckReport:
    name = f"convexity[{label or type(G).__name__}]"
    x_list = [float(v) for v in x]
    if isinstance(G, HalfSpace):
        table = [{"r": r, "convex": True, "worst_turn": 0.0} for r in grid]
        radius, notes = 1.0, "convex for all r < 1: the s-balls are Euclidean disks"
    else:
        tracer = balls.default_tracer(G, x, directions)
        table = []
        for r in grid:
            v = balls.polyline_is_convex(tracer(r))
            table.append({"r": r, "convex": v.convex, "worst_turn": v.worst_turn})
        radius = balls.convexity_radius_estimate(G, x, directions=directions)
        notes = "bisection on traced polylines; radius is the largest convex r found within 1e-3"
    flips = sum(1 for a, b in zip(table, table[1:]) if a["convex"] != b["convex"])
    monotone_margin = 0.0 if flips <= 1 and (not table or table[0]["convex"]) else -1.0
    parts = [("classification_monotone", np.array([monotone_margin]), np.array([0.0]))]
    details = {"convexity_radius": radius, "x": x_list, "table": table}
    if expect is not None:
        parts.append(("radius_matches_expected", np.array([tol - abs(radius - expect)]), np.array([radius])))
        details["expected_radius"] = expect
    rep = inclusions._collect(name, parts, 0.0, grid=f"{len(grid)} radii, {directions} boundary samples",
                              notes=notes, details=details)
    rep.tolerance = 0.0
    return rep


def cmd_convexity(args: argparse.Namespace) -> int:
    x = parse_point(args.x)
    if len(x) != 2:
        raise UsageError("convexity estimation is planar; give a 2-D --x")
    G = build_domain(args, 2)
    require_inside(G, x)
    grid = parse_floats(args.grid) if args.grid else [round(0.05 * i, 2) for i in range(1, 20)]
    tol = args.tol if args.tol is not None else 1e-3
    rep = convexity_report(G, x, grid, args.expect, tol, directions=args.samples, label=args.domain)
    print(_dump({"schema": SCHEMA, "reports": [rep.to_dict()]}))
    return EXIT_OK if rep.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# verify


def _grid(lo: float, hi: float, step: float) -> list[float]:
    n = int(round((hi - lo) / step))
    return [round(lo + i * step, 10) for i in range(n + 1)]


def suite_reports(suite: str, args: argparse.Namespace) -> list[CheckReport]:
    seed = args.seed
    custom = args.domain is not None
    reports: list[CheckReport] = []

    def configs(defaults):
        if not custom:
            return defaults
        x = parse_point(args.x) if args.x else None
        if x is None:
            raise UsageError("--domain given without --x")
        radii = parse_floats(args.r) if args.r else defaults[0][2]
        return [(build_domain(args, len(x)), x, radii)]

    if suite in ("euclid", "all"):
        for G, x, radii in configs([
            (PuncturedSpace((0.0, 0.0)), np.array([2.0, 0.0]), _grid(0.1, 0.9, 0.1)),
            (HalfSpace(2), np.array([0.0, 1.0]), _grid(0.1, 0.9, 0.1)),
        ]):
            reports += [inclusions.euclid_inclusion_check(G, x, r, samples=args.samples) for r in radii]
            if isinstance(G, PuncturedSpace):
                reports += [inclusions.witness_check(x, r, G.puncture) for r in radii]
    if suite in ("j", "all"):
        for G, x, radii in configs([
            (PuncturedSpace((0.0, 0.0)), np.array([0.5, 0.0]), _grid(0.05, 0.95, 0.05)),
            (HalfSpace(2), np.array([0.0, 1.0]), _grid(0.05, 0.95, 0.05)),
            (Polygon(np.array(UNIT_SQUARE)), np.array([0.3, 0.4]), _grid(0.05, 0.30, 0.05)),
        ]):
            reports += [inclusions.j_inclusion_check(G, x, r, samples=args.samples, seed=seed) for r in radii]
        if not custom:
            reports.append(inclusions.s_j_ratio_check(PuncturedSpace((0.0, 0.0)), seed=seed))
            reports.append(inclusions.s_j_ratio_check(Polygon(np.array(UNIT_SQUARE)), seed=seed))
    if suite in ("k", "all"):
        for G, x, radii in configs([
            (PuncturedSpace((0.0, 0.0)), np.array([2.0, 0.0]), _grid(0.1, 0.9, 0.1)),
            (HalfSpace(2), np.array([0.0, 1.0]), _grid(0.1, 0.9, 0.1)),
        ]):
            reports += [inclusions.k_inclusion_check(G, x, r, samples=args.samples) for r in radii]
    if suite in ("lemmas", "all"):
        reports.append(inclusions.lemma_monotone_check("f1", a=2.0))
        for which in ("f2", "f3", "f4"):
            reports.append(inclusions.lemma_monotone_check(which))
        reports.append(inclusions.inner_branch_scan())
    if suite in ("conjectures", "all"):
        reports.append(inclusions.conjecture_scan_part1(inclusions.ScanConfig(500, 500)))
        reports.append(inclusions.conjecture_scan_part2(inclusions.ScanConfig(t_points=300, r_points=300)))
    if args.tol is not None:
        for rep in reports:
            rep.tolerance = args.tol
            rep.passed = bool(rep.worst_margin >= -args.tol)
    return sorted(reports, key=lambda rep: rep.name)


def cmd_verify(args: argparse.Namespace) -> int:
    reports = suite_reports(args.suite, args)
    print(_dump({"schema": SCHEMA, "suite": args.suite, "reports": [r.to_dict() for r in reports]}))
    failed = [r for r in reports if not r.passed]
    for r in failed:
        print(f"FAIL {r.name}: worst_margin={r.worst_margin:.6e} at {r.worst_location}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_domain_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--domain", choices=DOMAINS, required=required)
    p.add_argument("--puncture", help="puncture point, e.g. 0,0 (default origin, or e_n for punctured-halfspace)")
    p.add_argument("--alpha", type=float, help="sector opening in radians (angular domain)")
    p.add_argument("--vertices", help="polygon vertices as 'x,y;x,y;...' (default unit square)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="trimetric", description="Triangular ratio metric balls and inclusion checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("dist", help="distance between two points")
    _add_domain_args(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--metric", choices=[m.value for m in MetricKind], default="s")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("ball", help="trace B_s(x, r) as CSV and/or SVG")
    _add_domain_args(p)
    p.add_argument("--x", required=True)
    p.add_argument("--r", required=True, help="radius or comma-separated radii")
    p.add_argument("--out", help="CSV output path (one file per radius when several are given)")
    p.add_argument("--svg", help="SVG output path")
    p.add_argument("--overlay", action="append", choices=("euclid", "j", "k"))
    p.add_argument("--samples", type=int, default=1024)
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("convexity", help="estimate the convexity radius")
    _add_domain_args(p)
    p.add_argument("--x", required=True)
    p.add_argument("--grid", help="comma-separated radii for the classification table")
    p.add_argument("--expect", type=float, help="expected radius; the report fails if off by more than --tol")
    p.add_argument("--tol", type=float)
    p.add_argument("--samples", type=int, default=2048)
    p.set_defaults(func=cmd_convexity)

    p = sub.add_parser("verify", help="run check suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    _add_domain_args(p, required=False)
    p.add_argument("--x")
    p.add_argument("--r", help="radius or comma-separated radii for the custom configuration")
    p.add_argument("--seed", type=int, default=inclusions.DEFAULT_SEED)
    p.add_argument("--tol", type=float)
    p.add_argument("--samples", type=int, default=1024)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"trimetric: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, balls.TraceError) as exc:
        print(f"trimetric: precondition violated: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
