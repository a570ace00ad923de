"""Numerical checks of ball inclusions, sharpness witnesses, monotone lemmas and conjecture scans.

Every check returns a :class:`CheckReport`.  Margins are signed so that a
nonnegative value means the inequality holds at that sample; a report passes
when its worst margin is at least ``-tolerance``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

import numpy as np
from numpy.typing import ArrayLike

from . import balls
from .geometry import (
    Angular,
    Domain,
    DomainError,
    FloatArray,
    HalfSpace,
    Polygon,
    PuncturedHalfSpace,
    PuncturedSpace,
    SampledBoundary,
    _norm,
    as_point,
    boundary_distance_unchecked,
    contains,
    require_inside,
)
from .metrics import j_unchecked, k_unchecked, s_unchecked

DEFAULT_SEED = 20140301
EVIDENCE_NOTE = "numerical evidence only; not a proof"
# exact identities checked alongside the scans (f(1) = 0, endpoint symmetry)
IDENTITY_TOL = 1e-12


@dataclass
class CheckReport:
    name: str
    passed: bool
    worst_margin: float
    worst_location: tuple
    grid: str
    tolerance: float
    seed: int | None = None
    notes: str = ""
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        d["worst_location"] = [float(v) for v in self.worst_location]
        return d


@dataclass(frozen=True)
class ScanConfig:
    """Grid resolutions for the scans; open interval ends are approached to ``open_eps``."""

    m_points: int = 500
    t_points: int = 500
    r_points: int = 300
    open_eps: float = 1e-6


def _collect(name: str, parts: list[tuple[str, FloatArray, FloatArray]], tol: float, grid: str,
             seed: int | None = None, notes: str = "", details: dict | None = None) -> CheckReport:
    """Reduce labelled margin arrays (label, margins, locations) to one report."""
    details = dict(details or {})
    worst, where, worst_label = math.inf, (), ""
    for label, margins, locs in parts:
        margins = np.atleast_1d(np.asarray(margins, dtype=float))
        if margins.size == 0:
            continue
        i = int(np.argmin(margins))
        details[f"{label}_worst_margin"] = float(margins[i])
        if margins[i] < worst:
            worst = float(margins[i])
            loc = np.atleast_1d(np.asarray(locs, dtype=float)[i]) if np.ndim(locs) else np.atleast_1d(float(locs))
            where = tuple(float(v) for v in loc)
            worst_label = label
    details["worst_part"] = worst_label
    return CheckReport(name, bool(worst >= -tol), worst, where, grid, tol, seed, notes, details)


def _rtag(r: float) -> str:
    # at least two decimals so that name order follows numeric order on the usual grids
    text = f"{r:.2f}"
    return text if float(text) == r else repr(float(r))


# ---------------------------------------------------------------------------
# Ball boundaries used by the checks


def s_ball_boundary(G: Domain, x: FloatArray, r: float, samples: int) -> FloatArray:
    """Points on the boundary of B_s(x, r): closed forms where available, root finding otherwise."""
    if isinstance(G, HalfSpace):
        return balls.halfspace_s_ball(x, r).boundary_points(samples)
    if isinstance(G, PuncturedSpace):
        # an odd count per branch puts a vertex on the axis through the puncture, where the bounds are attained
        return balls.trace_punctured_ball(x, r, samples=max(samples // 2, 8) | 1, puncture=G.puncture).vertices
    trace = balls.trace_ball_generic(G, x, r, directions=samples)
    if not trace.closed:
        raise balls.TraceError(f"trace has {len(trace.open_params)} open rays")
    return trace.vertices


def punctured_k_sphere(x: FloatArray, p: FloatArray, k: float, samples: int) -> FloatArray:
    """Points at quasihyperbolic distance ``k`` (< pi) from x in the plane punctured at p."""
    theta = 2.0 * np.pi * np.arange(samples) / samples
    alpha = k * np.cos(theta)
    log_ratio = k * np.sin(theta)
    v = x - p
    phi = math.atan2(v[1], v[0]) + alpha
    rad = float(np.hypot(*v)) * np.exp(-log_ratio)
    return p + rad[:, None] * np.column_stack([np.cos(phi), np.sin(phi)])


def _box_samples(G: Domain, x: FloatArray, radius: float, count: int, rng: np.random.Generator) -> FloatArray:
    """Uniform points of the Euclidean disk B(x, radius) that lie in G."""
    n = len(x)
    d = rng.normal(size=(count, n))
    d /= _norm(d)[:, None]
    rad = radius * rng.random(count) ** (1.0 / n)
    y = x + rad[:, None] * d
    return y[np.asarray(contains(G, y))]


# ---------------------------------------------------------------------------
# Euclidean inclusions


def euclid_radii(d: float, r: float) -> tuple[float, float]:
    return 2.0 * r / (1.0 + r) * d, 2.0 * r / (1.0 - r) * d


def euclid_inclusion_check(G: Domain, x: ArrayLike, r: float, samples: int = 1024) -> CheckReport:
    """B(x, 2r/(1+r) d) in B_s(x, r) in B(x, 2r/(1-r) d), with d = d_G(x)."""
    x = as_point(x, G.dim)
    require_inside(G, x)
    if not 0.0 < r < 1.0:
        raise DomainError(f"r must lie in (0, 1), got {r}")
    d = float(boundary_distance_unchecked(G, x))
    r_in, r_out = euclid_radii(d, r)
    theta = 2.0 * np.pi * np.arange(samples) / samples
    sphere = np.tile(x, (samples, 1))
    sphere[:, 0] += r_in * np.cos(theta)
    sphere[:, 1] += r_in * np.sin(theta)
    inner_margin = r - s_unchecked(G, x, sphere)

    bd = s_ball_boundary(G, x, r, samples)
    dist = _norm(bd - x)
    # scale-free margins: relative to d_G(x)
    parts = [
        ("inner_sphere", inner_margin, theta),
        ("boundary_outside_inner", (dist - r_in) / d, np.arange(len(bd))),
        ("boundary_inside_outer", (r_out - dist) / d, np.arange(len(bd))),
    ]
    return _collect(
        f"euclid_inclusion[{type(G).__name__},r={_rtag(r)}]", parts, 1e-9,
        grid=f"{samples} inner-sphere points, {len(bd)} boundary points",
        details={"inner_radius": r_in, "outer_radius": r_out, "d_G": d,
                 "min_boundary_dist": float(dist.min()), "max_boundary_dist": float(dist.max())},
    )


# ---------------------------------------------------------------------------
# j inclusions


def j_radii(G: Domain, r: float) -> tuple[float, float | None]:
    """Radii (m, M) with B_j(x, m) in B_s(x, r) in B_j(x, M); M is None when no bound applies."""
    if isinstance(G, HalfSpace):
        return math.log1p(2.0 * r / math.sqrt(1.0 - r * r)), math.log1p(2.0 * r / (1.0 - r))
    if isinstance(G, PuncturedSpace):
        return math.log1p(2.0 * r), math.log1p(2.0 * r / (1.0 - r))
    upper = math.log1p(2.0 * r / (1.0 - 3.0 * r)) if r < 1.0 / 3.0 else None
    return math.log1p(2.0 * r), upper


def j_inclusion_check(G: Domain, x: ArrayLike, r: float, samples: int = 1024, points: int = 10_000,
                      seed: int = DEFAULT_SEED) -> CheckReport:
    """Two-sided j-ball inclusion around B_s(x, r) on the boundary and by direct membership."""
    x = as_point(x, G.dim)
    require_inside(G, x)
    if not 0.0 < r < 1.0:
        raise DomainError(f"r must lie in (0, 1), got {r}")
    m, M = j_radii(G, r)
    bd = s_ball_boundary(G, x, r, samples)
    j_bd = j_unchecked(G, x, bd)
    idx = np.arange(len(bd))
    parts = [("boundary_j_at_least_m", j_bd - m, idx)]
    if M is not None:
        parts.append(("boundary_j_at_most_M", M - j_bd, idx))

    rng = np.random.default_rng(seed)
    d = float(boundary_distance_unchecked(G, x))
    y = _box_samples(G, x, 1.05 * euclid_radii(d, r)[1], points, rng)
    s_y = s_unchecked(G, x, y)
    j_y = j_unchecked(G, x, y)
    in_j = j_y < m
    parts.append(("inner_j_ball_points_have_s_below_r", r - s_y[in_j], np.flatnonzero(in_j)))
    if M is not None:
        in_s = s_y < r
        parts.append(("s_ball_points_have_j_below_M", M - j_y[in_s], np.flatnonzero(in_s)))
    notes = "" if M is not None else "upper inclusion only available for r < 1/3 on general domains"
    return _collect(
        f"j_inclusion[{type(G).__name__},r={_rtag(r)}]", parts, 1e-9,
        grid=f"{len(bd)} boundary points, {len(y)} random interior points", seed=seed, notes=notes,
        details={"m": m, "M": M, "min_boundary_j": float(j_bd.min()), "max_boundary_j": float(j_bd.max())},
    )


# ---------------------------------------------------------------------------
# k inclusions


def k_inclusion_check(G: Domain, x: ArrayLike, r: float, samples: int = 1024) -> CheckReport:
    """Quasihyperbolic ball inclusions (punctured space) or the exact identity (half-space)."""
    x = as_point(x, G.dim)
    require_inside(G, x)
    if not 0.0 < r < 1.0:
        raise DomainError(f"r must lie in (0, 1), got {r}")
    bd = s_ball_boundary(G, x, r, samples)
    k_bd = k_unchecked(G, x, bd)
    idx = np.arange(len(bd))
    m = math.log1p(2.0 * r)
    details: dict[str, Any] = {"k_lower": m, "min_boundary_k": float(k_bd.min()), "max_boundary_k": float(k_bd.max())}

    if isinstance(G, HalfSpace):
        K = math.log1p(2.0 * r / (1.0 - r))
        k_sphere = balls.hyperbolic_ball_disk(x, K).boundary_points(samples)
        parts = [
            ("s_sphere_has_k_equal_K", -np.abs(k_bd - K), idx),
            ("k_sphere_has_s_equal_r", -np.abs(s_unchecked(G, x, k_sphere) - r), idx),
        ]
        details["k_equal"] = K
    elif isinstance(G, PuncturedSpace):
        if len(x) != 2:
            raise ValueError("punctured k-ball checks are planar")
        k_sphere = punctured_k_sphere(x, G.puncture, m, samples)
        parts = [
            ("boundary_k_at_least_log(1+2r)", k_bd - m, idx),
            ("k_sphere_has_s_at_most_r", r - s_unchecked(G, x, k_sphere), np.arange(samples)),
        ]
        if r < 0.5:
            K_up = 2.0 * math.asin(r / (1.0 - r))
            parts.append(("boundary_k_at_most_2asin(r/(1-r))", K_up - k_bd, idx))
            details["k_upper_punctured"] = K_up
        if r < 1.0 / 3.0:
            K_gen = math.log1p(2.0 * r / (1.0 - 3.0 * r))
            parts.append(("boundary_k_at_most_general", K_gen - k_bd, idx))
            details["k_upper_general"] = K_gen
    else:
        raise DomainError(f"k checks need PuncturedSpace or HalfSpace, not {type(G).__name__}")
    return _collect(f"k_inclusion[{type(G).__name__},r={_rtag(r)}]", parts, 1e-9,
                    grid=f"{len(bd)} boundary points, {samples} k-sphere points", details=details)


# ---------------------------------------------------------------------------
# Sharpness witnesses (punctured space)

WITNESS_KINDS = ("euclid-inner", "euclid-outer", "j-inner", "j-outer")


def _orthogonal_unit(v: FloatArray) -> FloatArray:
    e = np.zeros_like(v)
    e[int(np.argmin(np.abs(v)))] = 1.0
    w = e - (e @ v) / (v @ v) * v
    return w / np.linalg.norm(w)


def sharpness_witness(kind: str, x: ArrayLike, r: float, puncture: ArrayLike | None = None) -> FloatArray:
    """A point of the boundary of B_s(x, r) in R^n minus ``puncture`` where an inclusion is tight."""
    x = as_point(x)
    p = np.zeros_like(x) if puncture is None else as_point(puncture, len(x))
    v = x - p
    if not np.any(v):
        raise DomainError("the centre coincides with the puncture")
    if kind == "euclid-inner":
        return p + (1.0 - 2.0 * r / (1.0 + r)) * v
    if kind == "euclid-outer":
        return p + (1.0 + 2.0 * r / (1.0 - r)) * v
    if kind == "j-outer":
        return p + (1.0 + r) / (1.0 - r) * v
    if kind == "j-inner":
        # same norm as x, rotated by 2 asin(r) so that |x - y| = 2 r |x|
        ang = 2.0 * math.asin(r)
        w = _orthogonal_unit(v) * np.linalg.norm(v)
        return p + math.cos(ang) * v + math.sin(ang) * w
    raise ValueError(f"unknown witness kind {kind!r}; expected one of {WITNESS_KINDS}")


def witness_residuals(kind: str, x: ArrayLike, r: float, puncture: ArrayLike | None = None) -> tuple[float, float]:
    """(|s(x,y) - r|, residual of the second boundary equality) for the witness y."""
    x = as_point(x)
    p = np.zeros_like(x) if puncture is None else as_point(puncture, len(x))
    y = sharpness_witness(kind, x, r, p)
    G = PuncturedSpace(p)
    nx = float(np.linalg.norm(x - p))
    s_res = abs(float(s_unchecked(G, x, y)) - r)
    dist = float(np.linalg.norm(x - y))
    if kind == "euclid-inner":
        other = abs(dist - 2.0 * r / (1.0 + r) * nx) / nx
    elif kind == "euclid-outer":
        other = abs(dist - 2.0 * r / (1.0 - r) * nx) / nx
    elif kind == "j-inner":
        other = abs(float(j_unchecked(G, x, y)) - math.log1p(2.0 * r))
    else:
        other = abs(float(j_unchecked(G, x, y)) - math.log1p(2.0 * r / (1.0 - r)))
    return s_res, other


def witness_check(x: ArrayLike, r: float, puncture: ArrayLike | None = None) -> CheckReport:
    parts = []
    for i, kind in enumerate(WITNESS_KINDS):
        a, b = witness_residuals(kind, x, r, puncture)
        parts.append((kind, np.array([-a, -b]), np.array([i, i])))
    return _collect(f"sharpness_witnesses[r={_rtag(r)}]", parts, 1e-12, grid="4 witnesses x 2 equalities")


# ---------------------------------------------------------------------------
# Monotone functions


@dataclass(frozen=True)
class _MonotoneSpec:
    f: Callable[[FloatArray], FloatArray]
    lo: float
    hi: float
    decreasing: bool
    lim_lo: float
    lim_hi: float
    # f evaluated at offset h from the upper end when the natural approach variable is not r itself
    near_hi: Callable[[float], float] | None = None


def _f1(a: float):
    return lambda r: np.log1p(a * r) / r


def _f2(r):
    return r / (2.0 - r) - np.arctanh(r)


def _f3(r):
    # (r/(2-r)) / (-log(1-r)), which falls from 1/2 to 0
    return r / ((r - 2.0) * np.log1p(-r))


def _f3_near_one(u: float) -> float:
    # f3 at 1 - r = exp(-1/u); f3 -> 0 only like 1/|log(1-r)|, so u is the variable that reaches the limit
    h = math.exp(-1.0 / u)
    return (1.0 - h) * u / (1.0 + h)


def _f4(t):
    return np.log(t) - (t - 1.0) / (t + 1.0)


def monotone_function(which: str, a: float = 1.0) -> _MonotoneSpec:
    if which == "f1":
        if a <= 0:
            raise DomainError("f1 needs a > 0")
        return _MonotoneSpec(_f1(a), 0.0, math.inf, True, a, 0.0)
    if which == "f2":
        return _MonotoneSpec(_f2, 0.0, 1.0, True, 0.0, -math.inf)
    if which == "f3":
        return _MonotoneSpec(_f3, 0.0, 1.0, True, 0.5, 0.0, near_hi=_f3_near_one)
    if which == "f4":
        return _MonotoneSpec(_f4, 1.0, math.inf, False, 0.0, math.inf)
    raise ValueError(f"unknown function {which!r}")


def _endpoint(spec: _MonotoneSpec, end: str, h: float) -> float:
    if end == "lo":
        return spec.lo + h
    return 1.0 / h if math.isinf(spec.hi) else spec.hi - h


def _limit_margin(spec: _MonotoneSpec, end: str, tol: float) -> float:
    """Margin of the endpoint-limit claim from values at offsets 1e-6 and 1e-7."""
    h1, h2 = 1e-6, 1e-7
    if end == "hi" and spec.near_hi is not None:
        v1, v2 = spec.near_hi(h1), spec.near_hi(h2)
    else:
        v1 = float(spec.f(np.array(_endpoint(spec, end, h1))))
        v2 = float(spec.f(np.array(_endpoint(spec, end, h2))))
    target = spec.lim_lo if end == "lo" else spec.lim_hi
    if math.isinf(target):
        # divergent limit: the value must keep moving towards it
        return (v2 - v1) * math.copysign(1.0, target)
    extrapolated = v2 + (v2 - v1) * h2 / (h1 - h2)
    return tol - abs(extrapolated - target)


def lemma_monotone_check(which: str, a: float = 1.0, points: int = 10_000, eps: float = 1e-6,
                         tol: float = 1e-6) -> CheckReport:
    """Strict monotonicity on a grid plus the endpoint limits of f1..f4."""
    spec = monotone_function(which, a)
    name = f"lemma_monotone[{which}" + (f",a={a:g}]" if which == "f1" else "]")
    return monotone_report(spec, name, points, eps, tol)


def monotone_report(spec: _MonotoneSpec, name: str, points: int = 10_000, eps: float = 1e-6,
                    tol: float = 1e-6) -> CheckReport:
    if math.isinf(spec.hi):
        grid = spec.lo + np.geomspace(eps, 1.0 / eps, points)
    else:
        grid = np.linspace(spec.lo + eps, spec.hi - eps, points)
    vals = spec.f(grid)
    step = np.diff(vals) * (-1.0 if spec.decreasing else 1.0)
    # ties count as violations of strictness
    strict = np.where(step > 0, step, np.minimum(step, -np.finfo(float).tiny))
    parts = [
        ("strict_monotone", strict, grid[1:]),
        ("limit_lo", np.array([_limit_margin(spec, "lo", tol)]), np.array([spec.lo])),
        ("limit_hi", np.array([_limit_margin(spec, "hi", tol)]), np.array([spec.hi])),
    ]
    span = f"({spec.lo:g}, {spec.hi:g})"
    return _collect(
        name, parts, 0.0,
        grid=f"{points} points on {span}, open ends approached to {eps:g}",
        details={"decreasing": spec.decreasing, "limits": [spec.lim_lo, spec.lim_hi], "limit_tol": tol},
    )


# ---------------------------------------------------------------------------
# Convexity inequality for the inner branch


def inner_branch_g(r: FloatArray, alpha: FloatArray) -> FloatArray:
    """g(alpha) = cos a - 2 sqrt2 cos(a/2) sqrt(cos a + 2r^2 - 1), claimed to satisfy g >= -1."""
    c = np.cos(alpha)
    return c - 2.0 * math.sqrt(2.0) * np.cos(alpha / 2.0) * np.sqrt(np.maximum(c + 2.0 * r * r - 1.0, 0.0))


def inner_branch_scan(r_points: int = 200, alpha_points: int = 200, margin: float = 1e-9) -> CheckReport:
    """Scan g >= -1 + margin for r in (0, 1/2] and alpha strictly inside (0, arccos(1 - 2r^2))."""
    r = 0.5 * np.arange(1, r_points + 1) / r_points
    frac = np.arange(1, alpha_points + 1) / (alpha_points + 1)
    amax = np.arccos(1.0 - 2.0 * r * r)
    R = np.repeat(r, alpha_points)
    A = (amax[:, None] * frac[None, :]).ravel()
    g = inner_branch_g(R, A)
    i = int(np.argmin(g))
    r_w = float(R[i])
    details = {
        "min_g": float(g[i]),
        "min_one_plus_g": float(1.0 + g[i]),
        "g0_direct_at_worst_r": 1.0 - 4.0 * r_w,
        "g0_opposite_sign_at_worst_r": 4.0 * r_w - 1.0,
    }
    notes = ("direct evaluation gives g(0) = 1 - 4r; the opposite sign 4r - 1 is also reported, "
             "and the scan does not rely on either")
    return _collect("inner_branch_scan", [("g_plus_one_minus_margin", 1.0 + g - margin, np.column_stack([R, A]))],
                    0.0, grid=f"{r_points} x {alpha_points} (r, alpha) interior grid", notes=notes, details=details)


# ---------------------------------------------------------------------------
# Conjecture scans


def conjecture_part1_f(m: FloatArray, t: FloatArray) -> FloatArray:
    s2 = np.sin(m / 2.0) ** 2
    arg = m * m - np.log(t) ** 2
    return (1.0 - s2) * (1.0 + t * t) - 2.0 * (s2 + np.cos(np.sqrt(np.maximum(arg, 0.0)))) * t


def conjecture_scan_part1(grid: ScanConfig = ScanConfig(), tol: float = 1e-9) -> CheckReport:
    """max f(m, t) over m in [0, pi/2] and t in [e^-m, e^m]; the conjectured bound is f <= 0."""
    m = np.linspace(0.0, math.pi / 2.0, grid.m_points)
    u = np.linspace(-1.0, 1.0, grid.t_points)
    M = np.repeat(m, grid.t_points)
    T = np.exp((m[:, None] * u[None, :]).ravel())
    f = conjecture_part1_f(M, T)
    f_at_one = conjecture_part1_f(m, np.ones_like(m))
    details = {"max_f": float(np.max(f)), "max_abs_f_at_t_1": float(np.max(np.abs(f_at_one)))}
    notes = (EVIDENCE_NOTE + "; t in [0, e^-m) is excluded because m^2 - log^2 t < 0 there "
             "and the formula is not real-valued")
    rep = _collect("conjecture_part1", [("minus_f", -f, np.column_stack([M, T]))], tol,
                   grid=f"{grid.m_points} m-values x {grid.t_points} t-values (log-uniform in [e^-m, e^m])",
                   notes=notes, details=details)
    rep.details["f_at_t_1_ok"] = bool(details["max_abs_f_at_t_1"] <= IDENTITY_TOL)
    rep.passed = rep.passed and rep.details["f_at_t_1_ok"]
    return rep


def conjecture_part2_f(r: FloatArray, t: FloatArray) -> FloatArray:
    # (1 - r)(1 + r) avoids the cancellation of 1 - r^2 near r = 1
    arg = 0.5 * ((1.0 - r) * (1.0 + r)) * (t + 1.0 / t) - r * r
    if np.any(np.abs(np.clip(arg, -1.0, 1.0) - arg) > 1e-12):
        raise ValueError("arccos argument leaves [-1, 1] by more than 1e-12")
    return np.arccos(np.clip(arg, -1.0, 1.0)) ** 2 + np.log(t) ** 2


def conjecture_scan_part2(grid: ScanConfig = ScanConfig(), tol: float = 1e-9) -> CheckReport:
    """max of f(t) - f((1+r)/(1-r)) over r in (0, 1) and t strictly between the two endpoints."""
    eps = grid.open_eps
    r = np.linspace(eps, 1.0 - eps, grid.r_points)
    hi = (1.0 + r) / (1.0 - r)
    lo = (1.0 - r) / (1.0 + r)
    u = np.linspace(-1.0, 1.0, grid.t_points + 2)[1:-1]
    R = np.repeat(r, grid.t_points)
    T = np.exp((np.log(hi)[:, None] * u[None, :]).ravel())
    f_hi = conjecture_part2_f(r, hi)
    f_lo = conjecture_part2_f(r, lo)
    margin = np.repeat(f_hi, grid.t_points) - conjecture_part2_f(R, T)
    sym = np.abs(f_hi - f_lo)
    details = {"max_excess": float(-np.min(margin)), "max_endpoint_asymmetry": float(np.max(sym))}
    rep = _collect("conjecture_part2", [("endpoint_value_minus_f", margin, np.column_stack([R, T]))], tol,
                   grid=f"{grid.r_points} r-values x {grid.t_points} t-values (log-uniform, open)",
                   notes=EVIDENCE_NOTE, details=details)
    rep.details["symmetry_ok"] = bool(np.max(sym) <= IDENTITY_TOL)
    rep.passed = rep.passed and rep.details["symmetry_ok"]
    return rep


# ---------------------------------------------------------------------------
# s versus j


def sample_interior(G: Domain, count: int, rng: np.random.Generator, scale: float = 2.0) -> FloatArray:
    """Random points of G spread over several scales of boundary distance."""
    if isinstance(G, (PuncturedSpace, PuncturedHalfSpace)):
        base = G.puncture
        n = G.dim
        d = rng.normal(size=(count, n))
        d /= _norm(d)[:, None]
        rad = scale * np.exp(rng.uniform(math.log(1e-3), 0.0, count))
        y = base + rad[:, None] * d
        if isinstance(G, PuncturedHalfSpace):
            y[:, -1] = np.abs(y[:, -1])
    elif isinstance(G, HalfSpace):
        y = rng.uniform(-scale, scale, size=(count, G.dim))
        y[:, -1] = scale * np.exp(rng.uniform(math.log(1e-3), 0.0, count))
    elif isinstance(G, Angular):
        rad = scale * np.exp(rng.uniform(math.log(1e-3), 0.0, count))
        ang = rng.uniform(-0.5 * G.alpha, 0.5 * G.alpha, count)
        y = rad[:, None] * np.column_stack([np.cos(ang), np.sin(ang)])
    elif isinstance(G, (Polygon, SampledBoundary)):
        pts = G.vertices if isinstance(G, Polygon) else G.samples
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        out = []
        while sum(len(o) for o in out) < count:
            y = rng.uniform(lo, hi, size=(2 * count, len(lo)))
            out.append(y[np.asarray(contains(G, y))])
        return np.concatenate(out)[:count]
    else:
        raise TypeError(f"unsupported domain {type(G).__name__}")
    return y[np.asarray(contains(G, y))]


def s_j_ratio_check(G: Domain, samples: int = 100_000, seed: int = DEFAULT_SEED) -> CheckReport:
    """max of s log(c) / j over random pairs; c = 3 on punctured space, 2 elsewhere."""
    rng = np.random.default_rng(seed)
    c = 3.0 if isinstance(G, PuncturedSpace) else 2.0
    x = sample_interior(G, samples, rng)
    y = sample_interior(G, len(x), rng)
    k = min(len(x), len(y))
    x, y = x[:k], y[:k]
    keep = _norm(x - y) > 0
    x, y = x[keep], y[keep]
    ratio = s_unchecked(G, x, y) * math.log(c) / j_unchecked(G, x, y)
    parts = [("one_minus_ratio", 1.0 - ratio, np.arange(len(x)))]
    details: dict[str, Any] = {"constant": f"log {c:g}", "max_ratio": float(np.max(ratio)), "pairs": len(x)}
    if isinstance(G, PuncturedSpace):
        # collinear through the puncture with equal norms: equality case
        xe = sample_interior(G, 100, rng)
        ye = 2.0 * G.puncture - xe
        eq = s_unchecked(G, xe, ye) * math.log(3.0) / j_unchecked(G, xe, ye)
        details["equality_case_max_deviation"] = float(np.max(np.abs(eq - 1.0)))
    return _collect(f"s_j_ratio[{type(G).__name__}]", parts, 1e-9, grid=f"{len(x)} random pairs",
                    seed=seed, details=details)


# ---------------------------------------------------------------------------
# Unit-disk preset (conjectured j inclusions), sampled boundary


def unit_disk_boundary(samples: int = 4000) -> SampledBoundary:
    th = 2.0 * np.pi * np.arange(samples) / samples
    return SampledBoundary(np.column_stack([np.cos(th), np.sin(th)]))


def unit_ball_j_scan(x: ArrayLike = (0.3, 0.2), radii: ArrayLike = (0.1, 0.3, 0.5, 0.7),
                     boundary_samples: int = 4000, directions: int = 512) -> CheckReport:
    """j values on traced s-spheres in the unit disk against log(1+2r) and log(1+2r/(1-r))."""
    x = as_point(x, 2)
    if not np.linalg.norm(x) < 1.0:
        raise DomainError("centre must lie in the unit disk")
    G = unit_disk_boundary(boundary_samples)
    parts = []
    for r in np.atleast_1d(np.asarray(radii, dtype=float)):
        trace = balls.trace_ball_generic(G, x, float(r), directions=directions)
        j = j_unchecked(G, x, trace.vertices)
        loc = np.column_stack([np.full(len(j), r), trace.params])
        parts.append((f"r={r:g}_lower", j - math.log1p(2 * r), loc))
        parts.append((f"r={r:g}_upper", math.log1p(2 * r / (1 - r)) - j, loc))
    notes = EVIDENCE_NOTE + f"; the boundary circle is sampled at {boundary_samples} points, so s is a lower bound"
    return _collect("unit_ball_j_scan", parts, 1e-9, grid=f"{directions} directions per radius", notes=notes)
