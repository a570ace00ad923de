"""Metric-ball boundaries: closed-form disks, traced contours, slopes and convexity."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.typing import ArrayLike

from .geometry import (
    Domain,
    DomainError,
    FloatArray,
    HalfSpace,
    PuncturedSpace,
    _cross2,
    _norm,
    as_point,
    ray_exit_distance,
    require_inside,
    boundary_distance_unchecked,
)
from .metrics import s_unchecked

ANALYTIC_TRACE_TOL = 1e-9
ROOT_TRACE_TOL = 1e-6
MAX_TRACE_RADIUS = 0.995
DISCRIMINANT_SLACK = 1e-14


class TraceError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class Disk:
    """Euclidean ball B^n(center, radius)."""

    center: FloatArray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ValueError(f"disk radius must be positive and finite, got {self.radius}")
        object.__setattr__(self, "radius", float(self.radius))

    def boundary_points(self, k: int, offset: float = 0.0) -> FloatArray:
        """``k`` equally spaced boundary points in the plane of e_1 and e_n."""
        th = offset + 2.0 * np.pi * np.arange(k) / k
        pts = np.tile(self.center, (k, 1))
        pts[:, 0] += self.radius * np.cos(th)
        pts[:, -1] += self.radius * np.sin(th)
        return pts


@dataclass(frozen=True, eq=False)
class BoundaryTrace:
    """Closed polyline sampling the boundary of B_s(x, r).

    ``params`` increases along the loop. ``open_params`` lists the directions
    in which no crossing was found (their vertices are omitted).
    """

    center: FloatArray
    radius: float
    vertices: FloatArray
    params: FloatArray
    residuals: FloatArray
    tolerance: float
    branch: tuple[str, ...] | None = None
    open_params: tuple[float, ...] = ()
    extra: dict = field(default_factory=dict)

    @property
    def closed(self) -> bool:
        return not self.open_params

    @property
    def max_residual(self) -> float:
        return float(np.max(self.residuals)) if len(self.residuals) else 0.0

    def to_csv(self) -> str:
        buf = io.StringIO()
        for p in self.open_params:
            buf.write(f"# open ray at param={p!r}: no crossing before the domain boundary\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["param", "px", "py", "residual"])
        for p, v, res in zip(self.params, self.vertices, self.residuals):
            w.writerow([repr(float(p)), repr(float(v[0])), repr(float(v[1])), repr(float(res))])
        return buf.getvalue()


@dataclass(frozen=True)
class ConvexityVerdict:
    convex: bool
    worst_turn: float
    worst_param: float
    method: str


def _check_radius(r: float) -> None:
    if not 0.0 < r < 1.0:
        raise DomainError(f"s-radius must lie in (0, 1), got {r}")


# ---------------------------------------------------------------------------
# Punctured plane


def punctured_alpha_max(r: float) -> float:
    """Half-width of the polar-angle range covered by the ball about a puncture."""
    return math.acos(1.0 - 2.0 * r * r)


def _punctured_branches(r: float, alpha: FloatArray) -> tuple[FloatArray, FloatArray]:
    c = np.cos(alpha)
    disc = (1.0 + c) * (c + 2.0 * r * r - 1.0)
    if np.any(disc < -DISCRIMINANT_SLACK):
        raise DomainError("polar angle outside the range covered by the ball")
    root = np.sqrt(np.maximum(disc, 0.0))
    t1 = 2.0 * (r * r + c - root) / (1.0 - r * r)
    t2 = 2.0 * (r * r + c + root) / (1.0 - r * r)
    return t1, t2


def trace_punctured_ball(x: ArrayLike, r: float, samples: int = 1024, puncture: ArrayLike | None = None) -> BoundaryTrace:
    """Boundary of B_s(x, r) in the plane punctured at ``puncture`` (default origin).

    Works in the normalised frame (puncture at 0, centre at 2 e_1), where the
    boundary is the polar curve |y| = t(alpha) with inner and outer branches.
    """
    x = as_point(x, 2)
    p = np.zeros(2) if puncture is None else as_point(puncture, 2)
    _check_radius(r)
    if r > MAX_TRACE_RADIUS:
        raise DomainError(f"trace radius {r} exceeds {MAX_TRACE_RADIUS}: the outer branch diverges as r -> 1")
    if samples < 8:
        raise ValueError("need at least 8 samples per branch")
    v = x - p
    nv = float(np.hypot(*v))
    if nv == 0:
        raise DomainError("the centre coincides with the puncture")

    amax = punctured_alpha_max(r)
    alpha = np.linspace(-amax, amax, samples)
    t1, t2 = _punctured_branches(r, alpha)
    # inner branch with alpha ascending, then outer branch back (shared endpoints dropped)
    a_loop = np.concatenate([alpha, alpha[-2:0:-1]])
    t_loop = np.concatenate([t1, t2[-2:0:-1]])
    params = np.concatenate([alpha, 2.0 * amax - alpha[-2:0:-1]])
    branch = ("inner",) * samples + ("outer",) * (samples - 2)

    phi = math.atan2(v[1], v[0])
    scale = 0.5 * nv
    ang = a_loop + phi
    verts = p + scale * t_loop[:, None] * np.column_stack([np.cos(ang), np.sin(ang)])
    res = np.abs(s_unchecked(PuncturedSpace(p), x, verts) - r)
    if np.max(res) > ANALYTIC_TRACE_TOL:
        raise TraceError(f"analytic trace residual {np.max(res):.3e} exceeds {ANALYTIC_TRACE_TOL}")
    return BoundaryTrace(
        center=x, radius=r, vertices=verts, params=params, residuals=res,
        tolerance=ANALYTIC_TRACE_TOL, branch=branch,
        extra={"alpha": a_loop, "t": t_loop, "alpha_max": amax, "puncture": p},
    )


def slope_punctured(x_norm: float, r: float, alpha: ArrayLike, branch: str) -> float | FloatArray:
    """Slope dy/dx of the boundary of B_s(2 e_1, r) at polar angle ``alpha``.

    Slopes are invariant under the scaling that normalises |x| to 2, so
    ``x_norm`` only needs to be positive.
    """
    if x_norm <= 0:
        raise DomainError("centre must differ from the puncture")
    _check_radius(r)
    a = np.asarray(alpha, dtype=float)
    amax = punctured_alpha_max(r)
    if np.any(a <= 0) or np.any(a >= amax):
        raise DomainError(f"alpha must lie in (0, {amax}) for r={r}")
    c = np.cos(a)
    root = np.sqrt((1.0 + c) * (c + 2.0 * r * r - 1.0))
    sa, ta = np.sin(a), np.tan(a)
    if branch == "inner":
        m = (root + sa * ta) / (sa - root * ta)
    elif branch == "outer":
        m = (-root + sa * ta) / (sa + root * ta)
    else:
        raise ValueError(f"branch must be 'inner' or 'outer', got {branch!r}")
    return float(m) if m.ndim == 0 else m


def slope_derivative_punctured(r: float, alpha: ArrayLike, branch: str) -> FloatArray:
    """d(slope)/d(alpha) in closed form; its sign decides local convexity."""
    a = np.asarray(alpha, dtype=float)
    c = np.cos(a)
    phi = 1.0 + c
    omega = c + 2.0 * r * r - 1.0
    root = np.sqrt(phi * omega)
    lead = 2.0 * r * r * np.cos(a / 2) ** 2 / c**2
    with np.errstate(divide="ignore", invalid="ignore"):
        if branch == "inner":
            num = -lead * (phi - 2.0 * math.sqrt(2.0) * np.sqrt(np.cos(a / 2) ** 2 * omega))
            return num / (root * (np.sin(a) - np.tan(a) * root) ** 2)
        if branch == "outer":
            inner = np.maximum(np.cos(2 * a) + 4 * r * r * c + 4 * r * r - 1.0, 0.0)
            num = lead * (phi + math.sqrt(2.0) * np.sqrt(inner))
            return num / (root * (np.sin(a) + np.tan(a) * root) ** 2)
    raise ValueError(f"branch must be 'inner' or 'outer', got {branch!r}")


def analytic_convexity_punctured(r: float, samples: int = 2000, tol: float = 1e-9) -> ConvexityVerdict:
    """Classify B_s(x, r) in a punctured plane from the slope derivatives.

    The upper half of the boundary is convex iff the inner-branch slope
    decreases and the outer-branch slope increases in alpha.
    """
    _check_radius(r)
    amax = punctured_alpha_max(r)
    a = amax * np.arange(1, samples + 1) / (samples + 1)
    q1 = -slope_derivative_punctured(r, a, "inner")
    q2 = slope_derivative_punctured(r, a, "outer")
    q = np.minimum(np.nan_to_num(q1, nan=np.inf), np.nan_to_num(q2, nan=np.inf))
    score = np.arctan(q) * (2.0 / np.pi)
    i = int(np.argmin(score))
    return ConvexityVerdict(bool(score[i] >= -tol), float(score[i]), float(a[i]), "analytic-slope")


# ---------------------------------------------------------------------------
# Half-space identities


def _check_upper(x: FloatArray) -> None:
    if x[-1] <= 0:
        raise DomainError("the centre must lie in the upper half-space (x_n > 0)")


def halfspace_s_ball(x: ArrayLike, r: float) -> Disk:
    """The Euclidean ball equal to B_s(x, r) in the half-space."""
    x = as_point(x)
    _check_upper(x)
    _check_radius(r)
    xn = x[-1]
    center = x.copy()
    center[-1] = xn * (1.0 + r * r) / (1.0 - r * r)
    return Disk(center, 2.0 * xn * r / (1.0 - r * r))


def euclid_ball_as_s_ball(x: ArrayLike, r: float) -> tuple[FloatArray, float]:
    """Centre and s-radius of the s-ball equal to B^n(x, r), for r < x_n."""
    x = as_point(x)
    _check_upper(x)
    xn = x[-1]
    if not 0.0 < r < xn:
        raise DomainError(f"Euclidean radius must lie in (0, x_n) = (0, {xn}), got {r}")
    root = math.sqrt(xn * xn - r * r)
    center = x.copy()
    center[-1] = root
    # (x_n - root) / r without cancellation
    return center, r / (xn + root)


def s_ball_as_hyperbolic_ball(x: ArrayLike, r: float) -> tuple[FloatArray, float]:
    """Hyperbolic centre and radius t of B_s(x, r) in the half-space.

    ``tanh t = 2r / (1 + r^2)``; ``t = 2 artanh r`` is the same value without
    the cancellation near r = 1.  The centre shift factor solves
    ``a cosh t = x_n (1 + r^2)/(1 - r^2)`` and comes out as 1 up to rounding.
    """
    x = as_point(x)
    _check_upper(x)
    _check_radius(r)
    t = 2.0 * math.atanh(r)
    a = (1.0 + r * r) / (math.cosh(t) * (1.0 - r * r))
    center = x.copy()
    center[-1] = x[-1] - x[-1] * (1.0 - a)
    return center, t


def hyperbolic_ball_disk(center: ArrayLike, t: float) -> Disk:
    """Euclidean realisation of the hyperbolic ball B_rho(center, t)."""
    c = as_point(center)
    _check_upper(c)
    e = c.copy()
    e[-1] = c[-1] * math.cosh(t)
    return Disk(e, c[-1] * math.sinh(t))


# ---------------------------------------------------------------------------
# Generic tracing by root finding


def trace_ball_generic(
    G: Domain, x: ArrayLike, r: float, directions: int = 1024, steps: int = 256, bisections: int = 60
) -> BoundaryTrace:
    """Trace the boundary of B_s(x, r) along ``directions`` rays from x.

    Each ray is scanned with ``steps`` samples up to where it leaves G (or the
    Euclidean outer bound 2r/(1-r) d_G(x), slightly enlarged), and the first
    sign change of s - r is refined by bisection.
    """
    x = as_point(x, 2)
    if G.dim != 2:
        raise ValueError("tracing is planar")
    require_inside(G, x)
    _check_radius(r)
    if r > MAX_TRACE_RADIUS:
        raise DomainError(f"trace radius {r} exceeds {MAX_TRACE_RADIUS}")
    theta = 2.0 * np.pi * np.arange(directions) / directions
    u = np.column_stack([np.cos(theta), np.sin(theta)])
    t_cross, found = ray_crossings(G, x, r, u, steps=steps, bisections=bisections)

    verts = x + t_cross[found, None] * u[found]
    res = np.abs(s_unchecked(G, x, verts) - r)
    if len(res) and np.max(res) > ROOT_TRACE_TOL:
        raise TraceError(f"root-found trace residual {np.max(res):.3e} exceeds {ROOT_TRACE_TOL}")
    return BoundaryTrace(
        center=x, radius=r, vertices=verts, params=theta[found], residuals=res,
        tolerance=ROOT_TRACE_TOL, open_params=tuple(float(t) for t in theta[~found]),
    )


def ray_crossings(
    G: Domain, x: FloatArray, r: float, u: FloatArray, steps: int = 256, bisections: int = 60
) -> tuple[FloatArray, np.ndarray]:
    """First distance along each unit direction ``u`` where s(x, .) reaches r."""
    exit_t = ray_exit_distance(G, x, u)
    bound = 1.05 * 2.0 * r / (1.0 - r) * float(boundary_distance_unchecked(G, x))
    extent = np.minimum(exit_t, bound)
    frac = np.arange(1, steps + 1) / steps
    ts = extent[:, None] * frac[None, :]
    pts = x + ts[..., None] * u[:, None, :]
    on_boundary = ts >= exit_t[:, None]
    vals = np.ones_like(ts)
    inside = ~on_boundary
    vals[inside] = s_unchecked(G, x, pts[inside])
    hit = vals >= r
    found = hit.any(axis=1)
    k = np.argmax(hit, axis=1)
    rows = np.arange(len(u))
    hi = ts[rows, k]
    lo = np.where(k > 0, ts[rows, np.maximum(k - 1, 0)], 0.0)
    for _ in range(bisections):
        mid = 0.5 * (lo + hi)
        below = s_unchecked(G, x, x + mid[:, None] * u) < r
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi), found


# ---------------------------------------------------------------------------
# Convexity


def polyline_is_convex(trace: BoundaryTrace | ArrayLike, tol: float = 1e-9) -> ConvexityVerdict:
    """Discrete convexity test on a closed polyline.

    A vertex turn is the cross product of its incoming and outgoing edges
    divided by their lengths; the polyline is convex when every turn has the
    orientation's sign (within ``tol``) and the loop winds exactly once.
    """
    if isinstance(trace, BoundaryTrace):
        v, params = trace.vertices, trace.params
    else:
        v = np.asarray(trace, dtype=float)
        params = np.arange(len(v), dtype=float)
    if len(v) < 4:
        raise ValueError("convexity test needs at least 4 vertices")
    e = np.roll(v, -1, axis=0) - v
    le = _norm(e)
    if np.any(le == 0):
        raise ValueError("degenerate polyline: repeated consecutive vertices")
    e_next = np.roll(e, -1, axis=0)
    le_next = np.roll(le, -1)
    area2 = float(np.sum(_cross2(v, np.roll(v, -1, axis=0))))
    orient = 1.0 if area2 >= 0 else -1.0
    turn = orient * _cross2(e, e_next) / (le * le_next)
    angles = np.arctan2(turn, np.sum(e * e_next, axis=-1) / (le * le_next))
    i = int(np.argmin(turn))
    winds_once = abs(float(np.sum(angles)) - 2.0 * np.pi) < 1e-6
    convex = bool(turn[i] >= -tol) and winds_once
    return ConvexityVerdict(convex, float(turn[i]), float(params[(i + 1) % len(v)]), "polyline-turning")


def default_tracer(G: Domain, x: FloatArray, directions: int = 2048) -> Callable[[float], BoundaryTrace]:
    if isinstance(G, PuncturedSpace):
        return lambda r: trace_punctured_ball(x, r, samples=directions, puncture=G.puncture)
    return lambda r: trace_ball_generic(G, x, r, directions=directions)


def convexity_radius_estimate(
    G: Domain, x: ArrayLike, r_lo: float = 0.05, r_hi: float = 0.99, tol: float = 1e-3,
    directions: int = 2048, turn_tol: float = 1e-9,
) -> float:
    """Largest radius in [r_lo, r_hi], to within ``tol``, at which the traced ball is still convex.

    Returns ``r_hi`` when the ball is convex at both ends of the range.
    """
    x = as_point(x)
    if not 0.0 < r_lo < r_hi < 1.0:
        raise DomainError("need 0 < r_lo < r_hi < 1")
    trace = default_tracer(G, x, directions)

    def convex(r: float) -> bool:
        return polyline_is_convex(trace(r), turn_tol).convex

    if not convex(r_lo):
        raise DomainError(f"ball is already nonconvex at r_lo={r_lo}")
    if convex(r_hi):
        return r_hi
    lo, hi = r_lo, r_hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if convex(mid):
            lo = mid
        else:
            hi = mid
    return lo


def circle_deviation(points: ArrayLike) -> tuple[FloatArray, float, float]:
    """Least-squares circle through planar points: (centre, radius, max radial deviation)."""
    p = np.asarray(points, dtype=float)
    A = np.column_stack([2 * p[:, 0], 2 * p[:, 1], np.ones(len(p))])
    b = np.sum(p * p, axis=1)
    (cx, cy, k), *_ = np.linalg.lstsq(A, b, rcond=None)
    c = np.array([cx, cy])
    R = math.sqrt(k + cx * cx + cy * cy)
    return c, R, float(np.max(np.abs(_norm(p - c) - R)))


# ---------------------------------------------------------------------------
# Radius thresholds


def r0_punctured_halfplane(x: ArrayLike) -> float:
    """Radius up to which B_s(x, r) in the upper half-plane punctured at e_2 is a disk (x_2 < |x_1|)."""
    x = as_point(x, 2)
    x1, x2 = x
    if not 0.0 < x2 < abs(x1):
        raise DomainError("needs 0 < x_2 < |x_1|")
    return (math.hypot(x1, x2) - math.sqrt(2.0) * x2) / (abs(x1) + x2)


def angular_smoothness_bound(beta: float, alpha: float) -> float:
    """Radius below which the s-ball in the sector of opening ``alpha`` is a round disk.

    ``beta`` is the angle between the centre and the symmetry axis.  For
    alpha <= pi the bound is sin(beta)/sin(alpha/2).  For alpha in (pi, 2pi)
    and beta > (alpha - pi)/2 the same formula applies to the sub-sector of
    opening (pi + alpha)/2 - beta bounded by the nearer side.
    """
    if not 0.0 < alpha < 2.0 * math.pi:
        raise DomainError("sector opening must lie in (0, 2*pi)")
    if alpha <= math.pi:
        if not 0.0 <= beta <= alpha / 2:
            raise DomainError(f"beta must lie in [0, alpha/2] = [0, {alpha / 2}]")
        return math.sin(beta) / math.sin(alpha / 2)
    if not (alpha - math.pi) / 2 < beta <= alpha / 2:
        raise DomainError(
            f"for alpha > pi the smoothness bound needs (alpha-pi)/2 < beta <= alpha/2, got beta={beta}"
        )
    beta_sub = beta / 2 + (math.pi - alpha) / 4
    alpha_sub = (math.pi + alpha) / 2 - beta
    return math.sin(beta_sub) / math.sin(alpha_sub / 2)
