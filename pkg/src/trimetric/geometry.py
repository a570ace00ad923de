"""Points, domains and the boundary path-length minimisation behind every s evaluation.

Points are plain float ``numpy`` arrays of shape ``(n,)``; functions that take
a batch of points accept shape ``(..., n)`` and broadcast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

FloatArray = NDArray[np.float64]


class DomainError(ValueError):
    """A point lies outside its domain or a precondition on the inputs fails."""


def as_point(coords: ArrayLike, dim: int | None = None) -> FloatArray:
    """Validate ``coords`` as a single point of R^n with n >= 2."""
    p = np.asarray(coords, dtype=float)
    if p.ndim != 1 or p.shape[0] < 2:
        raise ValueError(f"a point needs at least 2 coordinates, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError(f"point coordinates must be finite, got {p}")
    if dim is not None and p.shape[0] != dim:
        raise ValueError(f"dimension mismatch: expected {dim}, got {p.shape[0]}")
    return p


def as_points(coords: ArrayLike) -> FloatArray:
    pts = np.asarray(coords, dtype=float)
    if pts.ndim == 0 or pts.shape[-1] < 2:
        raise ValueError(f"points need at least 2 coordinates, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("point coordinates must be finite")
    return pts


def _frozen(a: FloatArray) -> FloatArray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


def _norm(v: FloatArray) -> FloatArray:
    return np.sqrt(np.sum(v * v, axis=-1))


def _cross2(u: FloatArray, v: FloatArray) -> FloatArray:
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


# ---------------------------------------------------------------------------
# Domains


@dataclass(frozen=True, eq=False)
class PuncturedSpace:
    """R^n with a single point removed."""

    puncture: FloatArray

    def __post_init__(self):
        object.__setattr__(self, "puncture", _frozen(as_point(self.puncture)))

    @property
    def dim(self) -> int:
        return self.puncture.shape[0]


@dataclass(frozen=True)
class HalfSpace:
    """Upper half-space {x : x_n > 0}."""

    dimension: int = 2

    def __post_init__(self):
        if self.dimension < 2:
            raise ValueError("half-space dimension must be at least 2")

    @property
    def dim(self) -> int:
        return self.dimension


@dataclass(frozen=True, eq=False)
class PuncturedHalfSpace:
    """Upper half-space with one interior point removed."""

    puncture: FloatArray

    def __post_init__(self):
        p = as_point(self.puncture)
        if p[-1] <= 0:
            raise ValueError("the puncture must lie in the open upper half-space")
        object.__setattr__(self, "puncture", _frozen(p))

    @property
    def dim(self) -> int:
        return self.puncture.shape[0]


@dataclass(frozen=True)
class Angular:
    """Planar sector of opening ``alpha`` symmetric about the positive first axis."""

    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha < 2.0 * math.pi:
            raise ValueError(f"sector opening must lie in (0, 2*pi), got {self.alpha}")
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def dim(self) -> int:
        return 2

    def side_directions(self) -> tuple[FloatArray, FloatArray]:
        h = 0.5 * self.alpha
        return np.array([math.cos(h), math.sin(h)]), np.array([math.cos(h), -math.sin(h)])


@dataclass(frozen=True, eq=False)
class Polygon:
    """Simple planar polygon given by its vertices in order (no repeated closing vertex)."""

    vertices: FloatArray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise ValueError("a polygon needs at least 3 planar vertices")
        if not np.all(np.isfinite(v)):
            raise ValueError("polygon vertices must be finite")
        if np.allclose(v[0], v[-1]):
            v = v[:-1]
        if not _is_simple(v):
            raise ValueError("polygon vertices do not form a simple closed polyline")
        object.__setattr__(self, "vertices", _frozen(v))

    @property
    def dim(self) -> int:
        return 2

    def edges(self) -> tuple[FloatArray, FloatArray]:
        return self.vertices, np.roll(self.vertices, -1, axis=0)


@dataclass(frozen=True, eq=False)
class SampledBoundary:
    """A finite sample of some boundary; s computed from it is a lower bound."""

    samples: FloatArray

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=float)
        if s.ndim == 1:
            s = s[None, :]
        if s.ndim != 2 or s.shape[0] < 1 or s.shape[1] < 2:
            raise ValueError("a sampled boundary needs at least one point")
        if not np.all(np.isfinite(s)):
            raise ValueError("boundary samples must be finite")
        object.__setattr__(self, "samples", _frozen(s))

    @property
    def dim(self) -> int:
        return self.samples.shape[1]


Domain = Union[PuncturedSpace, HalfSpace, PuncturedHalfSpace, Angular, Polygon, SampledBoundary]


def _segments_cross(p1, p2, q1, q2) -> bool:
    d1 = _cross2(p2 - p1, q1 - p1)
    d2 = _cross2(p2 - p1, q2 - p1)
    d3 = _cross2(q2 - q1, p1 - q1)
    d4 = _cross2(q2 - q1, p2 - q1)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True

    def on(a, b, c, d):
        return d == 0 and min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    return on(p1, p2, q1, d1) or on(p1, p2, q2, d2) or on(q1, q2, p1, d3) or on(q1, q2, p2, d4)


def _is_simple(v: FloatArray) -> bool:
    n = len(v)
    if np.any(_norm(np.roll(v, -1, axis=0) - v) == 0):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if _segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]):
                return False
    return True


# ---------------------------------------------------------------------------
# Segments, reflections, angles


@dataclass(frozen=True, eq=False)
class Segment:
    """A boundary piece.

    ``kind`` is ``"segment"`` (``b`` is the far endpoint), ``"ray"`` (``b`` is a
    direction from ``a``) or ``"line"`` (``b`` is a direction, unbounded both ways).
    """

    a: FloatArray
    b: FloatArray
    kind: str = "segment"

    def __post_init__(self):
        a = as_point(self.a, 2)
        b = as_point(self.b, 2)
        if self.kind not in ("segment", "ray", "line"):
            raise ValueError(f"unknown segment kind {self.kind!r}")
        if self.kind == "segment" and np.array_equal(a, b):
            raise ValueError("degenerate segment: endpoints coincide")
        if self.kind != "segment" and not np.any(b):
            raise ValueError("degenerate ray: zero direction")
        object.__setattr__(self, "a", _frozen(a))
        object.__setattr__(self, "b", _frozen(b))

    @property
    def direction(self) -> FloatArray:
        return self.b - self.a if self.kind == "segment" else self.b

    @classmethod
    def ray(cls, origin, direction) -> "Segment":
        return cls(origin, direction, "ray")

    @classmethod
    def line(cls, point, direction) -> "Segment":
        return cls(point, direction, "line")


def reflect_halfspace(y: ArrayLike) -> FloatArray:
    """Mirror image across the hyperplane x_n = 0."""
    y = as_points(y)
    out = np.array(y, dtype=float)
    out[..., -1] = -out[..., -1]
    return out


def reflect_across_line(p: ArrayLike, s: Segment) -> FloatArray:
    """Mirror image of planar point(s) ``p`` across the infinite line carrying ``s``."""
    p = as_points(p)
    if p.shape[-1] != 2:
        raise ValueError("reflection across a line is planar")
    d = s.direction
    w = p - s.a
    foot = s.a + (w @ d / (d @ d))[..., None] * d
    return 2.0 * foot - p


def min_path_via_boundary_piece(x: ArrayLike, y: ArrayLike, s: Segment) -> FloatArray:
    """Minimum of |x - z| + |z - y| over z on the piece ``s``.

    The path length is convex along the piece, so the exact minimum is at the
    unconstrained minimiser on the carrying line (found by the reflection
    construction, or at the crossing point if x and y are on opposite sides)
    clamped to the piece's parameter range.
    """
    x = as_points(x)
    y = as_points(y)
    if x.shape[-1] != 2 or y.shape[-1] != 2:
        raise ValueError("boundary pieces are planar")
    return _min_path(x, y, s.a, s.direction, s.kind)


def _min_path(x: FloatArray, y: FloatArray, a: FloatArray, d: FloatArray, kind: str) -> FloatArray:
    dd = d @ d
    inv_len = 1.0 / math.sqrt(dd)
    wx = x - a
    wy = y - a
    px = (wx @ d) / dd
    py = (wy @ d) / dd
    hx = np.abs(_cross2(np.broadcast_to(d, wx.shape), wx)) * inv_len
    hy = np.abs(_cross2(np.broadcast_to(d, wy.shape), wy)) * inv_len
    hsum = hx + hy
    with np.errstate(invalid="ignore", divide="ignore"):
        w = np.where(hsum > 0, hx / hsum, 0.5)
    lam = px + (py - px) * w
    if kind == "segment":
        lam = np.clip(lam, 0.0, 1.0)
    elif kind == "ray":
        lam = np.maximum(lam, 0.0)
    z = a + np.asarray(lam)[..., None] * d
    return _norm(x - z) + _norm(z - y)


def angle_at(vertex: ArrayLike, a: ArrayLike, b: ArrayLike) -> FloatArray:
    """Angle in [0, pi] at ``vertex`` between the arms towards ``a`` and ``b``."""
    vertex = as_points(vertex)
    u = as_points(a) - vertex
    v = as_points(b) - vertex
    nu = _norm(u)
    nv = _norm(v)
    if np.any(nu == 0) or np.any(nv == 0):
        raise ValueError("zero-length arm in angle computation")
    return _angle_between(u, v)


def _angle_between(u: FloatArray, v: FloatArray) -> FloatArray:
    # Kahan's formula: accurate near 0 and pi, and exactly symmetric in (u, v)
    uh = u / _norm(u)[..., None]
    vh = v / _norm(v)[..., None]
    return 2.0 * np.arctan2(_norm(uh - vh), _norm(uh + vh))


def point_segment_distance(p: FloatArray, a: FloatArray, b: FloatArray) -> FloatArray:
    ab = b - a
    t = np.clip(((p - a) @ ab) / (ab @ ab), 0.0, 1.0)
    return _norm(p - (a + t[..., None] * ab))


def point_ray_distance(p: FloatArray, a: FloatArray, d: FloatArray) -> FloatArray:
    t = np.maximum(((p - a) @ d) / (d @ d), 0.0)
    return _norm(p - (a + t[..., None] * d))


def boundary_pieces(G: Domain) -> list[Segment]:
    """Rays and segments whose union is the boundary of a sector or polygon."""
    if isinstance(G, Angular):
        d1, d2 = G.side_directions()
        origin = np.zeros(2)
        return [Segment.ray(origin, d1), Segment.ray(origin, d2)]
    if isinstance(G, Polygon):
        a, b = G.edges()
        return [Segment(p, q) for p, q in zip(a, b)]
    raise TypeError(f"{type(G).__name__} has no piecewise-linear boundary")


# ---------------------------------------------------------------------------
# Membership and ray exits


def _points_in_polygon(p: FloatArray, v: FloatArray) -> NDArray[np.bool_]:
    a = v
    b = np.roll(v, -1, axis=0)
    px = p[..., 0][..., None]
    py = p[..., 1][..., None]
    cond = (a[:, 1] > py) != (b[:, 1] > py)
    with np.errstate(invalid="ignore", divide="ignore"):
        xint = a[:, 0] + (py - a[:, 1]) * (b[:, 0] - a[:, 0]) / (b[:, 1] - a[:, 1])
    crossings = np.sum(cond & (px < xint), axis=-1)
    return crossings % 2 == 1


def boundary_distance_unchecked(G: Domain, x: FloatArray) -> FloatArray:
    """Distance from point(s) ``x`` to the boundary of ``G`` (no membership check)."""
    if isinstance(G, PuncturedSpace):
        return _norm(x - G.puncture)
    if isinstance(G, HalfSpace):
        return np.asarray(x[..., -1], dtype=float)
    if isinstance(G, PuncturedHalfSpace):
        return np.minimum(x[..., -1], _norm(x - G.puncture))
    if isinstance(G, Angular):
        d1, d2 = G.side_directions()
        o = np.zeros(2)
        return np.minimum(point_ray_distance(x, o, d1), point_ray_distance(x, o, d2))
    if isinstance(G, Polygon):
        a, b = G.edges()
        return np.min(np.stack([point_segment_distance(x, p, q) for p, q in zip(a, b)]), axis=0)
    if isinstance(G, SampledBoundary):
        flat = x.reshape(-1, x.shape[-1])
        out = np.empty(len(flat))
        step = max(1, (1 << 22) // len(G.samples))
        for i in range(0, len(flat), step):
            out[i : i + step] = np.min(_norm(flat[i : i + step, None, :] - G.samples), axis=-1)
        return out.reshape(x.shape[:-1])
    raise TypeError(f"unsupported domain {type(G).__name__}")


def contains(G: Domain, y: ArrayLike) -> NDArray[np.bool_] | bool:
    """Whether ``y`` lies in the open domain ``G``."""
    y = as_points(y)
    if y.shape[-1] != G.dim:
        raise ValueError(f"dimension mismatch: domain is {G.dim}-dimensional, point has {y.shape[-1]}")
    if isinstance(G, PuncturedSpace):
        out = _norm(y - G.puncture) > 0
    elif isinstance(G, HalfSpace):
        out = y[..., -1] > 0
    elif isinstance(G, PuncturedHalfSpace):
        out = (y[..., -1] > 0) & (_norm(y - G.puncture) > 0)
    elif isinstance(G, Angular):
        out = (_norm(y) > 0) & (np.abs(np.arctan2(y[..., 1], y[..., 0])) < 0.5 * G.alpha)
    elif isinstance(G, Polygon):
        out = _points_in_polygon(y, G.vertices) & (boundary_distance_unchecked(G, y) > 0)
    elif isinstance(G, SampledBoundary):
        out = boundary_distance_unchecked(G, y) > 0
    else:
        raise TypeError(f"unsupported domain {type(G).__name__}")
    return bool(out) if np.ndim(out) == 0 else out


def require_inside(G: Domain, *points: FloatArray) -> None:
    for p in points:
        inside = contains(G, p)
        if not np.all(inside):
            bad = p if np.ndim(inside) == 0 else np.asarray(p)[~np.asarray(inside)][0]
            raise DomainError(
                f"point {np.round(bad, 12).tolist()} is not strictly inside the {type(G).__name__} domain"
            )


def _ray_hits_point(x: FloatArray, u: FloatArray, p: FloatArray) -> FloatArray:
    w = p - x
    t = u @ w
    miss = _norm(w - t[..., None] * u)
    return np.where((t > 0) & (miss <= 1e-12 * max(float(_norm(w)), 1.0)), t, np.inf)


def _ray_hits_segment(x: FloatArray, u: FloatArray, a: FloatArray, d: FloatArray, bounded: bool) -> FloatArray:
    # solve x + t u = a + s d
    den = _cross2(u, np.broadcast_to(d, u.shape))
    w = a - x
    with np.errstate(invalid="ignore", divide="ignore"):
        t = _cross2(np.broadcast_to(w, u.shape), np.broadcast_to(d, u.shape)) / den
        s = _cross2(np.broadcast_to(w, u.shape), u) / den
    ok = (den != 0) & (t > 0) & (s >= 0)
    if bounded:
        ok &= s <= 1
    return np.where(ok, t, np.inf)


def ray_exit_distance(G: Domain, x: FloatArray, u: FloatArray) -> FloatArray:
    """First t > 0 at which x + t u meets the boundary of ``G`` (inf if never).

    ``u`` has shape ``(k, n)`` of unit directions.
    """
    if isinstance(G, PuncturedSpace):
        return _ray_hits_point(x, u, G.puncture)
    if isinstance(G, HalfSpace):
        with np.errstate(divide="ignore"):
            return np.where(u[:, -1] < 0, x[-1] / -u[:, -1], np.inf)
    if isinstance(G, PuncturedHalfSpace):
        return np.minimum(ray_exit_distance(HalfSpace(G.dim), x, u), _ray_hits_point(x, u, G.puncture))
    if isinstance(G, (Angular, Polygon)):
        t = np.full(u.shape[0], np.inf)
        for piece in boundary_pieces(G):
            t = np.minimum(t, _ray_hits_segment(x, u, piece.a, piece.direction, piece.kind == "segment"))
        return t
    if isinstance(G, SampledBoundary):
        t = np.full(u.shape[0], np.inf)
        for z in G.samples:
            t = np.minimum(t, _ray_hits_point(x, u, z))
        return t
    raise TypeError(f"unsupported domain {type(G).__name__}")
