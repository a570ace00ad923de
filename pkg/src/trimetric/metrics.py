"""Triangular ratio, j, quasihyperbolic and hyperbolic distances on the supported domains."""

from __future__ import annotations

import enum
import math

import numpy as np
from numpy.typing import ArrayLike

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
    _angle_between,
    _min_path,
    _norm,
    as_points,
    boundary_distance_unchecked,
    boundary_pieces,
    require_inside,
)


class MetricKind(enum.Enum):
    S = "s"
    J = "j"
    K = "k"
    RHO_HALFSPACE = "rho"


def _scalar(v):
    return float(v) if np.ndim(v) == 0 else v


def _pair(G: Domain, x: ArrayLike, y: ArrayLike) -> tuple[FloatArray, FloatArray]:
    x = as_points(x)
    y = as_points(y)
    if x.shape[-1] != G.dim or y.shape[-1] != G.dim:
        raise ValueError(f"dimension mismatch: domain is {G.dim}-dimensional")
    require_inside(G, x, y)
    return x, y


def is_lower_bound(G: Domain) -> bool:
    """True when s on ``G`` is only a lower bound (sup over a boundary sample)."""
    return isinstance(G, SampledBoundary)


def dist_to_boundary(G: Domain, x: ArrayLike) -> float | FloatArray:
    """d_G(x), the Euclidean distance from x to the boundary of G."""
    x = as_points(x)
    require_inside(G, x)
    return _scalar(boundary_distance_unchecked(G, x))


def s_unchecked(G: Domain, x: FloatArray, y: FloatArray) -> FloatArray:
    """Triangular ratio distance without membership checks (vectorised over y)."""
    diff = _norm(x - y)
    if isinstance(G, PuncturedSpace):
        p = G.puncture
        return diff / (_norm(x - p) + _norm(y - p))
    if isinstance(G, HalfSpace):
        y_mirror = np.array(y, dtype=float)
        y_mirror[..., -1] = -y_mirror[..., -1]
        return diff / _norm(x - y_mirror)
    if isinstance(G, PuncturedHalfSpace):
        return np.maximum(s_unchecked(HalfSpace(G.dim), x, y), s_unchecked(PuncturedSpace(G.puncture), x, y))
    if isinstance(G, (Angular, Polygon)):
        pieces = boundary_pieces(G)
        best = _min_path(x, y, pieces[0].a, pieces[0].direction, pieces[0].kind)
        for piece in pieces[1:]:
            best = np.minimum(best, _min_path(x, y, piece.a, piece.direction, piece.kind))
        return diff / best
    if isinstance(G, SampledBoundary):
        return diff / _sampled_min_path(G.samples, x, y)
    raise TypeError(f"unsupported domain {type(G).__name__}")


def _pairwise_dist(p: FloatArray, z: FloatArray) -> FloatArray:
    """|p_i - z_j| for p of shape (k, n) and z of shape (m, n)."""
    if p.shape[-1] == 2:
        return np.hypot(p[:, None, 0] - z[None, :, 0], p[:, None, 1] - z[None, :, 1])
    return _norm(p[:, None, :] - z[None, :, :])


def _sampled_min_path(z: FloatArray, x: FloatArray, y: FloatArray, block: int = 1 << 22) -> FloatArray:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    shape = np.broadcast_shapes(x.shape, y.shape)[:-1]
    step = max(1, block // len(z))
    if x.ndim == 1:
        # one centre against many points: |x - z| is shared
        dx = _norm(x - z)
        yf = np.broadcast_to(y, shape + (len(x),)).reshape(-1, len(x))
        out = np.empty(len(yf))
        for i in range(0, len(yf), step):
            out[i : i + step] = np.min(dx + _pairwise_dist(yf[i : i + step], z), axis=-1)
        return out.reshape(shape)
    xb, yb = np.broadcast_arrays(x, y)
    xf = xb.reshape(-1, xb.shape[-1])
    yf = yb.reshape(-1, yb.shape[-1])
    out = np.empty(len(xf))
    for i in range(0, len(xf), step):
        out[i : i + step] = np.min(_pairwise_dist(xf[i : i + step], z) + _pairwise_dist(yf[i : i + step], z), axis=-1)
    return out.reshape(shape)


def s_distance(G: Domain, x: ArrayLike, y: ArrayLike) -> float | FloatArray:
    """Triangular ratio metric s_G(x, y), a value in [0, 1].

    For a :class:`SampledBoundary` the result is a lower bound on the true value.
    """
    x, y = _pair(G, x, y)
    return _scalar(s_unchecked(G, x, y))


def j_unchecked(G: Domain, x: FloatArray, y: FloatArray) -> FloatArray:
    dmin = np.minimum(boundary_distance_unchecked(G, x), boundary_distance_unchecked(G, y))
    return np.log1p(_norm(x - y) / dmin)


def j_distance(G: Domain, x: ArrayLike, y: ArrayLike) -> float | FloatArray:
    """j_G(x, y) = log(1 + |x - y| / min(d_G(x), d_G(y)))."""
    x, y = _pair(G, x, y)
    return _scalar(j_unchecked(G, x, y))


def k_distance_punctured(x: ArrayLike, y: ArrayLike) -> float | FloatArray:
    """Quasihyperbolic distance in R^n minus the origin (Martin-Osgood closed form)."""
    x = as_points(x)
    y = as_points(y)
    nx = _norm(x)
    ny = _norm(y)
    if np.any(nx == 0) or np.any(ny == 0):
        raise DomainError("quasihyperbolic distance is undefined at the puncture")
    return _scalar(np.hypot(_angle_between(x, y), np.log(nx / ny)))


def rho_unchecked(x: FloatArray, y: FloatArray) -> FloatArray:
    # cosh(rho) = 1 + |x-y|^2 / (2 x_n y_n)  <=>  sinh(rho/2) = |x-y| / (2 sqrt(x_n y_n))
    return 2.0 * np.arcsinh(_norm(x - y) / (2.0 * np.sqrt(x[..., -1] * y[..., -1])))


def rho_halfspace(x: ArrayLike, y: ArrayLike) -> float | FloatArray:
    """Hyperbolic distance in the upper half-space."""
    x = as_points(x)
    y = as_points(y)
    if np.any(x[..., -1] <= 0) or np.any(y[..., -1] <= 0):
        raise DomainError("hyperbolic distance needs positive last coordinates")
    return _scalar(rho_unchecked(x, y))


def k_unchecked(G: Domain, x: FloatArray, y: FloatArray) -> FloatArray:
    if isinstance(G, PuncturedSpace):
        xs = x - G.puncture
        ys = y - G.puncture
        return np.hypot(_angle_between(xs, ys), np.log(_norm(xs) / _norm(ys)))
    if isinstance(G, HalfSpace):
        # quasihyperbolic and hyperbolic metrics coincide on the half-space
        return rho_unchecked(x, y)
    raise DomainError(f"quasihyperbolic distance is only available on PuncturedSpace and HalfSpace, not {type(G).__name__}")


def k_distance(G: Domain, x: ArrayLike, y: ArrayLike) -> float | FloatArray:
    if not isinstance(G, (PuncturedSpace, HalfSpace)):
        raise DomainError(f"quasihyperbolic distance is only available on PuncturedSpace and HalfSpace, not {type(G).__name__}")
    x, y = _pair(G, x, y)
    return _scalar(k_unchecked(G, x, y))


def s_radius_to_k_radius_halfspace(r: float) -> float:
    """Radius K with B_s(x, r) = B_k(x, K) in the half-space."""
    if not 0.0 < r < 1.0:
        raise DomainError(f"s-radius must lie in (0, 1), got {r}")
    return math.log1p(2.0 * r / (1.0 - r))


def k_radius_to_s_radius_halfspace(k: float) -> float:
    if k <= 0:
        raise DomainError(f"k-radius must be positive, got {k}")
    return math.tanh(0.5 * k)


def distance(kind: MetricKind | str, G: Domain, x: ArrayLike, y: ArrayLike) -> float | FloatArray:
    kind = MetricKind(kind)
    if kind is MetricKind.S:
        return s_distance(G, x, y)
    if kind is MetricKind.J:
        return j_distance(G, x, y)
    if kind is MetricKind.K:
        return k_distance(G, x, y)
    if not isinstance(G, HalfSpace):
        raise DomainError("the hyperbolic metric is only provided on the half-space")
    x, y = _pair(G, x, y)
    return _scalar(rho_unchecked(x, y))
