import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import sampled_s, square_boundary
from trimetric.geometry import (
    Angular,
    DomainError,
    HalfSpace,
    Polygon,
    PuncturedHalfSpace,
    PuncturedSpace,
    SampledBoundary,
)
from trimetric.metrics import (
    MetricKind,
    dist_to_boundary,
    distance,
    is_lower_bound,
    j_distance,
    k_distance,
    k_distance_punctured,
    k_radius_to_s_radius_halfspace,
    rho_halfspace,
    s_distance,
    s_radius_to_k_radius_halfspace,
    s_unchecked,
)

SQUARE = Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
P0 = PuncturedSpace((0, 0))
H = HalfSpace(2)


@pytest.mark.parametrize(
    "G, x, d",
    [(H, (0, 1), 1.0), (P0, (2, 0), 2.0), (SQUARE, (0.5, 0.5), 0.5)],
)
def test_dist_to_boundary(G, x, d):
    assert dist_to_boundary(G, x) == pytest.approx(d)


def test_dist_to_boundary_rejects_outside():
    with pytest.raises(DomainError):
        dist_to_boundary(H, (0, 0))


@pytest.mark.parametrize(
    "G, x, y, expected",
    [
        (P0, (2, 0), (2 / 3, 0), 0.5),
        (H, (0, 1), (0, 3), 0.5),
        (SQUARE, (0.3, 0.3), (0.3, 0.3), 0.0),
        (P0, (1, 0), (-1, 0), 1.0),
    ],
)
def test_s_examples(G, x, y, expected):
    assert s_distance(G, x, y) == pytest.approx(expected, abs=1e-15)


def test_s_rejects_outside_points():
    with pytest.raises(DomainError):
        s_distance(SQUARE, (0.5, 0.5), (2, 2))
    with pytest.raises(DomainError):
        s_distance(P0, (0, 0), (1, 1))


def test_s_punctured_halfspace_is_max_of_parts():
    G = PuncturedHalfSpace((0, 1))
    x, y = np.array([0.2, 0.5]), np.array([-0.3, 1.4])
    parts = (s_distance(H, x, y), s_distance(PuncturedSpace((0, 1)), x, y))
    assert s_distance(G, x, y) == max(parts)


def test_s_angular_matches_dense_boundary():
    A = Angular(math.pi / 3)
    t = np.linspace(0, 20, 200_001)
    rays = [np.column_stack([t * math.cos(s), t * math.sin(s)]) for s in (math.pi / 6, -math.pi / 6)]
    bd = np.concatenate(rays)
    x, y = np.array([2.0, 0.3]), np.array([3.0, -0.4])
    assert s_distance(A, x, y) == pytest.approx(sampled_s(bd, x, y), rel=1e-6)


@pytest.mark.parametrize(
    "x, y",
    [((0.2, 1.0), (0.2, -1.0)), ((-0.3, 1.0), (1.0, -0.2)), ((-0.5, 1.0), (-0.5, -1.0))],
)
def test_reflex_sector_matches_dense_boundary(x, y):
    A = Angular(3 * math.pi / 2)
    t = np.linspace(0, 20, 400_001)
    bd = np.concatenate([np.column_stack([t * math.cos(s), t * math.sin(s)]) for s in (0.75 * math.pi, -0.75 * math.pi)])
    assert s_distance(A, x, y) == pytest.approx(sampled_s(bd, np.array(x), np.array(y)), rel=1e-6)


def test_segment_leaving_the_domain_gives_one():
    # the straight segment crosses the excluded cone around the negative first axis
    assert s_distance(Angular(3 * math.pi / 2), (-0.5, 1.0), (-0.5, -1.0)) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "G, x, y, expected",
    [
        (P0, (1, 0), (2, 0), math.log(2)),
        (SQUARE, (0.4, 0.4), (0.4, 0.4), 0.0),
        (H, (0, 1), (2, 1), math.log(3)),
    ],
)
def test_j_examples(G, x, y, expected):
    assert j_distance(G, x, y) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize(
    "x, y, expected",
    [((1, 0), (math.e, 0), 1.0), ((1, 0), (0, 1), math.pi / 2), ((0.3, 0.7), (0.3, 0.7), 0.0)],
)
def test_k_punctured_examples(x, y, expected):
    assert k_distance_punctured(x, y) == pytest.approx(expected, abs=1e-15)


def test_k_punctured_errors_and_translation():
    with pytest.raises(DomainError):
        k_distance_punctured((0, 0), (1, 0))
    G = PuncturedSpace((1, 2))
    assert k_distance(G, (2, 2), (1, 3)) == pytest.approx(math.pi / 2)
    with pytest.raises(DomainError):
        k_distance(SQUARE, (0.5, 0.5), (0.4, 0.4))


def test_rho_examples():
    assert rho_halfspace((0, 1), (0, 1)) == 0.0
    assert rho_halfspace((0, 1), (0, 3)) == pytest.approx(math.log(3), rel=1e-15)
    assert math.cosh(rho_halfspace((0, 1), (1, 1))) == pytest.approx(1.5, rel=1e-15)
    with pytest.raises(DomainError):
        rho_halfspace((0, 0), (0, 1))


def test_radius_conversion_examples():
    assert s_radius_to_k_radius_halfspace(0.5) == pytest.approx(math.log(3))
    assert s_radius_to_k_radius_halfspace(1 / 3) == pytest.approx(math.log(2))
    assert s_radius_to_k_radius_halfspace(1e-12) == pytest.approx(0.0, abs=1e-11)
    for r in (0.1, 0.5, 0.9):
        assert k_radius_to_s_radius_halfspace(s_radius_to_k_radius_halfspace(r)) == pytest.approx(r, rel=1e-14)
    with pytest.raises(DomainError):
        s_radius_to_k_radius_halfspace(1.0)


def test_dispatch():
    assert distance("s", H, (0, 1), (0, 3)) == distance(MetricKind.S, H, (0, 1), (0, 3))
    assert distance("rho", H, (0, 1), (0, 3)) == pytest.approx(math.log(3))
    with pytest.raises(DomainError):
        distance("rho", P0, (1, 0), (2, 0))


def test_s_in_three_dimensions():
    G = HalfSpace(3)
    x, y = (0, 0, 1), (0, 0, 3)
    assert s_distance(G, x, y) == pytest.approx(0.5)
    assert s_distance(PuncturedSpace((0, 0, 0)), (0, 0, 2), (0, 0, 2 / 3)) == pytest.approx(0.5)


def test_halfspace_identity_random_pairs():
    rng = np.random.default_rng(7)
    x = np.column_stack([rng.uniform(-5, 5, 10_000), np.exp(rng.uniform(-4, 2, 10_000))])
    y = np.column_stack([rng.uniform(-5, 5, 10_000), np.exp(rng.uniform(-4, 2, 10_000))])
    assert np.max(np.abs(s_distance(H, x, y) - np.tanh(rho_halfspace(x, y) / 2))) <= 1e-12


pts_sq = st.tuples(st.floats(0.01, 0.99), st.floats(0.01, 0.99))


@settings(max_examples=50, deadline=None)
@given(pts_sq, pts_sq, pts_sq)
def test_symmetry_range_triangle(x, y, z):
    for G in (SQUARE, P0, H):
        for f in (s_distance, j_distance):
            assert abs(f(G, x, y) - f(G, y, x)) <= 1e-14
            assert f(G, x, z) <= f(G, x, y) + f(G, y, z) + 1e-12
        assert 0.0 <= s_distance(G, x, y) <= 1.0
    for G in (P0, H):
        assert abs(k_distance(G, x, y) - k_distance(G, y, x)) <= 1e-14
        assert k_distance(G, x, z) <= k_distance(G, x, y) + k_distance(G, y, z) + 1e-12


@settings(max_examples=50, deadline=None)
@given(pts_sq, pts_sq)
def test_domain_monotonicity(x, y):
    # the square sits in the upper half-plane, so its s-distances are larger
    assert s_distance(H, x, y) <= s_distance(SQUARE, x, y) + 1e-15


def test_polygon_matches_sampled_sup():
    rng = np.random.default_rng(3)
    bd = square_boundary(25_000)
    for _ in range(20):
        x, y = rng.uniform(0.02, 0.98, (2, 2))
        assert s_distance(SQUARE, x, y) == pytest.approx(sampled_s(bd, x, y), abs=1e-6)


def test_sampled_boundary_is_lower_bound():
    rng = np.random.default_rng(5)
    G = SampledBoundary(square_boundary(100))
    assert is_lower_bound(G) and not is_lower_bound(SQUARE)
    x = rng.uniform(0.05, 0.95, (500, 2))
    y = rng.uniform(0.05, 0.95, (500, 2))
    assert np.all(s_unchecked(G, x, y) <= s_unchecked(SQUARE, x, y) + 1e-15)


def test_comparison_bounds_random_pairs():
    rng = np.random.default_rng(11)
    x = rng.normal(size=(10_000, 2)) * np.exp(rng.uniform(-3, 3, (10_000, 1)))
    y = rng.normal(size=(10_000, 2)) * np.exp(rng.uniform(-3, 3, (10_000, 1)))
    assert np.all(s_distance(P0, x, y) * math.log(3) <= j_distance(P0, x, y) * (1 + 1e-12))
    u = rng.uniform(0.01, 0.99, (10_000, 2))
    v = rng.uniform(0.01, 0.99, (10_000, 2))
    assert np.all(s_distance(SQUARE, u, v) * math.log(2) <= j_distance(SQUARE, u, v) * (1 + 1e-12))
