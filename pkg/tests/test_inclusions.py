import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trimetric import inclusions as inc
from trimetric.geometry import DomainError, HalfSpace, Polygon, PuncturedSpace
from trimetric.metrics import j_distance, s_distance

P0 = PuncturedSpace((0, 0))
H = HalfSpace(2)
SQUARE = Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


def test_report_serialisation():
    rep = inc.euclid_inclusion_check(P0, (2, 0), 0.5)
    d = rep.to_dict()
    assert {"name", "pass", "worst_margin", "worst_location", "grid", "seed", "notes"} <= set(d)
    json.dumps(d)
    assert d["pass"] == (d["worst_margin"] >= -rep.tolerance)


@pytest.mark.parametrize("G, x", [(P0, (2, 0)), (H, (0, 1)), (PuncturedSpace((1, -1)), (0.2, 0.5))])
@pytest.mark.parametrize("r", [1e-4, 0.1, 0.5, 0.9])
def test_euclid_inclusion(G, x, r):
    rep = inc.euclid_inclusion_check(G, x, r)
    assert rep.passed, rep


def test_euclid_radii_example():
    assert inc.euclid_radii(2.0, 0.5) == pytest.approx((4 / 3, 4.0))
    hs = inc.euclid_inclusion_check(H, (0, 1), 0.5)
    assert hs.details["min_boundary_dist"] >= 2 / 3 - 1e-12
    assert hs.details["max_boundary_dist"] <= 2 + 1e-12


def test_euclid_bounds_are_attained():
    rep = inc.euclid_inclusion_check(P0, (2, 0), 0.5)
    assert rep.details["max_boundary_dist"] == pytest.approx(4.0, rel=1e-12)
    assert rep.details["min_boundary_dist"] == pytest.approx(4 / 3, rel=1e-12)


@pytest.mark.parametrize(
    "kind, x, r, expected",
    [
        ("euclid-inner", (2, 0), 0.5, (2 / 3, 0)),
        ("euclid-outer", (2, 0), 0.5, (6, 0)),
        ("j-outer", (1, 0), 0.5, (3, 0)),
    ],
)
def test_witness_examples(kind, x, r, expected):
    assert inc.sharpness_witness(kind, x, r) == pytest.approx(expected, abs=1e-15)


def test_j_inner_witness():
    x = np.array([0.5, 0.0])
    y = inc.sharpness_witness("j-inner", x, 0.4)
    assert np.linalg.norm(y) == pytest.approx(0.5)
    assert s_distance(P0, x, y) == pytest.approx(0.4, abs=1e-12)
    assert j_distance(P0, x, y) == pytest.approx(math.log(1.8), abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.01, 0.95), st.tuples(st.floats(-5, 5), st.floats(-5, 5)), st.sampled_from(inc.WITNESS_KINDS))
def test_witnesses_satisfy_both_equalities(r, x, kind):
    if math.hypot(*x) < 1e-2:
        return
    a, b = inc.witness_residuals(kind, x, r)
    assert a <= 1e-12 and b <= 1e-12


def test_witness_errors():
    with pytest.raises(ValueError):
        inc.sharpness_witness("nope", (1, 0), 0.5)
    with pytest.raises(DomainError):
        inc.sharpness_witness("j-outer", (0, 0), 0.5)


def test_witness_in_three_dimensions():
    y = inc.sharpness_witness("j-inner", (0, 0, 2), 0.3)
    assert np.linalg.norm(y) == pytest.approx(2)
    assert s_distance(PuncturedSpace((0, 0, 0)), (0, 0, 2), y) == pytest.approx(0.3)


@pytest.mark.parametrize("r", [0.05, 0.4, 0.7, 0.95])
def test_j_inclusion_punctured(r):
    rep = inc.j_inclusion_check(P0, (0.5, 0), r)
    assert rep.passed and rep.details["M"] is not None


def test_j_inclusion_punctured_is_sharp():
    rep = inc.j_inclusion_check(P0, (0.5, 0), 0.4, samples=4096)
    m, M = rep.details["m"], rep.details["M"]
    # both radii are attained by the boundary up to the sampling of the trace
    assert rep.details["min_boundary_j"] == pytest.approx(m, abs=1e-5)
    assert rep.details["max_boundary_j"] == pytest.approx(M, abs=1e-12)


@pytest.mark.parametrize("r", [0.05, 0.5, 0.95])
def test_j_inclusion_halfspace(r):
    assert inc.j_inclusion_check(H, (0.3, 1.0), r).passed


@pytest.mark.parametrize("r", [0.05, 0.15, 0.3])
def test_j_inclusion_unit_square(r):
    rep = inc.j_inclusion_check(SQUARE, (0.3, 0.4), r)
    assert rep.passed and rep.details["M"] is not None


def test_j_upper_bound_unavailable_beyond_third():
    assert inc.j_radii(SQUARE, 0.4)[1] is None
    rep = inc.j_inclusion_check(SQUARE, (0.5, 0.5), 0.4)
    assert rep.passed and "r < 1/3" in rep.notes


def test_j_inclusion_is_deterministic():
    a = inc.j_inclusion_check(SQUARE, (0.3, 0.4), 0.2, seed=9).to_dict()
    b = inc.j_inclusion_check(SQUARE, (0.3, 0.4), 0.2, seed=9).to_dict()
    assert a == b and a["seed"] == 9


@pytest.mark.parametrize("r", [0.05, 0.3, 0.49, 0.7])
def test_k_inclusion_punctured(r):
    rep = inc.k_inclusion_check(PuncturedSpace((0, 0)), (2, 0), r)
    assert rep.passed
    if r == 0.3:
        assert rep.details["k_upper_punctured"] == pytest.approx(2 * math.asin(3 / 7))


@pytest.mark.parametrize("r", [0.1, 0.5, 0.9])
def test_k_inclusion_halfspace_equality(r):
    rep = inc.k_inclusion_check(H, (0, 1), r)
    assert rep.passed and rep.worst_margin >= -1e-9
    if r == 0.5:
        assert rep.details["k_equal"] == pytest.approx(math.log(3))


def test_k_inclusion_rejects_other_domains():
    with pytest.raises(DomainError):
        inc.k_inclusion_check(SQUARE, (0.5, 0.5), 0.2)


def test_punctured_k_sphere_has_constant_k():
    from trimetric.metrics import k_distance

    pts = inc.punctured_k_sphere(np.array([2.0, 0.0]), np.zeros(2), 0.7, 64)
    assert np.allclose(k_distance(P0, (2, 0), pts), 0.7, atol=1e-13)


@pytest.mark.parametrize("which", ["f1", "f2", "f3", "f4"])
def test_lemma_monotone(which):
    rep = inc.lemma_monotone_check(which, a=2.0)
    assert rep.passed, rep.details


@pytest.mark.parametrize("a", [0.5, 1.0, 7.0])
def test_f1_limits_depend_on_a(a):
    rep = inc.lemma_monotone_check("f1", a=a)
    assert rep.passed and rep.details["limits"] == [a, 0.0]


def test_monotone_check_catches_wrong_claims():
    spec = inc.monotone_function("f4")
    wrong_direction = inc._MonotoneSpec(spec.f, spec.lo, spec.hi, True, spec.lim_lo, spec.lim_hi)
    assert not inc.monotone_report(wrong_direction, "flipped").passed
    wrong_limit = inc._MonotoneSpec(spec.f, spec.lo, spec.hi, False, 0.01, spec.lim_hi)
    rep = inc.monotone_report(wrong_limit, "bad-limit")
    assert not rep.passed and rep.details["worst_part"] == "limit_lo"
    constant = inc._MonotoneSpec(lambda t: 0.0 * t, 1.0, 2.0, False, 0.0, 0.0)
    assert not inc.monotone_report(constant, "ties").passed


def test_monotone_errors():
    with pytest.raises(DomainError):
        inc.lemma_monotone_check("f1", a=-1)
    with pytest.raises(ValueError):
        inc.lemma_monotone_check("f9")


def test_inner_branch_scan_reports_both_endpoint_values():
    rep = inc.inner_branch_scan()
    assert rep.passed
    d = rep.details
    assert d["g0_direct_at_worst_r"] == pytest.approx(-d["g0_opposite_sign_at_worst_r"])
    assert float(inc.inner_branch_g(np.array(0.3), np.array(0.0))) == pytest.approx(1 - 4 * 0.3)


def test_conjecture_part1():
    rep = inc.conjecture_scan_part1(inc.ScanConfig(200, 200))
    assert rep.passed and rep.details["max_f"] <= 1e-9
    assert rep.details["max_abs_f_at_t_1"] <= 1e-12
    assert "numerical evidence only" in rep.notes


@pytest.mark.parametrize("m", [0.0, 0.4, 1.2, math.pi / 2])
def test_conjecture_part1_at_t_one(m):
    assert abs(float(inc.conjecture_part1_f(np.array(m), np.array(1.0)))) <= 1e-15


def test_conjecture_part1_endpoint_formula():
    m = 0.9
    s2 = math.sin(m / 2) ** 2
    expected = (1 - s2) * (1 + math.e ** (2 * m)) - 2 * (s2 + 1) * math.e**m
    assert float(inc.conjecture_part1_f(np.array(m), np.array(math.e**m))) == pytest.approx(expected, rel=1e-12)


def test_conjecture_part2():
    rep = inc.conjecture_scan_part2(inc.ScanConfig(t_points=100, r_points=100))
    assert rep.passed and rep.details["symmetry_ok"]
    assert "numerical evidence only" in rep.notes


def test_conjecture_part2_values():
    r = 0.7
    hi, lo = 17 / 3, 3 / 17
    f = lambda t: float(inc.conjecture_part2_f(np.array(r), np.array(t)))
    assert f(hi) == pytest.approx(f(lo), abs=1e-12)
    assert f(1.0) == pytest.approx(math.acos(1 - 2 * r * r) ** 2, rel=1e-14)


def test_s_j_ratio_punctured():
    rep = inc.s_j_ratio_check(P0, samples=20_000)
    assert rep.passed
    assert rep.details["equality_case_max_deviation"] <= 1e-12


def test_s_j_ratio_unit_square():
    assert inc.s_j_ratio_check(SQUARE, samples=20_000).passed


def test_unit_ball_scan():
    rep = inc.unit_ball_j_scan(radii=(0.2, 0.5), boundary_samples=2000, directions=128)
    assert "lower bound" in rep.notes and "numerical evidence only" in rep.notes
    assert rep.passed
