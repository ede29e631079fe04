import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brick_triangle import closedform as cf
from brick_triangle.errors import DomainError, NoSolution
from brick_triangle.geometry import INV_SQRT2, triangle_metrics


def test_boundary_values():
    assert cf.f_objective(0.5) == pytest.approx(2.0, abs=1e-12)
    assert cf.f_objective(1.0) == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(DomainError):
        cf.f_objective(0.0)


def test_exact_stationary_point():
    # f'(t) = 0 <=> t**3 = 3/8; check against the derivative numerically
    h = 1e-6
    slope = (cf.f_objective(cf.T_STAR + h) - cf.f_objective(cf.T_STAR - h)) / (2 * h)
    assert abs(slope) < 1e-8
    assert cf.f_objective(cf.T_STAR) == pytest.approx(cf.F_STAR, rel=1e-14)


def test_argmin_interior():
    t, f = cf.f_argmin(0.5, 1.0)
    assert t == pytest.approx(0.7211, abs=1e-4)
    assert f == pytest.approx(1.9230, abs=1e-4)
    assert abs(t - cf.T_STAR) < 1e-8
    t2, _ = cf.f_argmin(t - 1e-3, t + 1e-3)
    assert abs(t2 - t) < 1e-8


def test_argmin_endpoint():
    t, f = cf.f_argmin(2.0, 3.0)
    assert t == 2.0
    assert f == cf.f_objective(2.0)


def test_argmin_bad_interval():
    for lo, hi in [(1.0, 0.5), (0.0, 1.0), (-1.0, 1.0), (1.0, math.inf)]:
        with pytest.raises(DomainError):
            cf.f_argmin(lo, hi)


def test_golden_section_quadratic():
    x = cf.golden_section(lambda t: (t - 0.3) ** 2, 0.0, 1.0)
    assert x == pytest.approx(0.3, abs=1e-9)


def test_case1_optima():
    c = cf.case1_config(1.0)
    assert (c.a_sq, c.c_sq, c.d_sq) == pytest.approx((0.5, 2.0, 2.0), abs=1e-12)
    c = cf.case1_config(0.5)
    assert (c.a_sq, c.c_sq, c.d_sq) == pytest.approx((1.0, 2.0, 2.0), abs=1e-12)


def test_case2_optima():
    c = cf.case2_config(0.5)
    assert (c.c_sq, c.a_sq, c.d_sq) == pytest.approx((1.5, 4 / 3, 2.0), abs=1e-12)
    c = cf.case2_config(1.0)
    assert (c.a_sq, c.b_sq, c.c_sq, c.d_sq, c.z) == pytest.approx((1, 1, 1, 2, 1), abs=1e-12)


def test_nonpositive_t_rejected():
    for fn in (cf.case1_config, cf.case2_config, cf.case_consistency):
        with pytest.raises(DomainError):
            fn(-1.0)


@settings(max_examples=200, deadline=None)
@given(st.floats(1e-3, 1e3))
def test_case1_identities(t):
    c = cf.case1_config(t)
    assert c.a_sq * c.b_sq * c.c_sq == pytest.approx(1.0, rel=1e-12)
    assert c.a_sq + c.b_sq == pytest.approx(0.75 * c.c_sq, rel=1e-12)
    assert cf.f_objective(t) == pytest.approx(4 / 3 * (c.a_sq + t), rel=1e-10)


@pytest.mark.parametrize("t", [0.5, 1.0, 5.0])
def test_case_consistency_points(t):
    assert cf.case_consistency(t) <= (1e-12 if t <= 1 else 1e-9)


def test_case2_unstable_form_agrees():
    # textbook quadratic formula, fine at moderate t
    for t in (0.3, 0.5, 0.8, 2.0):
        c_sq = (-2 * t + math.sqrt(4 * t * t + 12 * (t * t + 4 / t))) / 6
        assert cf.case2_config(t).c_sq == pytest.approx(c_sq, rel=1e-12)


@pytest.mark.parametrize("t", np.linspace(0.5, 1.0, 11))
def test_configs_materialize_as_equilateral(t):
    for conf in (cf.case1_config(t), cf.case2_config(t)):
        m = triangle_metrics(conf.brick(), conf.placement())
        assert m.eq_residual <= 1e-12
        assert m.sq_ab == pytest.approx(conf.d_sq, abs=1e-12)


def test_case2_placement_off_edge():
    with pytest.raises(DomainError):
        cf.case2_config(50.0).placement()


def test_rect_area_examples():
    g = math.pi / 3
    assert cf.rect_area(cf.RectParams(1, 1, g, 0.0)) == pytest.approx(math.sin(g), abs=1e-15)
    assert cf.rect_area(cf.RectParams(1, 1, g, math.pi / 6)) == pytest.approx(math.sin(g), abs=1e-15)
    assert cf.rect_area(cf.RectParams(2, 3, math.pi / 2, 0.0)) == pytest.approx(6.0, abs=1e-15)
    with pytest.raises(DomainError):
        cf.RectParams(1, 1, g, 0.6)
    with pytest.raises(DomainError):
        cf.RectParams(1, 1, 2.0, 0.0)


def test_min_rect_area_examples():
    th, area = cf.min_rect_area(1, 1, math.pi / 3)
    assert th == pytest.approx((0.0, math.pi / 6))
    assert area == pytest.approx(math.sqrt(3) / 2)
    th, area = cf.min_rect_area(1, 2, math.pi / 2)
    assert th == (0.0,)
    assert area == pytest.approx(2.0)
    th, area = cf.min_rect_area(1, 1, math.pi / 4)
    assert th == pytest.approx((0.0, math.pi / 4))
    assert area == pytest.approx(math.sqrt(2) / 2)
    for bad in (0.0, -0.1, 2.0):
        with pytest.raises(DomainError):
            cf.min_rect_area(1, 1, bad)


def test_min_rect_area_against_grid():
    theta = np.linspace(0, math.pi / 4, 100_001)
    grid = np.min(np.cos(theta) * np.sin(math.pi / 4 + theta))
    assert cf.min_rect_area(1, 1, math.pi / 4)[1] == pytest.approx(grid, abs=1e-12)


corner = st.tuples(st.floats(0.01, 100), st.floats(0.01, 100), st.floats(1e-3, math.pi / 2), st.floats(0, 1))


@settings(max_examples=300, deadline=None)
@given(corner)
def test_rect_area_identity_and_bound(args):
    l1, l2, g, u = args
    theta = u * (math.pi / 2 - g)
    area = cf.rect_area(cf.RectParams(l1, l2, g, theta))
    ident = cf.rect_area_identity(l1, l2, g, theta)
    scale = max(1.0, l1 * l2)
    assert abs(area - ident) <= 1e-12 * scale
    assert area >= l1 * l2 * math.sin(g) - 1e-12 * scale


def test_lemma_check_default_passes():
    rep = cf.lemma_check()
    assert rep.ok and rep.passed == 1000 and not rep.failures


def test_lemma_check_forced_corner():
    rep = cf.lemma_check(n=4, len_ab=1.0, len_ac=1.0, gamma=math.pi / 3)
    np.testing.assert_allclose(rep.min_areas, math.sqrt(3) / 2, atol=1e-12)
    rep = cf.lemma_check(n=4, gamma=math.pi / 2)
    assert rep.ok


def test_lemma_check_seeded():
    a = cf.lemma_check(n=50, seed=3, samples=100)
    b = cf.lemma_check(n=50, seed=3, samples=100)
    np.testing.assert_array_equal(a.min_areas, b.min_areas)


def test_thin_brick_sqrt2_is_admissible():
    brick, placement, conf = cf.thin_brick_for_side(math.sqrt(2))
    assert conf.t == pytest.approx(1.0, abs=1e-9)
    assert brick.is_admissible()
    assert brick.squares == pytest.approx((0.5, 1.0, 2.0), abs=1e-9)


def test_thin_brick_large_side():
    brick, placement, _ = cf.thin_brick_for_side(10.0)
    m = triangle_metrics(brick, placement)
    assert abs(brick.volume - 1) <= 1e-12
    assert m.eq_residual <= 1e-9
    assert math.sqrt(m.min_sq) >= 10 - 1e-9
    assert min(brick.sides) < INV_SQRT2


def test_thin_brick_below_minimum():
    with pytest.raises(NoSolution):
        cf.thin_brick_for_side(1.0)
