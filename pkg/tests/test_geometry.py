import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brick_triangle.errors import DomainError
from brick_triangle.geometry import (
    ALL_EDGES,
    INV_SQRT2,
    REFERENCE_TRIPLE,
    Axis,
    Brick,
    EdgeId,
    Placement,
    SkewTriple,
    enumerate_skew_triples,
    is_skew_pair,
    metrics_from_points,
    reflect_placement,
    segment_distance,
    side_squares,
    triangle_metrics,
    vertex_position,
)

unit = st.floats(0.0, 1.0)
dim = st.floats(0.2, 5.0)


def test_twelve_edges_four_per_direction():
    assert len(ALL_EDGES) == 12
    for ax in Axis:
        assert sum(e.direction == ax for e in ALL_EDGES) == 4


def test_each_edge_has_two_skew_partners_per_other_direction():
    for e in ALL_EDGES:
        for ax in e.direction.others():
            partners = [f for f in ALL_EDGES if f.direction == ax and is_skew_pair(e, f)]
            assert len(partners) == 2


def test_eight_skew_triples():
    triples = enumerate_skew_triples()
    assert len(triples) == 8
    assert len({t.code for t in triples}) == 8
    assert REFERENCE_TRIPLE in triples


def test_skew_edges_are_apart_and_not_parallel():
    brick = Brick(1.3, 0.9, 1 / (1.3 * 0.9))
    for t in enumerate_skew_triples():
        for e1, e2 in itertools.combinations(t.edges, 2):
            d = segment_distance(*e1.endpoints(brick), *e2.endpoints(brick))
            assert d > 0.5


def test_non_skew_triple_rejected():
    x = EdgeId(Axis.X, (0, 0))
    y = EdgeId(Axis.Y, (0, 0))  # meets x at the origin
    z = EdgeId(Axis.Z, (1, 1))
    with pytest.raises(DomainError):
        SkewTriple(x, y, z)
    with pytest.raises(DomainError):
        SkewTriple(y, x, z)


def test_edge_code_roundtrip():
    for e in ALL_EDGES:
        assert EdgeId.parse(e.code) == e
    with pytest.raises(DomainError):
        EdgeId.parse("W00")
    t = REFERENCE_TRIPLE
    assert SkewTriple.from_dict(t.to_dict()) == t
    assert t.code == "X00-Y01-Z11"


def test_brick_validation_and_admissibility():
    with pytest.raises(DomainError):
        Brick(0.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        Brick(1.0, math.inf, 1.0)
    assert Brick(1.0, 1.0, 1.0).is_admissible()
    assert Brick(INV_SQRT2, INV_SQRT2, 2.0).is_admissible()
    assert not Brick(0.5, 1.0, 2.0).is_admissible()
    assert not Brick(1.0, 1.0, 1.1).is_unit_volume


def test_vertex_position_and_lambda_range():
    b = Brick(2.0, 1.0, 0.5)
    e = EdgeId(Axis.Y, (1, 0))
    np.testing.assert_allclose(vertex_position(b, e, 0.25), [2.0, 0.25, 0.0])
    with pytest.raises(DomainError):
        vertex_position(b, e, 1.5)
    with pytest.raises(DomainError):
        Placement(REFERENCE_TRIPLE, (0.0, -0.1, 0.0))


def test_cube_corner_triangle():
    m = triangle_metrics(Brick(1, 1, 1), Placement(REFERENCE_TRIPLE, (1.0, 0.0, 1.0)))
    assert m.squares == pytest.approx((2.0, 2.0, 2.0), abs=1e-15)
    assert m.eq_residual == 0.0


@settings(max_examples=200, deadline=None)
@given(dim, dim, dim, unit, unit, unit, st.sampled_from(enumerate_skew_triples()))
def test_closed_form_sides_match_points(a, b, c, la, lb, lc, triple):
    brick = Brick(a, b, c)
    m = triangle_metrics(brick, Placement(triple, (la, lb, lc)))
    ab, bc, ca = side_squares(brick.squares, triple, la, lb, lc)
    assert (ab, bc, ca) == pytest.approx(m.squares, rel=1e-12, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(dim, dim, dim, unit, unit, unit, st.sampled_from(list(Axis)))
def test_reflection_preserves_sides(a, b, c, la, lb, lc, axis):
    brick = Brick(a, b, c)
    p = Placement(REFERENCE_TRIPLE, (la, lb, lc))
    q = reflect_placement(p, axis)
    back = reflect_placement(q, axis)
    assert back.triple == p.triple
    assert back.lambdas == pytest.approx(p.lambdas, abs=1e-15)
    m1, m2 = triangle_metrics(brick, p), triangle_metrics(brick, q)
    assert m2.squares == pytest.approx(m1.squares, rel=1e-12, abs=1e-12)


def test_metrics_from_points_residual():
    m = metrics_from_points([0, 0, 0], [1, 0, 0], [0, 2, 0])
    assert m.squares == (1.0, 5.0, 4.0)
    assert m.min_sq == 1.0
    assert m.eq_residual == 4.0


def _sampled_distance(p0, p1, q0, q1, n=401):
    s = np.linspace(0, 1, n)
    p = np.asarray(p0) + s[:, None] * (np.asarray(p1) - np.asarray(p0))
    q = np.asarray(q0) + s[:, None] * (np.asarray(q1) - np.asarray(q0))
    return np.min(np.linalg.norm(p[:, None, :] - q[None, :, :], axis=2))


pt = st.lists(st.floats(-3, 3), min_size=3, max_size=3)


@settings(max_examples=100, deadline=None)
@given(pt, pt, pt, pt)
def test_segment_distance_against_sampling(p0, p1, q0, q1):
    d = segment_distance(p0, p1, q0, q1)
    ref = _sampled_distance(p0, p1, q0, q1)
    # Sampling can only overestimate; the grid spacing bounds the excess.
    span = max(np.linalg.norm(np.subtract(p1, p0)), np.linalg.norm(np.subtract(q1, q0)))
    assert d <= ref + 1e-9
    assert ref - d <= span / 400 + 1e-9


def test_segment_distance_degenerate_and_parallel():
    assert segment_distance([0, 0, 0], [0, 0, 0], [3, 4, 0], [3, 4, 0]) == pytest.approx(5.0)
    assert segment_distance([0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]) == pytest.approx(1.0)
    assert segment_distance([0, 0, 0], [1, 0, 0], [0, -1, 1], [0, 1, 1]) == pytest.approx(1.0)
