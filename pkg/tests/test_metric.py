import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from gen import baire_points, nested_chain, points, rats
from schmidtgame.metric import (
    BairePoint,
    Ball,
    Euclid,
    Line,
    Nesting,
    Ordering,
    SpaceMismatch,
    ball_nested,
    baire_ball_subset,
    baire_cylinder_length,
    disagreement_index,
    dist,
    dist_cmp,
    dist_sq,
    exact_sqrt,
    fmt_rat,
    is_unit,
    parse_point,
    parse_rat,
    sqrt_bounds,
    unit_toward,
)


def test_dist_cmp_line_equality():
    assert dist_cmp(Line(0), Line(F(3, 4)), F(3, 4)) is Ordering.EQ


def test_dist_cmp_euclid_pythagorean():
    p, q = Euclid((0, 0, 0)), Euclid((0, F(3, 10), F(2, 5)))
    assert dist_sq(p, q) == F(1, 4)
    assert dist_cmp(p, q, F(1, 2)) is Ordering.EQ
    assert dist_cmp(p, q, F(49, 100)) is Ordering.GT
    assert dist_cmp(p, q, F(51, 100)) is Ordering.LT


def test_dist_cmp_baire_first_difference_at_two():
    x, y = BairePoint((1, 2, 3)), BairePoint((1, 2, 4))
    assert disagreement_index(x, y) == 2
    assert dist_cmp(x, y, F(1, 8)) is Ordering.EQ


def test_baire_points_differing_only_in_tail():
    x, y = BairePoint((1,), 0), BairePoint((1,), 2)
    assert disagreement_index(x, y) == 1
    assert dist(x, y) == F(1, 4)
    assert BairePoint((1, 0, 0), 0) == BairePoint((1,), 0)


def test_mixed_spaces_rejected():
    with pytest.raises(SpaceMismatch):
        dist_cmp(Line(0), Euclid((0, 0)), 1)
    with pytest.raises(SpaceMismatch):
        ball_nested(Ball(Line(0), 1), Ball(BairePoint(()), F(1, 2)))


def test_ball_nested_cases():
    outer = Ball(Line(0), 1)
    assert ball_nested(outer, Ball(Line(F(3, 4)), F(1, 4))) is Nesting.TANGENT
    assert ball_nested(outer, Ball(Line(F(4, 5)), F(1, 4))) is Nesting.NOT_NESTED
    assert ball_nested(outer, Ball(Line(F(1, 4)), F(1, 2))) is Nesting.NESTED
    assert ball_nested(outer, Ball(Line(0), 2)) is Nesting.NOT_NESTED


def test_parse_and_format_rationals():
    assert parse_rat("6/8") == F(3, 4)
    assert parse_rat("-2") == F(-2)
    assert fmt_rat(F(3, 4)) == "3/4" and fmt_rat(F(4, 2)) == "2"
    for bad in ("0.25", "1e3", "1/0", "a/b", ""):
        with pytest.raises(ValueError):
            parse_rat(bad)


@pytest.mark.parametrize("text", ["[3/4]", "[0,3/10,2/5]", "[7,3|0]", "[|5]"])
def test_point_text_round_trip(text):
    assert str(parse_point(text)) == text


def test_exact_sqrt_and_bounds():
    assert exact_sqrt(F(9, 49)) == F(3, 7)
    assert exact_sqrt(F(2)) is None
    lo, hi = sqrt_bounds(F(2), 40)
    assert lo * lo <= 2 <= hi * hi and hi - lo <= F(1, 2**40)


def test_baire_cylinder_length():
    assert baire_cylinder_length(F(1, 2)) == 0
    assert baire_cylinder_length(F(1, 4)) == 1
    assert baire_cylinder_length(F(1, 3)) == 1
    assert baire_cylinder_length(F(1, 8)) == 2


@settings(max_examples=1000)
@given(nested_chain(3))
def test_nesting_transitive(chain):
    b1, b2, b3 = chain
    assert ball_nested(b1, b2) is not Nesting.NOT_NESTED
    assert ball_nested(b2, b3) is not Nesting.NOT_NESTED
    assert ball_nested(b1, b3) in (Nesting.NESTED, Nesting.TANGENT)


@settings(max_examples=300)
@given(points(), st.data())
def test_dist_cmp_agrees_with_float(p, data):
    q = data.draw(points(dim=len(p.coords) if isinstance(p, Euclid) else 1))
    t = data.draw(st.fractions(min_value=0, max_value=20, max_denominator=64))
    d = math.dist([float(c) for c in getattr(p, "coords", (p.x,) if isinstance(p, Line) else ())],
                  [float(c) for c in getattr(q, "coords", (q.x,) if isinstance(q, Line) else ())])
    exact = dist_cmp(p, q, t)
    if abs(d - float(t)) > 2**-20:
        assert exact is (Ordering.LT if d < float(t) else Ordering.GT)


@settings(max_examples=500)
@given(baire_points, baire_points, baire_points)
def test_baire_ultrametric(x, y, z):
    assert dist(x, z) <= max(dist(x, y), dist(y, z))


@given(baire_points, baire_points)
def test_baire_distance_symmetric_and_zero_iff_equal(x, y):
    assert dist(x, y) == dist(y, x)
    assert (dist(x, y) == 0) == (x == y)


@given(st.lists(rats, min_size=2, max_size=4).filter(lambda v: any(v)))
def test_unit_toward_is_exact_unit_and_close(v):
    u = unit_toward(v)
    assert is_unit(u)
    n = math.sqrt(sum(float(a) ** 2 for a in v))
    assert max(abs(float(a) / n - float(b)) for a, b in zip(v, u)) < 1e-3


@given(baire_points, st.integers(0, 4), st.integers(0, 4))
def test_baire_subset_matches_prefixes(x, i, j):
    outer, inner = Ball(x, F(1, 2 ** (i + 1))), Ball(x, F(1, 2 ** (i + j + 1)))
    assert baire_ball_subset(outer, inner)
