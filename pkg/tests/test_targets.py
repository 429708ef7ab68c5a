import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from gen import rats, radii
from schmidtgame.metric import BairePoint, Ball, Euclid, Line, SpaceMismatch
from schmidtgame.targets import (
    Answer,
    BaireCylinder,
    Everything,
    Interval,
    Membership,
    Nothing,
    co_rationals,
    complement,
    parse_target,
    rationals,
    ray_union_q,
    union,
)


def _queries(rng, n=1000):
    for _ in range(n):
        c = F(rng.randint(-60, 60), rng.randint(1, 12))
        r = F(rng.randint(1, 24), rng.randint(1, 12))
        yield Line(c), Ball(Line(c), r)


def test_ray_union_q_examples():
    t = ray_union_q()
    assert t.point_query(Line(F(3, 2))) is Membership.IN
    assert t.ball_inside(Ball(Line(F(3, 2)), F(1, 2))) is Answer.YES
    assert t.ball_inside(Ball(Line(F(3, 2)), F(3, 4))) is Answer.NO
    assert t.ball_disjoint(Ball(Line(0), F(1, 4))) is Answer.NO


def test_rationals_and_complement():
    q = rationals()
    assert q.point_query(Line(F(22, 7))) is Membership.IN
    assert q.ball_inside(Ball(Line(0), 1)) is Answer.NO
    assert co_rationals().ball_disjoint(Ball(Line(0), 1)) is Answer.NO
    assert co_rationals().point_query(Line(F(22, 7))) is Membership.OUT


def test_complement_of_rationals_matches_co_rationals():
    a, b = complement(rationals()), co_rationals()
    for p, ball in _queries(random.Random(1)):
        assert a.point_query(p) is b.point_query(p)
        assert a.ball_inside(ball) is b.ball_inside(ball)
        assert a.ball_disjoint(ball) is b.ball_disjoint(ball)


def test_union_of_primitives_refines_ray_union_q():
    # Union is sound but incomplete: where it is certain it agrees with rayq,
    # and it is certain about every YES.
    built = union(union(Interval(None, -1), Interval(1, None)), rationals())
    ref = ray_union_q()
    for p, ball in _queries(random.Random(2)):
        assert built.point_query(p) is ref.point_query(p)
        got = built.ball_inside(ball)
        assert (got is Answer.YES) == (ref.ball_inside(ball) is Answer.YES)
        if got is not Answer.UNKNOWN:
            assert got is ref.ball_inside(ball)
        assert built.ball_disjoint(ball) is ref.ball_disjoint(ball)


def test_union_jointly_covered_ball_is_unknown():
    t = union(Interval(0, 1), Interval(1, 2))
    assert t.ball_inside(Ball(Line(1), F(1, 2))) is Answer.UNKNOWN


def test_double_complement_is_identity():
    t = ray_union_q()
    assert complement(complement(t)) is t
    wrapped = complement(union(t, Nothing()))
    for p, ball in _queries(random.Random(3), 200):
        assert complement(wrapped).point_query(p) is union(t, Nothing()).point_query(p)


def test_union_rejects_mixed_spaces():
    with pytest.raises(SpaceMismatch):
        union(ray_union_q(), BaireCylinder((1,)))


def test_baire_cylinder_target():
    t = BaireCylinder((7, 3))
    assert t.point_query(BairePoint((7, 3, 1))) is Membership.IN
    assert t.ball_inside(Ball(BairePoint((7, 3)), F(1, 8))) is Answer.YES
    assert t.ball_inside(Ball(BairePoint((7, 3)), F(1, 4))) is Answer.NO
    assert t.ball_disjoint(Ball(BairePoint((7, 4)), F(1, 8))) is Answer.YES
    assert t.ball_disjoint(Ball(BairePoint((7,)), F(1, 4))) is Answer.NO


@pytest.mark.parametrize(
    "text,kind",
    [
        ("rayq", "rayq"),
        ("Q", "Q"),
        ("coQ", "compl(Q)"),
        ("interval:-1,1", "[-1,1]"),
        ("interval:-inf,1", "(-inf,1]"),
        ("union(rayq,Q,interval:0,1)", "union(union(rayq,Q),[0,1])"),
        ("compl(compl(rayq))", "rayq"),
        ("stem:1,2", "stem:1,2"),
    ],
)
def test_parse_target(text, kind):
    assert repr(parse_target(text)) == kind


@pytest.mark.parametrize("text", ["bogus", "interval:1", "union(rayq)", "cylinder:x.txt"])
def test_parse_target_errors(text):
    with pytest.raises(ValueError):
        parse_target(text)


TARGETS = [
    ray_union_q(),
    Interval(-1, F(3, 2)),
    Interval(0, None, lo_closed=False),
    complement(Interval(-1, 1)),
    union(Interval(None, -2), Interval(2, None)),
    Everything(),
]


@settings(max_examples=300)
@given(st.sampled_from(TARGETS), rats, radii, st.randoms(use_true_random=False))
def test_ball_answers_are_sound(t, c, r, rng):
    ball = Ball(Line(c), r)
    inside, disjoint = t.ball_inside(ball), t.ball_disjoint(ball)
    assert not (inside is Answer.YES and disjoint is Answer.YES)
    for _ in range(100):
        p = Line(c + r * F(rng.randint(-1000, 1000), 1000))
        if inside is Answer.YES:
            assert t.point_query(p) is Membership.IN
        if disjoint is Answer.YES:
            assert t.point_query(p) is Membership.OUT


@settings(max_examples=300)
@given(st.sampled_from(TARGETS), rats, radii, st.fractions(0, 1, max_denominator=16), st.fractions(-1, 1, max_denominator=16))
def test_ball_inside_is_monotone(t, c, r, shrink, shift):
    if shrink == 0:
        return
    outer = Ball(Line(c), r)
    nr = r * shrink
    inner = Ball(Line(c + (r - nr) * shift), nr)
    if t.ball_inside(outer) is Answer.YES:
        assert t.ball_inside(inner) is Answer.YES
    if t.ball_disjoint(outer) is Answer.YES:
        assert t.ball_disjoint(inner) is Answer.YES


def test_line_targets_reject_other_spaces():
    with pytest.raises(SpaceMismatch):
        ray_union_q().point_query(Euclid((0, 0)))
