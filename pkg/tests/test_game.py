import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from gen import open_unit, params as param_draws, radii, rats
from schmidtgame.game import (
    GameParams,
    Position,
    Trace,
    Variant,
    Verdict,
    enclosing_ball,
    legal_move,
    play,
    required_radius,
)
from schmidtgame.metric import Ball, Line, Nesting, ball_nested
from schmidtgame.sampling import RandomPlayer
from schmidtgame.strategies import FunctionStrategy, concentric, maximize_distance_from, tangent_toward
from schmidtgame.targets import Answer, Membership, Opaque, ray_union_q

Q = F


def test_required_radius_schedule():
    p = GameParams(Q(1, 2), Q(1, 3))
    assert required_radius(p, 0, 1) == 1
    assert required_radius(p, 1, 1) == Q(1, 2)
    assert required_radius(p, 2, 1) == Q(1, 6)
    assert required_radius(p, 5, 1) == Q(1, 2) * Q(1, 6) ** 2


def test_banach_mazur_has_no_schedule():
    p = GameParams(Q(1, 2), Q(1, 2), 1, Variant.BANACH_MAZUR)
    with pytest.raises(ValueError):
        required_radius(p, 1, 1)
    pos = Position((Ball(Line(0), 1),))
    assert legal_move(p, pos, Ball(Line(Q(1, 10)), Q(9, 10))) is Verdict.LEGAL
    assert legal_move(p, pos, Ball(Line(0), 2)) is Verdict.ILLEGAL_RADIUS


def test_params_validated():
    for a, b in ((0, Q(1, 2)), (1, Q(1, 2)), (Q(1, 2), Q(3, 2))):
        with pytest.raises(ValueError):
            GameParams(a, b)
    with pytest.raises(ValueError):
        GameParams(Q(1, 2), Q(1, 2), 0)


def test_legal_move_verdicts():
    p = GameParams(Q(1, 4), Q(1, 2))
    pos = Position((Ball(Line(0), 1),))
    assert legal_move(p, pos, Ball(Line(Q(3, 4)), Q(1, 4))) is Verdict.LEGAL
    assert legal_move(p, pos, Ball(Line(Q(4, 5)), Q(1, 4))) is Verdict.ILLEGAL_NESTING
    assert legal_move(p, pos, Ball(Line(0), Q(1, 3))) is Verdict.ILLEGAL_RADIUS
    nt = p.with_variant(Variant.NON_TANGENT)
    assert legal_move(nt, pos, Ball(Line(Q(3, 4)), Q(1, 4))) is Verdict.ILLEGAL_TANGENT
    assert legal_move(nt, pos, Ball(Line(Q(1, 2)), Q(1, 4))) is Verdict.LEGAL


def test_opening_radius_is_rho():
    p = GameParams(Q(1, 2), Q(1, 2), 2)
    assert legal_move(p, Position(), Ball(Line(5), 1)) is Verdict.ILLEGAL_RADIUS
    assert legal_move(p, Position(), Ball(Line(5), 2)) is Verdict.LEGAL


@settings(max_examples=60)
@given(rats)
def test_maxdist_wins_rayq_at_depth_one(c):
    p = GameParams(Q(1, 4), Q(1, 2), 2)
    I = FunctionStrategy(lambda pos: Ball(Line(c), 2), player="I")
    trace, out = play(p, I, maximize_distance_from(p, Line(0)), ray_union_q(), 10)
    assert out.verdict == "WinII"
    if ray_union_q().ball_inside(Ball(Line(c), 2)) is Answer.YES:
        assert out.depth == 0
        return
    assert out.depth == 1
    b = out.certificate.ball
    assert b.radius == Q(1, 2)
    assert abs(b.center.x) - b.radius >= 1


def test_tangent_duel_converges_to_minus_one_third():
    p = GameParams(Q(1, 2), Q(1, 2), 1)
    I = tangent_toward(p, (1,), opening=Ball(Line(0), 1))
    II = tangent_toward(p, (-1,))
    trace, out = play(p, I, II, Opaque(), 42)
    assert out.verdict == "Undecided"
    b = enclosing_ball(trace)
    assert b.radius == Q(1, 4) ** 20 / 2
    assert b.contains(Line(Q(-1, 3)))


def test_illegal_nesting_loses():
    p = GameParams(Q(1, 2), Q(1, 2), 1)
    I = FunctionStrategy(lambda pos: Ball(Line(0), 1) if pos.turn == 0 else Ball(Line(5), pos.last.radius / 2), player="I")
    trace, out = play(p, I, concentric(p), Opaque(), 6)
    assert out.verdict == "WinII" and out.depth == 2
    assert out.certificate.kind == "violation" and out.certificate.detail == "IllegalNesting"


def test_crashing_strategy_resigns():
    p = GameParams(Q(1, 2), Q(1, 2), 1)

    def boom(pos):
        raise ZeroDivisionError("no move")

    _, out = play(p, concentric(p, Ball(Line(0), 1)), FunctionStrategy(boom, player="II"), Opaque(), 4)
    assert out.verdict == "WinI" and out.certificate.kind == "resignation"


def test_enclosing_ball_of_empty_trace():
    with pytest.raises(ValueError):
        enclosing_ball(Trace())


def _random_trace(seed, p, rounds=10, target=None):
    I = RandomPlayer(p, seed, Ball(Line(0), p.rho))
    II = RandomPlayer(p, seed + 1)
    return play(p, I, II, target or Opaque(), rounds)


@settings(max_examples=60)
@given(param_draws(), st.integers(0, 10**6))
def test_runs_follow_schedule_and_nest(p, seed):
    trace, _ = _random_trace(seed, p)
    balls = trace.balls
    for t, b in enumerate(balls):
        assert b.radius == required_radius(p, t, p.rho)
    for i in range(len(balls) - 1):
        assert ball_nested(balls[i], balls[i + 1]) is not Nesting.NOT_NESTED
        assert ball_nested(balls[i], balls[-1]) is not Nesting.NOT_NESTED


@settings(max_examples=40)
@given(param_draws(), st.integers(0, 10**6))
def test_trace_round_trip(p, seed):
    trace, _ = _random_trace(seed, p, target=ray_union_q())
    again = Trace.loads(trace.dumps())
    assert again == trace
    assert again.dumps() == trace.dumps()


@settings(max_examples=40)
@given(param_draws(), st.integers(0, 10**6))
def test_legality_depends_only_on_last_ball(p, seed):
    trace, _ = _random_trace(seed, p, 6)
    pos = trace.position()
    rng = random.Random(seed)
    move = Ball(Line(pos.last.center.x + Q(rng.randint(-9, 9), 10) * pos.last.radius),
                pos.last.radius * p.factor(pos.turn))
    # same last ball and parity, different history
    other = Position((Ball(Line(999), 10**6),) * (pos.turn - 1) + (pos.last,))
    assert legal_move(p, pos, move) is legal_move(p, other, move)


@settings(max_examples=40)
@given(param_draws(), st.integers(0, 10**6))
def test_ball_certificates_are_sound(p, seed):
    trace, out = _random_trace(seed, p, 12, ray_union_q())
    c = out.certificate
    if c.kind == "ball":
        t = ray_union_q()
        if out.verdict == "WinII":
            assert t.ball_inside(c.ball) is Answer.YES
            assert t.point_query(c.ball.center) is Membership.IN
        else:
            assert t.ball_disjoint(c.ball) is Answer.YES
            assert t.point_query(c.ball.center) is Membership.OUT


@settings(max_examples=40)
@given(open_unit, open_unit, radii, st.integers(0, 10**6))
def test_banach_mazur_radii_never_grow(a, b, rho, seed):
    p = GameParams(a, b, rho, Variant.BANACH_MAZUR)
    trace, out = _random_trace(seed, p, 8)
    assert out.verdict == "Undecided"
    rs = [x.radius for x in trace.balls]
    assert all(x >= y for x, y in zip(rs, rs[1:]))
