import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from schmidtgame.checks import random_run
from schmidtgame.dense import enumerate_rationals
from schmidtgame.game import GameParams, Position, Variant, Verdict, legal_move, play
from schmidtgame.metric import Ball, Euclid, Line, SpaceMismatch, origin, translate
from schmidtgame.sampling import RandomPlayer
from schmidtgame.strategies import (
    Box,
    Interval,
    NoCell,
    OpenBall,
    OverlapDetected,
    Response,
    RoundContext,
    SimpleOneRound,
    SimpleStrategy,
    arena,
    avoid_enumeration,
    cells_disjoint,
    concentric,
    constant_rounds,
    half_open,
    maximize_distance_from,
    minimize_distance_from,
    simple_maxdist_line,
    simple_relative,
    simple_respond,
    strategy_from_doc,
    strategy_to_doc,
    tangent_toward,
    validate_simple,
)
from schmidtgame.targets import Opaque, ray_union_q

HALF = F(1, 2)


def two_cells():
    return SimpleOneRound((
        (half_open(0, 1), Response.of(Ball(Line(F(1, 4)), HALF))),
        (half_open(1, 2), Response.of(Ball(Line(F(3, 2)), HALF))),
    ))


def test_simple_respond_lookup():
    assert simple_respond(two_cells(), Ball(Line(HALF), 1)) == (0, Ball(Line(F(1, 4)), HALF))
    assert simple_respond(two_cells(), Ball(Line(1), 1))[0] == 1
    with pytest.raises(NoCell):
        simple_respond(two_cells(), Ball(Line(F(5, 2)), 1))


def test_simple_respond_reports_overlap():
    s = SimpleOneRound(((Interval(0, 1, True, True), Response.of(Ball(Line(0), 1))),
                        (Interval(1, 2), Response.of(Ball(Line(0), 1)))))
    with pytest.raises(OverlapDetected):
        simple_respond(s, Ball(Line(1), 1))
    assert s.overlaps() == [(0, 1)]


def test_validate_two_cells_tangent_cell():
    ctx = RoundContext(0, incoming_radius=1)
    schmidt = validate_simple(two_cells(), GameParams(HALF, HALF, 1), ctx)
    nt = validate_simple(two_cells(), GameParams(HALF, HALF, 1, Variant.NON_TANGENT), ctx)
    # cell [1,2) -> B(3/2,1/2) is tangent at x = 1: fine in Schmidt, fails non-tangent
    assert 1 not in [i for i, _, _ in schmidt.failures]
    (w,) = [w for i, _, w in nt.failures if i == 1]
    assert abs(w.x - F(3, 2)) == HALF
    # cell [0,1) -> B(1/4,1/2) is genuinely illegal near x = 1 (distance 3/4 > 1/2)
    assert [i for i, _, _ in schmidt.failures] == [0]


@pytest.mark.parametrize("alpha", [F(1, 5), HALF, F(9, 10)])
def test_validate_concentric_whole_ball(alpha):
    p = GameParams(alpha, HALF, 1)
    s = SimpleOneRound(((OpenBall(Line(0), 1), Response(alpha, offset=(0,))),))
    assert validate_simple(s, p, RoundContext(0, incoming_radius=1)).ok


def test_validate_catches_wrong_radius():
    p = GameParams(HALF, HALF, 1)
    s = SimpleOneRound(((Interval(None, None), Response(F(1, 3), offset=(0,))),))
    assert not validate_simple(s, p, RoundContext(0)).ok


def test_avoid_enumeration_example():
    p = GameParams(F(1, 4), F(1, 3))
    I = avoid_enumeration(p, [F(1, 6)], Ball(Line(0), 1))
    pos = Position((Ball(Line(0), 1), Ball(Line(0), HALF)))
    assert I.next(pos) == Ball(Line(F(-1, 3)), F(1, 6))


def test_avoid_enumeration_preconditions():
    with pytest.raises(ValueError):
        avoid_enumeration(GameParams(HALF, HALF), [0], Ball(Line(0), 1))
    with pytest.raises(SpaceMismatch):
        avoid_enumeration(GameParams(HALF, F(1, 3)), [0], Ball(Euclid((0, 0)), 1))


def test_tangent_in_r3_example():
    p = GameParams(HALF, HALF)
    II = tangent_toward(p, (0, F(3, 5), F(4, 5)))
    x = F(7, 3)
    assert II.next(Position((Ball(Euclid((x, 0, 0)), 1),))) == Ball(Euclid((x, F(3, 10), F(2, 5))), HALF)


def test_tangent_rejects_irrational_direction():
    with pytest.raises(ValueError):
        tangent_toward(GameParams(HALF, HALF), (1, 1))


def test_maxdist_line_example():
    p = GameParams(F(1, 4), HALF)
    II = maximize_distance_from(p, Line(0))
    assert II.next(Position((Ball(Line(5), 2),))) == Ball(Line(F(13, 2)), HALF)


def test_builtins_are_rule_following():
    rng = random.Random(11)
    checked = 0
    while checked < 10_000:
        a, b = F(rng.randint(1, 9), 10), F(rng.randint(1, 9), 10)
        p = GameParams(a, b, F(rng.randint(1, 6), rng.randint(1, 3)))
        space = rng.choice([("line",), ("euclid", 2), ("euclid", 3)])
        pos = random_run(p, rng, rng.randint(1, 7), space)
        dim = 1 if space[0] == "line" else space[1]
        d = (1,) + (0,) * (dim - 1)
        anchor = origin(space)
        for s in (concentric(p), maximize_distance_from(p, anchor), minimize_distance_from(p, anchor), tangent_toward(p, d)):
            assert legal_move(p, pos, s.next(pos)) is Verdict.LEGAL, (s, pos)
            checked += 1
        if b < HALF and space == ("line",) and pos.turn % 2 == 0:
            I = avoid_enumeration(p, enumerate_rationals(-1, 1), pos.balls[0])
            assert legal_move(p, pos, I.next(pos)) is Verdict.LEGAL


@settings(max_examples=30)
@given(st.integers(0, 10**6), st.integers(4, 24))
def test_avoid_enumeration_persistence(seed, rounds):
    p = GameParams(F(1, 4), F(1, 3))
    I = avoid_enumeration(p, enumerate_rationals(-1, 1), Ball(Line(0), HALF))
    trace, _ = play(p, I, RandomPlayer(p, seed), Opaque(), 2 * rounds + 1)
    balls = trace.balls
    for k in range(rounds):
        q = Line(I.target_point(k))
        assert not any(b.contains(q) for b in balls[2 * k + 2:])


@settings(max_examples=50)
@given(st.fractions(0, 1, max_denominator=16).filter(lambda f: 0 < f < 1),
       st.fractions(0, 1, max_denominator=16).filter(lambda f: 0 < f < 1),
       st.sampled_from([(1,), (-1,), (F(3, 5), F(4, 5)), (0, F(5, 13), F(-12, 13))]),
       st.integers(1, 30))
def test_tangent_self_play_telescopes(a, b, d, m):
    p = GameParams(a, b, 1)
    start = Ball(Line(0) if len(d) == 1 else Euclid((0,) * len(d)), 1)
    s = tangent_toward(p, d, opening=start)
    trace, _ = play(p, s, tangent_toward(p, d), Opaque(), m)
    balls = trace.balls
    total = sum(balls[i - 1].radius - balls[i].radius for i in range(1, len(balls)))
    assert balls[-1].center == translate(start.center, d, total)
    assert total == 1 - balls[-1].radius


def test_arena_tangent_codes_undecided_around_minus_third():
    p = GameParams(HALF, HALF, 1)
    I = simple_relative(p, 1, "I", (1,), opening=Ball(Line(0), 1))
    II = simple_relative(p, 1, "II", (-1,))
    trace, out = arena(I, II, p, Opaque(), 20)
    assert out.verdict == "Undecided"
    assert out.certificate.ball.contains(Line(F(-1, 3)))
    assert all(c == 0 for c in trace.cells[1:])


def test_arena_reproduces_play_move_for_move():
    p = GameParams(HALF, F(1, 3), 1)
    coded = arena(simple_relative(p, 1, "I", (1,), opening=Ball(Line(0), 1)), simple_relative(p, 1, "II", (-1,)), p,
                  Opaque(), 24)[0]
    direct = play(p, tangent_toward(p, (1,), opening=Ball(Line(0), 1)), tangent_toward(p, (-1,)), Opaque(), 24)[0]
    assert coded.balls == direct.balls


def test_arena_maxdist_cells_win_rayq():
    p = GameParams(F(1, 4), HALF, 2)
    I = simple_relative(p, 2, "I", (1,), opening=Ball(Line(0), 2))
    trace, out = arena(I, simple_maxdist_line(p, 2), p, ray_union_q(), 8)
    assert out.verdict == "WinII" and out.depth == 1
    assert trace.cells[1] == 1


def test_arena_malformed_code_loses():
    p = GameParams(HALF, HALF, 1)
    bad = SimpleOneRound(((Interval(0, 1), Response(HALF, offset=(0,))), (Interval(HALF, 2), Response(HALF, offset=(0,)))))
    I = SimpleStrategy(constant_rounds(bad), opening=Ball(Line(0), 1))
    _, out = arena(I, simple_relative(p, 1, "II", (-1,)), p, Opaque(), 6)
    assert out.verdict == "WinII" and out.certificate.kind == "violation"
    _, out = arena(I, SimpleStrategy(constant_rounds(bad)), p, Opaque(), 6)
    assert out.verdict == "WinII"


def test_nocell_is_players_failure():
    p = GameParams(HALF, HALF, 1)
    narrow = SimpleOneRound(((Interval(5, 6), Response(HALF, offset=(0,))),))
    _, out = arena(simple_relative(p, 1, "I", (1,), opening=Ball(Line(0), 1)), SimpleStrategy(constant_rounds(narrow)),
                   p, Opaque(), 6)
    assert out.verdict == "WinI" and out.depth == 1


def test_trace_annotations_match_cells():
    p = GameParams(F(1, 4), HALF, 2)
    II = simple_maxdist_line(p, 2)
    trace, _ = play(p, RandomPlayer(p, 3, Ball(Line(0), 2)), II, Opaque(), 12)
    for t in range(1, len(trace.balls), 2):
        cell = II.rounds(II.indices(Position(trace.balls[:t - 1])))
        assert cell.cells[trace.cells[t]].contains(trace.balls[t - 1].center)


def test_document_round_trip():
    p = GameParams(F(1, 4), HALF, 2)
    s = simple_maxdist_line(p, 2)
    doc = strategy_to_doc(s, histories=[(), (0,), (1,)])
    back = strategy_from_doc(doc)
    assert back.claims_rule_following is True
    for u in [(), (0,), (1,)]:
        assert back.rounds(u) == s.rounds(u)
    with pytest.raises(NoCell):
        back.rounds((0, 0))
    with pytest.raises(ValueError):
        strategy_from_doc('{"format": "other"}')


def test_cells_disjoint_decisions():
    assert cells_disjoint(half_open(0, 1), half_open(1, 2)) is True
    assert cells_disjoint(Interval(0, 1, True, True), Interval(1, 2)) is False
    assert cells_disjoint(Box((0, 0), (1, 1)), Box((1, 0), (2, 1))) is True
    assert cells_disjoint(Box((0, 0), (1, 1)), Box((F(1, 2), 0), (2, 1))) is not True


@settings(max_examples=200)
@given(st.fractions(-4, 4, max_denominator=16), st.fractions(-4, 4, max_denominator=16),
       st.fractions(-4, 4, max_denominator=16), st.fractions(-4, 4, max_denominator=16))
def test_interval_intersection_is_membership_and(a, b, c, d):
    i, j = Interval(min(a, b), max(a, b), True, False), Interval(min(c, d), max(c, d), False, True)
    k = i.intersect(j)
    for x in (a, b, c, d, (a + c) / 2, (b + d) / 2):
        assert k.has(x) == (i.has(x) and j.has(x))
