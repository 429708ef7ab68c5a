import random
from fractions import Fraction as F
from itertools import islice

from hypothesis import given, settings, strategies as st

from gen import params as param_draws
from schmidtgame.dense import DyadicPoints, RationalPoints, enumerate_rationals, first_in_open_interval, parse_dense
from schmidtgame.game import GameParams, Position, Variant, Verdict, legal_move
from schmidtgame.metric import Ball, Euclid, Line, dist_sq, is_unit
from schmidtgame.sampling import RandomPlayer, random_legal_move, random_unit


def test_rationals_ordered_by_denominator_then_numerator():
    first = list(islice(enumerate_rationals(-1, 1), 7))
    assert first == [F(0), F(-1, 2), F(1, 2), F(-2, 3), F(-1, 3), F(1, 3), F(2, 3)]
    assert len(set(islice(enumerate_rationals(-1, 1), 500))) == 500


def test_first_in_open_interval():
    assert first_in_open_interval(F(2), F(3), range(1, 10)) == F(5, 2)
    assert first_in_open_interval(F(0), F(1, 100), range(1, 10)) is None


def test_snap_is_identity_on_members():
    assert RationalPoints().snap(Line(F(22, 7)), F(1, 10**9)) == Line(F(22, 7))
    assert DyadicPoints().snap(Line(F(3, 8)), F(1, 10**9)) == Line(F(3, 8))


@settings(max_examples=200)
@given(st.fractions(-10, 10, max_denominator=1000), st.fractions(0, 1, max_denominator=1000).filter(lambda f: f > 0))
def test_snap_lands_within_eps(x, eps):
    for dense in (RationalPoints(), DyadicPoints()):
        y = dense.snap(Line(x), eps)
        assert dense.contains(y) and dist_sq(y, Line(x)) < eps * eps
    p = Euclid((x, -x, x / 3))
    y = DyadicPoints().snap(p, eps)
    assert dist_sq(y, p) < eps * eps


def test_parse_dense():
    assert isinstance(parse_dense("Q"), RationalPoints)
    assert isinstance(parse_dense("dyadic"), DyadicPoints)


@given(st.randoms(use_true_random=False), st.sampled_from([2, 3, 4]))
def test_random_unit_is_exact(rng, dim):
    assert is_unit(random_unit(rng, dim))


@settings(max_examples=60)
@given(param_draws(), st.integers(0, 10**6), st.sampled_from([("line",), ("euclid", 2), ("euclid", 3)]))
def test_random_moves_are_legal(p, seed, space):
    rng = random.Random(seed)
    pos = Position()
    for _ in range(8):
        move = random_legal_move(p, pos, rng, space=space)
        assert legal_move(p, pos, move) is Verdict.LEGAL
        pos = pos.extend(move)


@settings(max_examples=30)
@given(param_draws(), st.integers(0, 10**6))
def test_random_moves_respect_non_tangent(p, seed):
    nt = p.with_variant(Variant.NON_TANGENT)
    rng = random.Random(seed)
    pos = Position((Ball(Line(0), nt.rho),))
    for _ in range(8):
        move = random_legal_move(nt, pos, rng, tangent_prob=0)
        assert legal_move(nt, pos, move) is Verdict.LEGAL
        pos = pos.extend(move)


def test_random_player_is_positional():

    p = GameParams(F(1, 2), F(1, 3), 1)
    a, b = RandomPlayer(p, 5), RandomPlayer(p, 5)
    pos = Position((Ball(Line(0), 1),))
    assert a.next(pos) == b.next(pos) == a.next(pos)
