"""Seeded random rule-following players, used by property runs and the CLI."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .game import GameParams, Position, Variant, next_radius
from .metric import Ball, BairePoint, Euclid, Line, baire_cylinder_length, coords_of, make_point, origin, translate
from .strategies import Strategy


def random_fraction(rng: random.Random, max_den: int = 64) -> Fraction:
    """A rational in the open interval (-1, 1)."""
    q = rng.randint(1, max_den)
    return Fraction(rng.randint(-q + 1, q - 1), q)


def random_unit(rng: random.Random, dim: int, max_den: int = 16) -> tuple:
    """A rational point of the unit sphere via inverse stereographic projection."""
    if dim == 1:
        return (Fraction(rng.choice((-1, 1))),)
    t = [Fraction(rng.randint(-2 * max_den, 2 * max_den), rng.randint(1, max_den)) for _ in range(dim - 1)]
    t2 = sum(x * x for x in t)
    u = ((1 - t2) / (1 + t2),) + tuple(2 * x / (1 + t2) for x in t)
    return u


def random_point(rng: random.Random, space, spread: int = 2) -> object:
    if space[0] == "baire":
        stem = tuple(rng.randint(0, 9) for _ in range(rng.randint(0, 4)))
        return BairePoint(stem, rng.randint(0, 3))
    dim = 1 if space[0] == "line" else space[1]
    return make_point([spread * random_fraction(rng) for _ in range(dim)])


def random_legal_move(params: GameParams, pos: Position, rng: random.Random, tangent_prob: float = 0.2,
                      space=("line",)) -> Ball:
    """A move that is Legal at ``pos``.

    Tangent moves are drawn with probability ``tangent_prob`` except in the
    non-tangent variant.  Banach-Mazur moves shrink by the alpha/beta factors.
    """
    if pos.turn == 0:
        r = params.rho if params.rho is not None else Fraction(1)
        return Ball(random_point(rng, space), r)
    prev = pos.last
    r = next_radius(params, pos)
    s = prev.radius - r
    tangent = params.variant is not Variant.NON_TANGENT and rng.random() < tangent_prob
    c = prev.center
    if isinstance(c, BairePoint):
        L = baire_cylinder_length(s) if tangent else baire_cylinder_length(s / 2)
        stem = c.prefix(L) + tuple(rng.randint(0, 9) for _ in range(rng.randint(0, 3)))
        return Ball(BairePoint(stem, rng.randint(0, 3)), r)
    dim = len(coords_of(c))
    if tangent:
        return Ball(translate(c, random_unit(rng, dim), s), r)
    if dim == 1:
        return Ball(Line(c.x + s * random_fraction(rng)), r)
    # each coordinate within s/n keeps the displacement norm below s
    off = [s * random_fraction(rng) / dim for _ in range(dim)]
    return Ball(Euclid(tuple(a + b for a, b in zip(c.coords, off))), r)


class RandomPlayer(Strategy):
    """Deterministic given (seed, position): the generator is reseeded from both."""

    def __init__(self, params: GameParams, seed: int, opening: Optional[Ball] = None, space=None,
                 tangent_prob: float = 0.2, player: Optional[str] = None):
        self.params = params
        self.seed = seed
        self.opening = opening
        self.space = space or (opening.space if opening is not None else ("line",))
        self.tangent_prob = tangent_prob
        self.player = player or ("I" if opening is not None else "II")

    def next(self, pos):
        if pos.turn == 0 and self.opening is not None:
            return self.opening
        rng = random.Random(f"{self.seed}:{pos!r}")
        space = pos.last.space if pos.turn else self.space
        return random_legal_move(self.params, pos, rng, self.tangent_prob, space)

    def __repr__(self):
        return f"random:{self.seed}"


def default_opening(params: GameParams, space) -> Ball:
    return Ball(origin(space), params.rho if params.rho is not None else Fraction(1))
