"""Rational Schmidt games and strategy transfer between (alpha, beta) and (alpha', beta').

With alpha < alpha', beta' < beta and alpha*beta = alpha'*beta', a player of
the rational (alpha', beta') game (centers in a countable dense set, radii in
the grid alpha^n beta^m Q+) can be simulated inside the real (alpha, beta)
game: the opponent's real centers are snapped into the dense set within
epsilon_n, and the simulated player's centers are copied back verbatim.

Mirror direction (I's strategy).  A rational (alpha, beta) strategy sigma for
I with opening radius rho' yields an (alpha', beta') strategy for I with
opening radius rho chosen in the same open window as the II direction,
rho' (alpha/alpha') (1-beta)/(1-beta') < rho < rho' (1-alpha)/(1-alpha').
Real II centers are snapped with

    eps'_n = min{ (ab)^n (rho'(1-alpha) - rho(1-alpha')),
                  (ab)^n (alpha' rho (1-beta') - alpha rho'(1-beta)) }

The first term keeps the shadow II ball inside the shadow I ball, the second
keeps the next real I ball (copied from the shadow) inside the real II ball.
Both are positive exactly when rho lies in the window above.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from typing import Optional, Sequence

from .dense import DenseSet, RationalPoints
from .game import GameParams, Position, Verdict, legal_move, play, adjudicate_ball, required_radius
from .metric import Ball, Line, dist_sq, fmt_rat, origin
from .sampling import RandomPlayer
from .strategies import Strategy, maximize_distance_from, concentric
from .targets import TargetSet


class SnapFailure(RuntimeError):
    """The dense set had no member within epsilon of a real center."""


def _check_order(alpha, beta, alpha_p, beta_p):
    if not (0 < alpha < alpha_p < 1 and 0 < beta_p < beta < 1):
        raise ValueError("need 0 < alpha < alpha' < 1 and 0 < beta' < beta < 1")
    if alpha * beta != alpha_p * beta_p:
        raise ValueError("need alpha*beta == alpha'*beta'")


def rho_prime_bounds(alpha, beta, alpha_p, beta_p, rho) -> tuple[Fraction, Fraction]:
    alpha, beta, alpha_p, beta_p, rho = map(Fraction, (alpha, beta, alpha_p, beta_p, rho))
    _check_order(alpha, beta, alpha_p, beta_p)
    lo = rho * (alpha / alpha_p) * (1 - beta) / (1 - beta_p)
    hi = rho * (1 - alpha) / (1 - alpha_p)
    return lo, hi


def pick_rho_prime(bounds, alpha, beta) -> Fraction:
    """First alpha^n beta^m p/q strictly inside ``bounds``.

    Candidates are ordered by cost c = n + m + q; within a cost by n + m, then
    n, and for each (n, m, q) the least admissible p.  A plain lexicographic
    order over (n, m) would never leave n = m = 0, since q alone is dense.
    """
    lo, hi = map(Fraction, bounds)
    alpha, beta = Fraction(alpha), Fraction(beta)
    if not 0 <= lo < hi:
        raise ValueError(f"need 0 <= lo < hi, got ({lo}, {hi})")
    for c in count(1):
        for s in range(c):
            q = c - s
            for n in range(s + 1):
                base = alpha**n * beta ** (s - n)
                # least p with base*p/q > lo
                p = math.floor(lo * q / base) + 1
                v = base * Fraction(p, q)
                if v < hi:
                    return v
    raise AssertionError("unreachable")


def epsilon(n: int, alpha, beta, alpha_p, beta_p, rho, rho_p) -> Fraction:
    """Snap tolerance for I's n-th real move (II direction).

    The second term carries the exponent n - 1 as stated, so at n = 0 it is
    scaled by (ab)^-1.
    """
    alpha, beta, alpha_p, beta_p, rho, rho_p = map(Fraction, (alpha, beta, alpha_p, beta_p, rho, rho_p))
    ab = alpha * beta
    a = ab**n * (rho * (1 - alpha) - rho_p * (1 - alpha_p))
    b = ab ** (n - 1) * (alpha_p * rho_p * (1 - beta_p) - alpha * rho * (1 - beta))
    return min(a, b)


def epsilon_mirror(n: int, alpha, beta, alpha_p, beta_p, rho, rho_p) -> Fraction:
    """Snap tolerance for II's n-th real move in the I direction.

    ``rho`` is the real (alpha', beta') opening radius, ``rho_p`` the rational
    (alpha, beta) one.
    """
    alpha, beta, alpha_p, beta_p, rho, rho_p = map(Fraction, (alpha, beta, alpha_p, beta_p, rho, rho_p))
    ab = alpha * beta
    a = ab**n * (rho_p * (1 - alpha) - rho * (1 - alpha_p))
    b = ab**n * (alpha_p * rho * (1 - beta_p) - alpha * rho_p * (1 - beta))
    return min(a, b)


@dataclass(frozen=True)
class TransferParams:
    alpha: Fraction
    beta: Fraction
    alpha_p: Fraction
    beta_p: Fraction
    rho: Optional[Fraction] = None
    rho_p: Optional[Fraction] = None
    dense: DenseSet = field(default_factory=RationalPoints)

    def __post_init__(self):
        for name in ("alpha", "beta", "alpha_p", "beta_p", "rho", "rho_p"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, Fraction(v))
        _check_order(self.alpha, self.beta, self.alpha_p, self.beta_p)
        if self.rho is not None and self.rho_p is not None:
            lo, hi = rho_prime_bounds(self.alpha, self.beta, self.alpha_p, self.beta_p, self.rho)
            if not lo < self.rho_p < hi:
                raise ValueError(f"rho' = {self.rho_p} outside ({lo}, {hi})")

    @property
    def real(self) -> GameParams:
        return GameParams(self.alpha, self.beta, self.rho)

    @property
    def rational(self) -> GameParams:
        return GameParams(self.alpha_p, self.beta_p, self.rho_p)

    def resolve(self, rho: Fraction) -> tuple[Fraction, Fraction]:
        """(rho, rho') once the real opening radius is known."""
        rho = Fraction(rho) if self.rho is None else self.rho
        if self.rho_p is not None:
            return rho, self.rho_p
        bounds = rho_prime_bounds(self.alpha, self.beta, self.alpha_p, self.beta_p, rho)
        return rho, pick_rho_prime(bounds, self.alpha, self.beta)


@dataclass
class ShadowRun:
    """The simulated rational run aligned with a real position."""

    balls: list
    eps: list  # snap tolerance per snapped move
    snap_d2: list  # squared snap distance per snapped move
    rho: Fraction
    rho_p: Fraction

    def position(self) -> Position:
        return Position(tuple(self.balls))


def _snap(dense: DenseSet, x, eps):
    y = dense.snap(x, eps)
    if y is None:
        raise SnapFailure(f"no member of {dense.name} within {fmt_rat(eps)} of {x}")
    return y


class TransferII(Strategy):
    """II in the real (alpha, beta) game driven by a rational (alpha', beta') II strategy."""

    player = "II"

    def __init__(self, tau: Strategy, tp: TransferParams):
        self.tau = tau
        self.tp = tp

    def shadow_run(self, pos: Position) -> ShadowRun:
        """Shadow balls for every real move in pos (I moves snapped, II moves from tau)."""
        tp = self.tp
        if pos.turn == 0:
            raise ValueError("no moves yet")
        rho, rho_p = tp.resolve(pos.balls[0].radius)
        shadow_params = GameParams(tp.alpha_p, tp.beta_p, rho_p)
        balls, eps, d2 = [], [], []
        for t, real in enumerate(pos.balls):
            k = t // 2
            r = required_radius(shadow_params, t, rho_p)
            if t % 2 == 0:
                e = epsilon(k, tp.alpha, tp.beta, tp.alpha_p, tp.beta_p, rho, rho_p)
                x = _snap(tp.dense, real.center, e)
                balls.append(Ball(x, r))
                eps.append(e)
                d2.append(dist_sq(x, real.center))
            else:
                balls.append(self._shadow_reply(Position(tuple(balls)), shadow_params, r))
        return ShadowRun(balls, eps, d2, rho, rho_p)

    def _shadow_reply(self, spos: Position, shadow_params: GameParams, r: Fraction) -> Ball:
        b = self.tau.next(spos)
        if b.radius != r:
            raise ValueError(f"rational strategy broke the radius schedule: {b}")
        if legal_move(shadow_params, spos, b) is not Verdict.LEGAL:
            raise ValueError(f"rational strategy made an illegal move {b}")
        if not self.tp.dense.contains(b.center):
            raise ValueError(f"rational strategy left the dense set: {b.center}")
        return b

    def next(self, pos):
        if pos.turn % 2 == 0:
            raise ValueError("not II's turn")
        sh = self.shadow_run(pos)
        rho, rho_p = sh.rho, sh.rho_p
        shadow_params = GameParams(self.tp.alpha_p, self.tp.beta_p, rho_p)
        t = pos.turn
        reply = self._shadow_reply(sh.position(), shadow_params, required_radius(shadow_params, t, rho_p))
        return Ball(reply.center, required_radius(GameParams(self.tp.alpha, self.tp.beta), t, rho))

    def __repr__(self):
        return f"transfer_II({self.tau!r})"


def transfer_II(tau: Strategy, tp: TransferParams) -> TransferII:
    return TransferII(tau, tp)


class TransferI(Strategy):
    """I in the real (alpha', beta') game driven by a rational (alpha, beta) I strategy.

    ``sigma`` must open (turn 0) with its rational radius rho'.  The real
    opening radius is picked inside the window documented in the module
    docstring unless ``tp.rho`` fixes it.
    """

    player = "I"

    def __init__(self, sigma: Strategy, tp: TransferParams):
        self.sigma = sigma
        self.tp = tp
        first = sigma.next(Position())
        self.rho_p = first.radius
        bounds = rho_prime_bounds(tp.alpha, tp.beta, tp.alpha_p, tp.beta_p, self.rho_p)
        if tp.rho is not None:
            if not bounds[0] < tp.rho < bounds[1]:
                raise ValueError(f"real radius {tp.rho} outside ({bounds[0]}, {bounds[1]})")
            self.rho = tp.rho
        else:
            self.rho = pick_rho_prime(bounds, tp.alpha_p, tp.beta_p)
        self.shadow_params = GameParams(tp.alpha, tp.beta, self.rho_p)
        self.real_params = GameParams(tp.alpha_p, tp.beta_p, self.rho)

    def eps(self, n: int) -> Fraction:
        tp = self.tp
        return epsilon_mirror(n, tp.alpha, tp.beta, tp.alpha_p, tp.beta_p, self.rho, self.rho_p)

    def shadow_run(self, pos: Position) -> ShadowRun:
        balls, eps, d2 = [], [], []
        for t, real in enumerate(pos.balls):
            r = required_radius(self.shadow_params, t, self.rho_p)
            if t % 2 == 1:
                e = self.eps(t // 2)
                x = _snap(self.tp.dense, real.center, e)
                balls.append(Ball(x, r))
                eps.append(e)
                d2.append(dist_sq(x, real.center))
            else:
                balls.append(self._shadow_move(Position(tuple(balls)), r))
        return ShadowRun(balls, eps, d2, self.rho, self.rho_p)

    def _shadow_move(self, spos: Position, r: Fraction) -> Ball:
        b = self.sigma.next(spos)
        if b.radius != r:
            raise ValueError(f"rational strategy broke the radius schedule: {b}")
        if legal_move(self.shadow_params, spos, b) is not Verdict.LEGAL:
            raise ValueError(f"rational strategy made an illegal move {b}")
        if not self.tp.dense.contains(b.center):
            raise ValueError(f"rational strategy left the dense set: {b.center}")
        return b

    def next(self, pos):
        if pos.turn % 2 == 1:
            raise ValueError("not I's turn")
        sh = self.shadow_run(pos)
        t = pos.turn
        move = self._shadow_move(sh.position(), required_radius(self.shadow_params, t, self.rho_p))
        return Ball(move.center, required_radius(self.real_params, t, self.rho))

    def __repr__(self):
        return f"transfer_I({self.sigma!r})"


def transfer_I(sigma: Strategy, tp: TransferParams) -> TransferI:
    return TransferI(sigma, tp)


# -- hyperbola monotonicity probe ---------------------------------------------------


@dataclass
class ProbeRow:
    lower: tuple  # (alpha, beta) of the real game
    upper: tuple  # (alpha', beta') of the rational game
    opening: Ball
    seed: int
    shadow: str  # WinI | WinII | Undecided
    real: str
    status: str  # recertified | inconclusive | violation
    detail: str = ""


@dataclass
class ProbeReport:
    rows: list

    def count(self, status: str) -> int:
        return sum(r.status == status for r in self.rows)

    @property
    def violations(self) -> list:
        return [r for r in self.rows if r.status == "violation"]

    def __str__(self):
        lines = []
        for r in self.rows:
            lines.append(
                f"({fmt_rat(r.lower[0])},{fmt_rat(r.lower[1])}) <- ({fmt_rat(r.upper[0])},{fmt_rat(r.upper[1])}) "
                f"open {r.opening} seed {r.seed}: shadow {r.shadow}, real {r.real}: {r.status}"
            )
        return "\n".join(lines)


def _shadow_verdict(target: TargetSet, balls: Sequence[Ball]) -> str:
    for b in balls:
        settled = adjudicate_ball(target, b)
        if settled is not None:
            return settled[0]
    return "Undecided"


DEFAULT_OPENINGS = tuple(Fraction(n, 2) for n in range(-3, 4))


def hyperbola_probe(target: TargetSet, p, samples, depth: int = 8, openings=DEFAULT_OPENINGS, seeds=(0, 1, 2),
                    tau_factory=None, rho=Fraction(1)) -> ProbeReport:
    """Transfer-based dominance checks between adjacent samples on alpha*beta = p.

    For each adjacent pair (sorted by alpha) the rational game at the larger
    alpha is simulated inside the real game at the smaller one; the shadow
    verdict and the real verdict must never disagree.  ``tau_factory(params)``
    builds the rational II strategy (default: maximise distance from the
    origin on the line, concentric elsewhere).
    """
    p = Fraction(p)
    pts = sorted((Fraction(a), Fraction(b)) for a, b in samples)
    for a, b in pts:
        if a * b != p:
            raise ValueError(f"sample ({a}, {b}) is off the hyperbola alpha*beta = {p}")
    rows = []
    for (a, b), (a2, b2) in zip(pts, pts[1:]):
        if a == a2:
            continue
        shadow_params = GameParams(a2, b2)
        space = target.space or ("line",)
        if tau_factory is not None:
            tau = tau_factory(shadow_params)
        elif space == ("line",):
            tau = maximize_distance_from(shadow_params, origin(space))
        else:
            tau = concentric(shadow_params)
        tp = TransferParams(a, b, a2, b2)
        real_params = GameParams(a, b, rho)
        for c in openings:
            opening = Ball(Line(c) if space == ("line",) else origin(space), rho)
            for seed in seeds:
                strat_I = RandomPlayer(real_params, seed, opening)
                strat_II = transfer_II(tau, tp)
                trace, outcome = play(real_params, strat_I, strat_II, target, depth)
                pos = trace.position()
                detail = ""
                try:
                    shadow = _shadow_verdict(target, strat_II.shadow_run(pos).balls) if pos.turn else "Undecided"
                except Exception as exc:  # noqa: BLE001 - surfaced in the report
                    shadow, detail = "Error", str(exc)
                real = outcome.verdict
                bad_II = outcome.certificate is not None and outcome.certificate.kind in ("violation", "resignation") \
                    and real == "WinI"
                if shadow == "Error" or bad_II or (shadow != "Undecided" and real != "Undecided" and shadow != real):
                    status = "violation"
                    detail = detail or (outcome.certificate.detail if outcome.certificate else "")
                elif shadow != "Undecided" and shadow == real:
                    status = "recertified"
                else:
                    status = "inconclusive"
                rows.append(ProbeRow((a, b), (a2, b2), opening, seed, shadow, real, status, detail))
    return ProbeReport(rows)


def random_transfer_params(rng: random.Random, max_den: int = 12) -> TransferParams:
    """A random valid (alpha, beta, alpha', beta', rho) draw."""
    while True:
        a = Fraction(rng.randint(1, max_den - 1), max_den)
        a2 = Fraction(rng.randint(1, max_den - 1), max_den)
        b = Fraction(rng.randint(1, max_den - 1), max_den)
        if not a < a2:
            continue
        b2 = a * b / a2
        if 0 < b2 < b < 1:
            rho = Fraction(rng.randint(1, 16), rng.randint(1, 8))
            return TransferParams(a, b, a2, b2, rho)
