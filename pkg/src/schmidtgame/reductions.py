"""Strategy simplification, the half-real G* game and the Baire stem reduction.

Simplification replaces a one-round strategy by finitely many cells with one
fixed response each.  On the line a rightward sweep emits half-open cells
[z, z + eps(z)) where eps(z) is the perturbation slack of the response at z;
in the non-tangent game open slack balls are disjointified first-fit.

G* lets I announce, along with each ball, the whole simple one-round
strategy it will use next; II then only names a cell index.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .game import GameParams, Position, RuleViolation, Variant, Verdict, legal_move, next_radius
from .metric import (
    Ball,
    BairePoint,
    Line,
    dist_sq,
    exact_sqrt,
    fmt_rat,
    sqrt_bounds,
)
from .strategies import (
    Difference,
    Interval,
    LegalRegion,
    NoCell,
    OpenBall,
    Response,
    RoundContext,
    SimpleOneRound,
    SimpleStrategy,
    Strategy,
    simple_respond,
    validate_simple,
)
from .targets import TargetSet


# -- slack ------------------------------------------------------------------------


def stability_radius_from_slack(params: GameParams, pos: Position, response: Ball, bits: int = 64) -> Fraction:
    """(r_prev - r_resp) - d(prev center, resp center) for the response to ``pos.last``.

    Exact whenever the distance is rational (always on the line and in Baire
    space).  Otherwise a rational lower bound, refined until positive; a
    tangent response gives exactly 0.
    """
    verdict = legal_move(params, pos, response)
    if verdict is not Verdict.LEGAL:
        raise ValueError(f"response {response} is not legal: {verdict.value}")
    prev = pos.last
    s = prev.radius - response.radius
    d2 = dist_sq(prev.center, response.center)
    if d2 == s * s:
        return Fraction(0)
    root = exact_sqrt(d2)
    if root is not None:
        return s - root
    while True:
        _, hi = sqrt_bounds(d2, bits)
        if s - hi > 0:
            return s - hi
        bits *= 2


def _slack_of(sigma: Strategy, params: GameParams, pos: Position, response: Ball) -> Fraction:
    eps = sigma.stability_radius(pos)
    if eps is None:
        eps = stability_radius_from_slack(params, pos, response)
    return eps


class ZeroSlack(ValueError):
    def __init__(self, witness, msg=""):
        super().__init__(msg or f"zero slack at {witness}")
        self.witness = witness


class PartialCover(RuntimeError):
    def __init__(self, partial: SimpleOneRound, cursor):
        super().__init__(f"cell budget exhausted at cursor {fmt_rat(cursor)} after {len(partial)} cells")
        self.partial = partial
        self.cursor = cursor


class ProbeTooLarge(ValueError):
    def __init__(self, witness, radius, slack):
        super().__init__(f"probe ball at {witness} has radius {fmt_rat(radius)} > slack {fmt_rat(slack)}")
        self.witness = witness
        self.radius = radius
        self.slack = slack


def _incoming(params: GameParams, context: Position, incoming_radius=None) -> Fraction:
    if incoming_radius is not None:
        return Fraction(incoming_radius)
    return next_radius(params, context)


def simplify_on_line(sigma: Strategy, params: GameParams, probe, context: Position = Position(), *,
                     closed: bool = False, max_cells: int = 10_000, incoming_radius=None) -> SimpleOneRound:
    """Sweep [a, b) (or [a, b] when ``closed``) left to right.

    At cursor z the opponent is imagined to play B(z, r_in) after
    ``context``; the cell [z, z + eps(z)) gets sigma's answer there.
    """
    a, b = (Fraction(v) for v in probe)
    r_in = _incoming(params, context, incoming_radius)
    entries = []
    z = a
    while z < b or (closed and z == b):
        if len(entries) >= max_cells:
            raise PartialCover(SimpleOneRound(tuple(entries)), z)
        pos = context.extend(Ball(Line(z), r_in))
        resp = sigma.next(pos)
        eps = _slack_of(sigma, params, pos, resp)
        if eps <= 0:
            raise ZeroSlack(Line(z))
        entries.append((Interval(z, z + eps, True, False), Response.of(resp)))
        z += eps
    return SimpleOneRound(tuple(entries))


def line_cover(sigma: Strategy, params: GameParams, probe, context: Position = Position(), *,
               max_cells: int = 10_000, incoming_radius=None) -> list:
    """Open slack balls whose union covers [a, b]; each next center sits where the last ball ends."""
    a, b = (Fraction(v) for v in probe)
    r_in = _incoming(params, context, incoming_radius)
    balls = []
    z = a
    while True:
        if len(balls) >= max_cells:
            raise PartialCover(SimpleOneRound(()), z)
        pos = context.extend(Ball(Line(z), r_in))
        eps = _slack_of(sigma, params, pos, sigma.next(pos))
        if eps <= 0:
            raise ZeroSlack(Line(z))
        balls.append(Ball(Line(z), eps))
        if z + eps > b:
            return balls
        z += eps


def simplify_non_tangent(sigma: Strategy, params: GameParams, cover: Sequence[Ball], context: Position = Position(),
                         *, incoming_radius=None) -> SimpleOneRound:
    """First-fit disjointification of a cover by open probe balls U(z, delta).

    Each delta must not exceed the slack of sigma's response at z.
    """
    r_in = _incoming(params, context, incoming_radius)
    entries = []
    used: list = []
    for u in cover:
        z = u.center
        pos = context.extend(Ball(z, r_in))
        resp = sigma.next(pos)
        eps = _slack_of(sigma, params, pos, resp)
        if u.radius > eps:
            raise ProbeTooLarge(z, u.radius, eps)
        cell = OpenBall(z, u.radius)
        if isinstance(z, Line) and _interval_covered(cell.as_interval(), [c.as_interval() for c in used]):
            continue
        entries.append((Difference(cell, tuple(used)), Response.of(resp)))
        used.append(cell)
    return SimpleOneRound(tuple(entries))


def _interval_covered(iv: Interval, others: list) -> bool:
    """Whether the open interval iv lies inside the union of open intervals."""
    x, first = iv.lo, True
    while x < iv.hi:
        # x itself needs covering except at the (excluded) left end
        reach = [o.hi for o in others if (o.lo <= x if first else o.lo < x) and o.hi > x]
        if not reach:
            return False
        x, first = max(reach), False
    return True


# -- lazily simplified whole-game strategies -----------------------------------------


class SimplifiedStrategy(SimpleStrategy):
    """Simple strategy built round by round from sigma at representative positions.

    The round after fired indices u is simplified at the position p_u obtained
    by playing each cell's representative incoming ball and sigma's answer.
    ``representative_position(u)`` exposes p_u for matched-run checks.
    """

    def __init__(self, sigma: Strategy, params: GameParams, opening_probe=None, *, method: str = "line",
                 max_cells: int = 10_000):
        self.sigma = sigma
        self.params = params
        self.method = method
        self.max_cells = max_cells
        player = getattr(sigma, "player", None) or "II"
        opening = None
        base = Position()
        if player == "I":
            opening = sigma.next(Position())
            base = Position((opening,))
        self._base = base
        self.opening_probe = opening_probe
        self._ctx: dict = {}
        super().__init__(self._make_round, opening=opening, player=player, name=f"simplified({method})")

    def representative_position(self, u: tuple) -> Position:
        u = tuple(u)
        if u in self._ctx:
            return self._ctx[u]
        if not u:
            self._ctx[u] = self._base
            return self._base
        parent = self.representative_position(u[:-1])
        s = self.rounds(u[:-1])
        cell, resp = s.entries[u[-1]]
        r_in = next_radius(self.params, parent)
        region = RoundContext.at(parent).region(self.params) if parent.turn else None
        z = cell.representative(region)
        if z is None:
            raise NoCell(f"cell {u[-1]} of round {list(u[:-1])} has no representative")
        pos = parent.extend(Ball(z, r_in)).extend(resp.instantiate())
        self._ctx[u] = pos
        return pos

    def _probe(self, context: Position):
        if context.turn == 0:
            if self.opening_probe is None:
                raise ValueError("an opening probe interval is needed")
            return self.opening_probe, False
        c = context.last.center.x
        m = context.last.radius - next_radius(self.params, context)
        return (c - m, c + m), self.params.variant is not Variant.NON_TANGENT

    def _make_round(self, u: tuple) -> SimpleOneRound:
        context = self.representative_position(u)
        (a, b), closed = self._probe(context)
        if self.method == "line":
            return simplify_on_line(self.sigma, self.params, (a, b), context, closed=closed, max_cells=self.max_cells)
        cover = line_cover(self.sigma, self.params, (a, b), context, max_cells=self.max_cells)
        return simplify_non_tangent(self.sigma, self.params, cover, context)


def simplify_strategy(sigma: Strategy, params: GameParams, opening_probe=None, method: str = "line",
                      max_cells: int = 10_000) -> SimplifiedStrategy:
    return SimplifiedStrategy(sigma, params, opening_probe, method=method, max_cells=max_cells)


def matched_run(simple: SimplifiedStrategy, pos: Position) -> list:
    """sigma's answers along the representative positions matching pos's fired cells."""
    u = simple.indices(pos)
    out = []
    for k in range(len(u)):
        p = simple.representative_position(u[: k + 1])
        out.append(p.last)
    return out


# -- G* --------------------------------------------------------------------------------


@dataclass(frozen=True)
class IMove:
    ball: Ball
    oneround: SimpleOneRound


@dataclass
class GStarCheck:
    ok: bool
    reason: str = ""
    witness: object = None


@dataclass
class GStar:
    """Rule checker for the half-real game over a positional Schmidt rule set.

    A history alternates :class:`IMove` and integer cell indices.
    """

    params: GameParams
    target: Optional[TargetSet] = None

    def real_position(self, history: Sequence) -> Position:
        balls = []
        for k, mv in enumerate(history):
            if k % 2 == 0:
                balls.append(mv.ball)
        return Position(tuple(balls))

    def check_I(self, history: Sequence, move: IMove) -> GStarCheck:
        if len(history) % 2 == 1:
            return GStarCheck(False, "not I's turn")
        p = self.params
        if not p.has_schedule:
            return GStarCheck(False, "G* is built over the Schmidt rule set")
        for cell, resp in move.oneround.entries:
            if resp.relative:
                return GStarCheck(False, "relative responses are not allowed in G*", cell)
            if isinstance(cell, Difference):
                return GStarCheck(False, "difference cells are not allowed in G*", cell)
        k = len(history) // 2
        if k == 0:
            if p.rho is not None and move.ball.radius != p.rho:
                return GStarCheck(False, f"opening radius must be {fmt_rat(p.rho)}", move.ball)
        else:
            prev_I: IMove = history[-2]
            n = history[-1]
            expected = prev_I.oneround.response(n)
            if move.ball != expected:
                return GStarCheck(False, f"ball must equal the announced response {expected}", move.ball)
        report = validate_simple(move.oneround, p, RoundContext(2 * k + 1, move.ball))
        if not report.ok:
            return GStarCheck(False, f"one-round strategy breaks the rules: {report}", report.failures[0][2])
        return GStarCheck(True)

    def check_II(self, history: Sequence, n: int) -> GStarCheck:
        if len(history) % 2 == 0:
            return GStarCheck(False, "not II's turn")
        mv: IMove = history[-1]
        if not 0 <= n < len(mv.oneround):
            return GStarCheck(False, f"index {n} out of range")
        cell = mv.oneround.cells[n]
        b = mv.ball
        m = b.radius - b.radius * self.params.alpha
        region = LegalRegion(b.center, m, self.params.variant is Variant.NON_TANGENT)
        meets = cell.meets(region)
        if meets is False:
            witness = cell.restrict(region) if isinstance(cell, Interval) else region
            return GStarCheck(False, "cell contains no legal move", witness)
        if meets is None:
            return GStarCheck(False, "cannot decide whether the cell contains a legal move", cell)
        return GStarCheck(True, witness=cell.representative(region))


def build_gstar(params: GameParams, target: Optional[TargetSet] = None) -> GStar:
    if not params.has_schedule:
        raise ValueError("G* needs a Schmidt rule set")
    return GStar(params, target)


def gstar_trace_lines(history: Sequence) -> list[str]:
    out = []
    for k, mv in enumerate(history):
        if k % 2 == 0:
            out.append(json.dumps({
                "player": "I",
                "center": str(mv.ball.center),
                "radius": fmt_rat(mv.ball.radius),
                "oneround": mv.oneround.to_json(),
            }))
        else:
            out.append(json.dumps({"player": "II", "index": mv}))
    return out


def gstar_trace_from_lines(lines) -> list:
    from .metric import parse_point, parse_rat

    hist = []
    for line in lines:
        if not line.strip():
            continue
        d = json.loads(line)
        if d["player"] == "I":
            hist.append(IMove(Ball(parse_point(d["center"]), parse_rat(d["radius"])), SimpleOneRound.from_json(d["oneround"])))
        else:
            hist.append(int(d["index"]))
    return hist


@dataclass
class AlignedRound:
    ball: Ball  # x_{2k}
    oneround: SimpleOneRound  # s_{2k}
    reply: Optional[Ball] = None  # x_{2k+1}
    index: Optional[int] = None  # n_{2k+1}


class GStarToRealI(Strategy):
    """I's real strategy from a G* strategy ``sigma_star(indices) -> IMove``."""

    player = "I"

    def __init__(self, sigma_star: Callable[[tuple], IMove], params: Optional[GameParams] = None):
        self.sigma_star = sigma_star
        self.params = params

    def align(self, pos: Position) -> list[AlignedRound]:
        out = []
        idx: tuple = ()
        for t in range(0, pos.turn, 2):
            mv = self.sigma_star(idx)
            if mv.ball != pos.balls[t]:
                raise RuleViolation(f"G* ball {mv.ball} differs from the real move {pos.balls[t]}")
            rec = AlignedRound(mv.ball, mv.oneround)
            if t + 1 < pos.turn:
                x = pos.balls[t + 1]
                n, _ = simple_respond(mv.oneround, x)
                rec.reply, rec.index = x, n
                idx += (n,)
            out.append(rec)
        return out

    def indices(self, pos: Position) -> tuple:
        return tuple(r.index for r in self.align(pos) if r.index is not None)

    def next(self, pos):
        if pos.turn % 2:
            raise ValueError("not I's turn")
        if pos.turn == 0:
            return self.sigma_star(()).ball
        aligned = self.align(pos)
        last = aligned[-1]
        ball = last.oneround.response(last.index)
        star = self.sigma_star(self.indices(pos))
        if star.ball != ball:
            raise RuleViolation(f"G* strategy broke x_2k = s(n): {star.ball} != {ball}")
        return ball

    def annotate(self, pos):
        if pos.turn == 0:
            return None
        try:
            return self.align(pos)[-1].index
        except (NoCell, RuleViolation):
            return None


def gstar_to_real_I(sigma_star, params=None) -> GStarToRealI:
    return GStarToRealI(sigma_star, params)


def halving_sigma_star(params: GameParams, opening: Ball) -> Callable[[tuple], IMove]:
    """Two-cell G* strategy on the line: left of center -> left quarter, else right quarter."""
    a, b = params.alpha, params.beta

    def ball_after(u):
        c, r = opening.center.x, opening.radius
        for n in u:
            nr = r * a * b
            c = c - (r * a - nr) if n == 0 else c + (r * a - nr)
            r = nr
        return Ball(Line(c), r)

    def sigma_star(u):
        ball = ball_after(u)
        c, r = ball.center.x, ball.radius
        nr = r * a * b
        s = r * a - nr
        one = SimpleOneRound((
            (Interval(None, c, False, False), Response(nr, center=Line(c - s))),
            (Interval(c, None, True, False), Response(nr, center=Line(c + s))),
        ))
        return IMove(ball, one)

    return sigma_star


# -- Baire stems -----------------------------------------------------------------------


def _power_of_half(r: Fraction) -> int:
    r = Fraction(r)
    if r.numerator != 1 or r.denominator & (r.denominator - 1):
        raise ValueError(f"radius {r} is not a power of 1/2")
    return r.denominator.bit_length() - 1


def baire_reduce(ball: Ball) -> tuple:
    """B(x, 2^-k) -> the stem x|(k-1), for k >= 1."""
    if not isinstance(ball.center, BairePoint):
        raise ValueError("baire_reduce needs a Baire ball")
    k = _power_of_half(ball.radius)
    if k < 1:
        raise ValueError("radius must be at most 1/2")
    return ball.center.prefix(k - 1)


def baire_unreduce(stem: Sequence[int]) -> Ball:
    stem = tuple(int(v) for v in stem)
    return Ball(BairePoint(stem, 0), Fraction(1, 2 ** (len(stem) + 1)))


BAIRE_PARAMS = GameParams(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))


def run_to_integers(balls: Sequence[Ball]) -> list[int]:
    """Integers of the equivalent integer game: move t >= 1 fixes coordinate t - 1."""
    stems = [baire_reduce(b) for b in balls]
    out = []
    for t in range(1, len(stems)):
        if len(stems[t]) != len(stems[t - 1]) + 1 or stems[t][:-1] != stems[t - 1]:
            raise ValueError(f"move {t} does not extend the stem by one")
        out.append(stems[t][-1])
    return out


def integers_to_run(digits: Sequence[int], opening_center: Optional[BairePoint] = None) -> list[Ball]:
    first = baire_unreduce(())
    if opening_center is not None:
        first = Ball(opening_center, first.radius)
    return [first] + [baire_unreduce(digits[: t + 1]) for t in range(len(digits))]


__all__ = [
    "AlignedRound",
    "BAIRE_PARAMS",
    "GStar",
    "GStarCheck",
    "GStarToRealI",
    "IMove",
    "PartialCover",
    "ProbeTooLarge",
    "SimplifiedStrategy",
    "ZeroSlack",
    "baire_reduce",
    "baire_unreduce",
    "build_gstar",
    "gstar_to_real_I",
    "gstar_trace_from_lines",
    "gstar_trace_lines",
    "halving_sigma_star",
    "integers_to_run",
    "line_cover",
    "matched_run",
    "run_to_integers",
    "simplify_non_tangent",
    "simplify_on_line",
    "simplify_strategy",
    "stability_radius_from_slack",
]
