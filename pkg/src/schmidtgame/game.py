"""Rules, positions, play and adjudication.

Covers Schmidt's (alpha, beta) and (alpha, beta, rho) games, the non-tangent
variant and the Banach-Mazur game.  Moves are closed balls; turn 0 is I's
opening, even turns belong to I and odd turns to II.  II wins a run iff the
intersection point lies in the target.

Infinite play is out of reach, so :func:`play` settles a run only through
certificates: a ball inside the target (II wins), a ball disjoint from it
(I wins), a rule violation (the violator loses), or a closed-form limit point
supplied by one of the strategies.  Anything else is ``Undecided``.
"""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .metric import Ball, Nesting, Point, SpaceMismatch, ball_nested, fmt_rat, parse_point, parse_rat
from .targets import Answer, Membership, TargetSet

log = logging.getLogger(__name__)


class Variant(enum.Enum):
    SCHMIDT = "schmidt"
    NON_TANGENT = "non-tangent"
    BANACH_MAZUR = "banach-mazur"


class Verdict(enum.Enum):
    LEGAL = "Legal"
    ILLEGAL_RADIUS = "IllegalRadius"
    ILLEGAL_NESTING = "IllegalNesting"
    ILLEGAL_TANGENT = "IllegalTangent"


@dataclass(frozen=True)
class GameParams:
    alpha: Fraction
    beta: Fraction
    rho: Optional[Fraction] = None
    variant: Variant = Variant.SCHMIDT

    def __post_init__(self):
        a, b = Fraction(self.alpha), Fraction(self.beta)
        if not (0 < a < 1 and 0 < b < 1):
            raise ValueError(f"alpha and beta must lie in (0,1), got {a}, {b}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        if self.rho is not None:
            r = Fraction(self.rho)
            if r <= 0:
                raise ValueError("rho must be positive")
            object.__setattr__(self, "rho", r)
        object.__setattr__(self, "variant", Variant(self.variant))

    @property
    def has_schedule(self) -> bool:
        return self.variant is not Variant.BANACH_MAZUR

    def factor(self, turn: int) -> Fraction:
        """Shrink factor applied to reach ``turn`` from ``turn - 1``."""
        return self.alpha if turn % 2 == 1 else self.beta

    def with_variant(self, variant: Variant) -> "GameParams":
        return GameParams(self.alpha, self.beta, self.rho, variant)


def required_radius(params: GameParams, turn: int, rho0: Fraction) -> Fraction:
    """(ab)^n rho0 at turn 2n, a (ab)^n rho0 at turn 2n+1."""
    if not params.has_schedule:
        raise ValueError("the Banach-Mazur game has no radius schedule")
    if turn < 0:
        raise ValueError("turn must be non-negative")
    n, odd = divmod(turn, 2)
    r = (params.alpha * params.beta) ** n * Fraction(rho0)
    return r * params.alpha if odd else r


@dataclass(frozen=True)
class Position:
    balls: tuple = ()

    @property
    def turn(self) -> int:
        return len(self.balls)

    @property
    def last(self) -> Ball:
        return self.balls[-1]

    @property
    def mover(self) -> str:
        return player_of(self.turn)

    def extend(self, ball: Ball) -> "Position":
        return Position(self.balls + (ball,))

    def __len__(self):
        return len(self.balls)


def player_of(turn: int) -> str:
    return "I" if turn % 2 == 0 else "II"


def next_radius(params: GameParams, pos: Position) -> Fraction:
    """Radius the mover at ``pos`` is expected to use.

    Banach-Mazur has no schedule; built-in strategies still shrink by the
    alpha/beta factors there.
    """
    if pos.turn == 0:
        if params.rho is None:
            raise ValueError("opening radius is free; supply it explicitly")
        return params.rho
    return pos.last.radius * params.factor(pos.turn)


def legal_move(params: GameParams, pos: Position, move: Ball) -> Verdict:
    if pos.turn == 0:
        if params.rho is not None and move.radius != params.rho:
            return Verdict.ILLEGAL_RADIUS
        return Verdict.LEGAL
    prev = pos.last
    if params.has_schedule:
        # positional: the previous radius and the turn parity fix the next radius
        if move.radius != prev.radius * params.factor(pos.turn):
            return Verdict.ILLEGAL_RADIUS
    elif move.radius > prev.radius:
        return Verdict.ILLEGAL_RADIUS
    nest = ball_nested(prev, move)
    if nest is Nesting.NOT_NESTED:
        return Verdict.ILLEGAL_NESTING
    if nest is Nesting.TANGENT and params.variant is Variant.NON_TANGENT:
        return Verdict.ILLEGAL_TANGENT
    return Verdict.LEGAL


# -- traces and outcomes ------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    kind: str  # ball | violation | resignation | limit | enclosing
    ball: Optional[Ball] = None
    point: Optional[Point] = None
    query: str = ""
    detail: str = ""


@dataclass(frozen=True)
class Outcome:
    verdict: str  # WinI | WinII | Undecided
    depth: int
    certificate: Optional[Certificate] = None

    @property
    def decided(self) -> bool:
        return self.verdict != "Undecided"


@dataclass(frozen=True)
class MoveRecord:
    turn: int
    player: str
    ball: Ball
    verdict: str = Verdict.LEGAL.value
    cell: Optional[int] = None


@dataclass
class Trace:
    moves: list = field(default_factory=list)
    outcome: Optional[Outcome] = None

    @property
    def balls(self) -> tuple:
        return tuple(m.ball for m in self.moves)

    @property
    def legal_balls(self) -> tuple:
        return tuple(m.ball for m in self.moves if m.verdict == Verdict.LEGAL.value)

    @property
    def cells(self) -> list:
        return [m.cell for m in self.moves]

    def position(self) -> Position:
        return Position(self.legal_balls)

    def to_lines(self) -> list[str]:
        lines = [json.dumps(_move_to_json(m)) for m in self.moves]
        if self.outcome is not None:
            lines.append(json.dumps(_outcome_to_json(self.outcome)))
        return lines

    def dumps(self) -> str:
        return "\n".join(self.to_lines()) + "\n"

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "Trace":
        tr = cls()
        for line in lines:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if "outcome" in rec:
                tr.outcome = _outcome_from_json(rec)
            else:
                tr.moves.append(_move_from_json(rec))
        return tr

    @classmethod
    def loads(cls, text: str) -> "Trace":
        return cls.from_lines(text.splitlines())


def ball_to_json(b: Optional[Ball]):
    if b is None:
        return None
    return {"center": str(b.center), "radius": fmt_rat(b.radius)}


def ball_from_json(d) -> Optional[Ball]:
    if d is None:
        return None
    return Ball(parse_point(d["center"]), parse_rat(d["radius"]))


def _move_to_json(m: MoveRecord) -> dict:
    return {
        "turn": m.turn,
        "player": m.player,
        "center": str(m.ball.center),
        "radius": fmt_rat(m.ball.radius),
        "verdict": m.verdict,
        "cell": m.cell,
    }


def _move_from_json(d) -> MoveRecord:
    ball = Ball(parse_point(d["center"]), parse_rat(d["radius"]))
    return MoveRecord(d["turn"], d["player"], ball, d["verdict"], d.get("cell"))


def _outcome_to_json(o: Outcome) -> dict:
    c = o.certificate
    cert = None
    if c is not None:
        cert = {
            "kind": c.kind,
            "ball": ball_to_json(c.ball),
            "point": None if c.point is None else str(c.point),
            "query": c.query,
            "detail": c.detail,
        }
    return {"outcome": o.verdict, "depth": o.depth, "certificate": cert}


def _outcome_from_json(d) -> Outcome:
    c = d.get("certificate")
    cert = None
    if c is not None:
        cert = Certificate(
            kind=c["kind"],
            ball=ball_from_json(c.get("ball")),
            point=None if c.get("point") is None else parse_point(c["point"]),
            query=c.get("query", ""),
            detail=c.get("detail", ""),
        )
    return Outcome(d["outcome"], d["depth"], cert)


def enclosing_ball(trace) -> Ball:
    """The last legal ball; any rule-following continuation converges inside it."""
    balls = trace.legal_balls if isinstance(trace, Trace) else tuple(trace)
    if not balls:
        raise ValueError("empty trace has no enclosing ball")
    return balls[-1]


# -- play ---------------------------------------------------------------------


class RuleViolation(Exception):
    """Raised by a strategy whose own code is malformed (e.g. overlapping cells).

    :func:`play` records it as a violation by that player rather than a
    resignation.
    """


def _other(player: str) -> str:
    return "II" if player == "I" else "I"


def _win(player: str) -> str:
    return "WinI" if player == "I" else "WinII"


def adjudicate_ball(target: TargetSet, ball: Ball) -> Optional[tuple]:
    """('WinII'|'WinI', query) if the ball alone settles the run."""
    if target.ball_inside(ball) is Answer.YES:
        return "WinII", "ball_inside"
    if target.ball_disjoint(ball) is Answer.YES:
        return "WinI", "ball_disjoint"
    return None


def play(
    params: GameParams,
    strat_I,
    strat_II,
    target: TargetSet,
    max_rounds: int,
    *,
    start: Position = Position(),
) -> tuple[Trace, Outcome]:
    """Play ``strat_I`` against ``strat_II`` for at most ``max_rounds`` moves.

    ``Outcome.depth`` is the turn index of the settling move, or the number of
    moves played when undecided.
    """
    trace = Trace()
    pos = start
    strategies = {"I": strat_I, "II": strat_II}
    outcome = None
    while pos.turn < start.turn + max_rounds:
        turn = pos.turn
        mover = player_of(turn)
        strat = strategies[mover]
        try:
            move = strat.next(pos)
        except RuleViolation as exc:
            outcome = Outcome(_win(_other(mover)), turn, Certificate("violation", detail=f"{mover}: {exc}"))
            break
        except Exception as exc:  # noqa: BLE001 - any strategy failure is a resignation
            log.debug("strategy for %s failed at turn %d: %r", mover, turn, exc)
            outcome = Outcome(
                _win(_other(mover)), turn, Certificate("resignation", detail=f"{mover}: {type(exc).__name__}: {exc}")
            )
            break
        try:
            verdict = legal_move(params, pos, move)
        except SpaceMismatch as exc:
            outcome = Outcome(_win(_other(mover)), turn, Certificate("resignation", ball=move, detail=str(exc)))
            break
        cell = getattr(strat, "annotate", lambda p: None)(pos)
        trace.moves.append(MoveRecord(turn, mover, move, verdict.value, cell))
        if verdict is not Verdict.LEGAL:
            outcome = Outcome(_win(_other(mover)), turn, Certificate("violation", ball=move, detail=verdict.value))
            break
        pos = pos.extend(move)
        settled = adjudicate_ball(target, move)
        if settled is not None:
            winner, query = settled
            outcome = Outcome(winner, turn, Certificate("ball", ball=move, query=query))
            break
    if outcome is None:
        outcome = _limit_outcome(pos, strategies, target) or Outcome(
            "Undecided", pos.turn - start.turn, Certificate("enclosing", ball=pos.last if pos.turn else None)
        )
    trace.outcome = outcome
    return trace, outcome


def _limit_outcome(pos: Position, strategies: dict, target: TargetSet) -> Optional[Outcome]:
    if pos.turn == 0:
        return None
    for who in ("II", "I"):
        cert = getattr(strategies[who], "limit_certificate", None)
        point = cert(pos) if cert is not None else None
        if point is None or not pos.last.contains(point):
            continue
        m = target.point_query(point)
        if m is Membership.IN:
            return Outcome("WinII", pos.turn, Certificate("limit", ball=pos.last, point=point, query="point_query", detail=who))
        if m is Membership.OUT:
            return Outcome("WinI", pos.turn, Certificate("limit", ball=pos.last, point=point, query="point_query", detail=who))
    return None
