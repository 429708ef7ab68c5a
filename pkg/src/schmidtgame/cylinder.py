"""Coding a relation R between reals and angles into a target set in R^3.

Under alternating tangent play, II pushing away from the x-axis and I pulling
back, the distance from the axis converges to the critical radius
r = rho (1 - 2 alpha + alpha beta) / (1 - alpha beta).  The target contains
the coded points (x, r cos t, r sin t) for (x, t) in R plus everything strictly
outside the cylinder of radius r.  II's first reply to an opening on the axis
therefore reveals an angle for x, and a II strategy yields a uniformization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .game import GameParams, Position, play
from .metric import Ball, Euclid, fmt_rat, parse_rat, translate
from .strategies import AxisAnchor, MaximizeDistance, Strategy, TangentToward
from .targets import Answer, Membership, Opaque, TargetSet


def critical_radius(alpha, beta, rho) -> Fraction:
    alpha, beta, rho = Fraction(alpha), Fraction(beta), Fraction(rho)
    if not (0 < alpha < 1 and 0 < beta < 1 and rho > 0):
        raise ValueError("need alpha, beta in (0,1) and rho > 0")
    return rho * (1 - 2 * alpha + alpha * beta) / (1 - alpha * beta)


@dataclass(frozen=True)
class RationalAngle:
    cos: Fraction
    sin: Fraction

    def __post_init__(self):
        c, s = Fraction(self.cos), Fraction(self.sin)
        if c * c + s * s != 1:
            raise ValueError(f"({c}, {s}) is not on the unit circle")
        object.__setattr__(self, "cos", c)
        object.__setattr__(self, "sin", s)

    @property
    def direction(self) -> tuple:
        return (Fraction(0), self.cos, self.sin)

    def __str__(self):
        return f"({fmt_rat(self.cos)},{fmt_rat(self.sin)})"


@dataclass(frozen=True)
class RelationTable:
    rows: tuple  # ((x, RationalAngle), ...)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple((Fraction(x), a) for x, a in self.rows))

    @property
    def domain(self) -> list:
        seen = []
        for x, _ in self.rows:
            if x not in seen:
                seen.append(x)
        return seen

    def angles(self, x) -> list:
        return [a for y, a in self.rows if y == Fraction(x)]

    def first(self, x) -> Optional[RationalAngle]:
        found = self.angles(x)
        return found[0] if found else None

    def __contains__(self, pair) -> bool:
        x, a = pair
        return a in self.angles(x)


def parse_relation_table(text: str) -> RelationTable:
    """Rows ``x cos sin`` of exact rationals; '#' starts a comment line."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'x cos sin', got {line!r}")
        x, c, sn = (parse_rat(p) for p in parts)
        rows.append((x, RationalAngle(c, sn)))
    return RelationTable(tuple(rows))


def load_relation_table(path) -> RelationTable:
    with open(path) as fh:
        return parse_relation_table(fh.read())


def _axis_sq(p) -> Fraction:
    return p.coords[1] ** 2 + p.coords[2] ** 2


class CylinderTarget(TargetSet):
    """Coded points on the cylinder of radius r, plus the region y^2 + z^2 > r^2."""

    space = ("euclid", 3)

    def __init__(self, rel: RelationTable, alpha, beta, rho):
        self.rel = rel
        self.r = critical_radius(alpha, beta, rho)
        if self.r <= 0:
            raise ValueError(f"critical radius {self.r} <= 0: the coding degenerates")
        self._coded = {
            (x, self.r * a.cos, self.r * a.sin) for x, a in rel.rows
        }

    def point_query(self, p):
        self._check(p)
        if p.coords in self._coded or _axis_sq(p) > self.r**2:
            return Membership.IN
        return Membership.OUT

    def ball_inside(self, b):
        self._check(b.center)
        d2 = _axis_sq(b.center)
        lim = (self.r + b.radius) ** 2
        if d2 > lim:
            return Answer.YES
        if d2 < lim:
            return Answer.NO
        return Answer.UNKNOWN

    def ball_disjoint(self, b):
        self._check(b.center)
        d2 = _axis_sq(b.center)
        s = b.radius
        if self.r > s and d2 < (self.r - s) ** 2:
            return Answer.YES
        # D + s > r: some point lies strictly outside the cylinder
        if self.r <= s or d2 > (self.r - s) ** 2:
            return Answer.NO
        return Answer.UNKNOWN

    def __repr__(self):
        return f"cylinder(r={fmt_rat(self.r)}, {len(self.rel.rows)} rows)"


def build_target(rel: RelationTable, alpha, beta, rho) -> CylinderTarget:
    return CylinderTarget(rel, alpha, beta, rho)


class Responder(Strategy):
    """II: tangent toward the row's direction while I keeps pulling straight back.

    Off the axis, outside the table domain, or after any deviation by I, II
    maximises its distance from the axis instead.
    """

    player = "II"

    def __init__(self, rel: RelationTable, alpha, beta, rho, max_den: int = 10**6):
        self.rel = rel
        self.params = GameParams(alpha, beta, rho)
        self.r = critical_radius(alpha, beta, rho)
        self._out = MaximizeDistance(self.params, AxisAnchor(), player="II", max_den=max_den)

    def angle_for(self, pos: Position) -> Optional[RationalAngle]:
        c = pos.balls[0].center
        if not isinstance(c, Euclid) or c.dim != 3:
            return None
        if c.coords[1] != 0 or c.coords[2] != 0:
            return None
        return self.rel.first(c.coords[0])

    def in_duel(self, pos: Position) -> Optional[RationalAngle]:
        """The duel angle if every move so far follows the tangent duel exactly."""
        if pos.turn == 0 or pos.balls[0].radius != self.params.rho:
            return None
        a = self.angle_for(pos)
        if a is None:
            return None
        u = a.direction
        for t in range(1, pos.turn):
            prev, cur = pos.balls[t - 1], pos.balls[t]
            s = prev.radius - cur.radius
            sign = 1 if t % 2 == 1 else -1
            if cur.radius != prev.radius * self.params.factor(t) or cur.center != translate(prev.center, u, sign * s):
                return None
        return a

    def next(self, pos):
        a = self.in_duel(pos)
        if a is None:
            return self._out.next(pos)
        r = pos.last.radius * self.params.alpha
        return Ball(translate(pos.last.center, a.direction, pos.last.radius - r), r)

    def limit_certificate(self, pos):
        a = self.in_duel(pos)
        if a is None:
            return None
        x = pos.balls[0].center.coords[0]
        return Euclid((x, self.r * a.cos, self.r * a.sin))

    def __repr__(self):
        return "responder"


def responder_strategy(rel: RelationTable, alpha, beta, rho) -> Responder:
    return Responder(rel, alpha, beta, rho)


def duel_inward(alpha, beta, rho, x, angle: RationalAngle) -> TangentToward:
    """I's side of the duel: open on the axis at x, then tangent back toward the axis."""
    params = GameParams(alpha, beta, rho)
    u = tuple(-v for v in angle.direction)
    return TangentToward(params, u, opening=Ball(Euclid((x, 0, 0)), params.rho), player="I")


def greedy_duel(alpha, beta, rho, x, angle: RationalAngle, depth: int) -> list[Fraction]:
    """Axis distances of the centres over ``depth`` full rounds, opening included.

    Entry 2k is the distance after k full rounds, r (1 - (ab)^k).  Distances
    are signed along the duel direction, so a duel that overshoots the axis
    (r < 0) still matches the closed form.
    """
    x = Fraction(x)
    params = GameParams(alpha, beta, rho)
    rel = RelationTable(((x, angle),))
    trace, _ = play(params, duel_inward(alpha, beta, rho, x, angle), Responder(rel, alpha, beta, rho), Opaque(),
                    2 * depth + 1)
    out = []
    for b in trace.balls:
        _, y, z = b.center.coords
        if b.center.coords[0] != x:
            raise AssertionError("duel left the plane x = const")
        if y * angle.sin != z * angle.cos:
            raise AssertionError("duel left the half-plane of its angle")
        out.append(y * angle.cos + z * angle.sin)
    return out


class NonConforming(ValueError):
    def __init__(self, x, ball, why):
        super().__init__(f"x={fmt_rat(x)}: response {ball} {why}")
        self.x = x
        self.ball = ball


def extract_uniformization(tau: Strategy, domain: Iterable, alpha, rho) -> dict:
    """Read an angle for each x off tau's answer to the opening B((x,0,0), rho)."""
    alpha, rho = Fraction(alpha), Fraction(rho)
    s = rho - alpha * rho
    out = {}
    for x in domain:
        x = Fraction(x)
        ball = tau.next(Position((Ball(Euclid((x, 0, 0)), rho),)))
        c = ball.center
        if ball.radius != alpha * rho:
            raise NonConforming(x, ball, "has the wrong radius")
        if not isinstance(c, Euclid) or c.dim != 3 or c.coords[0] != x:
            raise NonConforming(x, ball, "moved off the plane of x")
        cos, sin = c.coords[1] / s, c.coords[2] / s
        if cos * cos + sin * sin != 1:
            raise NonConforming(x, ball, "is not a tangent move")
        out[x] = RationalAngle(cos, sin)
    return out


def sample_table() -> RelationTable:
    """Three rows; x = 0 has a single angle, x = 1 two."""
    a, b = RationalAngle(Fraction(3, 5), Fraction(4, 5)), RationalAngle(Fraction(4, 5), Fraction(3, 5))
    return RelationTable(((0, a), (1, a), (1, b)))
