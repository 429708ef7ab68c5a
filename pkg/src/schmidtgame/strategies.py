"""Strategies: the contract, built-in players, simple strategies and the arena.

A strategy is a deterministic function of the position.  Simple strategies
partition the opponent's possible centers into finitely many cells, each
carrying one fixed response; a lazily generated family of such rounds,
indexed by the sequence of fired cell indices, plays a whole game.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional, Sequence

from .game import (
    GameParams,
    Outcome,
    Certificate,
    Position,
    RuleViolation,
    Trace,
    Variant,
    next_radius,
    play,
    player_of,
)
from .metric import (
    Ball,
    BairePoint,
    Euclid,
    Line,
    Point,
    SpaceMismatch,
    baire_cylinder_length,
    coords_of,
    disagreement_index,
    dist_sq,
    fmt_rat,
    is_unit,
    make_point,
    norm_sq,
    parse_point,
    parse_rat,
    translate,
    unit_toward,
)


class Strategy:
    """Base strategy.  Subclasses implement :meth:`next`.

    ``stability_radius`` and ``limit_certificate`` are optional extras; the
    defaults return None (no claim).
    """

    player: Optional[str] = None

    def next(self, pos: Position) -> Ball:
        raise NotImplementedError

    def stability_radius(self, pos: Position) -> Optional[Fraction]:
        return None

    def limit_certificate(self, pos: Position) -> Optional[Point]:
        return None

    def annotate(self, pos: Position) -> Optional[int]:
        return None


class FunctionStrategy(Strategy):
    def __init__(self, fn: Callable[[Position], Ball], name: str = "fn", player: Optional[str] = None):
        self.fn = fn
        self.name = name
        self.player = player

    def next(self, pos):
        return self.fn(pos)

    def __repr__(self):
        return f"FunctionStrategy({self.name})"


def _slack(params: GameParams, pos: Position) -> tuple[Fraction, Fraction]:
    """(new radius, allowed center displacement) for the mover at pos."""
    r = next_radius(params, pos)
    return r, pos.last.radius - r


def _opening(strategy, pos: Position) -> Ball:
    if strategy.opening is None:
        raise ValueError(f"{strategy!r} has no opening move")
    return strategy.opening


# -- built-in strategies ------------------------------------------------------


def _as_direction(direction) -> tuple:
    if isinstance(direction, (int, Fraction)):
        direction = (direction,)
    elif isinstance(direction, (Line, Euclid)):
        direction = coords_of(direction)
    d = tuple(Fraction(c) for c in direction)
    if not is_unit(d):
        raise ValueError(f"direction {d} is not a rational unit vector")
    return d


class TangentToward(Strategy):
    """Move tangent to the previous ball toward a fixed rational unit direction."""

    def __init__(self, params: GameParams, direction, opening: Optional[Ball] = None, player: Optional[str] = None):
        self.params = params
        self.u = _as_direction(direction)
        self.opening = opening
        self.player = player or ("I" if opening is not None else "II")

    def next(self, pos):
        if pos.turn == 0:
            return _opening(self, pos)
        r, s = _slack(self.params, pos)
        return Ball(translate(pos.last.center, self.u, s), r)

    def stability_radius(self, pos):
        return Fraction(0) if pos.turn else None

    def _is_duel(self, pos) -> bool:
        for k in range(1, pos.turn):
            prev, cur = pos.balls[k - 1], pos.balls[k]
            sign = 1 if player_of(k) == self.player else -1
            s = prev.radius - cur.radius
            if cur.center != translate(prev.center, self.u, sign * s):
                return False
        return True

    def limit_certificate(self, pos):
        """Closed-form limit if the opponent keeps mirroring tangent in the opposite direction."""
        if pos.turn == 0 or not self.params.has_schedule or not self._is_duel(pos):
            return None
        return duel_limit(self.params, pos, self.u, 1 if player_of(pos.turn) == self.player else -1)

    def __repr__(self):
        return f"tangent_toward({','.join(map(fmt_rat, self.u))})"


def duel_limit(params: GameParams, pos: Position, u: Sequence[Fraction], sign: int) -> Point:
    """Limit of alternating full-slack tangent moves along +u / -u from pos.

    ``sign`` is the direction (+1 or -1 along u) of the next move.  Slacks
    decay by the factor alpha*beta every two turns, so the signed tail sums
    to sign * (s_T - s_{T+1}) / (1 - alpha*beta).
    """
    t = pos.turn
    r_prev = pos.last.radius
    r_t = r_prev * params.factor(t)
    r_t1 = r_t * params.factor(t + 1)
    tail = sign * ((r_prev - r_t) - (r_t - r_t1)) / (1 - params.alpha * params.beta)
    return translate(pos.last.center, u, tail)


def tangent_toward(params, direction, opening=None, player=None) -> TangentToward:
    return TangentToward(params, direction, opening, player)


class AxisAnchor:
    """The first coordinate axis of R^n; distance is measured from it."""

    def project(self, p: Point) -> Point:
        c = coords_of(p)
        return make_point((c[0],) + (Fraction(0),) * (len(c) - 1))

    def __repr__(self):
        return "axis"


def _anchor_point(anchor, p: Point) -> Point:
    if isinstance(anchor, AxisAnchor):
        if not isinstance(p, Euclid):
            raise SpaceMismatch("axis anchor needs R^n, n >= 2")
        return anchor.project(p)
    if anchor.space != p.space:
        raise SpaceMismatch(f"anchor {anchor} vs {p}")
    return anchor


class _Radial(Strategy):
    sign = 1

    def __init__(self, params: GameParams, anchor, opening: Optional[Ball] = None, player: Optional[str] = None,
                 max_den: int = 10**4):
        self.params = params
        self.anchor = anchor
        self.opening = opening
        self.player = player or ("I" if opening is not None else "II")
        self.max_den = max_den

    def _fallback(self, c: Point) -> tuple:
        n = len(coords_of(c))
        if isinstance(self.anchor, AxisAnchor):
            return (Fraction(0), Fraction(1)) + (Fraction(0),) * (n - 2)
        return (Fraction(1),) + (Fraction(0),) * (n - 1)

    def next(self, pos):
        if pos.turn == 0:
            return _opening(self, pos)
        r, s = _slack(self.params, pos)
        c = pos.last.center
        a = _anchor_point(self.anchor, c)
        v = tuple(x - y for x, y in zip(coords_of(c), coords_of(a)))
        if self.sign < 0:
            if norm_sq(v) <= s * s:
                return Ball(a, r)
            return Ball(translate(c, unit_toward(v, self.max_den), -s), r)
        u = self._fallback(c) if norm_sq(v) == 0 else unit_toward(v, self.max_den)
        return Ball(translate(c, u, s), r)


class MaximizeDistance(_Radial):
    """Move radially away from an anchor point (or axis) by the full slack."""

    sign = 1

    def __repr__(self):
        return f"maximize_distance_from({self.anchor})"


class MinimizeDistance(_Radial):
    """Move radially toward an anchor by the full slack, stopping on it."""

    sign = -1

    def __repr__(self):
        return f"minimize_distance_from({self.anchor})"


def maximize_distance_from(params, anchor, opening=None, player=None) -> MaximizeDistance:
    return MaximizeDistance(params, anchor, opening, player)


def minimize_distance_from(params, anchor, opening=None, player=None) -> MinimizeDistance:
    return MinimizeDistance(params, anchor, opening, player)


class Concentric(Strategy):
    """Keep the center; shrink the radius by the schedule."""

    def __init__(self, params: GameParams, opening: Optional[Ball] = None, player: Optional[str] = None):
        self.params = params
        self.opening = opening
        self.player = player or ("I" if opening is not None else "II")

    def next(self, pos):
        if pos.turn == 0:
            return _opening(self, pos)
        r, _ = _slack(self.params, pos)
        return Ball(pos.last.center, r)

    def stability_radius(self, pos):
        if pos.turn == 0:
            return None
        return _slack(self.params, pos)[1]

    def __repr__(self):
        return "concentric"


def concentric(params, opening=None, player=None) -> Concentric:
    return Concentric(params, opening, player)


class AvoidEnumeration(Strategy):
    """Player I on the line: at its k-th reply, exclude the k-th listed point.

    From II's ball B(c, r) the two extreme sub-balls B(c -+ (r - beta r), beta r)
    are disjoint exactly when beta < 1/2, so at least one of them misses any
    given point.
    """

    player = "I"

    def __init__(self, params: GameParams, enumeration, opening: Ball):
        if params.beta >= Fraction(1, 2):
            raise ValueError("avoid_enumeration needs beta < 1/2")
        if not isinstance(opening.center, Line):
            raise SpaceMismatch("avoid_enumeration is defined on the line only")
        self.params = params
        self.opening = opening
        if callable(enumeration):
            self._q = enumeration
        else:
            it = iter(enumeration)
            cache: list = []

            def q(k):
                while len(cache) <= k:
                    cache.append(Fraction(next(it)))
                return cache[k]

            self._q = q

    def target_point(self, k: int) -> Fraction:
        return self._q(k)

    def next(self, pos):
        if pos.turn == 0:
            return self.opening
        if pos.turn % 2:
            raise ValueError("avoid_enumeration plays only I's turns")
        k = pos.turn // 2 - 1
        q = self.target_point(k)
        c, r = pos.last.center.x, pos.last.radius
        nr = r * self.params.beta
        s = r - nr
        left = Ball(Line(c - s), nr)
        if left.contains(Line(q)):
            return Ball(Line(c + s), nr)
        return left

    def __repr__(self):
        return "avoid_enumeration"


def avoid_enumeration(params, enumeration, opening) -> AvoidEnumeration:
    return AvoidEnumeration(params, enumeration, opening)


# -- cells ----------------------------------------------------------------------


class NoCell(ValueError):
    """The incoming center lies in no cell: the simple strategy is partial there."""


class OverlapDetected(RuleViolation):
    """Two cells of one round share a point."""


@dataclass(frozen=True)
class LegalRegion:
    """Centers an incoming move may legally use: d(x, center) <= slack (< if strict)."""

    center: Point
    slack: Fraction
    strict: bool = False


def _line_region(region: LegalRegion):
    c = region.center.x
    closed = not region.strict
    return c - region.slack, c + region.slack, closed


class Cell:
    kind = "cell"

    def contains(self, p: Point) -> bool:
        raise NotImplementedError

    def fits(self, y: Point, slack: Fraction, strict: bool, region: Optional[LegalRegion] = None):
        """None if every (legal) x in the cell satisfies d(x, y) <= slack (< if strict).

        Otherwise a witness point (in the cell or its closure).
        """
        raise NotImplementedError

    def meets(self, region: LegalRegion) -> Optional[bool]:
        """Whether the cell contains a legal center; None if undecided."""
        return None

    def representative(self, region: Optional[LegalRegion] = None) -> Optional[Point]:
        return None

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Interval(Cell):
    """Interval of the line; ``None`` bounds are infinite."""

    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    lo_closed: bool = True
    hi_closed: bool = False

    kind = "interval"

    def __post_init__(self):
        if self.lo is not None:
            object.__setattr__(self, "lo", Fraction(self.lo))
        if self.hi is not None:
            object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo is None:
            object.__setattr__(self, "lo_closed", False)
        if self.hi is None:
            object.__setattr__(self, "hi_closed", False)

    def has(self, x: Fraction) -> bool:
        if self.lo is not None and (x < self.lo or (x == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (x > self.hi or (x == self.hi and not self.hi_closed)):
            return False
        return True

    def contains(self, p):
        if not isinstance(p, Line):
            raise SpaceMismatch("interval cells live on the line")
        return self.has(p.x)

    @property
    def empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and not (self.lo_closed and self.hi_closed)

    def intersect(self, other: "Interval") -> "Interval":
        lo, lc = self.lo, self.lo_closed
        if other.lo is not None and (lo is None or other.lo > lo or (other.lo == lo and not other.lo_closed)):
            lo, lc = other.lo, other.lo_closed
        hi, hc = self.hi, self.hi_closed
        if other.hi is not None and (hi is None or other.hi < hi or (other.hi == hi and not other.hi_closed)):
            hi, hc = other.hi, other.hi_closed
        return Interval(lo, hi, lc, hc)

    def restrict(self, region: Optional[LegalRegion]) -> "Interval":
        if region is None:
            return self
        a, b, closed = _line_region(region)
        return self.intersect(Interval(a, b, closed, closed))

    def fits(self, y, slack, strict, region=None):
        j = self.restrict(region)
        if j.empty:
            return None
        if j.lo is None or j.hi is None:
            return Line(j.lo if j.lo is not None else (j.hi if j.hi is not None else 0))
        yx = y.x
        for e, attained in ((j.lo, j.lo_closed), (j.hi, j.hi_closed)):
            v = abs(e - yx)
            if v > slack or (strict and attained and v == slack):
                return Line(e)
        return None

    def meets(self, region):
        return not self.restrict(region).empty

    def representative(self, region=None):
        j = self.restrict(region)
        if j.empty:
            return None
        if j.lo is not None and j.hi is not None:
            return Line(j.lo if j.lo == j.hi else (j.lo + j.hi) / 2)
        if j.lo is not None:
            return Line(j.lo if j.lo_closed else j.lo + 1)
        if j.hi is not None:
            return Line(j.hi if j.hi_closed else j.hi - 1)
        return Line(0)

    def to_json(self):
        return {
            "type": "interval",
            "lo": None if self.lo is None else fmt_rat(self.lo),
            "hi": None if self.hi is None else fmt_rat(self.hi),
            "lo_closed": self.lo_closed,
            "hi_closed": self.hi_closed,
        }

    def __str__(self):
        lo = "-inf" if self.lo is None else fmt_rat(self.lo)
        hi = "inf" if self.hi is None else fmt_rat(self.hi)
        return f"{'[' if self.lo_closed else '('}{lo},{hi}{']' if self.hi_closed else ')'}"


def half_open(a, b) -> Interval:
    """[a, b); either end may be None."""
    return Interval(a, b, True, False)


@dataclass(frozen=True)
class Box(Cell):
    """Product of half-open intervals [lo_i, hi_i) in R^n."""

    lo: tuple
    hi: tuple

    kind = "box"

    def __post_init__(self):
        object.__setattr__(self, "lo", tuple(Fraction(v) for v in self.lo))
        object.__setattr__(self, "hi", tuple(Fraction(v) for v in self.hi))
        if len(self.lo) != len(self.hi) or len(self.lo) < 2:
            raise ValueError("box bounds must have equal dimension >= 2")

    def contains(self, p):
        c = coords_of(p)
        return all(a <= x < b for x, a, b in zip(c, self.lo, self.hi))

    @property
    def empty(self):
        return any(a >= b for a, b in zip(self.lo, self.hi))

    def fits(self, y, slack, strict, region=None):
        if self.empty:
            return None
        # squared distance is convex, so its max over the box sits at a corner
        yc = coords_of(y)
        s2 = slack * slack
        n = len(self.lo)
        for mask in range(2**n):
            corner = tuple(self.hi[i] if mask >> i & 1 else self.lo[i] for i in range(n))
            v = sum((a - b) ** 2 for a, b in zip(corner, yc))
            attained = mask == 0
            if v > s2 or (strict and attained and v == s2):
                return Euclid(corner)
        return None

    def meets(self, region):
        if self.empty:
            return False
        c = coords_of(region.center)
        clamp = tuple(min(max(x, a), b) for x, a, b in zip(c, self.lo, self.hi))
        v = sum((a - b) ** 2 for a, b in zip(clamp, c))
        m2 = region.slack ** 2
        if v < m2:
            return True
        if v > m2:
            return False
        if region.strict:
            return False
        return all(x < b for x, b in zip(clamp, self.hi))

    def representative(self, region=None):
        return None if self.empty else Euclid(self.lo)

    def to_json(self):
        return {"type": "box", "lo": [fmt_rat(v) for v in self.lo], "hi": [fmt_rat(v) for v in self.hi]}

    def __str__(self):
        return "x".join(f"[{fmt_rat(a)},{fmt_rat(b)})" for a, b in zip(self.lo, self.hi))


@dataclass(frozen=True)
class OpenBall(Cell):
    center: Point
    radius: Fraction

    kind = "open_ball"

    def __post_init__(self):
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise ValueError("open ball radius must be positive")

    def contains(self, p):
        return dist_sq(self.center, p) < self.radius**2

    def fits(self, y, slack, strict, region=None):
        # sup over the open ball of d(x, y) is d(z, y) + radius, never attained
        room = slack - self.radius
        if room < 0 or dist_sq(self.center, y) > room * room:
            return self.center
        return None

    def meets(self, region):
        s = self.radius + region.slack
        return dist_sq(self.center, region.center) < s * s

    def representative(self, region=None):
        return self.center

    def as_interval(self) -> Interval:
        x = self.center.x
        return Interval(x - self.radius, x + self.radius, False, False)

    def to_json(self):
        return {"type": "open_ball", "center": str(self.center), "radius": fmt_rat(self.radius)}

    def __str__(self):
        return f"U({self.center}, {fmt_rat(self.radius)})"


@dataclass(frozen=True)
class Difference(Cell):
    """``base`` minus the union of ``minus``."""

    base: Cell
    minus: tuple = ()

    kind = "difference"

    def contains(self, p):
        return self.base.contains(p) and not any(m.contains(p) for m in self.minus)

    def fits(self, y, slack, strict, region=None):
        return self.base.fits(y, slack, strict, region)

    def representative(self, region=None):
        p = self.base.representative(region)
        if p is not None and self.contains(p):
            return p
        return None

    def to_json(self):
        return {"type": "difference", "base": self.base.to_json(), "minus": [m.to_json() for m in self.minus]}

    def __str__(self):
        if not self.minus:
            return str(self.base)
        return f"{self.base} \\ ({' u '.join(map(str, self.minus))})"


@dataclass(frozen=True)
class Stems(Cell):
    """Baire-space sequences extending ``stem``."""

    stem: tuple

    kind = "stems"

    def __post_init__(self):
        object.__setattr__(self, "stem", tuple(int(v) for v in self.stem))

    def contains(self, p):
        if not isinstance(p, BairePoint):
            raise SpaceMismatch("stem cells live in Baire space")
        return p.prefix(len(self.stem)) == self.stem

    def _sup(self, y: BairePoint) -> tuple[Fraction, BairePoint]:
        k = len(self.stem)
        if y.prefix(k) == self.stem:
            return Fraction(1, 2 ** (k + 1)), BairePoint(self.stem + (y[k] + 1,), 0)
        n = disagreement_index(BairePoint(self.stem, y[k] + 1), y)
        return Fraction(1, 2 ** (n + 1)), BairePoint(self.stem, 0)

    def fits(self, y, slack, strict, region=None):
        v, w = self._sup(y)
        if v > slack or (strict and v == slack):
            return w
        return None

    def meets(self, region):
        c = region.center
        r = region.slack
        if region.strict:
            # d < r  <=>  d <= r/2 on the dyadic value set {2^-(n+1)} u {0}
            r = r / 2
        if r <= 0:
            return self.contains(c)
        L = baire_cylinder_length(r)
        m = min(L, len(self.stem))
        return c.prefix(m) == self.stem[:m]

    def representative(self, region=None):
        if region is not None and self.meets(region):
            c = region.center
            L = baire_cylinder_length(region.slack / 2 if region.strict else region.slack)
            if L > len(self.stem):
                return BairePoint(c.prefix(L), 0)
        return BairePoint(self.stem, 0)

    def to_json(self):
        return {"type": "stems", "stem": list(self.stem)}

    def __str__(self):
        return "<" + ",".join(map(str, self.stem)) + ">"


def cell_from_json(d: dict) -> Cell:
    t = d["type"]
    if t == "interval":
        lo = None if d.get("lo") is None else parse_rat(d["lo"])
        hi = None if d.get("hi") is None else parse_rat(d["hi"])
        return Interval(lo, hi, d.get("lo_closed", True), d.get("hi_closed", False))
    if t == "box":
        return Box(tuple(parse_rat(v) for v in d["lo"]), tuple(parse_rat(v) for v in d["hi"]))
    if t == "open_ball":
        return OpenBall(parse_point(d["center"]), parse_rat(d["radius"]))
    if t == "difference":
        return Difference(cell_from_json(d["base"]), tuple(cell_from_json(m) for m in d.get("minus", [])))
    if t == "stems":
        return Stems(tuple(d["stem"]))
    raise ValueError(f"unknown cell type {t!r}")


def _core(c: Cell) -> Cell:
    return c.base if isinstance(c, Difference) else c


def cells_disjoint(a: Cell, b: Cell) -> Optional[bool]:
    """Exact disjointness where decidable; None when undecided."""
    if isinstance(a, Difference) and _core(b) in a.minus:
        return True
    if isinstance(b, Difference) and _core(a) in b.minus:
        return True
    if isinstance(a, Difference) or isinstance(b, Difference):
        return True if cells_disjoint(_core(a), _core(b)) else None
    if isinstance(a, OpenBall) and isinstance(a.center, Line):
        a = a.as_interval()
    if isinstance(b, OpenBall) and isinstance(b.center, Line):
        b = b.as_interval()
    if isinstance(a, Interval) and isinstance(b, Interval):
        return a.intersect(b).empty
    if isinstance(a, Box) and isinstance(b, Box):
        return any(h1 <= l2 or h2 <= l1 for l1, h1, l2, h2 in zip(a.lo, a.hi, b.lo, b.hi))
    if isinstance(a, OpenBall) and isinstance(b, OpenBall):
        s = a.radius + b.radius
        return dist_sq(a.center, b.center) >= s * s
    if isinstance(a, Stems) and isinstance(b, Stems):
        m = min(len(a.stem), len(b.stem))
        return a.stem[:m] != b.stem[:m]
    return None


# -- simple one-round strategies -----------------------------------------------


@dataclass(frozen=True)
class Response:
    """A response ball; absolute (``center``) or relative to the incoming center (``offset``)."""

    radius: Fraction
    center: Optional[Point] = None
    offset: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "radius", Fraction(self.radius))
        if (self.center is None) == (self.offset is None):
            raise ValueError("a response is either absolute or relative")
        if self.offset is not None:
            object.__setattr__(self, "offset", tuple(Fraction(v) for v in self.offset))

    @property
    def relative(self) -> bool:
        return self.offset is not None

    def instantiate(self, incoming: Optional[Ball] = None) -> Ball:
        if self.center is not None:
            return Ball(self.center, self.radius)
        if incoming is None:
            raise ValueError("relative response needs the incoming ball")
        return Ball(translate(incoming.center, self.offset), self.radius)

    def to_json(self):
        return {
            "radius": fmt_rat(self.radius),
            "center": None if self.center is None else str(self.center),
            "offset": None if self.offset is None else [fmt_rat(v) for v in self.offset],
        }

    @classmethod
    def from_json(cls, d):
        center = None if d.get("center") is None else parse_point(d["center"])
        offset = None if d.get("offset") is None else tuple(parse_rat(v) for v in d["offset"])
        return cls(parse_rat(d["radius"]), center, offset)

    @classmethod
    def of(cls, ball: Ball) -> "Response":
        return cls(ball.radius, center=ball.center)

    def __str__(self):
        if self.center is not None:
            return f"B({self.center}, {fmt_rat(self.radius)})"
        return f"B(x+({','.join(map(fmt_rat, self.offset))}), {fmt_rat(self.radius)})"


@dataclass(frozen=True)
class SimpleOneRound:
    entries: tuple  # ((Cell, Response), ...)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple((c, r) for c, r in self.entries))

    def __len__(self):
        return len(self.entries)

    @property
    def cells(self) -> tuple:
        return tuple(c for c, _ in self.entries)

    def response(self, n: int, incoming: Optional[Ball] = None) -> Ball:
        """s(n): the response attached to cell n."""
        return self.entries[n][1].instantiate(incoming)

    def overlaps(self) -> list:
        """Pairs (i, j) not proven disjoint."""
        return [(i, j) for (i, a), (j, b) in combinations(enumerate(self.cells), 2) if cells_disjoint(a, b) is not True]

    def to_json(self):
        return [{"cell": c.to_json(), "response": r.to_json()} for c, r in self.entries]

    @classmethod
    def from_json(cls, items):
        return cls(tuple((cell_from_json(it["cell"]), Response.from_json(it["response"])) for it in items))

    def __str__(self):
        return "; ".join(f"{c} -> {r}" for c, r in self.entries)


def simple_respond(s: SimpleOneRound, incoming: Ball) -> tuple[int, Ball]:
    hits = [i for i, c in enumerate(s.cells) if c.contains(incoming.center)]
    if not hits:
        raise NoCell(f"{incoming.center} lies in no cell")
    if len(hits) > 1:
        raise OverlapDetected(f"{incoming.center} lies in cells {hits}")
    n = hits[0]
    return n, s.response(n, incoming)


@dataclass(frozen=True)
class RoundContext:
    """Where a one-round strategy is used.

    ``turn`` is the turn of the incoming (opponent) move; ``prev`` the ball
    before it (None when the incoming move is the opening).  Positional
    rules make these sufficient.
    """

    turn: int
    prev: Optional[Ball] = None
    incoming_radius: Optional[Fraction] = None

    @classmethod
    def at(cls, pos: Position, incoming_radius=None) -> "RoundContext":
        return cls(pos.turn, pos.last if pos.turn else None, incoming_radius)

    def radii(self, params: GameParams) -> tuple[Fraction, Optional[Fraction]]:
        """(incoming radius, required response radius or None when free)."""
        if self.incoming_radius is not None:
            r_in = Fraction(self.incoming_radius)
        elif self.prev is None:
            if params.rho is None:
                raise ValueError("opening radius unknown; set incoming_radius")
            r_in = params.rho
        else:
            r_in = self.prev.radius * params.factor(self.turn)
        r_out = r_in * params.factor(self.turn + 1) if params.has_schedule else None
        return r_in, r_out

    def region(self, params: GameParams) -> Optional[LegalRegion]:
        if self.prev is None:
            return None
        r_in, _ = self.radii(params)
        return LegalRegion(self.prev.center, self.prev.radius - r_in, params.variant is Variant.NON_TANGENT)


@dataclass
class ValidationReport:
    failures: list  # (cell index or pair, reason, witness)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(f"cell {i}: {why} (witness {w})" for i, why, w in self.failures)


def validate_simple(s: SimpleOneRound, params: GameParams, context: RoundContext) -> ValidationReport:
    """Disjointness plus legality of every response over its (legal part of the) cell.

    Legality d(x, y) <= r_in - r_out is convex in x, so extreme points of
    convex cells decide it.
    """
    failures = []
    for i, j in s.overlaps():
        failures.append(((i, j), "cells not disjoint", None))
    r_in, r_out = context.radii(params)
    region = context.region(params)
    strict = params.variant is Variant.NON_TANGENT
    for n, (cell, resp) in enumerate(s.entries):
        if r_out is not None and resp.radius != r_out:
            failures.append((n, f"radius {fmt_rat(resp.radius)} != scheduled {fmt_rat(r_out)}", None))
            continue
        if r_out is None and resp.radius > r_in:
            failures.append((n, "radius grows", None))
            continue
        slack = r_in - resp.radius
        if resp.relative:
            if isinstance(cell, Interval) and cell.restrict(region).empty:
                continue
            d2 = norm_sq(resp.offset)
            if d2 > slack * slack or (strict and d2 == slack * slack):
                failures.append((n, "offset exceeds slack", cell.representative(region)))
            continue
        w = cell.fits(resp.center, slack, strict, region)
        if w is not None:
            failures.append((n, "response illegal for some member", w))
    return ValidationReport(failures)


# -- simple strategies ----------------------------------------------------------


class SimpleStrategy(Strategy):
    """A family of one-round strategies indexed by the sequence of fired cells.

    ``rounds(u)`` returns the round used after the opponent's moves fired the
    cell indices ``u``.  With an ``opening`` ball the strategy plays I.
    """

    def __init__(self, rounds: Callable[[tuple], SimpleOneRound], opening: Optional[Ball] = None,
                 player: Optional[str] = None, check_disjoint: bool = True, name: str = "simple"):
        self._rounds = functools.lru_cache(maxsize=None)(rounds)
        self.opening = opening
        self.player = player or ("I" if opening is not None else "II")
        self.check_disjoint = check_disjoint
        self.name = name
        self._checked: set = set()

    def rounds(self, u: tuple) -> SimpleOneRound:
        s = self._rounds(tuple(u))
        if self.check_disjoint and u not in self._checked:
            bad = s.overlaps()
            if bad:
                raise OverlapDetected(f"round {list(u)} has overlapping cells {bad}")
            self._checked.add(tuple(u))
        return s

    def _opponent_turns(self, pos: Position) -> list[int]:
        first = 0 if self.player == "II" else 1
        return list(range(first, pos.turn, 2))

    def indices(self, pos: Position) -> tuple:
        """Cell indices fired by each opponent move in pos, in order."""
        u: tuple = ()
        for t in self._opponent_turns(pos):
            n, _ = simple_respond(self.rounds(u), pos.balls[t])
            u += (n,)
        return u

    def next(self, pos):
        if self.player == "I" and pos.turn == 0:
            return self.opening
        if player_of(pos.turn) != self.player:
            raise ValueError(f"not {self.player}'s turn")
        u = self.indices(Position(pos.balls[:-1]))
        _, ball = simple_respond(self.rounds(u), pos.last)
        return ball

    def annotate(self, pos):
        if pos.turn == 0:
            return None
        try:
            return self.indices(pos)[-1]
        except (NoCell, OverlapDetected, IndexError):
            return None

    def __repr__(self):
        return f"SimpleStrategy({self.name}, {self.player})"


def constant_rounds(s: SimpleOneRound) -> Callable[[tuple], SimpleOneRound]:
    return lambda u: s


def simple_relative(params: GameParams, rho0: Fraction, player: str, offset_unit: Sequence[Fraction],
                    opening: Optional[Ball] = None, cells: Optional[Sequence[tuple]] = None) -> SimpleStrategy:
    """Simple strategy whose responses are center-relative and radius-scheduled.

    ``cells`` is a sequence of (cell, sign) pairs; each cell answers with a
    displacement of sign * slack along ``offset_unit``.  Default: a single
    cell covering the whole line or space with sign +1.
    """
    u_vec = _as_direction(offset_unit)
    if cells is None:
        whole = Interval(None, None) if len(u_vec) == 1 else None
        if whole is None:
            raise ValueError("pass explicit cells in R^n")
        cells = [(whole, 1)]

    def rounds(u):
        k = len(u)
        turn_in = 2 * k + (0 if player == "II" else 1)
        # radius of the incoming move at turn_in
        from .game import required_radius

        r_in = required_radius(params, turn_in, rho0)
        r_out = r_in * params.factor(turn_in + 1)
        s = r_in - r_out
        return SimpleOneRound(tuple((c, Response(r_out, offset=tuple(sign * s * a for a in u_vec))) for c, sign in cells))

    return SimpleStrategy(rounds, opening=opening, player=player, name="relative")


def simple_maxdist_line(params: GameParams, rho0: Fraction, anchor: Fraction = Fraction(0)) -> SimpleStrategy:
    """II's maximize-distance-from-anchor on the line as two half-line cells."""
    return simple_relative(
        params, rho0, "II", (1,),
        cells=[(Interval(None, anchor, False, False), -1), (Interval(anchor, None, True, False), 1)],
    )


def arena(code_I: SimpleStrategy, code_II: SimpleStrategy, params: GameParams, target, depth: int):
    """Play two simple strategies against each other, recording fired cells.

    A malformed code loses; if both are malformed II wins.
    """
    bad = {}
    for who, code in (("I", code_I), ("II", code_II)):
        try:
            code.rounds(())
        except RuleViolation as exc:
            bad[who] = str(exc)
    if bad:
        loser = "I" if "I" in bad else "II"
        verdict = "WinII" if loser == "I" else "WinI"
        outcome = Outcome(verdict, 0, Certificate("violation", detail="; ".join(f"{k}: {v}" for k, v in bad.items())))
        return Trace(outcome=outcome), outcome
    return play(params, code_I, code_II, target, depth)


# -- strategy documents ------------------------------------------------------------


def strategy_to_doc(strategy: SimpleStrategy, histories: Sequence[tuple] = ((),), default: Optional[tuple] = None,
                    claims_rule_following: bool = True) -> str:
    """Serialise the rounds at the listed index histories to a JSON document."""
    doc = {
        "format": "simple-strategy/1",
        "player": strategy.player,
        "opening": None
        if strategy.opening is None
        else {"center": str(strategy.opening.center), "radius": fmt_rat(strategy.opening.radius)},
        "claims_rule_following": claims_rule_following,
        "rounds": [{"u": list(u), "cells": strategy._rounds(tuple(u)).to_json()} for u in histories],
        "default": None if default is None else strategy._rounds(tuple(default)).to_json(),
    }
    return json.dumps(doc, indent=2)


def strategy_from_doc(text: str) -> SimpleStrategy:
    doc = json.loads(text)
    if doc.get("format") != "simple-strategy/1":
        raise ValueError("not a simple-strategy document")
    table = {tuple(r["u"]): SimpleOneRound.from_json(r["cells"]) for r in doc["rounds"]}
    default = None if doc.get("default") is None else SimpleOneRound.from_json(doc["default"])
    opening = None
    if doc.get("opening") is not None:
        opening = Ball(parse_point(doc["opening"]["center"]), parse_rat(doc["opening"]["radius"]))

    def rounds(u):
        if u in table:
            return table[u]
        if default is not None:
            return default
        raise NoCell(f"document has no round for history {list(u)}")

    strat = SimpleStrategy(rounds, opening=opening, player=doc["player"], name="document")
    strat.claims_rule_following = doc.get("claims_rule_following", False)
    return strat
