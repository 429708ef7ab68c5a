"""Tri-valued target-set oracles.

A target answers point membership and two ball queries.  Answers are
three-valued: sets such as Q admit no ball certificates at all, and an
oracle that is unsure must say so rather than guess.

Soundness contract: ``ball_inside(B) is YES`` implies every point of B is
``IN``; ``ball_disjoint(B) is YES`` implies every point of B is ``OUT``.
"""

from __future__ import annotations

import enum
from fractions import Fraction

from .metric import Ball, BairePoint, Point, SpaceMismatch, fmt_rat


class Membership(enum.Enum):
    IN = "In"
    OUT = "Out"
    UNKNOWN = "Unknown"


class Answer(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


def _flip(m: Membership) -> Membership:
    return {Membership.IN: Membership.OUT, Membership.OUT: Membership.IN}.get(m, m)


class TargetSet:
    """Base class; ``space`` is a space tuple or None for space-agnostic sets."""

    space = None

    def _check(self, p: Point):
        if self.space is not None and p.space != self.space:
            raise SpaceMismatch(f"target lives in {self.space}, got {p.space}")

    def point_query(self, p: Point) -> Membership:
        raise NotImplementedError

    def ball_inside(self, b: Ball) -> Answer:
        raise NotImplementedError

    def ball_disjoint(self, b: Ball) -> Answer:
        raise NotImplementedError


class Everything(TargetSet):
    def point_query(self, p):
        return Membership.IN

    def ball_inside(self, b):
        return Answer.YES

    def ball_disjoint(self, b):
        return Answer.NO

    def __repr__(self):
        return "all"


class Nothing(TargetSet):
    def point_query(self, p):
        return Membership.OUT

    def ball_inside(self, b):
        return Answer.NO

    def ball_disjoint(self, b):
        return Answer.YES

    def __repr__(self):
        return "none"


class Opaque(TargetSet):
    """Answers UNKNOWN to everything; used to run plays to full depth."""

    def point_query(self, p):
        return Membership.UNKNOWN

    def ball_inside(self, b):
        return Answer.UNKNOWN

    def ball_disjoint(self, b):
        return Answer.UNKNOWN

    def __repr__(self):
        return "unknown"


class Interval(TargetSet):
    """An interval of the line; ``None`` bounds are infinite."""

    space = ("line",)

    def __init__(self, lo=None, hi=None, lo_closed=True, hi_closed=True):
        self.lo = None if lo is None else Fraction(lo)
        self.hi = None if hi is None else Fraction(hi)
        self.lo_closed = lo_closed
        self.hi_closed = hi_closed

    def _has(self, x: Fraction) -> bool:
        if self.lo is not None and (x < self.lo or (x == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (x > self.hi or (x == self.hi and not self.hi_closed)):
            return False
        return True

    def point_query(self, p):
        self._check(p)
        return Membership.IN if self._has(p.x) else Membership.OUT

    def ball_inside(self, b):
        self._check(b.center)
        a, z = b.center.x - b.radius, b.center.x + b.radius
        return Answer.YES if self._has(a) and self._has(z) else Answer.NO

    def ball_disjoint(self, b):
        self._check(b.center)
        a, z = b.center.x - b.radius, b.center.x + b.radius
        if self.lo is not None and (z < self.lo or (z == self.lo and not self.lo_closed)):
            return Answer.YES
        if self.hi is not None and (a > self.hi or (a == self.hi and not self.hi_closed)):
            return Answer.YES
        return Answer.NO

    def __repr__(self):
        lo = "-inf" if self.lo is None else fmt_rat(self.lo)
        hi = "inf" if self.hi is None else fmt_rat(self.hi)
        left = "[" if self.lo_closed and self.lo is not None else "("
        right = "]" if self.hi_closed and self.hi is not None else ")"
        return f"{left}{lo},{hi}{right}"


class Rationals(TargetSet):
    """Q on the line.  Every representable point is rational, hence IN."""

    space = ("line",)

    def point_query(self, p):
        self._check(p)
        return Membership.IN

    def ball_inside(self, b):
        self._check(b.center)
        return Answer.NO

    def ball_disjoint(self, b):
        self._check(b.center)
        return Answer.NO

    def __repr__(self):
        return "Q"


def rationals() -> TargetSet:
    return Rationals()


def co_rationals() -> TargetSet:
    return complement(Rationals())


class RayUnionQ(TargetSet):
    """(-inf, -1] u [1, inf) u Q."""

    space = ("line",)

    def point_query(self, p):
        self._check(p)
        return Membership.IN

    def ball_inside(self, b):
        self._check(b.center)
        a, z = b.center.x - b.radius, b.center.x + b.radius
        return Answer.YES if z <= -1 or a >= 1 else Answer.NO

    def ball_disjoint(self, b):
        self._check(b.center)
        # Q is dense
        return Answer.NO

    def __repr__(self):
        return "rayq"


def ray_union_q() -> TargetSet:
    return RayUnionQ()


class BaireCylinder(TargetSet):
    """Sequences extending a fixed stem (a clopen set)."""

    space = ("baire",)

    def __init__(self, stem):
        self.stem = tuple(int(v) for v in stem)

    def point_query(self, p: BairePoint):
        self._check(p)
        return Membership.IN if p.prefix(len(self.stem)) == self.stem else Membership.OUT

    def _relation(self, b: Ball):
        from .metric import baire_cylinder_length

        k = baire_cylinder_length(b.radius)
        n = len(self.stem)
        m = min(k, n)
        if b.center.prefix(m) != self.stem[:m]:
            return "disjoint"
        return "inside" if k >= n else "overlap"

    def ball_inside(self, b):
        self._check(b.center)
        return Answer.YES if self._relation(b) == "inside" else Answer.NO

    def ball_disjoint(self, b):
        self._check(b.center)
        return Answer.YES if self._relation(b) == "disjoint" else Answer.NO

    def __repr__(self):
        return "stem:" + ",".join(map(str, self.stem))


class Union(TargetSet):
    """Union of two targets.

    ``ball_inside`` is sound but incomplete: a ball covered jointly by the two
    parts, but by neither alone, yields UNKNOWN.
    """

    def __init__(self, a: TargetSet, b: TargetSet):
        if a.space is not None and b.space is not None and a.space != b.space:
            raise SpaceMismatch(f"{a.space} vs {b.space}")
        self.a, self.b = a, b
        self.space = a.space if a.space is not None else b.space

    def point_query(self, p):
        self._check(p)
        x, y = self.a.point_query(p), self.b.point_query(p)
        if Membership.IN in (x, y):
            return Membership.IN
        if x is Membership.OUT and y is Membership.OUT:
            return Membership.OUT
        return Membership.UNKNOWN

    def ball_inside(self, b):
        self._check(b.center)
        x, y = self.a.ball_inside(b), self.b.ball_inside(b)
        if Answer.YES in (x, y):
            return Answer.YES
        # No from a part only says *that part* misses a point of b
        if self.a.ball_disjoint(b) is Answer.YES and y is Answer.NO:
            return Answer.NO
        if self.b.ball_disjoint(b) is Answer.YES and x is Answer.NO:
            return Answer.NO
        return Answer.UNKNOWN

    def ball_disjoint(self, b):
        self._check(b.center)
        x, y = self.a.ball_disjoint(b), self.b.ball_disjoint(b)
        if x is Answer.YES and y is Answer.YES:
            return Answer.YES
        if Answer.NO in (x, y):
            return Answer.NO
        return Answer.UNKNOWN

    def __repr__(self):
        return f"union({self.a!r},{self.b!r})"


class Complement(TargetSet):
    def __init__(self, inner: TargetSet):
        self.inner = inner
        self.space = inner.space

    def point_query(self, p):
        return _flip(self.inner.point_query(p))

    def ball_inside(self, b):
        return self.inner.ball_disjoint(b)

    def ball_disjoint(self, b):
        return self.inner.ball_inside(b)

    def __repr__(self):
        return f"compl({self.inner!r})"


def union(a: TargetSet, b: TargetSet) -> TargetSet:
    return Union(a, b)


def complement(t: TargetSet) -> TargetSet:
    if isinstance(t, Complement):
        return t.inner
    return Complement(t)


# -- mini-language ------------------------------------------------------------


def _split_args(body: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in body:
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    out.append("".join(cur))
    return [s.strip() for s in out]


def _operands(body: str) -> list[str]:
    # commas inside interval:a,b and stem:i,j belong to the operand
    out = []
    for a in _split_args(body):
        if out and out[-1].startswith("interval:") and "," not in out[-1]:
            out[-1] += "," + a
        elif out and out[-1].startswith("stem:") and a.lstrip("-").isdigit():
            out[-1] += "," + a
        else:
            out.append(a)
    return out


def parse_target(text: str, *, loader=None) -> TargetSet:
    """Parse the target mini-language.

    ``rayq`` ``Q`` ``coQ`` ``interval:a,b`` ``cylinder:<file>`` ``union(..,..)``
    ``compl(..)``, plus ``all``, ``none``, ``unknown`` and ``stem:i,j,...``.
    ``cylinder:`` needs ``loader``, a callable mapping the file name to a target.
    """
    s = text.strip()
    if s == "rayq":
        return ray_union_q()
    if s == "Q":
        return rationals()
    if s == "coQ":
        return co_rationals()
    if s == "all":
        return Everything()
    if s == "none":
        return Nothing()
    if s == "unknown":
        return Opaque()
    if s.startswith("interval:"):
        args = _split_args(s.split(":", 1)[1])
        if len(args) != 2:
            raise ValueError(f"interval needs two bounds: {text!r}")
        from .metric import parse_rat

        lo = None if args[0] in ("-inf", "") else parse_rat(args[0])
        hi = None if args[1] in ("inf", "+inf", "") else parse_rat(args[1])
        return Interval(lo, hi)
    if s.startswith("stem:"):
        body = s.split(":", 1)[1]
        return BaireCylinder([int(v) for v in body.split(",") if v.strip()])
    if s.startswith("cylinder:"):
        if loader is None:
            raise ValueError("cylinder targets need a loader")
        return loader(s.split(":", 1)[1])
    if s.startswith("union(") and s.endswith(")"):
        args = _operands(s[len("union("):-1])
        if len(args) < 2:
            raise ValueError(f"union needs at least two operands: {text!r}")
        out = parse_target(args[0], loader=loader)
        for a in args[1:]:
            out = union(out, parse_target(a, loader=loader))
        return out
    if s.startswith("compl(") and s.endswith(")"):
        return complement(parse_target(s[len("compl("):-1], loader=loader))
    raise ValueError(f"unknown target {text!r}")


__all__ = [
    "Answer",
    "BaireCylinder",
    "Complement",
    "Everything",
    "Interval",
    "Membership",
    "Nothing",
    "Opaque",
    "RayUnionQ",
    "Rationals",
    "TargetSet",
    "Union",
    "co_rationals",
    "complement",
    "parse_target",
    "ray_union_q",
    "rationals",
    "union",
]
