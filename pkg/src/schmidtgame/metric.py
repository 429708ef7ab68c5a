"""Exact points, closed balls and comparison predicates.

Three spaces are supported: the real line, Euclidean R^n (n >= 2) and Baire
space restricted to eventually-constant sequences.  Every quantity is a
:class:`fractions.Fraction`; Euclidean distances are never materialised, all
predicates compare squared quantities so tangency is decided exactly.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

Rat = Fraction


class SpaceMismatch(ValueError):
    """Raised when points or balls from different spaces are combined."""


class Ordering(enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"


class Nesting(enum.Enum):
    NESTED = "Nested"
    TANGENT = "Tangent"
    NOT_NESTED = "NotNested"


_RAT_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rat(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``.  Decimal notation is rejected on purpose."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"not an exact rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def fmt_rat(q: Fraction) -> str:
    # Fraction.__str__ is already canonical: "p/q", or "p" when q == 1
    return str(Fraction(q))


def _cmp(a: Fraction, b: Fraction) -> Ordering:
    if a < b:
        return Ordering.LT
    if a > b:
        return Ordering.GT
    return Ordering.EQ


# -- points -----------------------------------------------------------------


@dataclass(frozen=True)
class Line:
    x: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))

    @property
    def space(self):
        return ("line",)

    def __str__(self):
        return f"[{fmt_rat(self.x)}]"


@dataclass(frozen=True)
class Euclid:
    coords: tuple

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        if len(coords) < 2:
            raise ValueError("Euclid points need dimension >= 2; use Line for R")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def space(self):
        return ("euclid", len(self.coords))

    def __str__(self):
        return "[" + ",".join(fmt_rat(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class BairePoint:
    """The sequence ``stem + (tail, tail, ...)``.

    The stem is normalised so that it never ends with the tail value; two
    representations of the same sequence therefore compare equal.
    """

    stem: tuple
    tail: int = 0

    def __post_init__(self):
        stem = [int(v) for v in self.stem]
        tail = int(self.tail)
        while stem and stem[-1] == tail:
            stem.pop()
        object.__setattr__(self, "stem", tuple(stem))
        object.__setattr__(self, "tail", tail)

    @property
    def space(self):
        return ("baire",)

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError(i)
        return self.stem[i] if i < len(self.stem) else self.tail

    def prefix(self, n: int) -> tuple:
        return tuple(self[i] for i in range(n))

    def __str__(self):
        return "[" + ",".join(str(v) for v in self.stem) + f"|{self.tail}]"


Point = Union[Line, Euclid, BairePoint]


def _check_same(p, q):
    if p.space != q.space:
        raise SpaceMismatch(f"{p.space} vs {q.space}")


def disagreement_index(x: BairePoint, y: BairePoint) -> int | None:
    """Least n with x(n) != y(n), or None if the sequences are equal."""
    n = max(len(x.stem), len(y.stem))
    for i in range(n):
        if x[i] != y[i]:
            return i
    if x.tail != y.tail:
        return n
    return None


def dist_sq(p: Point, q: Point) -> Fraction:
    """Exact squared distance."""
    _check_same(p, q)
    if isinstance(p, Line):
        return (p.x - q.x) ** 2
    if isinstance(p, Euclid):
        return sum(((a - b) ** 2 for a, b in zip(p.coords, q.coords)), Fraction(0))
    n = disagreement_index(p, q)
    if n is None:
        return Fraction(0)
    return Fraction(1, 2 ** (n + 1)) ** 2


def dist(p: Point, q: Point) -> Fraction:
    """Exact distance; only defined when it is rational.

    Always succeeds on the line and in Baire space.  In R^n raises
    ``ValueError`` when the squared distance is not a rational square.
    """
    root = exact_sqrt(dist_sq(p, q))
    if root is None:
        raise ValueError(f"distance between {p} and {q} is irrational")
    return root


def dist_cmp(p: Point, q: Point, t: Fraction) -> Ordering:
    """Exact ordering of d(p, q) against the threshold ``t >= 0``."""
    t = Fraction(t)
    if t < 0:
        raise ValueError("threshold must be non-negative")
    return _cmp(dist_sq(p, q), t * t)


def exact_sqrt(q: Fraction) -> Fraction | None:
    """sqrt(q) if q is the square of a rational, else None."""
    if q < 0:
        raise ValueError("negative")
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_bounds(q: Fraction, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(q) <= hi`` with ``hi - lo <= 2**-bits``.

    Collapses to the exact root when ``q`` is a rational square.
    """
    root = exact_sqrt(q)
    if root is not None:
        return root, root
    scale = 1 << bits
    # floor(sqrt(q) * scale) = isqrt(floor(q * scale^2))
    lo_int = math.isqrt(q.numerator * scale * scale // q.denominator)
    return Fraction(lo_int, scale), Fraction(lo_int + 1, scale)


# -- balls ------------------------------------------------------------------


@dataclass(frozen=True)
class Ball:
    center: Point
    radius: Fraction

    def __post_init__(self):
        r = Fraction(self.radius)
        if r <= 0:
            raise ValueError(f"ball radius must be positive, got {r}")
        object.__setattr__(self, "radius", r)

    @property
    def space(self):
        return self.center.space

    def contains(self, p: Point) -> bool:
        return dist_cmp(self.center, p, self.radius) is not Ordering.GT

    def __str__(self):
        return f"B({self.center}, {fmt_rat(self.radius)})"


def ball_nested(outer: Ball, inner: Ball) -> Nesting:
    """Classify ``inner`` against ``outer`` under r_in + d(centers) <= r_out."""
    _check_same(outer.center, inner.center)
    if outer.radius < inner.radius:
        return Nesting.NOT_NESTED
    slack = outer.radius - inner.radius
    order = dist_cmp(outer.center, inner.center, slack)
    if order is Ordering.LT:
        return Nesting.NESTED
    if order is Ordering.EQ:
        return Nesting.TANGENT
    return Nesting.NOT_NESTED


def baire_ball_subset(outer: Ball, inner: Ball) -> bool:
    """Set containment of closed balls in Baire space.

    Differs from :func:`ball_nested`: the ultrametric makes inclusion weaker
    than the additive nesting rule.
    """
    if not isinstance(outer.center, BairePoint) or not isinstance(inner.center, BairePoint):
        raise SpaceMismatch("baire_ball_subset needs Baire balls")
    a, b = baire_cylinder_length(outer.radius), baire_cylinder_length(inner.radius)
    if b < a:
        return False
    return outer.center.prefix(a) == inner.center.prefix(a)


def baire_cylinder_length(radius: Fraction) -> int:
    """Length k of the agreement prefix defining the closed ball of this radius.

    ``B(x, r) = {y : y agrees with x on its first k coordinates}`` where k is
    least with 2^-(k+1) <= r.
    """
    k = 0
    while Fraction(1, 2 ** (k + 1)) > radius:
        k += 1
    return k


# -- vector helpers (line and R^n) -------------------------------------------


def coords_of(p: Point) -> tuple:
    if isinstance(p, Line):
        return (p.x,)
    if isinstance(p, Euclid):
        return p.coords
    raise SpaceMismatch("Baire points have no vector structure")


def make_point(coords: Sequence[Fraction]) -> Point:
    coords = tuple(Fraction(c) for c in coords)
    return Line(coords[0]) if len(coords) == 1 else Euclid(coords)


def translate(p: Point, offset: Sequence[Fraction], scale: Fraction = Fraction(1)) -> Point:
    c = coords_of(p)
    if len(c) != len(offset):
        raise SpaceMismatch("offset dimension mismatch")
    return make_point([a + scale * Fraction(b) for a, b in zip(c, offset)])


def norm_sq(v: Sequence[Fraction]) -> Fraction:
    return sum((Fraction(a) ** 2 for a in v), Fraction(0))


def is_unit(v: Sequence[Fraction]) -> bool:
    return norm_sq(v) == 1


def unit_toward(v: Sequence[Fraction], max_den: int = 10**4) -> tuple:
    """A rational unit vector pointing (nearly) along ``v``.

    Exact normalisation when |v| is rational; otherwise an exact rational
    point of the unit sphere obtained through stereographic coordinates
    rounded to ``max_den``.  The result always satisfies ``is_unit`` exactly.
    """
    v = tuple(Fraction(a) for a in v)
    n2 = norm_sq(v)
    if n2 == 0:
        raise ValueError("zero vector has no direction")
    root = exact_sqrt(n2)
    if root is not None:
        return tuple(a / root for a in v)
    fl = [float(a) for a in v]
    nf = math.sqrt(sum(a * a for a in fl))
    u = [a / nf for a in fl]
    # project from the pole farthest from u for numerical stability
    sgn = 1 if u[0] >= 0 else -1
    t = [Fraction(ui / (1 + sgn * u[0])).limit_denominator(max_den) for ui in u[1:]]
    t2 = norm_sq(t)
    first = sgn * (1 - t2) / (1 + t2)
    rest = [2 * ti / (1 + t2) for ti in t]
    return (first, *rest)


# -- parsing ----------------------------------------------------------------


def parse_point(text: str) -> Point:
    """Parse ``"[3/4]"``, ``"3/4"``, ``"[0,3/10,2/5]"`` or Baire ``"[7,3|0]"``."""
    s = text.strip()
    if not s.startswith("["):
        return Line(parse_rat(s))
    if not s.endswith("]"):
        raise ValueError(f"unterminated point: {text!r}")
    body = s[1:-1].strip()
    if "|" in body:
        stem_txt, tail_txt = body.split("|", 1)
        stem = [int(v) for v in stem_txt.split(",") if v.strip()]
        return BairePoint(tuple(stem), int(tail_txt))
    parts = [parse_rat(v) for v in body.split(",")]
    if not parts:
        raise ValueError(f"empty point: {text!r}")
    return make_point(parts)


def parse_space(text: str):
    """``line`` | ``euclid:n`` | ``baire`` -> space tuple."""
    s = text.strip().lower()
    if s == "line":
        return ("line",)
    if s == "baire":
        return ("baire",)
    if s.startswith("euclid:"):
        n = int(s.split(":", 1)[1])
        if n < 2:
            raise ValueError("euclid dimension must be >= 2")
        return ("euclid", n)
    raise ValueError(f"unknown space {text!r}")


def origin(space) -> Point:
    if space[0] == "line":
        return Line(0)
    if space[0] == "euclid":
        return Euclid((0,) * space[1])
    return BairePoint((), 0)
