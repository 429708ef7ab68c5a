"""Countable dense subsets of the line and R^n, with deterministic snapping."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterator, Optional

from .metric import Line, Euclid, Point, coords_of, dist_cmp, make_point, Ordering


def enumerate_rationals(lo: Optional[Fraction] = None, hi: Optional[Fraction] = None) -> Iterator[Fraction]:
    """Reduced rationals in the open interval (lo, hi), by denominator then numerator.

    If a bound is missing the denominator slices are infinite, so the order
    becomes height max(|p|, q) first, then denominator, then numerator.
    """
    lo = None if lo is None else Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    if lo is not None and hi is not None:
        for q in itertools.count(1):
            p_lo = math.floor(lo * q) + 1
            p_hi = math.ceil(hi * q) - 1
            for p in range(p_lo, p_hi + 1):
                if math.gcd(p, q) == 1:
                    yield Fraction(p, q)
        return
    for h in itertools.count(1):
        for q in range(1, h + 1):
            for p in range(-h, h + 1):
                if max(abs(p), q) != h:
                    continue
                if math.gcd(p, q) != 1:
                    continue
                x = Fraction(p, q)
                if (lo is None or x > lo) and (hi is None or x < hi):
                    yield x


def first_in_open_interval(lo: Fraction, hi: Fraction, denominators) -> Optional[Fraction]:
    """First p/q in (lo, hi) over the given denominators, smallest p first."""
    for q in denominators:
        p = math.floor(lo * q) + 1
        if Fraction(p, q) < hi:
            return Fraction(p, q)
    return None


class DenseSet:
    """Membership plus a deterministic snap into open balls."""

    name = "dense"

    def contains(self, p: Point) -> bool:
        raise NotImplementedError

    def _snap_coord(self, x: Fraction, delta: Fraction) -> Optional[Fraction]:
        raise NotImplementedError

    def snap(self, p: Point, eps: Fraction) -> Optional[Point]:
        """An element of this set within distance < eps of p; p itself if a member.

        Returns None when no member is found within the search budget.
        """
        if eps <= 0:
            raise ValueError("snap radius must be positive")
        if self.contains(p):
            return p
        coords = coords_of(p)
        # per-coordinate tolerance eps/n keeps the Euclidean error below eps
        delta = Fraction(eps) / len(coords) if len(coords) > 1 else Fraction(eps)
        out = []
        for c in coords:
            s = self._snap_coord(c, delta)
            if s is None:
                return None
            out.append(s)
        q = make_point(out)
        assert dist_cmp(p, q, eps) is Ordering.LT
        return q


class RationalPoints(DenseSet):
    """Points with rational coordinates; every representable point is a member."""

    name = "Q"

    def contains(self, p):
        return isinstance(p, (Line, Euclid))

    def _snap_coord(self, x, delta):
        return x


class DyadicPoints(DenseSet):
    """Points whose coordinates are dyadic rationals p / 2^k, k <= max_level."""

    name = "dyadic"

    def __init__(self, max_level: int = 4096):
        self.max_level = max_level

    @staticmethod
    def _is_dyadic(x: Fraction) -> bool:
        d = x.denominator
        return d & (d - 1) == 0

    def contains(self, p):
        return isinstance(p, (Line, Euclid)) and all(self._is_dyadic(c) for c in coords_of(p))

    def _snap_coord(self, x, delta):
        if self._is_dyadic(x):
            return x
        return first_in_open_interval(x - delta, x + delta, (2**k for k in range(self.max_level + 1)))


def parse_dense(name: str) -> DenseSet:
    if name in ("Q", "rationals"):
        return RationalPoints()
    if name == "dyadic":
        return DyadicPoints()
    raise ValueError(f"unknown dense set {name!r}")
