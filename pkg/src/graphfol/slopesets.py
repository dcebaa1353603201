"""Exact sets of slopes on one torus: tau-intervals plus the fibre point.

A slope set is a finite union of intervals on the tau-line (endpoints
rational or infinite, each endpoint open or closed) together with a flag for
the vertical slope, which plays the role of the point at infinity closing
the line into the slope circle.  Unimodular basis changes act by Moebius
maps; an interval through the pole wraps into two rays plus the vertical
point, so the representation is closed under transport.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exactnum import BasisChange, Slope, tau_of, VERTICAL

NEG_INF = object()
POS_INF = object()


def _lt(x, y):
    if x is NEG_INF:
        return y is not NEG_INF
    if x is POS_INF:
        return False
    if y is NEG_INF:
        return False
    if y is POS_INF:
        return True
    return x < y


@dataclass(frozen=True)
class Interval:
    lo: object  # Fraction or NEG_INF
    lo_open: bool
    hi: object  # Fraction or POS_INF
    hi_open: bool

    def is_empty(self):
        if self.lo is POS_INF or self.hi is NEG_INF:
            return True
        if self.lo is NEG_INF or self.hi is POS_INF:
            return False
        if self.lo > self.hi:
            return True
        if self.lo == self.hi:
            return self.lo_open or self.hi_open
        return False

    def contains(self, t):
        t = Fraction(t)
        if self.lo is not NEG_INF:
            if t < self.lo or (t == self.lo and self.lo_open):
                return False
        if self.hi is not POS_INF:
            if t > self.hi or (t == self.hi and self.hi_open):
                return False
        return True

    def is_point(self):
        return self.lo is not NEG_INF and self.lo == self.hi

    def describe(self):
        l = "(-inf" if self.lo is NEG_INF else ("(" if self.lo_open else "[") + str(self.lo)
        h = "+inf)" if self.hi is POS_INF else str(self.hi) + (")" if self.hi_open else "]")
        return f"{l}, {h}"


def point(t) -> Interval:
    t = Fraction(t)
    return Interval(t, False, t, False)


def _merge(intervals):
    """Canonical sorted disjoint form; adjacent intervals meeting at a shared
    attained endpoint are merged."""
    ivs = [i for i in intervals if not i.is_empty()]

    def key(i):
        if i.lo is NEG_INF:
            return (0, Fraction(0), 0)
        return (1, i.lo, 1 if i.lo_open else 0)

    ivs.sort(key=key)
    out = []
    for iv in ivs:
        if out:
            last = out[-1]
            if last.hi is POS_INF:
                touch = True
            elif iv.lo is NEG_INF:
                touch = True
            elif _lt(iv.lo, last.hi):
                touch = True
            elif iv.lo == last.hi and not (iv.lo_open and last.hi_open):
                touch = True
            else:
                touch = False
            if touch:
                if last.hi is POS_INF or iv.hi is POS_INF:
                    hi, hi_open = POS_INF, True
                elif _lt(last.hi, iv.hi):
                    hi, hi_open = iv.hi, iv.hi_open
                elif last.hi == iv.hi:
                    hi, hi_open = iv.hi, iv.hi_open and last.hi_open
                else:
                    hi, hi_open = last.hi, last.hi_open
                out[-1] = Interval(last.lo, last.lo_open, hi, hi_open)
                continue
        out.append(iv)
    return tuple(out)


@dataclass(frozen=True)
class SlopeSet:
    intervals: tuple = ()
    vertical: bool = False

    def __post_init__(self):
        object.__setattr__(self, "intervals", _merge(self.intervals))

    @staticmethod
    def empty():
        return SlopeSet()

    @staticmethod
    def full():
        return SlopeSet((Interval(NEG_INF, True, POS_INF, True),), vertical=True)

    @staticmethod
    def full_line():
        return SlopeSet((Interval(NEG_INF, True, POS_INF, True),), vertical=False)

    @staticmethod
    def of_point(t):
        return SlopeSet((point(t),))

    @staticmethod
    def of_vertical():
        return SlopeSet((), vertical=True)

    def is_empty(self):
        return not self.intervals and not self.vertical

    def contains(self, slope_or_tau):
        if isinstance(slope_or_tau, Slope):
            t = tau_of(slope_or_tau)
        else:
            t = slope_or_tau
        if t is VERTICAL:
            return self.vertical
        return any(iv.contains(t) for iv in self.intervals)

    def union(self, other: "SlopeSet") -> "SlopeSet":
        return SlopeSet(self.intervals + other.intervals, self.vertical or other.vertical)

    def intersect(self, other: "SlopeSet") -> "SlopeSet":
        out = []
        for a in self.intervals:
            for b in other.intervals:
                lo, lo_open = _max_lo(a, b)
                hi, hi_open = _min_hi(a, b)
                out.append(Interval(lo, lo_open, hi, hi_open))
        return SlopeSet(tuple(out), self.vertical and other.vertical)

    def without_vertical(self):
        return SlopeSet(self.intervals, False)

    def transport(self, m: BasisChange) -> "SlopeSet":
        """Image under a unimodular change of torus basis."""
        a, b = m.m00, -m.m01
        c, d = -m.m10, m.m11

        def g(t):
            return (a * t + b) / (c * t + d)

        out = []
        vert = False
        if self.vertical:
            if c == 0:
                vert = True
            else:
                out.append(point(Fraction(a, c)))
        if c == 0:
            slope = Fraction(a, d)
            for iv in self.intervals:
                lo = g(iv.lo) if iv.lo not in (NEG_INF, POS_INF) else iv.lo
                hi = g(iv.hi) if iv.hi not in (NEG_INF, POS_INF) else iv.hi
                if slope > 0:
                    out.append(Interval(lo, iv.lo_open, hi, iv.hi_open))
                else:
                    lo2 = NEG_INF if hi is POS_INF else hi
                    hi2 = POS_INF if lo is NEG_INF else lo
                    out.append(Interval(lo2, iv.hi_open, hi2, iv.lo_open))
            return SlopeSet(tuple(out), vert)

        pole = Fraction(-d, c)
        lim = Fraction(a, c)  # value approached at +-infinity
        increasing = (a * d - b * c) > 0

        def end_image(t, from_right):
            """One-sided image of an endpoint of a pole-free piece.  Infinite
            tau approaches the open limit `lim`; the pole maps to the
            appropriate infinite end of the line."""
            if t is NEG_INF or t is POS_INF:
                return lim, True
            if t == pole:
                if from_right:  # t -> pole+
                    return (NEG_INF, True) if increasing else (POS_INF, True)
                return (POS_INF, True) if increasing else (NEG_INF, True)
            return g(t), None  # openness carried from the original endpoint

        for iv in self.intervals:
            if iv.contains(pole):
                vert = True
            pieces = []
            # split at the pole
            below = Interval(iv.lo, iv.lo_open, pole, True)
            above = Interval(pole, True, iv.hi, iv.hi_open)
            for side in (below, above):
                inter_lo, inter_lo_open = _max_lo(iv, side)
                inter_hi, inter_hi_open = _min_hi(iv, side)
                piece = Interval(inter_lo, inter_lo_open, inter_hi, inter_hi_open)
                if not piece.is_empty():
                    pieces.append(piece)
            for piece in pieces:
                lv, lo_forced = end_image(piece.lo, True)
                hv, hi_forced = end_image(piece.hi, False)
                lo_open = lo_forced if lo_forced is not None else piece.lo_open
                hi_open = hi_forced if hi_forced is not None else piece.hi_open
                if increasing:
                    out.append(Interval(lv, lo_open, hv, hi_open))
                else:
                    out.append(Interval(hv, hi_open, lv, lo_open))
        return SlopeSet(tuple(out), vert)

    def sample_taus(self, per_interval=3):
        """Deterministic rational representatives, interior points first.
        Non-integral points are preferred so that generic choices avoid
        distance-one fillings."""
        seen = []

        def add(t):
            if t not in seen:
                seen.append(t)

        for iv in self.intervals:
            cands = []
            if iv.lo is NEG_INF and iv.hi is POS_INF:
                cands = [Fraction(1, 2), Fraction(-1, 2), Fraction(0)]
            elif iv.lo is NEG_INF:
                h = iv.hi
                cands = [h - Fraction(1, 2), h - 1, h] if not iv.hi_open else [h - Fraction(1, 2), h - 1]
            elif iv.hi is POS_INF:
                l = iv.lo
                cands = [l + Fraction(1, 2), l + 1, l] if not iv.lo_open else [l + Fraction(1, 2), l + 1]
            else:
                mid = (iv.lo + iv.hi) / 2
                third = iv.lo + (iv.hi - iv.lo) / 3
                twothird = iv.lo + 2 * (iv.hi - iv.lo) / 3
                cands = [mid, third, twothird]
                if not iv.lo_open:
                    cands.append(iv.lo)
                if not iv.hi_open:
                    cands.append(iv.hi)
            picked = 0
            # non-integers first
            for t in [x for x in cands if Fraction(x).denominator > 1] + [x for x in cands if Fraction(x).denominator == 1]:
                if picked >= per_interval:
                    break
                if iv.contains(t):
                    add(Fraction(t))
                    picked += 1
        return seen

    def describe(self):
        parts = [iv.describe() for iv in self.intervals]
        if self.vertical:
            parts.append("{vertical}")
        return " u ".join(parts) if parts else "{}"


def _max_lo(a: Interval, b: Interval):
    if a.lo is NEG_INF:
        return b.lo, b.lo_open
    if b.lo is NEG_INF:
        return a.lo, a.lo_open
    if a.lo > b.lo:
        return a.lo, a.lo_open
    if b.lo > a.lo:
        return b.lo, b.lo_open
    return a.lo, a.lo_open or b.lo_open

def _min_hi(a: Interval, b: Interval):
    if a.hi is POS_INF:
        return b.hi, b.hi_open
    if b.hi is POS_INF:
        return a.hi, a.hi_open
    if a.hi < b.hi:
        return a.hi, a.hi_open
    if b.hi < a.hi:
        return b.hi, b.hi_open
    return a.hi, a.hi_open or b.hi_open


@dataclass(frozen=True)
class DetectedSlopeSet:
    """Detected and strongly-detected slopes on one torus side."""

    det: SlopeSet = field(default_factory=SlopeSet.empty)
    strong: SlopeSet = field(default_factory=SlopeSet.empty)

    def is_empty(self):
        return self.det.is_empty()

    def usable(self, need_strong: bool) -> SlopeSet:
        return self.strong if need_strong else self.det

    def transport(self, m: BasisChange) -> "DetectedSlopeSet":
        return DetectedSlopeSet(self.det.transport(m), self.strong.transport(m))

    def union(self, other):
        return DetectedSlopeSet(self.det.union(other.det), self.strong.union(other.strong))
