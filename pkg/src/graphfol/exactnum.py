"""Exact slope arithmetic on a torus.

A slope is the projective class of a primitive integer vector written in the
basis (h, h*) of the first homology of a boundary torus, where h is the
regular fibre class of the adjacent Seifert piece and h* a chosen dual class.
Horizontal slopes (those distinct from [h]) carry a rational coordinate tau
with slope = [tau*h - h*]; the fibre slope gets the sentinel VERTICAL.

All arithmetic is exact: rationals are fractions.Fraction throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class _Vertical:
    """Sentinel for the fibre slope's tau coordinate (the point at infinity)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "VERTICAL"


VERTICAL = _Vertical()

Rat = Fraction  # reduced arbitrary-precision rational; denominator > 0


def make_rat(text):
    """Parse "p/q" or "p" into a Fraction (exact, no float round trip)."""
    return Fraction(str(text))


@dataclass(frozen=True)
class Slope:
    """Primitive class [h_coeff*h + dual_coeff*h*], sign-normalized.

    Normalization: dual_coeff > 0, or dual_coeff == 0 and h_coeff > 0, so
    equality of values is equality of slopes.
    """

    h_coeff: int
    dual_coeff: int

    def __post_init__(self):
        a, b = self.h_coeff, self.dual_coeff
        if a == 0 and b == 0:
            raise ValueError("slope requires a nonzero class")
        g = gcd(abs(a), abs(b))
        a //= g
        b //= g
        if b < 0 or (b == 0 and a < 0):
            a, b = -a, -b
        object.__setattr__(self, "h_coeff", a)
        object.__setattr__(self, "dual_coeff", b)

    @staticmethod
    def vertical():
        return Slope(1, 0)

    @staticmethod
    def from_tau(tau):
        """Inverse of tau_of: the slope [tau*h - h*]."""
        t = Fraction(tau)
        return Slope(t.numerator, -t.denominator)

    def is_vertical(self):
        return self.dual_coeff == 0

    def __repr__(self):
        return f"[{self.h_coeff},{self.dual_coeff}]"


@dataclass(frozen=True)
class BasisChange:
    """2x2 integer matrix of determinant +-1 acting on slope coordinates.

    Columns are the images of the old basis vectors (h, h*) expressed in the
    new basis, so coordinate vectors transform by left multiplication.
    """

    m00: int
    m01: int
    m10: int
    m11: int

    def __post_init__(self):
        if self.det() not in (1, -1):
            raise ValueError("basis change must be unimodular")

    def det(self):
        return self.m00 * self.m11 - self.m01 * self.m10

    def apply(self, u, v):
        return (self.m00 * u + self.m01 * v, self.m10 * u + self.m11 * v)

    def inverse(self):
        d = self.det()
        return BasisChange(d * self.m11, -d * self.m01, -d * self.m10, d * self.m00)

    def compose(self, other):
        """self after other (matrix product self @ other)."""
        return BasisChange(
            self.m00 * other.m00 + self.m01 * other.m10,
            self.m00 * other.m01 + self.m01 * other.m11,
            self.m10 * other.m00 + self.m11 * other.m10,
            self.m10 * other.m01 + self.m11 * other.m11,
        )

    @staticmethod
    def identity():
        return BasisChange(1, 0, 0, 1)

    @staticmethod
    def shear(k):
        """h* -> h* + k*h on basis vectors; coordinates (u,v) -> (u + k*v, v)."""
        return BasisChange(1, k, 0, 1)

    def rows(self):
        return [[self.m00, self.m01], [self.m10, self.m11]]


def delta(a: Slope, b: Slope) -> int:
    """Minimal geometric intersection number of two slopes on one torus."""
    return abs(a.h_coeff * b.dual_coeff - a.dual_coeff * b.h_coeff)


def change_basis(s: Slope, m: BasisChange) -> Slope:
    u, v = m.apply(s.h_coeff, s.dual_coeff)
    return Slope(u, v)


def tau_of(s: Slope):
    """tau coordinate of a slope, with s = [tau*h - h*]; VERTICAL for [h]."""
    if s.dual_coeff == 0:
        return VERTICAL
    return Fraction(-s.h_coeff, s.dual_coeff)


def slope_of_tau(tau) -> Slope:
    return Slope.from_tau(tau)


def mobius_tau(m: BasisChange, tau):
    """Image of a tau coordinate under a basis change, VERTICAL-aware."""
    if tau is VERTICAL:
        s = Slope.vertical()
    else:
        s = Slope.from_tau(tau)
    return tau_of(change_basis(s, m))
