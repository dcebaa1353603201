"""Realizability of translation-number tuples and detected tau-intervals.

Everything here is exact case analysis over the rationals.  The central
decision problem: given gamma_1..gamma_n in (0,1), an integer b, rationals
tau_1..tau_r and a subset J of indices, decide whether there are lifts of
circle homeomorphisms f_1..f_n, g_1..g_r with f_i conjugate to translation
by gamma_i, g_j of translation number tau_j (conjugate to a translation when
j is in J), whose composition is translation by b.

The decision splits by the number of integral tau entries and by where b
falls; the only nontrivial searches are at the extreme values of b, where a
finite coprime-pair scan settles the question.  The same scans drive the
interval computation tau_interval, which describes the full set of tau'
values for which the extended tuple is realizable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


@dataclass(frozen=True)
class JNInstance:
    J: frozenset
    b: int
    gammas: tuple
    taus: tuple

    def __post_init__(self):
        object.__setattr__(self, "J", frozenset(self.J))
        object.__setattr__(self, "gammas", tuple(Fraction(g) for g in self.gammas))
        object.__setattr__(self, "taus", tuple(Fraction(t) for t in self.taus))
        for g in self.gammas:
            if not (0 < g < 1):
                raise ValueError(f"gamma {g} outside the open unit interval")
        for j in self.J:
            if not (0 <= j < len(self.taus)):
                raise ValueError(f"J index {j} out of range")


@dataclass(frozen=True)
class ReducedInstance:
    """Normalized form: b absorbed the integer parts, J-indices with integral
    tau dropped, remaining entries reordered as (non-integral, zeros)."""

    b: int
    gammas: tuple
    taus_bar: tuple  # r1 non-integral fractional parts followed by s0 zeros
    r1: int
    s0: int
    r2: int
    J0: frozenset  # indices into taus_bar, all < r1

    def sigma(self):
        """Strictness-tagged value list for the extreme-b searches: gammas are
        strict, non-integral taus strict exactly when their index is in J0."""
        out = [(g, True) for g in self.gammas]
        out.extend((self.taus_bar[j], j in self.J0) for j in range(self.r1))
        return out


def normalize(instance: JNInstance) -> ReducedInstance:
    b = instance.b
    nonint = []
    s0 = 0
    for j, t in enumerate(instance.taus):
        fl = math.floor(t)
        b -= fl
        bar = t - fl
        if bar == 0:
            if j in instance.J:
                continue  # forced identity, drop
            s0 += 1
        else:
            nonint.append((bar, j in instance.J))
    r1 = len(nonint)
    taus_bar = tuple(v for v, _ in nonint) + (Fraction(0),) * s0
    J0 = frozenset(i for i, (_, inj) in enumerate(nonint) if inj)
    return ReducedInstance(
        b=b, gammas=instance.gammas, taus_bar=taus_bar,
        r1=r1, s0=s0, r2=r1 + s0, J0=J0,
    )


def _cover(values, slots):
    """Match each (value, strict) to a distinct slot with value < slot
    (strict) or value <= slot.  Thresholds are totally ordered, so matching
    the most demanding value with the largest slot is optimal.  Returns the
    assignment (slot per value, in input order) or None."""
    order = sorted(range(len(values)), key=lambda i: (values[i][0], values[i][1]), reverse=True)
    ss = sorted(slots, reverse=True)
    assigned = [None] * len(values)
    for i, s in zip(order, ss):
        v, strict = values[i]
        if (v < s) if strict else (v <= s):
            assigned[i] = s
        else:
            return None
    return assigned


def _b1_scan(values):
    """Search coprime 0 < A < N with the multiset (A/N, (N-A)/N, 1/N,...,1/N)
    of len(values) slots dominating `values`.  Returns (A, N, assignment) or
    None.  Any feasible N satisfies 1/N >= min value, which bounds the scan."""
    k = len(values)
    if k < 3:
        raise ValueError("extreme-b scan needs at least three entries")
    vmin = min(v for v, _ in values)
    nmax = max(2, math.ceil(1 / vmin) + 1)
    for N in range(2, nmax + 1):
        one = Fraction(1, N)
        seen = set()
        for A in range(1, N):
            if math.gcd(A, N) != 1 or min(A, N - A) in seen:
                continue
            seen.add(min(A, N - A))
            slots = [Fraction(A, N), Fraction(N - A, N)] + [one] * (k - 2)
            assignment = _cover(values, slots)
            if assignment is not None:
                return A, N, assignment
    return None


@dataclass(frozen=True)
class JNDecision:
    realizable: bool
    reason: str
    witness: Optional[tuple] = None  # (A, N, assignment) from the extreme-b scan

    def __bool__(self):
        return self.realizable


def decide_realizable(instance: JNInstance) -> JNDecision:
    red = normalize(instance)
    n = len(red.gammas)
    b = red.b
    total = n + red.r1 + red.s0

    if total <= 1:
        target = sum(red.gammas, Fraction(0)) + sum(red.taus_bar, Fraction(0))
        ok = target == b
        return JNDecision(ok, "degenerate: composition forces the sum to match b")

    if red.s0 > 0:
        ok = 2 - red.s0 <= b <= total - 2
        return JNDecision(ok, f"integral entries present: need {2 - red.s0} <= b <= {total - 2}")

    k = n + red.r1
    if k == 2:
        target = sum(red.gammas, Fraction(0)) + sum(red.taus_bar, Fraction(0))
        ok = target == b
        return JNDecision(ok, "two entries: realizable exactly when the sum equals b")

    if b < 1 or b > k - 1:
        return JNDecision(False, f"b outside [1, {k - 1}]")
    if 2 <= b <= k - 2:
        return JNDecision(True, f"interior b: 2 <= {b} <= {k - 2}")

    sigma = red.sigma()
    if b == 1:
        hit = _b1_scan(sigma)
        if hit is None:
            return JNDecision(False, "b = 1: no coprime pair dominates the entries")
        return JNDecision(True, "b = 1: coprime witness found", hit)
    # b == k - 1: dual to b == 1 with every entry reflected
    dual = [(1 - v, s) for v, s in sigma]
    hit = _b1_scan(dual)
    if hit is None:
        return JNDecision(False, "b = n+r-1: dual scan found no coprime pair")
    return JNDecision(True, "b = n+r-1: coprime witness found (dual scan)", hit)


def jn_realizable(J, b, gammas, taus) -> bool:
    return decide_realizable(JNInstance(J=frozenset(J), b=b, gammas=tuple(gammas), taus=tuple(taus))).realizable


# ---------------------------------------------------------------------------
# Minimal-denominator rationals


def _simplest_nonneg(lo, hi, lo_open, hi_open):
    """Simplest fraction in an interval with 0 <= lo; hi may be None (+inf)."""
    fl = math.floor(lo)
    if lo == fl and not lo_open:
        n = fl
    else:
        n = fl + 1
    if hi is None or n < hi or (n == hi and not hi_open):
        return Fraction(n)
    # no integer inside: both endpoints within (fl, fl + 1]
    a = lo - fl
    b = hi - fl
    # invert the fractional window: x in (a, b) <=> 1/x in (1/b, 1/a)
    inner = _simplest_nonneg(1 / b, None if a == 0 else 1 / a, hi_open, lo_open)
    return fl + 1 / inner


def simplest_in_interval(lo, hi, lo_open=True, hi_open=True) -> Fraction:
    """The minimal-denominator fraction in the interval, deterministic.

    Ties on the denominator cannot occur except among integers, where the one
    of smallest absolute value (preferring the positive) is returned.
    """
    lo = Fraction(lo)
    hi = Fraction(hi)
    if lo > hi or (lo == hi and (lo_open or hi_open)):
        raise ValueError("empty interval")
    if (lo < 0 or (lo == 0 and not lo_open)) and (hi > 0 or (hi == 0 and not hi_open)):
        return Fraction(0)
    if hi < 0 or (hi == 0 and hi_open):
        return -_simplest_nonneg(-hi, -lo, hi_open, lo_open)
    return _simplest_nonneg(lo, hi, lo_open, hi_open)


def min_denominator_fraction(lo, hi, lo_open=True, hi_open=True):
    """Spec'd front end of simplest_in_interval returning (numerator, denominator)."""
    f = simplest_in_interval(lo, hi, lo_open, hi_open)
    return f.numerator, f.denominator


# ---------------------------------------------------------------------------
# Detected tau-intervals


@dataclass(frozen=True)
class TauIntervalResult:
    """T = [eta, xi] (a point when eta == xi) and its strong subinterval."""

    eta: Fraction
    xi: Fraction
    str_lo: Fraction
    str_lo_closed: bool
    str_hi: Fraction
    str_hi_closed: bool
    m0: Optional[int] = None
    m1: Optional[int] = None

    @property
    def is_point(self):
        return self.eta == self.xi

    def contains(self, tau) -> bool:
        return self.eta <= Fraction(tau) <= self.xi

    def contains_strong(self, tau) -> bool:
        t = Fraction(tau)
        if t < self.str_lo or t > self.str_hi:
            return False
        if t == self.str_lo and not self.str_lo_closed:
            return False
        if t == self.str_hi and not self.str_hi_closed:
            return False
        return True

    def describe(self):
        lo = "[" if True else "("
        sl = "[" if self.str_lo_closed else "("
        sh = "]" if self.str_hi_closed else ")"
        return (f"T = [{self.eta}, {self.xi}]; "
                f"T_str = {sl}{self.str_lo}, {self.str_hi}{sh}")


def _endpoint_extension(values):
    """Largest leftover slot value C/N over feasible extreme-b covers of
    `values` by the (len+1)-slot multiset, or None when no extension exists.

    For two entries the coprime family is unbounded in N once the single 1/N
    slot is handed to the new coordinate; the best such pair is governed by
    the minimal denominator fraction in the induced window.
    """
    k = len(values)
    best = None
    vmin = min(v for v, _ in values)
    nmax = math.floor(1 / vmin)
    for N in range(2, nmax + 1):
        one = Fraction(1, N)
        for A in range(1, N):
            if math.gcd(A, N) != 1:
                continue
            base = [Fraction(A, N), Fraction(N - A, N), one]
            for c_slot in set(base):
                slots = [Fraction(A, N), Fraction(N - A, N)] + [one] * (k - 1)
                slots.remove(c_slot)
                if _cover(values, slots) is not None:
                    if best is None or c_slot > best:
                        best = c_slot
    if best is None and k == 2:
        # the two entries are covered by A/N and (N-A)/N alone; the window is
        # v1 <* A/N <* 1 - v2 with strictness inherited from the entries
        (v1, s1), (v2, s2) = values
        lo, hi = v1, 1 - v2
        if lo < hi or (lo == hi and not s1 and not s2):
            f = simplest_in_interval(lo, hi, lo_open=s1, hi_open=s2)
            best = Fraction(1, f.denominator)
    return best


def tau_interval(gammas, J=frozenset(), taus_fixed=()) -> TauIntervalResult:
    """Exact detected interval for the free coordinate.

    T is the set of tau' making (J; 0; gammas; taus_fixed, tau') realizable,
    and T_str the subset realizable with tau' conjugacy forced.  J indexes
    into taus_fixed (0-based).
    """
    inst = JNInstance(J=frozenset(J), b=0, gammas=tuple(gammas), taus=tuple(taus_fixed))
    red = normalize(inst)
    n = len(red.gammas)
    b0 = red.b

    if n + red.r1 + red.s0 <= 1:
        point = -(sum(red.gammas, Fraction(0)) + sum(inst.taus, Fraction(0)))
        return TauIntervalResult(point, point, point, True, point, True)

    m0 = b0 - (n + red.r1 + red.s0 - 1)
    m1 = b0 + red.s0 - 1

    if red.s0 > 0:
        return TauIntervalResult(
            Fraction(m0), Fraction(m1),
            Fraction(m0), False, Fraction(m1), False,
            m0=m0, m1=m1,
        )

    sigma = red.sigma()
    right = _endpoint_extension(sigma)
    left = _endpoint_extension([(1 - v, s) for v, s in sigma])
    eta = Fraction(m0) - left if left is not None else Fraction(m0)
    xi = Fraction(m1) + right if right is not None else Fraction(m1)

    if eta == xi:
        # degenerate strong point: the lone strongly detected coordinate
        return TauIntervalResult(eta, xi, eta, True, xi, True, m0=m0, m1=m1)
    return TauIntervalResult(eta, xi, eta, False, xi, False, m0=m0, m1=m1)
