"""Seifert pieces: longitudes, Dehn fillings, and the slope-detection rules.

A piece is Seifert fibred over a punctured sphere (base_orientable) or a
punctured projective plane, with exceptional fibres (a_i, b_i), 0 < b_i < a_i.
Each boundary torus carries the basis (h, h_j*) where h is the fibre class
and h_j* the dual class carried by the j-th boundary generator of the
standard presentation.  Slopes are written in that basis throughout.

The twisted I-bundle over the Klein bottle has two Seifert structures; both
are consulted wherever detection is queried, with the convention that a
piece declared with Moebius-band base uses (h0, h1) as its boundary basis,
h1 being the fibre of the disk structure.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactnum import VERTICAL, BasisChange, Slope, delta, tau_of
from .homology import INFINITE, Cokernel
from .jnkernel import jn_realizable, tau_interval


@dataclass(frozen=True)
class SeifertPiece:
    base_orientable: bool
    exceptional: tuple  # ((a_i, b_i), ...)
    boundary_count: int

    def __post_init__(self):
        exc = tuple((int(a), int(b)) for a, b in self.exceptional)
        object.__setattr__(self, "exceptional", exc)
        for a, b in exc:
            if a < 2 or not (0 < b < a):
                raise ValueError(f"bad Seifert invariant ({a},{b}): need 0 < b < a, a >= 2")
            if math.gcd(a, b) != 1:
                raise ValueError(f"Seifert invariant ({a},{b}) not coprime")
        if self.boundary_count < 1:
            raise ValueError("piece needs at least one boundary torus")

    @property
    def n(self):
        return len(self.exceptional)

    @property
    def gammas(self):
        return tuple(Fraction(b, a) for a, b in self.exceptional)

    def is_twisted_i_bundle(self):
        """Either Seifert presentation of the twisted I-bundle over the Klein bottle."""
        if self.boundary_count != 1:
            return False
        if not self.base_orientable:
            return self.n == 0
        return sorted(self.exceptional) == [(2, 1), (2, 1)]

    def solid_torus_profile(self):
        return self.base_orientable and self.boundary_count == 1 and self.n <= 1

    def t2xi_profile(self):
        return self.base_orientable and self.boundary_count == 2 and self.n == 0


def nt_piece(t: int) -> SeifertPiece:
    """Disk-base piece with fibre fractions 1/t and (t-1)/t; t = 2 is the
    twisted I-bundle over the Klein bottle in its orientable-base structure."""
    if t < 2:
        raise ValueError("t must be at least 2")
    return SeifertPiece(base_orientable=True, exceptional=((t, 1), (t, t - 1)), boundary_count=1)


# conversion between the two bases of the twisted I-bundle: a slope written
# in the Moebius-structure basis (h0, h1) re-expressed in the disk-structure
# basis (h, h*), where h0 = h + h* and h1 = h.
N2_Q_TO_P = BasisChange(1, 1, 1, 0)
N2_P_TO_Q = N2_Q_TO_P.inverse()
# the Moebius-structure fibre h0 seen in the disk-structure basis
N2_H0_IN_P = Slope(1, 1)


def piece_homology(piece: SeifertPiece) -> Cokernel:
    """H_1 of the piece from the standard presentation.  Generator order:
    y_1..y_n, x_1..x_r, h, then z for non-orientable base."""
    n, r = piece.n, piece.boundary_count
    gens = n + r + 1 + (0 if piece.base_orientable else 1)
    h = n + r
    rows = []
    for i, (a, b) in enumerate(piece.exceptional):
        row = [0] * gens
        row[i] = a
        row[h] = -b
        rows.append(row)
    surface = [0] * gens
    for i in range(n + r):
        surface[i] = 1
    if not piece.base_orientable:
        surface[n + r + 1] = 2
        torsion = [0] * gens
        torsion[h] = 2
        rows.append(torsion)
    rows.append(surface)
    return Cokernel(rows, gens)


def boundary_class_vector(piece: SeifertPiece, boundary_index: int, slope: Slope):
    n, r = piece.n, piece.boundary_count
    gens = n + r + 1 + (0 if piece.base_orientable else 1)
    vec = [0] * gens
    vec[n + boundary_index] = slope.dual_coeff
    vec[n + r] = slope.h_coeff
    return vec


def rational_longitude(piece: SeifertPiece):
    """The torsion boundary slope and its order in H_1, for one-boundary pieces."""
    if piece.boundary_count != 1:
        raise ValueError("rational longitude defined for one boundary torus")
    if piece.base_orientable:
        q = 1
        for a, _ in piece.exceptional:
            q *= a
        p = sum(Fraction(q * b, a) for a, b in piece.exceptional)
        assert p.denominator == 1
        lam = Slope(int(p), q)
    else:
        lam = Slope.vertical()
    order = piece_homology(piece).element_order(boundary_class_vector(piece, 0, lam))
    assert order is not INFINITE
    return lam, order


# ---------------------------------------------------------------------------
# Dehn filling


class FillKind(enum.Enum):
    PIECE = "piece"
    SOLID_TORUS = "solid_torus"
    T2XI = "t2xi"
    CLOSED = "closed"
    LENS_SUM = "lens_sum"


@dataclass(frozen=True)
class ClosedSeifert:
    """Closed Seifert manifold: relations a_i y_i = b_i h, sum(y) (+2z) + b_int*h = 0."""

    base_orientable: bool
    exceptional: tuple
    b_int: int

    @property
    def gammas(self):
        return tuple(Fraction(b, a) for a, b in self.exceptional)

    def homology(self) -> Cokernel:
        n = len(self.exceptional)
        gens = n + 1 + (0 if self.base_orientable else 1)
        rows = []
        for i, (a, b) in enumerate(self.exceptional):
            row = [0] * gens
            row[i] = a
            row[n] = -b
            rows.append(row)
        surface = [0] * gens
        for i in range(n):
            surface[i] = 1
        surface[n] = self.b_int
        if not self.base_orientable:
            surface[n + 1] = 2
            torsion = [0] * gens
            torsion[n] = 2
            rows.append(torsion)
        rows.append(surface)
        return Cokernel(rows, gens)

    def homology_order(self):
        return self.homology().order()

    def admits_ctf(self):
        """Co-oriented taut foliation on the closed manifold.

        Spherical-base rational homology spheres admit one exactly when a
        horizontal foliation exists, i.e. when the fibre-translation data is
        realizable; projective-plane-base rational homology spheres never do.
        Infinite first homology means positive Betti number, where existence
        is automatic.
        """
        if self.homology_order() is INFINITE:
            return True
        if not self.base_orientable:
            return False
        return jn_realizable(frozenset(), -self.b_int, self.gammas, ())


@dataclass(frozen=True)
class FilledResult:
    kind: FillKind
    piece: Optional[SeifertPiece] = None
    index_map: Optional[dict] = None  # old boundary index -> new index
    tau_shift_boundary: Optional[int] = None  # old index carrying the shift
    tau_shift: int = 0
    closed: Optional[ClosedSeifert] = None
    lens_orders: tuple = ()
    open_summands: int = 0
    meridian: Optional[Slope] = None  # for solid torus, in the remaining basis


def dehn_fill(piece: SeifertPiece, boundary_index: int, filling: Slope) -> FilledResult:
    """Fill one boundary torus along a slope written in that torus's basis.

    Distance-d horizontal fillings add an exceptional fibre of multiplicity d
    (absorbed when d = 1); the integer from normalizing its Seifert invariant
    moves into the dual class of the lowest-index surviving boundary and is
    reported as a tau shift there.  Vertical filling decomposes the piece
    into a connected sum of lens spaces (plus a nonseparating sphere factor
    for non-orientable base).
    """
    r = piece.boundary_count
    if not (0 <= boundary_index < r):
        raise ValueError("invalid boundary index")

    if filling.is_vertical():
        orders = tuple(a for a, _ in piece.exceptional)
        if not piece.base_orientable:
            orders = orders + (0,)
        return FilledResult(kind=FillKind.LENS_SUM, lens_orders=orders, open_summands=r - 1)

    c, d = filling.h_coeff, filling.dual_coeff  # d > 0 by slope normalization
    b_n = (-c) % d
    k = ((-c) - b_n) // d
    new_exc = piece.exceptional + (((d, b_n),) if d >= 2 else ())

    if r == 1:
        return FilledResult(
            kind=FillKind.CLOSED,
            closed=ClosedSeifert(piece.base_orientable, new_exc, k),
        )

    remaining = [j for j in range(r) if j != boundary_index]
    designated = remaining[0]
    index_map = {old: new for new, old in enumerate(remaining)}
    new_piece = SeifertPiece(piece.base_orientable, new_exc, r - 1)

    if new_piece.solid_torus_profile():
        mini_q = 1
        for a, _ in new_piece.exceptional:
            mini_q *= a
        mini_p = sum(Fraction(mini_q * b, a) for a, b in new_piece.exceptional)
        meridian = Slope(int(mini_p), mini_q)
        return FilledResult(
            kind=FillKind.SOLID_TORUS,
            piece=new_piece,
            index_map=index_map,
            tau_shift_boundary=designated,
            tau_shift=k,
            meridian=meridian,
        )
    kind = FillKind.T2XI if new_piece.t2xi_profile() else FillKind.PIECE
    return FilledResult(
        kind=kind,
        piece=new_piece,
        index_map=index_map,
        tau_shift_boundary=designated,
        tau_shift=k,
    )


def transported_slope(result: FilledResult, old_index: int, slope: Slope) -> Slope:
    """Re-express a slope on a surviving boundary in the filled piece's basis."""
    if result.index_map is None or old_index not in result.index_map:
        raise ValueError("boundary did not survive the filling")
    if old_index == result.tau_shift_boundary and result.tau_shift:
        u, v = slope.h_coeff, slope.dual_coeff
        return Slope(u - result.tau_shift * v, v)
    return slope


# ---------------------------------------------------------------------------
# Detection


@dataclass(frozen=True)
class DetectionVerdict:
    detected: bool
    strongly_on: frozenset

    def __bool__(self):
        return self.detected


def _detect_in_structure(base_orientable, gammas, J, alphas):
    """Joint and plain detection inside one Seifert structure.  Returns
    (plain, joint) booleans, or None when a J-index is vertical here."""
    v = sum(1 for a in alphas if a.is_vertical())
    for j in J:
        if alphas[j].is_vertical():
            return None
    if v == 0:
        if not base_orientable:
            return False, False
        taus = [tau_of(a) for a in alphas]
        plain = jn_realizable(frozenset(), 0, gammas, taus)
        joint = plain if not J else jn_realizable(frozenset(J), 0, gammas, taus)
        return plain, joint
    ok = v >= 1 if not base_orientable else v >= 2
    return ok, ok


def detect_tuple(piece: SeifertPiece, J, alphas) -> DetectionVerdict:
    """Decide detection of a boundary slope tuple.

    `detected` answers plain detection of the tuple; `strongly_on` is J when
    the tuple is additionally detected with linear behaviour required on
    every J-index, else empty.  Raises when a J-slope is the fibre slope (in
    every available structure).
    """
    J = frozenset(J)
    alphas = tuple(alphas)
    if len(alphas) != piece.boundary_count:
        raise ValueError("slope tuple length mismatch")
    for j in J:
        if not (0 <= j < len(alphas)):
            raise ValueError("J index out of range")

    views = [(piece.base_orientable, piece.gammas, alphas)]
    if piece.is_twisted_i_bundle():
        if piece.base_orientable:
            # add the Moebius-band view: vertical there = the class h0
            conv = tuple(Slope(*N2_P_TO_Q.apply(a.h_coeff, a.dual_coeff)) for a in alphas)
            views.append((False, (), conv))
        else:
            conv = tuple(Slope(*N2_Q_TO_P.apply(a.h_coeff, a.dual_coeff)) for a in alphas)
            views.append((True, (Fraction(1, 2), Fraction(1, 2)), conv))

    plain = joint = False
    usable = False
    for base_orientable, gammas, view in views:
        res = _detect_in_structure(base_orientable, gammas, J, view)
        if res is None:
            continue
        usable = True
        plain = plain or res[0]
        joint = joint or res[1]
    if not usable:
        raise ValueError("J contains a vertical index")
    return DetectionVerdict(detected=plain, strongly_on=J if joint else frozenset())


def detects(piece: SeifertPiece, J, alphas) -> bool:
    """Joint detection of (J; alphas): every J-index strongly, the rest plainly."""
    J = frozenset(J)
    verdict = detect_tuple(piece, J, alphas)
    return verdict.detected and (not J or verdict.strongly_on == J)


class NLSStatus(enum.Enum):
    LSPACE = "LSPACE"
    NOT_LSPACE = "NOT_LSPACE"
    NOT_QHS = "NOT_QHS"


def nls_status(piece: SeifertPiece, J, alphas, t: int) -> NLSStatus:
    """Status of the family of manifolds obtained by filling the J-slopes and
    attaching the order-t plumbing piece along its rational longitude on the
    remaining boundaries.  The status is uniform over the family and over t:
    whenever it is LSPACE for one admissible t it is LSPACE for all of them.
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    J = frozenset(J)
    alphas = tuple(alphas)
    for j in J:
        if alphas[j].is_vertical():
            raise ValueError("J-slopes must be horizontal")

    views = [(piece.base_orientable, piece.gammas, alphas)]
    if piece.is_twisted_i_bundle():
        if piece.base_orientable:
            conv = tuple(Slope(*N2_P_TO_Q.apply(a.h_coeff, a.dual_coeff)) for a in alphas)
            views.append((False, (), conv))
        else:
            conv = tuple(Slope(*N2_Q_TO_P.apply(a.h_coeff, a.dual_coeff)) for a in alphas)
            views.append((True, (Fraction(1, 2), Fraction(1, 2)), conv))

    detected = False
    for base_orientable, gammas, view in views:
        v = sum(1 for a in view if a.is_vertical())
        if (not base_orientable and v >= 1) or (base_orientable and v >= 2):
            return NLSStatus.NOT_QHS
        res = _detect_in_structure(base_orientable, gammas, J, view)
        if res is not None and res[1]:
            detected = True
    return NLSStatus.NOT_LSPACE if detected else NLSStatus.LSPACE
