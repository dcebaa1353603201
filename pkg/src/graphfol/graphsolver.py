"""Graph manifolds of Seifert pieces: homology, gluing coherence, decision.

A manifold is a connected graph whose vertices are Seifert pieces and whose
edges are tori glued by unimodular matrices; matrices send slope coordinates
on the `from` side to the `to` side.  Rational homology spheres force the
graph to be a tree, which the decision procedures exploit: detected slope
sets are propagated from the leaves to a root, feasibility is read off at
the root, and witnesses are extracted by fixing edges one at a time on the
way back down.  Every witness is re-verified by the definitional coherence
check before it is reported.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exactnum import VERTICAL, BasisChange, Slope, change_basis, delta, tau_of
from .homology import INFINITE, Cokernel
from .jnkernel import tau_interval
from .seifert import (
    FillKind,
    SeifertPiece,
    dehn_fill,
    detect_tuple,
    detects,
    nt_piece,
    rational_longitude,
)
from .slopesets import (
    NEG_INF,
    POS_INF,
    DetectedSlopeSet,
    Interval,
    SlopeSet,
)


class GraphError(ValueError):
    pass


class NotQHSError(GraphError):
    """Positive first Betti number: taut foliations, left-orders and
    non-L-space status all hold automatically there, outside this solver."""


@dataclass(frozen=True)
class Edge:
    piece_a: int
    bdry_a: int
    piece_b: int
    bdry_b: int
    matrix: BasisChange  # slope coordinates on side a -> side b


@dataclass(frozen=True)
class GraphManifold:
    pieces: tuple
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "edges", tuple(self.edges))
        self._validate()

    def _validate(self):
        used = set()
        for e_idx, e in enumerate(self.edges):
            for p, b in ((e.piece_a, e.bdry_a), (e.piece_b, e.bdry_b)):
                if not (0 <= p < len(self.pieces)):
                    raise GraphError(f"edge {e_idx}: piece index {p} out of range")
                if not (0 <= b < self.pieces[p].boundary_count):
                    raise GraphError(f"edge {e_idx}: boundary {b} out of range for piece {p}")
                if (p, b) in used:
                    raise GraphError(f"boundary ({p},{b}) used twice")
                used.add((p, b))
        for p, piece in enumerate(self.pieces):
            for b in range(piece.boundary_count):
                if (p, b) not in used:
                    raise GraphError(f"boundary ({p},{b}) is unused (fill it or glue it)")
            if piece.solid_torus_profile():
                raise GraphError(f"piece {p} is a solid torus, not a valid piece")
            if piece.t2xi_profile():
                raise GraphError(f"piece {p} is T^2 x I, not a valid piece")
        # no fibre-to-fibre gluing in the declared structures
        for e_idx, e in enumerate(self.edges):
            image = change_basis(Slope.vertical(), e.matrix)
            if delta(image, Slope.vertical()) == 0:
                raise GraphError(
                    f"edge {e_idx} glues fibre to fibre in the declared structures")
        # connectivity
        if self.pieces:
            seen = {0}
            frontier = [0]
            adj = {}
            for e in self.edges:
                adj.setdefault(e.piece_a, []).append(e.piece_b)
                adj.setdefault(e.piece_b, []).append(e.piece_a)
            while frontier:
                p = frontier.pop()
                for q in adj.get(p, ()):
                    if q not in seen:
                        seen.add(q)
                        frontier.append(q)
            if len(seen) != len(self.pieces):
                raise GraphError("graph is not connected")

    def is_tree(self):
        return len(self.edges) == len(self.pieces) - 1

    def incident_edges(self, piece_index):
        out = []
        for j, e in enumerate(self.edges):
            if e.piece_a == piece_index:
                out.append((j, e.bdry_a, True))
            if e.piece_b == piece_index:
                out.append((j, e.bdry_b, False))
        return out


def edge_slope_on_side(edge: Edge, slope_a: Slope, want_side_a: bool) -> Slope:
    """An assignment slope is stored in side-a coordinates."""
    if want_side_a:
        return slope_a
    return change_basis(slope_a, edge.matrix)


def piece_slope_tuple(w: GraphManifold, piece_index: int, assignment) -> tuple:
    """The boundary slope tuple of one piece induced by an edge assignment."""
    piece = w.pieces[piece_index]
    slots = [None] * piece.boundary_count
    for j, bdry, is_a in w.incident_edges(piece_index):
        slots[bdry] = edge_slope_on_side(w.edges[j], assignment[j], is_a)
    if any(s is None for s in slots):
        raise GraphError("assignment does not cover every boundary")
    return tuple(slots)


# ---------------------------------------------------------------------------
# Homology


def homology_order(w: GraphManifold):
    """|H_1| via the assembled abelianized presentation, or INFINITE."""
    offsets = []
    total = 0
    for piece in w.pieces:
        offsets.append(total)
        total += piece.n + piece.boundary_count + 1 + (0 if piece.base_orientable else 1)
    rows = []

    def h_index(p):
        piece = w.pieces[p]
        return offsets[p] + piece.n + piece.boundary_count

    def x_index(p, b):
        return offsets[p] + w.pieces[p].n + b

    for p, piece in enumerate(w.pieces):
        base = offsets[p]
        for i, (a, b) in enumerate(piece.exceptional):
            row = [0] * total
            row[base + i] = a
            row[h_index(p)] = -b
            rows.append(row)
        surface = [0] * total
        for i in range(piece.n + piece.boundary_count):
            surface[base + i] = 1
        if not piece.base_orientable:
            surface[h_index(p) + 1] = 2
            torsion = [0] * total
            torsion[h_index(p)] = 2
            rows.append(torsion)
        rows.append(surface)

    for e in w.edges:
        m = e.matrix
        # basis vectors of side a expressed on side b
        row = [0] * total
        row[h_index(e.piece_a)] = 1
        row[h_index(e.piece_b)] -= m.m00
        row[x_index(e.piece_b, e.bdry_b)] -= m.m10
        rows.append(row)
        row = [0] * total
        row[x_index(e.piece_a, e.bdry_a)] = 1
        row[h_index(e.piece_b)] -= m.m01
        row[x_index(e.piece_b, e.bdry_b)] -= m.m11
        rows.append(row)

    return Cokernel(rows, total).order()


# ---------------------------------------------------------------------------
# Filling several boundaries of one piece


@dataclass
class MultiFill:
    kind: FillKind
    piece: Optional[SeifertPiece] = None
    closed: Optional[object] = None
    lens_orders: tuple = ()
    index_map: dict = field(default_factory=dict)  # old bdry -> current index
    shifts: dict = field(default_factory=dict)  # old bdry -> accumulated tau shift


def fill_boundaries(piece: SeifertPiece, fillings: dict) -> MultiFill:
    """Fill several boundaries in sequence, tracking the basis shifts that
    each normalization pushes onto surviving boundaries."""
    cur = piece
    index_map = {b: b for b in range(piece.boundary_count)}
    shifts = {b: 0 for b in range(piece.boundary_count)}
    pending = sorted(fillings)
    for pos, old_b in enumerate(pending):
        s = fillings[old_b]
        k = shifts[old_b]
        if k and not s.is_vertical():
            s = Slope(s.h_coeff - k * s.dual_coeff, s.dual_coeff)
        res = dehn_fill(cur, index_map[old_b], s)
        if res.kind == FillKind.LENS_SUM:
            return MultiFill(kind=FillKind.LENS_SUM, lens_orders=res.lens_orders)
        if res.kind == FillKind.CLOSED:
            if pos != len(pending) - 1:
                raise GraphError("filling closed the piece with fills pending")
            return MultiFill(kind=FillKind.CLOSED, closed=res.closed)
        # survived with one fewer boundary; tau_shift_boundary is reported in
        # pre-fill indexing of `cur`
        del index_map[old_b]
        del shifts[old_b]
        new_map = {}
        for o, curidx in index_map.items():
            new_map[o] = res.index_map[curidx]
            if curidx == res.tau_shift_boundary:
                shifts[o] += res.tau_shift
        index_map = new_map
        cur = res.piece
    kind = FillKind.PIECE
    if cur.solid_torus_profile():
        kind = FillKind.SOLID_TORUS
    elif cur.t2xi_profile():
        kind = FillKind.T2XI
    return MultiFill(kind=kind, piece=cur, index_map=index_map, shifts=shifts)

# ---------------------------------------------------------------------------
# Gluing coherence


def k_closure(w: GraphManifold, K, assignment) -> frozenset:
    """Close K under solid-torus fillings: when filling the K-boundaries of a
    piece at their rational slopes leaves a solid torus, its remaining torus
    joins the set.  Single pass, as defined."""
    K = frozenset(K)
    out = set(K)
    for p in range(len(w.pieces)):
        incident = w.incident_edges(p)
        k_edges = [(j, bdry, is_a) for j, bdry, is_a in incident if j in K]
        rest = [(j, bdry, is_a) for j, bdry, is_a in incident if j not in K]
        if len(rest) != 1 or not k_edges:
            continue
        fills = {}
        for j, bdry, is_a in k_edges:
            fills[bdry] = edge_slope_on_side(w.edges[j], assignment[j], is_a)
        res = fill_boundaries(w.pieces[p], fills)
        if res.kind == FillKind.SOLID_TORUS:
            out.add(rest[0][0])
    return frozenset(out)


@dataclass(frozen=True)
class GluingStatus:
    coherent: bool
    unobstructed: bool
    closure: frozenset
    failures: tuple = ()  # (piece index, reason) pairs


def _piece_J(w, piece_index, K):
    return frozenset(bdry for j, bdry, _ in w.incident_edges(piece_index) if j in K)


def gluing_status(w: GraphManifold, K, assignment) -> GluingStatus:
    """Definitional check: every piece detects its induced tuple, strongly on
    its K-boundaries; unobstructed additionally passes the closure of K."""
    K = frozenset(K)
    for j in K:
        e = w.edges[j]
        for p, is_a in ((e.piece_a, True), (e.piece_b, False)):
            s = edge_slope_on_side(e, assignment[j], is_a)
            if s.is_vertical() and not w.pieces[p].is_twisted_i_bundle():
                raise GraphError(
                    f"edge {j}: slope is the fibre of piece {p}; "
                    "strong gluing along a fibre slope is not admissible")
    failures = []
    coherent = True
    for p in range(len(w.pieces)):
        tup = piece_slope_tuple(w, p, assignment)
        if not detects(w.pieces[p], _piece_J(w, p, K), tup):
            coherent = False
            failures.append((p, "tuple not detected with K-strength"))
    closure = k_closure(w, K, assignment)
    if not coherent:
        return GluingStatus(False, False, closure, tuple(failures))
    if closure == K:
        return GluingStatus(True, True, closure)
    unobstructed = True
    for p in range(len(w.pieces)):
        tup = piece_slope_tuple(w, p, assignment)
        if not detects(w.pieces[p], _piece_J(w, p, closure), tup):
            unobstructed = False
            failures.append((p, "tuple not detected with closure-strength"))
    return GluingStatus(True, unobstructed, closure, tuple(failures))


# ---------------------------------------------------------------------------
# Detected-set propagation


def _leaf_set(piece: SeifertPiece, strong_out: bool, horizontal_only: bool) -> DetectedSlopeSet:
    """Detected slopes on the single boundary of a one-boundary piece."""
    if piece.base_orientable:
        res = tau_interval(piece.gammas)
        det = SlopeSet((Interval(res.eta, False, res.xi, False),))
        strong = SlopeSet((Interval(res.str_lo, not res.str_lo_closed,
                                    res.str_hi, not res.str_hi_closed),))
        return DetectedSlopeSet(det, strong)
    if piece.is_twisted_i_bundle():
        # rational longitude h0 = vertical in the declared (h0, h1) basis; it
        # is strongly detected through the disk structure
        v = SlopeSet.of_vertical()
        return DetectedSlopeSet(v, v)
    # other non-orientable base: only the fibre slope, never strongly
    if horizontal_only:
        return DetectedSlopeSet(SlopeSet.empty(), SlopeSet.empty())
    return DetectedSlopeSet(SlopeSet.of_vertical(), SlopeSet.empty())


def _hull_intervals(piece, J_indices, child_points, unbounded_lo, unbounded_hi):
    """Union of detected intervals over the box of child values, evaluated at
    the corner combinations (endpoint monotonicity)."""
    det_lo = det_hi = None
    det_lo_closed = det_hi_closed = False
    str_lo = str_hi = None
    strong_points = []
    det_points_closed = []
    for combo in itertools.product(*child_points):
        taus = [t for t, _ in combo]
        attained = all(cl for _, cl in combo)
        res = tau_interval(piece.gammas, J_indices, taus)
        if det_lo is None or res.eta < det_lo:
            det_lo = res.eta
            det_lo_closed = attained
        elif res.eta == det_lo and attained:
            det_lo_closed = True
        if det_hi is None or res.xi > det_hi:
            det_hi = res.xi
            det_hi_closed = attained
        elif res.xi == det_hi and attained:
            det_hi_closed = True
        if str_lo is None or res.str_lo < str_lo:
            str_lo = res.str_lo
        if str_hi is None or res.str_hi > str_hi:
            str_hi = res.str_hi
        if res.is_point and attained:
            det_points_closed.append(res.eta)
            if res.str_lo_closed:
                strong_points.append(res.eta)
    if det_lo is None:
        return SlopeSet.empty(), SlopeSet.empty()
    lo = NEG_INF if unbounded_hi else det_lo
    hi = POS_INF if unbounded_lo else det_hi
    det = SlopeSet((Interval(lo, not det_lo_closed if lo is not NEG_INF else True,
                             hi, not det_hi_closed if hi is not POS_INF else True),))
    for p in det_points_closed:
        det = det.union(SlopeSet.of_point(p))
    slo = NEG_INF if unbounded_hi else str_lo
    shi = POS_INF if unbounded_lo else str_hi
    strong = SlopeSet((Interval(slo, True, shi, True),))
    for p in strong_points:
        strong = strong.union(SlopeSet.of_point(p))
    return det, strong


def propagate_detected_set(piece: SeifertPiece, out_boundary: int, constraints: dict,
                           strong_required, horizontal_only=False) -> DetectedSlopeSet:
    """Slopes on one boundary extendable to a detected tuple of the piece.

    `constraints` maps each other boundary index to a DetectedSlopeSet in
    this piece's basis; `strong_required` lists boundary indices (possibly
    including out_boundary) whose slopes must be strongly detected.  The
    horizontal part evaluates the realizability interval at constraint
    endpoints, relying on endpoint monotonicity; vertical contributions
    follow the fibre-count rules.
    """
    strong_required = frozenset(strong_required)
    others = sorted(constraints)
    if len(others) != piece.boundary_count - 1 or out_boundary in constraints:
        raise GraphError("constraints must cover exactly the other boundaries")
    if not others:
        return _leaf_set(piece, out_boundary in strong_required, horizontal_only)

    usable = {}
    for b in others:
        c = constraints[b]
        usable[b] = c.strong.without_vertical() if b in strong_required else c.det
        if usable[b].is_empty():
            return DetectedSlopeSet(SlopeSet.empty(), SlopeSet.empty())

    det = SlopeSet.empty()
    strong = SlopeSet.empty()

    # vertical patterns
    if not horizontal_only:
        vc = sum(1 for b in others
                 if b not in strong_required and constraints[b].det.vertical)
        if piece.base_orientable:
            if vc >= 2:
                det = det.union(SlopeSet.full())
                strong = strong.union(SlopeSet.full_line())
            elif vc >= 1:
                det = det.union(SlopeSet.of_vertical())
        else:
            if vc >= 1:
                det = det.union(SlopeSet.full())
                strong = strong.union(SlopeSet.full_line())
            else:
                det = det.union(SlopeSet.of_vertical())

    # horizontal patterns need an orientable base
    if piece.base_orientable:
        J_indices = []
        pos = 0
        child_interval_lists = []
        for b in others:
            ivs = usable[b].intervals
            if not ivs:
                child_interval_lists = None
                break
            child_interval_lists.append(ivs)
            if b in strong_required:
                J_indices.append(pos)
            pos += 1
        if child_interval_lists is not None:
            for combo in itertools.product(*child_interval_lists):
                pts = []
                unb_lo = unb_hi = False
                ok = True
                for iv in combo:
                    ends = []
                    if iv.lo is NEG_INF and iv.hi is POS_INF:
                        ends = [(Fraction(0), False), (Fraction(1), False)]
                        unb_lo = unb_hi = True
                    elif iv.lo is NEG_INF:
                        ends = [(iv.hi - 1, False), (iv.hi, not iv.hi_open)]
                        unb_lo = True
                    elif iv.hi is POS_INF:
                        ends = [(iv.lo, not iv.lo_open), (iv.lo + 1, False)]
                        unb_hi = True
                    elif iv.is_point():
                        ends = [(iv.lo, True)]
                    else:
                        ends = [(iv.lo, not iv.lo_open), (iv.hi, not iv.hi_open)]
                    pts.append(ends)
                if not ok:
                    continue
                d, s = _hull_intervals(piece, frozenset(J_indices), pts, unb_lo, unb_hi)
                det = det.union(d)
                strong = strong.union(s)

    return DetectedSlopeSet(det, strong)
