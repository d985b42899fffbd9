"""Chord systems on the unit circle parameterized by simplex points.

A point ``x`` of the simplex with ``m`` (even) coordinates places ``m``
points ``f_0..f_{m-1}`` on the circle at cumulative turns
``t_i = x_1 + ... + x_i`` and pairs ``f_i`` with ``f_{i+m/2}`` by chords.
Region ``i`` (1-based) is the part of the open disk on the arc side of both
chords through ``f_{i-1}`` and ``f_i``; points are labelled with the least
such region, which equals the recursive difference construction
(``T_i = P_i`` minus the earlier ``T_j``) because the union of ``T_1..T_i``
telescopes to the union of ``P_1..P_i``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .geometry import EPS, ConvexSet, Family, GeometryError, Line2, Point2, line_meets_set, orient, sgn

ON_L = 0  # region label for points lying on a chord

_TAN_DENOMINATOR = 10**12


def check_simplex(coords: Sequence) -> tuple:
    coords = tuple(coords)
    if not coords:
        raise GeometryError("empty simplex point")
    if any(sgn(c) < 0 for c in coords):
        raise GeometryError(f"negative simplex coordinate in {coords}")
    total = sum(coords)
    if isinstance(total, float):
        if abs(total - 1.0) > 1e-9:
            raise GeometryError(f"simplex coordinates sum to {total}, not 1")
    elif total != 1:
        raise GeometryError(f"simplex coordinates sum to {total}, not 1")
    return coords


def circle_point(t, exact: bool = False) -> Point2:
    """``f(t) = (cos 2 pi t, sin 2 pi t)``.

    In exact mode the point is a rational point exactly on the unit circle,
    obtained from a rational approximation of the half-angle tangent; the
    approximation is monotone in ``t``, so boundary order is preserved.
    """
    if not exact:
        a = 2.0 * math.pi * float(t)
        return Point2(math.cos(a), math.sin(a))
    t = Fraction(t) % 1
    # fold into [0, 1/8] so mirror-symmetric angles get mirror-image points
    if t > Fraction(1, 2):
        p = circle_point(1 - t, exact=True)
        return Point2(p.x, -p.y)
    if t > Fraction(1, 4):
        p = circle_point(Fraction(1, 2) - t, exact=True)
        return Point2(-p.x, p.y)
    if t > Fraction(1, 8):
        p = circle_point(Fraction(1, 4) - t, exact=True)
        return Point2(p.y, p.x)
    if t == 0:
        return Point2(Fraction(1), Fraction(0))
    u = Fraction(math.tan(math.pi * float(t))).limit_denominator(_TAN_DENOMINATOR)
    d = 1 + u * u
    return Point2((1 - u * u) / d, 2 * u / d)


@dataclass(frozen=True)
class ChordSystem:
    coords: tuple
    t: tuple  # cumulative turns t_0 = 0 .. t_m = 1
    f: tuple[Point2, ...]
    chords: tuple[Line2, ...]
    mids: tuple[Point2, ...]  # arc midpoints, one per region
    exact: bool

    regions: tuple  # per region: None when empty, else ((chord, side), ...)

    @property
    def m(self) -> int:
        return len(self.f)

    def chord_of(self, i: int) -> int:
        """Index into ``chords`` of the chord through ``f_i`` (indices mod m)."""
        return i % (self.m // 2)

    def region_constraints(self, i: int):
        """(chord index, required side) pairs defining region ``i``, or None if empty."""
        return self.regions[i - 1]

    def region_empty(self, i: int) -> bool:
        return self.regions[i - 1] is None


def _region_constraints(coords, chords, mids) -> tuple:
    m = len(coords)
    h = m // 2
    out = []
    for i in range(1, m + 1):
        if sgn(coords[i - 1]) == 0:
            out.append(None)
            continue
        cons = []
        for c in sorted({(i - 1) % h, i % h}):
            line = chords[c]
            if line.degenerate:
                continue
            ref = sgn(orient(line.a, line.b, mids[i - 1]))
            if ref == 0:
                # arc too short to resolve in float mode: the region is empty
                cons = None
                break
            cons.append((c, ref))
        out.append(None if cons is None else tuple(cons))
    return tuple(out)


def chord_system(x: Sequence, exact: bool | None = None) -> ChordSystem:
    """Boundary points, chords and arc midpoints for simplex point ``x``."""
    coords = check_simplex(x)
    m = len(coords)
    if m % 2 or m < 2:
        raise GeometryError(f"chord systems need an even number (>= 2) of coordinates, got {m}")
    if exact is None:
        exact = not any(isinstance(c, float) for c in coords)
    if exact:
        coords = tuple(Fraction(c) for c in coords)
        zero = Fraction(0)
    else:
        coords = tuple(float(c) for c in coords)
        zero = 0.0
    t = [zero]
    for c in coords:
        t.append(t[-1] + c)
    if exact:
        t[-1] = Fraction(1)
    f = tuple(circle_point(t[i], exact) for i in range(m))
    h = m // 2
    chords = tuple(Line2(f[i], f[i + h]) for i in range(h))
    mids = tuple(circle_point(t[i] + coords[i] / 2, exact) for i in range(m))
    return ChordSystem(coords, tuple(t), f, chords, mids, exact, _region_constraints(coords, chords, mids))


def _in_region(p: Point2, cs: ChordSystem, i: int, sides) -> bool:
    cons = cs.region_constraints(i)
    if cons is None:
        return False
    return all(sides[c] == ref for c, ref in cons)


def _chord_sides(p: Point2, cs: ChordSystem) -> list:
    return [None if ln.degenerate else sgn(orient(ln.a, ln.b, p)) for ln in cs.chords]


def _check_inside(p: Point2) -> None:
    if sgn(p.x * p.x + p.y * p.y - 1) >= 0:
        raise GeometryError(f"point {p} is not strictly inside the unit disk")


def region_index(p: Point2, cs: ChordSystem) -> int:
    """``ON_L`` if ``p`` is on a chord, else the region ``i`` in 1..m holding ``p``."""
    _check_inside(p)
    sides = _chord_sides(p, cs)
    if any(s == 0 for s in sides):
        return ON_L
    for i in range(1, cs.m + 1):
        if _in_region(p, cs, i, sides):
            return i
    raise GeometryError(f"point {p} lies in no region (decomposition is not total)")


def region_index_recursive(p: Point2, cs: ChordSystem) -> int:
    """Same labelling through the literal recursion ``T_i = P_i minus T_1..T_{i-1}``."""
    _check_inside(p)
    sides = _chord_sides(p, cs)
    if any(s == 0 for s in sides):
        return ON_L
    memo: dict[int, bool] = {}

    def in_t(i: int) -> bool:
        if i not in memo:
            memo[i] = _in_region(p, cs, i, sides) and not any(in_t(j) for j in range(1, i))
        return memo[i]

    hits = [i for i in range(1, cs.m + 1) if in_t(i)]
    if len(hits) != 1:
        raise GeometryError(f"point {p} lies in regions {hits}")
    return hits[0]


def _kernel_args(cs: ChordSystem):
    h = cs.m // 2
    chords = np.array([[float(l.a.x), float(l.a.y), float(l.b.x), float(l.b.y)] for l in cs.chords]).reshape(h, 4)
    live = np.array([not l.degenerate for l in cs.chords])
    ref_chord = np.full((cs.m, 2), -1, dtype=np.int64)
    ref_sign = np.zeros((cs.m, 2), dtype=np.int64)
    empty = np.zeros(cs.m, dtype=bool)
    for i in range(1, cs.m + 1):
        cons = cs.region_constraints(i)
        if cons is None:
            empty[i - 1] = True
            continue
        for j, (c, ref) in enumerate(cons):
            ref_chord[i - 1, j] = c
            ref_sign[i - 1, j] = ref
    return chords, live, ref_chord, ref_sign, empty


def region_indices(points: np.ndarray, cs: ChordSystem, eps: float = EPS, use_numba=None) -> np.ndarray:
    """Float batch labelling of (N, 2) points; -1 flags a point in no region."""
    points = np.asarray(points, dtype=np.float64)
    if np.any(np.einsum("ij,ij->i", points, points) >= 1.0):
        raise GeometryError("all points must lie strictly inside the unit disk")
    chords, live, ref_chord, ref_sign, empty = _kernel_args(cs)
    return _kernels.region_labels(points[:, 0], points[:, 1], chords, live, ref_chord, ref_sign, empty, eps, use_numba)


def region_membership(points: np.ndarray, cs: ChordSystem, eps: float = EPS) -> tuple[np.ndarray, np.ndarray]:
    """Boolean (m, N) membership in ``P_i`` and (N,) on-chord mask, in float."""
    points = np.asarray(points, dtype=np.float64)
    px, py = points[:, 0], points[:, 1]
    sides = []
    on_l = np.zeros(len(points), dtype=bool)
    for ln in cs.chords:
        if ln.degenerate:
            sides.append(None)
            continue
        ax, ay, bx, by = float(ln.a.x), float(ln.a.y), float(ln.b.x), float(ln.b.y)
        s = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
        sg = np.where(s > eps, 1, np.where(s < -eps, -1, 0))
        on_l |= sg == 0
        sides.append(sg)
    member = np.zeros((cs.m, len(points)), dtype=bool)
    for i in range(1, cs.m + 1):
        cons = cs.region_constraints(i)
        if cons is None:
            continue
        row = np.ones(len(points), dtype=bool)
        for c, ref in cons:
            row &= sides[c] == ref
        member[i - 1] = row & ~on_l
    return member, on_l


def region_indices_recursive(points: np.ndarray, cs: ChordSystem, eps: float = EPS) -> np.ndarray:
    """Literal ``T_i`` recursion over boolean masks; returns the (m, N) ``R_i`` masks."""
    member, on_l = region_membership(points, cs, eps)
    t_masks = np.zeros_like(member)
    for i in range(cs.m):
        earlier = np.zeros(member.shape[1], dtype=bool)
        for j in range(i):
            earlier |= t_masks[j]
        t_masks[i] = member[i] & ~earlier
    return t_masks & ~on_l[None, :]


def set_region(s: ConvexSet, cs: ChordSystem) -> int:
    """``ON_L`` if ``s`` meets a chord, else the region wholly containing ``s``."""
    for ln in cs.chords:
        if line_meets_set(ln, s):
            return ON_L
    # s is connected and misses every chord: one vertex decides its region
    return region_index(s.vertices[0], cs)


def cover_label(x, fam: Family | Sequence[ConvexSet]):
    """Least ``i`` with some set inside region ``i`` plus that set's id, or ``None``.

    ``None`` means every set meets a chord, i.e. the chords pierce the family.
    ``x`` is a simplex point or a prebuilt :class:`ChordSystem`.
    """
    cs = x if isinstance(x, ChordSystem) else chord_system(x)
    sets = fam.sets if isinstance(fam, Family) else tuple(fam)
    for s in sets:
        for p in s.vertices:
            if sgn(p.x * p.x + p.y * p.y - 1) >= 0:
                raise GeometryError(f"set {s.id!r} is not inside the open unit disk; normalize first")
    best = None
    for s in sets:
        r = set_region(s, cs)
        if r != ON_L and (best is None or r < best[0]):
            best = (r, s.id)
    return best
