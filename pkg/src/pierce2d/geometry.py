"""Planar primitives: points, lines, convex sets, families, and predicates.

Coordinates are either ``Fraction`` (exact mode) or ``float``.  Every
predicate picks its tolerance from the operand types: exact values are
compared against zero exactly, floats within ``EPS``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

EPS = 1e-9

_MODE = "exact"


class GeometryError(ValueError):
    pass


class InvalidSetError(GeometryError):
    pass


def set_mode(mode: str) -> None:
    """Select the run-wide arithmetic mode, ``"exact"`` or ``"float"``."""
    global _MODE
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown arithmetic mode {mode!r}")
    _MODE = mode


def get_mode() -> str:
    return _MODE


def num(value, mode: str | None = None):
    """Coerce a scalar (int, float, Fraction, or "p/q" string) to the mode's type."""
    mode = mode or _MODE
    if isinstance(value, str):
        value = Fraction(value.strip())
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if mode == "exact":
        if isinstance(value, float):
            if not math.isfinite(value):
                raise GeometryError(f"non-finite coordinate {value!r}")
            # decimal literal semantics: 0.1 means 1/10
            return Fraction(repr(value))
        return Fraction(value)
    value = float(value)
    if not math.isfinite(value):
        raise GeometryError(f"non-finite coordinate {value!r}")
    return value


def exact(value) -> Fraction:
    """Exact rational image of a scalar; floats convert without rounding."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def sgn(value) -> int:
    if isinstance(value, float):
        if value > EPS:
            return 1
        if value < -EPS:
            return -1
        return 0
    return (value > 0) - (value < 0)


class Point2(NamedTuple):
    x: object
    y: object

    def __add__(self, other):  # type: ignore[override]
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Point2(self.x - other.x, self.y - other.y)

    def scale(self, s) -> "Point2":
        return Point2(self.x * s, self.y * s)

    def dot(self, other) -> object:
        return self.x * other.x + self.y * other.y

    def norm2(self):
        return self.x * self.x + self.y * self.y

    def exact(self) -> "Point2":
        return Point2(exact(self.x), exact(self.y))

    def as_float(self) -> tuple[float, float]:
        return float(self.x), float(self.y)


def pt(x, y, mode: str | None = None) -> Point2:
    return Point2(num(x, mode), num(y, mode))


class Line2(NamedTuple):
    """Line through two anchors; ``a == b`` encodes a point-chord."""

    a: Point2
    b: Point2

    @property
    def degenerate(self) -> bool:
        return self.a == self.b

    def exact(self) -> "Line2":
        return Line2(self.a.exact(), self.b.exact())

    def at(self, t) -> Point2:
        """Point ``a + t (b - a)``: the line's 1-D parameterization."""
        return Point2(self.a.x + t * (self.b.x - self.a.x), self.a.y + t * (self.b.y - self.a.y))

    def param(self, p: Point2):
        d = self.b - self.a
        return (p - self.a).dot(d) / d.norm2()


def orient(a: Point2, b: Point2, c: Point2):
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def side_of(line: Line2, p: Point2) -> int:
    """Sign of the orientation determinant of ``(a, b, p)``; +1 is the left side."""
    if line.degenerate:
        raise GeometryError("side_of is undefined for a point-chord")
    return sgn(orient(line.a, line.b, p))


@dataclass(frozen=True)
class ConvexSet:
    """A compact convex polygon; one vertex is a point, two a segment.

    Build instances with :func:`convex_set`, which canonicalizes the vertex list.
    """

    id: str
    vertices: tuple[Point2, ...]
    parents: tuple[str, str] | None = None

    @property
    def kind(self) -> str:
        return ("point", "segment")[len(self.vertices) - 1] if len(self.vertices) < 3 else "polygon"

    def edges(self) -> list[tuple[Point2, Point2]]:
        v = self.vertices
        if len(v) == 1:
            return []
        if len(v) == 2:
            return [(v[0], v[1])]
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def bbox(self):
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def exact(self) -> "ConvexSet":
        return replace(self, vertices=tuple(p.exact() for p in self.vertices))

    def map(self, fn) -> "ConvexSet":
        return replace(self, vertices=tuple(fn(p) for p in self.vertices))


def _dedup(points: Sequence[Point2]) -> list[Point2]:
    out: list[Point2] = []
    for p in points:
        if not out or not _same(out[-1], p):
            out.append(p)
    while len(out) > 1 and _same(out[0], out[-1]):
        out.pop()
    return out


def _same(p: Point2, q: Point2) -> bool:
    return sgn(p.x - q.x) == 0 and sgn(p.y - q.y) == 0


def convex_set(id, vertices: Iterable, parents=None, mode: str | None = None) -> ConvexSet:
    """Validate and canonicalize a vertex list into a :class:`ConvexSet`.

    Duplicate and collinear vertices are dropped and clockwise input is
    reoriented.  Self-intersecting or non-convex vertex orders raise
    :class:`InvalidSetError`.
    """
    pts = [p if isinstance(p, Point2) and mode is None else pt(p[0], p[1], mode) for p in vertices]
    if not pts:
        raise InvalidSetError(f"set {id!r} has no vertices")
    pts = _dedup(pts)
    if len(pts) == 1:
        return ConvexSet(str(id), (pts[0],), parents)
    a = pts[0]
    far = max(pts, key=lambda q: float((q - a).norm2()))
    if all(sgn(orient(a, far, q)) == 0 for q in pts):
        # collinear input: keep the extreme points
        d = far - a
        lo = min(pts, key=lambda q: (q - a).dot(d))
        hi = max(pts, key=lambda q: (q - a).dot(d))
        return ConvexSet(str(id), (lo, hi), parents)
    area2 = sum(p.x * q.y - q.x * p.y for p, q in zip(pts, pts[1:] + pts[:1]))
    if sgn(area2) < 0:
        pts.reverse()
    # drop collinear vertices, repeating until stable
    changed = True
    while changed and len(pts) > 2:
        changed = False
        for i in range(len(pts)):
            if sgn(orient(pts[i - 1], pts[i], pts[(i + 1) % len(pts)])) == 0:
                del pts[i]
                changed = True
                break
    n = len(pts)
    turning = 0.0
    for i in range(n):
        p0, p1, p2 = pts[i - 1], pts[i], pts[(i + 1) % n]
        if sgn(orient(p0, p1, p2)) < 0:
            raise InvalidSetError(f"set {id!r} is not convex or its vertex order self-intersects")
        u = p1 - p0
        w = p2 - p1
        turning += math.atan2(float(u.x * w.y - u.y * w.x), float(u.dot(w)))
    if abs(turning - 2 * math.pi) > 1e-6:
        raise InvalidSetError(f"set {id!r} winds more than once (self-intersecting order)")
    return ConvexSet(str(id), tuple(pts), parents)


def point_in_set(p: Point2, s: ConvexSet) -> bool:
    v = s.vertices
    if len(v) == 1:
        return _same(p, v[0])
    if len(v) == 2:
        a, b = v
        if sgn(orient(a, b, p)) != 0:
            return False
        d = b - a
        t = (p - a).dot(d)
        return sgn(t) >= 0 and sgn(t - d.norm2()) <= 0
    n = len(v)
    return all(sgn(orient(v[i], v[(i + 1) % n], p)) >= 0 for i in range(n))


def convex_hull(points: Iterable[Point2]) -> list[Point2]:
    """Monotone chain hull, CCW, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out: list[Point2] = []
        for p in seq:
            while len(out) >= 2 and sgn(orient(out[-2], out[-1], p)) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    return _dedup(hull)


def _bbox_overlap(a: ConvexSet, b: ConvexSet) -> bool:
    ax0, ay0, ax1, ay1 = a.bbox()
    bx0, by0, bx1, by1 = b.bbox()
    return not (sgn(ax1 - bx0) < 0 or sgn(bx1 - ax0) < 0 or sgn(ay1 - by0) < 0 or sgn(by1 - ay0) < 0)


def _segment_crossing(p1, p2, q1, q2):
    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    if sgn(d1) * sgn(d2) >= 0:
        return None
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    if sgn(d3) * sgn(d4) >= 0:
        return None
    t = d1 / (d1 - d2)
    return Point2(p1.x + (p2.x - p1.x) * t, p1.y + (p2.y - p1.y) * t)


def intersect_convex(a: ConvexSet, b: ConvexSet, id: str | None = None) -> ConvexSet | None:
    """Exact intersection of two convex sets, or ``None`` when disjoint.

    The vertices of ``a & b`` are vertices of one set lying in the other or
    proper crossings of an edge of ``a`` with an edge of ``b``; their hull
    is the intersection.
    """
    if not _bbox_overlap(a, b):
        return None
    cand = [p for p in a.vertices if point_in_set(p, b)]
    cand += [p for p in b.vertices if point_in_set(p, a)]
    for p1, p2 in a.edges():
        for q1, q2 in b.edges():
            x = _segment_crossing(p1, p2, q1, q2)
            if x is not None:
                cand.append(x)
    if not cand:
        return None
    hull = convex_hull(cand)
    if id is None:
        id = f"{a.id}&{b.id}"
    if len(hull) >= 3:
        return ConvexSet(id, tuple(hull), (a.id, b.id))
    return convex_set(id, hull, parents=(a.id, b.id))


def intersects(a: ConvexSet, b: ConvexSet) -> bool:
    return intersect_convex(a, b) is not None


def line_meets_set(line: Line2, s: ConvexSet) -> bool:
    """True iff the full line through the anchors meets the closed set."""
    if line.degenerate:
        return point_in_set(line.a, s)
    seen = set()
    for p in s.vertices:
        k = sgn(orient(line.a, line.b, p))
        if k == 0:
            return True
        seen.add(k)
        if len(seen) == 2:
            return True
    return False


@dataclass(frozen=True)
class Family:
    """Indexed convex sets with optional colour classes.

    ``scale`` and ``shift`` record the similarity ``q = scale * p + shift``
    taking original coordinates to normalized ones (identity by default).
    """

    sets: tuple[ConvexSet, ...]
    colors: dict | None = None
    scale: object = 1
    shift: Point2 = field(default_factory=lambda: Point2(0, 0))

    def __post_init__(self):
        ids = [s.id for s in self.sets]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})
            raise GeometryError(f"duplicate set ids: {dup}")
        if self.colors is not None:
            missing = set(ids) - set(self.colors)
            extra = set(self.colors) - set(ids)
            if missing or extra:
                raise GeometryError(
                    f"colors must cover exactly the set ids (missing {sorted(missing)}, unknown {sorted(extra)})"
                )

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    @property
    def ids(self) -> list[str]:
        return [s.id for s in self.sets]

    def by_id(self, sid: str) -> ConvexSet:
        for s in self.sets:
            if s.id == sid:
                return s
        raise KeyError(sid)

    def color_classes(self) -> list["Family"]:
        """Split into one family per colour, ordered by colour index."""
        if self.colors is None:
            raise GeometryError("family has no colour classes")
        out = []
        for c in sorted(set(self.colors.values())):
            members = tuple(s for s in self.sets if self.colors[s.id] == c)
            out.append(Family(members, None, self.scale, self.shift))
        return out

    def to_normalized(self, p: Point2) -> Point2:
        return Point2(p.x * self.scale + self.shift.x, p.y * self.scale + self.shift.y)

    def to_original(self, q: Point2) -> Point2:
        return Point2((q.x - self.shift.x) / self.scale, (q.y - self.shift.y) / self.scale)

    def line_to_original(self, line: Line2) -> Line2:
        return Line2(self.to_original(line.a), self.to_original(line.b))

    def exact(self) -> "Family":
        return replace(self, sets=tuple(s.exact() for s in self.sets), scale=exact(self.scale), shift=self.shift.exact())

    def vertices(self) -> list[Point2]:
        return [p for s in self.sets for p in s.vertices]


@dataclass
class Certificate:
    """Member id -> index of its piercing element, or the first unpierced id."""

    assignment: dict = field(default_factory=dict)
    violation: str | None = None

    @property
    def ok(self) -> bool:
        return self.violation is None


def family(sets: Iterable, colors=None, mode: str | None = None) -> Family:
    """Build a family from ``ConvexSet`` objects or ``(id, vertices)`` pairs."""
    out = []
    for s in sets:
        if isinstance(s, ConvexSet):
            out.append(s)
        else:
            sid, verts = s
            out.append(convex_set(sid, verts, mode=mode))
    return Family(tuple(out), dict(colors) if colors is not None else None)


def _sqrt_upper(r2) -> Fraction:
    r = Fraction(math.sqrt(float(r2))) * Fraction(1_000_001, 1_000_000)
    r = r.limit_denominator(10**9)
    while r * r < r2:
        r *= Fraction(1_000_001, 1_000_000)
    return r


def normalize_to_disk(fam: Family, margin=0.1) -> Family:
    """Map the family into the disk of radius ``1 - margin`` by a similarity.

    A family already inside is returned unchanged (identity transform);
    otherwise it is centred on its bounding box and uniformly scaled.
    """
    if len(fam) == 0:
        raise GeometryError("cannot normalize an empty family")
    if not 0 < float(margin) < 1:
        raise GeometryError("margin must lie in (0, 1)")
    pts = fam.vertices()
    is_exact = not any(isinstance(c, float) for p in pts for c in p)
    if is_exact:
        radius = 1 - Fraction(str(margin)) if isinstance(margin, float) else 1 - Fraction(margin)
        one = Fraction(1)
    else:
        radius = 1.0 - float(margin)
        one = 1.0
    if all(p.norm2() <= radius * radius for p in pts):
        return replace(fam, scale=one, shift=Point2(0 * one, 0 * one))
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    c = Point2((min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2)
    r2 = max((p - c).norm2() for p in pts)
    if is_exact:
        s = radius / _sqrt_upper(r2) if r2 > 0 else one
    else:
        s = radius / math.sqrt(r2) * (1 - 1e-12) if r2 > 0 else one
    def step(p: Point2) -> Point2:
        return Point2((p.x - c.x) * s, (p.y - c.y) * s)

    # compose with any transform the family already carries
    shift = step(fam.shift)
    return replace(fam, scale=fam.scale * s, shift=shift, sets=tuple(st.map(step) for st in fam.sets))


def is_normalized(fam: Family) -> bool:
    return all(sgn(p.norm2() - 1) < 0 for p in fam.vertices())
