"""Traces of convex sets on a line system, and point piercing of (d-)intervals."""
from __future__ import annotations

from dataclasses import dataclass, field

from .geometry import Certificate, ConvexSet, Family, GeometryError, Line2, Point2, orient, point_in_set, sgn
from .setcover import DEFAULT_NODE_BUDGET, max_independent_set, min_set_cover


@dataclass(frozen=True)
class MultiInterval:
    """One closed interval (or ``None``) per line, in that line's parameter ``t``."""

    owner: str
    components: tuple

    @property
    def d(self) -> int:
        return len(self.components)

    def is_empty(self) -> bool:
        return all(c is None for c in self.components)

    def contains(self, line: int, t) -> bool:
        c = self.components[line]
        return c is not None and c[0] <= t <= c[1]

    def meets(self, other: "MultiInterval") -> bool:
        for a, b in zip(self.components, other.components):
            if a is not None and b is not None and a[0] <= b[1] and b[0] <= a[1]:
                return True
        return False


@dataclass
class PointTransversal:
    points: list  # (line index, parameter) pairs
    assignment: dict
    d: int
    nu: int
    bound: int
    planar: list = field(default_factory=list)  # points in the plane, when lines are known

    @property
    def tau(self) -> int:
        return len(self.points)

    @property
    def bound_ok(self) -> bool:
        return self.tau <= self.bound


def trace_interval(line: Line2, s: ConvexSet):
    """Parameter interval of ``s`` intersected with ``line``, or ``None``."""
    if line.degenerate:
        raise GeometryError("cannot trace on a point-chord")
    verts = s.vertices
    sides = [orient(line.a, line.b, v) for v in verts]
    ts = [line.param(v) for v, sv in zip(verts, sides) if sgn(sv) == 0]
    for (p, q), sp, sq in zip(s.edges(), sides, sides[1:] + sides[:1]):
        if sgn(sp) * sgn(sq) < 0:
            w = sp / (sp - sq)
            ts.append(line.param(Point2(p.x + (q.x - p.x) * w, p.y + (q.y - p.y) * w)))
    if not ts:
        return None
    return (min(ts), max(ts))


def trace_on_lines(fam: Family, lines) -> list[MultiInterval]:
    """``S & L`` for every member: one component per line, ``None`` where missed."""
    if not lines:
        raise GeometryError("trace_on_lines needs at least one line")
    return [MultiInterval(s.id, tuple(trace_interval(ln, s) for ln in lines)) for s in fam.sets]


def gallai_pierce(intervals) -> list:
    """Minimum piercing points of closed intervals ``(id, a, b)`` by the right-endpoint sweep."""
    points = []
    last = None
    for _, a, b in sorted(intervals, key=lambda iv: (iv[2], iv[1])):
        if last is None or a > last:
            last = b
            points.append(b)
    return points


def interval_matching_number(intervals) -> int:
    """Most pairwise disjoint intervals (the same sweep, counting disjoint picks)."""
    return len(gallai_pierce(intervals))


def d_interval_matching(mis: list[MultiInterval], budget: int = DEFAULT_NODE_BUDGET) -> list[int]:
    n = len(mis)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if mis[i].meets(mis[j]):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return max_independent_set(n, adj, budget)


def d_interval_bound(d: int, nu: int) -> int:
    return (d * d - d) * nu if d >= 2 else nu


def pierce_d_intervals(mis: list[MultiInterval], budget: int = DEFAULT_NODE_BUDGET) -> PointTransversal:
    """Exact minimum piercing of a d-interval family by points ``(line, t)``.

    Candidates are right endpoints of components: pushing a piercing point
    right to the least right endpoint among the intervals it pierces keeps
    all of them pierced.  The result carries the bound ``(d^2 - d) nu``.
    """
    if not mis:
        return PointTransversal([], {}, 0, 0, 0)
    for mi in mis:
        if mi.is_empty():
            raise GeometryError(f"member {mi.owner!r} has an empty trace and cannot be pierced")
    d = max(mi.d for mi in mis)
    if d == 1:
        ivs = [(i, mi.components[0][0], mi.components[0][1]) for i, mi in enumerate(mis)]
        pts = [(0, t) for t in gallai_pierce(ivs)]
        nu = interval_matching_number(ivs)
        if nu != len(pts):  # pragma: no cover - equality of interval piercing and matching
            raise AssertionError("interval piercing and matching numbers differ")
    else:
        cands = sorted({(li, c[1]) for mi in mis for li, c in enumerate(mi.components) if c is not None})
        masks = []
        for li, t in cands:
            mask = 0
            for i, mi in enumerate(mis):
                if li < mi.d and mi.contains(li, t):
                    mask |= 1 << i
            masks.append(mask)
        pts = [cands[j] for j in min_set_cover(len(mis), masks, budget)]
        nu = len(d_interval_matching(mis, budget))
    assignment = {}
    for mi in mis:
        assignment[mi.owner] = next(j for j, (li, t) in enumerate(pts) if li < mi.d and mi.contains(li, t))
    return PointTransversal(pts, assignment, d, nu, d_interval_bound(d, nu))


def lift_points(pt: PointTransversal, lines) -> list[Point2]:
    """Planar coordinates of ``(line, t)`` piercing points."""
    return [lines[li].at(t) for li, t in pt.points]


def verify_point_transversal(fam: Family, points) -> Certificate:
    """Exact containment check; reports the first member holding none of ``points``."""
    pts = [p.exact() for p in points]
    cert = Certificate()
    for s in fam.sets:
        sx = s.exact()
        for i, p in enumerate(pts):
            if point_in_set(p, sx):
                cert.assignment[s.id] = i
                break
        else:
            cert.violation = s.id
            return cert
    return cert
