"""Point piercing through pairwise intersections, line traces and d-intervals.

Given a family with no isolated sets, matching number ``p`` and pairwise
intersection family of matching number ``r``:

1. pierce the pairwise intersections by ``floor(r/2) + 1`` lines;
2. trace every set on those lines, giving a family of d-intervals with
   ``d = floor(r/2) + 1``; every trace is nonempty and no ``p + 1`` traces
   are pairwise disjoint;
3. pierce the traces by points, at most ``(d^2 - d) p`` of them (``p``
   when ``d = 1``), and read them back as points of the plane.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .geometry import Family, GeometryError
from .intervals import (
    MultiInterval,
    PointTransversal,
    d_interval_matching,
    lift_points,
    pierce_d_intervals,
    trace_on_lines,
    verify_point_transversal,
)
from .line_solver import LineTransversal, solve_lines
from .matching import intersection_graph, isolated_sets, matching_number, pairwise_intersections
from .setcover import DEFAULT_NODE_BUDGET


class IsolatedSetsError(GeometryError):
    def __init__(self, ids: list[str]):
        super().__init__(f"family has isolated sets: {ids}")
        self.ids = ids


class PipelineCheckFailed(AssertionError):
    """A claim of the reduction did not hold on this input."""


def point_bound(p: int, r: int) -> int:
    """``(floor(r/2)^2 + floor(r/2)) p`` for ``r >= 2``, else ``p``."""
    k = r // 2
    return (k * k + k) * p if r >= 2 else p


@dataclass
class PipelineReport:
    p: int
    r: int
    k: int
    lines: LineTransversal
    points: PointTransversal
    planar_points: list
    traces: list[MultiInterval]
    trace_nu: int
    bound: int
    certificate: dict = field(default_factory=dict)

    @property
    def tau(self) -> int:
        return len(self.planar_points)

    @property
    def bound_satisfied(self) -> bool:
        return self.tau <= self.bound


def theorem1_pierce(
    fam: Family,
    p: int | None = None,
    r: int | None = None,
    budget: int = DEFAULT_NODE_BUDGET,
    **line_kwargs,
) -> PipelineReport:
    """Run the reduction end to end with every intermediate claim checked.

    ``p`` and ``r`` default to the exact matching numbers of the family and
    of its pairwise intersections; supplied values are used as upper bounds.
    """
    if len(fam) == 0:
        raise GeometryError("theorem1_pierce needs a nonempty family")
    fam = fam.exact()
    graph = intersection_graph(fam)
    iso = isolated_sets(graph)
    if iso:
        raise IsolatedSetsError(iso)
    nu = matching_number(graph, budget)
    if p is None:
        p = nu
    elif p < nu:
        raise GeometryError(f"supplied p={p} is below the matching number {nu}")

    inter = pairwise_intersections(fam)
    nu2 = matching_number(inter, budget)
    if r is None:
        r = nu2
    elif r < nu2:
        raise GeometryError(f"supplied r={r} is below the matching number {nu2} of the pairwise intersections")
    k = r // 2

    lines = solve_lines(inter, k=k, nu=nu2, budget=budget, **line_kwargs)
    if len(lines.lines) > k + 1:  # pragma: no cover - solve_lines raises first
        raise PipelineCheckFailed(f"{len(lines.lines)} lines exceed k + 1 = {k + 1}")

    traces = trace_on_lines(fam, list(lines.lines))
    empty = [t.owner for t in traces if t.is_empty()]
    if empty:
        raise PipelineCheckFailed(f"sets with empty traces: {empty}")
    trace_nu = len(d_interval_matching(traces, budget))
    if trace_nu > p:
        raise PipelineCheckFailed(f"trace family has {trace_nu} pairwise disjoint members, more than p={p}")

    pts = pierce_d_intervals(traces, budget)
    planar = lift_points(pts, list(lines.lines))
    pts.planar = planar
    cert = verify_point_transversal(fam, planar)
    if not cert.ok:
        raise PipelineCheckFailed(f"lifted points miss set {cert.violation}")
    bound = point_bound(p, r)
    return PipelineReport(p, r, k, lines, pts, planar, traces, trace_nu, bound, cert.assignment)
