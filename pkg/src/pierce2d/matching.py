"""Intersection graphs, matching numbers, (p, 2) checks, and isolated sets."""
from __future__ import annotations

from dataclasses import dataclass

from .geometry import Family, intersect_convex
from .setcover import DEFAULT_NODE_BUDGET, max_independent_set


@dataclass(frozen=True)
class IntersectionGraph:
    ids: tuple[str, ...]
    adjacency: tuple[int, ...]  # neighbour bitmask per vertex

    @property
    def n(self) -> int:
        return len(self.ids)

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def degree(self, i: int) -> int:
        return bin(self.adjacency[i]).count("1")


def intersection_graph(fam: Family) -> IntersectionGraph:
    sets = fam.sets
    adj = [0] * len(sets)
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if intersect_convex(sets[i], sets[j]) is not None:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return IntersectionGraph(tuple(s.id for s in sets), tuple(adj))


def matching_witness(fam: Family | IntersectionGraph, budget: int = DEFAULT_NODE_BUDGET) -> list[str]:
    """Ids of a largest pairwise-disjoint subfamily (lexicographically first by index)."""
    g = fam if isinstance(fam, IntersectionGraph) else intersection_graph(fam)
    return [g.ids[i] for i in max_independent_set(g.n, list(g.adjacency), budget)]


def matching_number(fam: Family | IntersectionGraph, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Largest number of pairwise disjoint members."""
    return len(matching_witness(fam, budget))


def has_pq_property(fam: Family, p: int, q: int = 2, nu: int | None = None) -> bool:
    """Among any ``p`` members some ``q`` intersect; only ``q = 2`` is supported."""
    if q != 2:
        raise NotImplementedError("only the (p, 2) property is supported")
    if p < 2:
        raise ValueError("p must be at least 2")
    if nu is None:
        nu = matching_number(fam) if len(fam) else 0
    return nu < p


def pairwise_intersections(fam: Family) -> Family:
    """Nonempty intersections of all unordered pairs of distinct members."""
    out = []
    sets = fam.sets
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            s = intersect_convex(sets[i], sets[j], id=f"{sets[i].id}&{sets[j].id}")
            if s is not None:
                out.append(s)
    return Family(tuple(out), None, fam.scale, fam.shift)


def isolated_sets(fam: Family | IntersectionGraph) -> list[str]:
    g = fam if isinstance(fam, IntersectionGraph) else intersection_graph(fam)
    return [g.ids[i] for i in range(g.n) if g.adjacency[i] == 0]
