"""Deterministic test families: regular polygon edges and seeded random polygons."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .config_space import circle_point
from .geometry import ConvexSet, Family, Point2, convex_hull, convex_set, get_mode, intersects
from .matching import intersection_graph, isolated_sets

SNAP_DENOMINATOR = 10**6


class GeneratorError(RuntimeError):
    pass


def regular_gon_edges(p: int, mode: str | None = None) -> Family:
    """The ``2p + 1`` edges of the regular polygon inscribed in the unit circle.

    The first vertex sits at angle 0.  In exact mode the vertices are
    rational points exactly on the circle (half-angle tangent snapping), so
    adjacent edges share vertices exactly.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    mode = mode or get_mode()
    n = 2 * p + 1
    if mode == "exact":
        verts = [circle_point(Fraction(j, n), exact=True) for j in range(n)]
    else:
        verts = [Point2(math.cos(2 * math.pi * j / n), math.sin(2 * math.pi * j / n)) for j in range(n)]
    edges = tuple(ConvexSet(f"e{j}", (verts[j], verts[(j + 1) % n])) for j in range(n))
    return Family(edges)


def _snap(v: float, mode: str):
    if mode == "exact":
        return Fraction(v).limit_denominator(SNAP_DENOMINATOR)
    return float(v)


def random_polygon(rng: np.random.Generator, center, radius: float, nverts: int, mode: str, contains=None) -> list[Point2]:
    """Convex polygon with vertices at sorted random angles on a circle.

    ``contains`` adds a point to the hull, so the polygon is guaranteed to hold it.
    """
    ang = np.sort(rng.uniform(0.0, 2 * math.pi, nverts))
    pts = [
        Point2(_snap(center[0] + radius * math.cos(a), mode), _snap(center[1] + radius * math.sin(a), mode))
        for a in ang
    ]
    if contains is not None:
        pts.append(Point2(_snap(contains[0], mode), _snap(contains[1], mode)))
    return convex_hull(pts)


def random_family(
    seed: int,
    n: int,
    *,
    radius=(0.1, 0.45),
    nverts=(3, 8),
    box: float = 1.0,
    no_isolated: bool = False,
    pairwise: bool = False,
    common_point: bool = False,
    rainbow: int = 0,
    retries: int = 500,
    mode: str | None = None,
) -> Family:
    """Reproducible random convex polygons with optional post-filters.

    Filters: ``no_isolated`` resamples each new set until it meets an
    earlier one (so the family size stays ``n``); ``pairwise`` resamples until every pair
    meets; ``common_point`` makes all sets contain one point; ``rainbow=2k``
    builds ``2k`` colour classes whose sets each contain one of ``2k - 1``
    anchors, so every rainbow selection repeats an anchor.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    mode = mode or get_mode()
    rng = np.random.default_rng(seed)

    def draw(contains=None):
        c = rng.uniform(-box, box, 2)
        r = rng.uniform(*radius)
        k = int(rng.integers(nverts[0], nverts[1] + 1))
        if contains is not None:
            # keep the anchor within reach of the polygon
            c = np.asarray(contains) + rng.uniform(-r, r, 2) * 0.7
        return random_polygon(rng, c, r, k, mode, contains)

    sets: list[ConvexSet] = []
    colors = None
    if rainbow:
        if rainbow < 2 or rainbow % 2:
            raise ValueError("rainbow needs an even number of colour classes")
        anchors = [rng.uniform(-box, box, 2) for _ in range(rainbow - 1)]
        colors = {}
        order = rng.permutation(max(n, rainbow))
        for i in range(max(n, rainbow)):
            a = anchors[int(rng.integers(len(anchors)))]
            s = convex_set(f"s{i}", draw(contains=a))
            sets.append(s)
            colors[s.id] = int(order[i] % rainbow) + 1
    elif common_point:
        c = rng.uniform(-box / 2, box / 2, 2)
        sets = [convex_set(f"s{i}", draw(contains=c)) for i in range(n)]
    elif pairwise:
        for i in range(n):
            for _ in range(retries):
                s = convex_set(f"s{i}", draw())
                fam = Family(tuple(sets) + (s,))
                g = intersection_graph(fam)
                if g.degree(len(sets)) == len(sets):
                    sets.append(s)
                    break
            else:
                raise GeneratorError(f"could not place a set meeting all of {len(sets)} others")
    elif no_isolated:
        if n < 2:
            raise GeneratorError("a single set is always isolated")
        sets = [convex_set("s0", draw())]
        for i in range(1, n):
            for _ in range(retries):
                s = convex_set(f"s{i}", draw())
                if any(intersects(s, t) for t in sets):
                    sets.append(s)
                    break
            else:
                raise GeneratorError(f"could not place set {i} meeting an earlier one")
    else:
        sets = [convex_set(f"s{i}", draw()) for i in range(n)]

    fam = Family(tuple(sets), colors)
    if no_isolated and isolated_sets(fam):
        raise GeneratorError(f"isolated sets remain: {isolated_sets(fam)}")
    return fam


def random_intervals(rng: np.random.Generator, n: int, lo: float = 0.0, hi: float = 10.0, max_len: float = 3.0):
    """``n`` closed intervals with integer-grid endpoints (exact ties are common)."""
    out = []
    for i in range(n):
        a = int(rng.integers(int(lo * 2), int(hi * 2))) / 2
        b = a + int(rng.integers(0, int(max_len * 2) + 1)) / 2
        out.append((i, Fraction(a).limit_denominator(), Fraction(b).limit_denominator()))
    return out


def random_d_intervals(rng: np.random.Generator, n: int, d: int, miss: float = 0.3, **kw) -> list:
    """``n`` random d-intervals; each component is dropped with probability ``miss``.

    Every member keeps at least one component.
    """
    from .intervals import MultiInterval

    out = []
    for i in range(n):
        comps = [iv[1:] for iv in random_intervals(rng, d, **kw)]
        keep = rng.uniform(size=d) >= miss
        if not keep.any():
            keep[int(rng.integers(d))] = True
        out.append(MultiInterval(f"m{i}", tuple(c if k else None for c, k in zip(comps, keep))))
    return out
