"""Exact minimum line and point transversals for small families.

These are ground truth for the solvers, so they use plain exhaustive
search (iterative deepening over candidate subsets) instead of the
branch-and-bound used elsewhere.  The two sampling searches at the bottom
exist only to cross-check the candidate sets.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from .geometry import Family, GeometryError, Line2, Point2, intersect_convex, point_in_set
from .line_solver import candidate_lines, coverage_masks
from .setcover import reduce_masks

DEFAULT_CAP = 16


class OracleCapExceeded(GeometryError):
    pass


def _check_cap(fam: Family, cap: int) -> None:
    if len(fam) > cap:
        raise OracleCapExceeded(f"oracle limited to {cap} sets, got {len(fam)}")


def exhaustive_cover(n: int, masks: list[int]) -> list[int]:
    """Smallest subfamily covering ``range(n)``, by increasing subset size."""
    if n == 0:
        return []
    full = (1 << n) - 1
    keep = reduce_masks(masks)
    for size in range(1, n + 1):
        for combo in itertools.combinations(keep, size):
            acc = 0
            for i in combo:
                acc |= masks[i]
            if acc & full == full:
                return list(combo)
    raise ValueError("candidates cannot cover the family")


def exact_min_lines(fam: Family, cap: int = DEFAULT_CAP) -> tuple[int, list[Line2]]:
    """Line-piercing number and a witness, over lines through vertex pairs."""
    _check_cap(fam, cap)
    if len(fam) == 0:
        return 0, []
    fam = fam.exact()
    lines = candidate_lines(fam)
    chosen = exhaustive_cover(len(fam), coverage_masks(fam, lines))
    return len(chosen), [lines[i] for i in chosen]


def point_candidates(fam: Family) -> list[Point2]:
    """Vertices of the sets and of all pairwise intersections."""
    pts = {p for s in fam.sets for p in s.vertices}
    sets = fam.sets
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            x = intersect_convex(sets[i], sets[j])
            if x is not None:
                pts.update(x.vertices)
    return sorted(pts)


def exact_min_points(fam: Family, cap: int = DEFAULT_CAP) -> tuple[int, list[Point2]]:
    """Piercing number and a witness.

    Any piercing point can slide to a vertex of the intersection of the sets
    it pierces, and such vertices are set vertices or crossings of two edges,
    i.e. vertices of pairwise intersections.
    """
    _check_cap(fam, cap)
    if len(fam) == 0:
        return 0, []
    fam = fam.exact()
    pts = point_candidates(fam)
    masks = []
    for p in pts:
        m = 0
        for i, s in enumerate(fam.sets):
            if point_in_set(p, s):
                m |= 1 << i
        masks.append(m)
    chosen = exhaustive_cover(len(fam), masks)
    return len(chosen), [pts[i] for i in chosen]


# -- sampling cross-checks ------------------------------------------------------


def _float_polys(fam: Family):
    return [np.array([[float(p.x), float(p.y)] for p in s.vertices]) for s in fam.sets]


def _inside_mask(poly: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    if len(poly) < 3:
        return np.zeros(xs.shape, dtype=bool)
    ok = np.ones(xs.shape, dtype=bool)
    for i in range(len(poly)):
        ax, ay = poly[i]
        bx, by = poly[(i + 1) % len(poly)]
        ok &= (bx - ax) * (ys - ay) - (by - ay) * (xs - ax) >= -1e-12
    return ok


def grid_min_points(fam: Family, pitch: float = 0.01) -> int:
    """Minimum piercing count using only points of a square grid (normalized frame).

    Sets without interior are never hit by a generic grid, so this brute
    force only applies to families of proper polygons.
    """
    from .geometry import normalize_to_disk

    norm = normalize_to_disk(fam.exact())
    polys = _float_polys(norm)
    if any(len(p) < 3 for p in polys):
        raise GeometryError("grid brute force needs polygons with interior")
    ticks = np.arange(-1.0, 1.0 + pitch / 2, pitch)
    xs, ys = np.meshgrid(ticks, ticks)
    xs, ys = xs.ravel(), ys.ravel()
    codes = np.zeros(xs.shape, dtype=np.int64)
    for i, poly in enumerate(polys):
        codes |= _inside_mask(poly, xs, ys).astype(np.int64) << i
    masks = [int(c) for c in np.unique(codes) if c]
    return len(exhaustive_cover(len(fam), masks))


def _angle_masks(polys, thetas: np.ndarray) -> np.ndarray:
    """Coverage masks of the maximal line bundles at each angle.

    At a fixed normal angle every set projects to an interval of offsets;
    a maximal group of sets met by one line contains some set's left end,
    so the masks "intervals holding left end j" are all the maximal ones.
    """
    normal = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
    lo = np.stack([(p @ normal.T).min(axis=0) for p in polys], axis=1)  # (T, n)
    hi = np.stack([(p @ normal.T).max(axis=0) for p in polys], axis=1)
    held = (lo[:, None, :] <= lo[:, :, None]) & (lo[:, :, None] <= hi[:, None, :])  # (T, j, i)
    weights = np.left_shift(np.int64(1), np.arange(len(polys), dtype=np.int64))
    return held.astype(np.int64) @ weights  # (T, n)


def random_line_min_count(fam: Family, seed: int = 0, restarts: int = 20000, rounds: int = 6) -> int:
    """Smallest number of lines covering the family found by angle search.

    Random restarts draw line angles uniformly; each round then resamples
    around the angles that produced the richest masks with a shrinking
    spread.  Offsets are optimal for each sampled angle, so the search is
    continuous in the line parameters and never looks at vertex pairs.
    The count found is an upper bound on the line-piercing number.
    """
    rng = np.random.default_rng(seed)
    polys = _float_polys(fam)
    n = len(polys)
    if n == 0:
        return 0
    thetas = rng.uniform(0.0, math.pi, restarts)
    seen: set[int] = set()
    spread = 0.05
    for _ in range(rounds):
        masks = _angle_masks(polys, thetas)
        seen.update(int(m) for m in np.unique(masks))
        sizes = np.vectorize(lambda m: bin(int(m)).count("1"))(masks.max(axis=1))
        top = thetas[np.argsort(-sizes, kind="stable")[: max(1, restarts // 20)]]
        thetas = (np.repeat(top, 20) + rng.normal(0.0, spread, 20 * len(top))) % math.pi
        spread /= 4
    return len(exhaustive_cover(n, sorted(seen)))


def polygon_width(s) -> float:
    """Minimum width of a convex set (0 for points and segments)."""
    if len(s.vertices) < 3:
        return 0.0
    v = np.array([[float(p.x), float(p.y)] for p in s.vertices])
    e = np.roll(v, -1, axis=0) - v
    nrm = np.stack([-e[:, 1], e[:, 0]], axis=1)
    nrm /= np.linalg.norm(nrm, axis=1)[:, None]
    proj = v @ nrm.T
    return float((proj.max(axis=0) - proj.min(axis=0)).min())


def grid_resolvable(fam: Family, pitch: float = 0.01, factor: float = 2.5) -> bool:
    """True when every nonempty intersection of members is wide enough to hold a grid point.

    A convex region of width ``w`` contains a disk of radius ``w / 3``; a
    square grid of pitch ``h`` meets every disk of radius ``h / sqrt 2``, so
    ``w >= 2.5 h`` suffices.  On such families the grid brute force is exact.
    """
    from .geometry import normalize_to_disk

    norm = normalize_to_disk(fam.exact())
    sets = norm.sets
    need = factor * pitch

    def extend(region, start):
        for j in range(start, len(sets)):
            nxt = intersect_convex(region, sets[j]) if region is not None else sets[j]
            if nxt is None:
                continue
            if polygon_width(nxt) < need:
                return False
            if not extend(nxt, j + 1):
                return False
        return True

    return extend(None, 0)
