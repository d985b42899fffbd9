"""Line transversals: simplex grid search over chord systems, exact fallback.

``solve_lines`` looks for a simplex point whose chord system leaves no set
strictly inside a region; the chords through such a point pierce the whole
family.  Such points exist by the KKM argument but may form a set with
empty interior, so the grid search is backed by an exact set cover over
lines through pairs of vertices.

Candidate sufficiency: a line meeting some convex polygons can be
translated until it touches a vertex and then rotated about that vertex
until it touches a second one without losing any polygon, so lines through
two family vertices (or, with a single distinct vertex, an axis line through
it) realize every coverage pattern.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import _kernels
from .config_space import chord_system, cover_label
from .geometry import EPS, Certificate, Family, GeometryError, Line2, Point2, intersects, line_meets_set, normalize_to_disk
from .matching import matching_number
from .setcover import DEFAULT_NODE_BUDGET, min_set_cover

log = logging.getLogger(__name__)

KKM_SEARCH = "KKM_SEARCH"
COMBINATORIAL = "COMBINATORIAL"

DEFAULT_N_START = 8
DEFAULT_N_MAX = 512
DEFAULT_MAX_GRID_POINTS = 200_000
DEFAULT_MARGIN = Fraction(1, 10)
RAINBOW_CAP = 200_000


class SearchExhausted(RuntimeError):
    """The grid schedule finished without a piercing chord system."""


class InfeasibleK(RuntimeError):
    """No ``k + 1`` lines pierce the family; ``best`` holds the smallest cover found."""

    def __init__(self, k: int, best: "LineTransversal"):
        super().__init__(f"no transversal with {k + 1} lines; minimum found uses {len(best.lines)}")
        self.k = k
        self.best = best


class RainbowViolation(ValueError):
    """A selection of one set per colour class with all members pairwise disjoint."""

    def __init__(self, selection: list[str]):
        super().__init__(f"rainbow condition fails for pairwise disjoint selection {selection}")
        self.selection = selection


@dataclass
class LineTransversal:
    lines: tuple[Line2, ...]
    assignment: dict
    source: str
    x_star: tuple | None = None
    k: int | None = None
    nu: int | None = None
    grid_points: int = 0


def verify_line_transversal(fam: Family, lines) -> Certificate:
    """Exact check that every member meets one of ``lines``; reports the first miss."""
    lines = [ln.exact() for ln in lines]
    cert = Certificate()
    for s in fam.sets:
        sx = s.exact()
        for i, ln in enumerate(lines):
            if line_meets_set(ln, sx):
                cert.assignment[s.id] = i
                break
        else:
            cert.violation = s.id
            return cert
    return cert


# -- grid over the simplex -------------------------------------------------


def compositions(n: int, m: int):
    """Integer vectors of length ``m`` summing to ``n``, lexicographic order."""
    for bars in itertools.combinations(range(n + m - 1), m - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(n + m - 2 - prev)
        yield parts


def resolution_schedule(m: int, n_start: int, n_max: int, max_points: int) -> list[int]:
    """Grid resolutions that fit the point budget (coarser points are not revisited)."""
    out = []
    total = 0
    n = n_start
    while n <= n_max:
        total += comb(n + m - 1, m - 1)
        if total > max_points:
            break
        out.append(n)
        n *= 2
    return out


def _grid_batches(n: int, m: int, skip_even: bool, batch: int = 20_000):
    it = compositions(n, m)
    if skip_even:
        it = (c for c in it if any(v % 2 for v in c))
    while True:
        chunk = list(itertools.islice(it, batch))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.int64)


def _grid_search(groups, m: int, n_start: int, n_max: int, max_points: int, eps: float):
    """Yield ``(x, group, evaluated)`` for grid points whose chords pierce a group.

    ``groups`` is a list of normalized set lists.  Float screening selects
    candidates; exact acceptance is the caller's job.  Yields in
    lexicographic order per resolution, smallest group index first.
    """
    all_sets = [s for g in groups for s in g]
    verts, nverts = _kernels.pack_vertices(all_sets)
    bounds = np.cumsum([0] + [len(g) for g in groups])
    evaluated = 0
    for level, n in enumerate(resolution_schedule(m, n_start, n_max, max_points)):
        for parts in _grid_batches(n, m, skip_even=level > 0):
            cum = np.zeros((len(parts), m + 1))
            cum[:, 1:] = np.cumsum(parts, axis=1) / n
            hits = _kernels.grid_hits(cum, verts, nverts, eps)
            evaluated += len(parts)
            good = np.stack(
                [hits[:, bounds[j] : bounds[j + 1]].all(axis=1) for j in range(len(groups))], axis=1
            )
            for row in np.flatnonzero(good.any(axis=1)):
                x = tuple(Fraction(int(v), n) for v in parts[row])
                for j in np.flatnonzero(good[row]):
                    yield x, int(j), evaluated


# -- combinatorial candidates ------------------------------------------------


def candidate_lines(fam: Family) -> list[Line2]:
    """Lines through every pair of distinct vertices plus axis lines through each vertex."""
    pts = sorted({p.exact() for s in fam.sets for p in s.vertices})
    lines = [Line2(a, b) for a, b in itertools.combinations(pts, 2)]
    one = Fraction(1)
    for p in pts:
        lines.append(Line2(p, Point2(p.x + one, p.y)))
        lines.append(Line2(p, Point2(p.x, p.y + one)))
    return lines


def coverage_masks(fam: Family, lines: list[Line2]) -> list[int]:
    """Bitmask of members met by each line; float screen, exact on near-ties."""
    sets = [s.exact() for s in fam.sets]
    if not lines or not sets:
        return [0] * len(lines)
    verts, nverts = _kernels.pack_vertices(sets)
    la = np.array([[float(l.a.x), float(l.a.y)] for l in lines])
    lb = np.array([[float(l.b.x), float(l.b.y)] for l in lines])
    d = lb - la
    valid = np.arange(verts.shape[1])[None, :] < nverts[:, None]
    masks = []
    for li in range(len(lines)):
        side = d[li, 0] * (verts[..., 1] - la[li, 1]) - d[li, 1] * (verts[..., 0] - la[li, 0])
        scale = 1.0 + np.abs(d[li]).sum() * (1.0 + np.abs(verts).sum(axis=2) + np.abs(la[li]).sum())
        unsure = (np.abs(side) <= 1e-9 * scale) & valid
        pos = ((side > 0) & valid).any(axis=1)
        neg = ((side < 0) & valid).any(axis=1)
        meets = pos & neg
        mask = 0
        for si in range(len(sets)):
            if unsure[si].any():
                hit = line_meets_set(lines[li], sets[si])
            else:
                hit = bool(meets[si])
            if hit:
                mask |= 1 << si
        masks.append(mask)
    return masks


def combinatorial_lines(fam: Family, budget: int = DEFAULT_NODE_BUDGET) -> list[Line2]:
    """A minimum set of candidate lines piercing ``fam`` (exact)."""
    if len(fam) == 0:
        return []
    lines = candidate_lines(fam)
    masks = coverage_masks(fam, lines)
    chosen = min_set_cover(len(fam), masks, budget)
    return [lines[i] for i in chosen]


# -- solvers ---------------------------------------------------------------


def _accept(norm_sets, x):
    """Exact acceptance of grid point ``x``: the chords pierce ``norm_sets``."""
    cs = chord_system(x, exact=True)
    if cover_label(cs, norm_sets) is not None:
        return None
    used = [ln for ln in cs.chords if not ln.degenerate]
    return used


def solve_lines(
    fam: Family,
    k="auto",
    method: str = "both",
    n_max: int = DEFAULT_N_MAX,
    n_start: int = DEFAULT_N_START,
    max_grid_points: int = DEFAULT_MAX_GRID_POINTS,
    margin=DEFAULT_MARGIN,
    eps: float = EPS,
    budget: int = DEFAULT_NODE_BUDGET,
    nu: int | None = None,
) -> LineTransversal:
    """At most ``k + 1`` lines piercing ``fam``; ``k="auto"`` uses ``nu // 2``.

    ``method`` is ``"kkm"`` (grid only), ``"combinatorial"`` (set cover only)
    or ``"both"`` (grid, then set cover).  Returned lines are in the
    family's original coordinates and verified exactly.
    """
    if len(fam) == 0:
        raise GeometryError("solve_lines needs a nonempty family")
    if method not in ("kkm", "combinatorial", "both"):
        raise ValueError(f"unknown method {method!r}")
    if k == "auto" or k is None:
        if nu is None:
            nu = matching_number(fam)
        k = nu // 2
    k = int(k)
    if k < 0:
        raise ValueError("k must be nonnegative")
    orig = fam.exact()
    evaluated = 0
    if method in ("kkm", "both"):
        norm = normalize_to_disk(orig, margin)
        for x, _, evaluated in _grid_search([norm.sets], 2 * k + 2, n_start, n_max, max_grid_points, eps):
            chords = _accept(norm.sets, x)
            if chords is None:
                continue
            lines = tuple(norm.line_to_original(ln) for ln in chords)
            cert = verify_line_transversal(orig, lines)
            if cert.ok:
                return LineTransversal(lines, cert.assignment, KKM_SEARCH, x, k, nu, evaluated)
            log.warning("grid point %s passed in normalized coordinates but failed after de-normalization", x)
        if method == "kkm":
            raise SearchExhausted(f"no piercing chord system found on the grid for k={k}")
    lines = tuple(combinatorial_lines(orig, budget))
    cert = verify_line_transversal(orig, lines)
    if not cert.ok:  # pragma: no cover - candidate covers are exact by construction
        raise AssertionError(f"combinatorial cover misses {cert.violation}")
    result = LineTransversal(lines, cert.assignment, COMBINATORIAL, None, k, nu, evaluated)
    if len(lines) > k + 1:
        raise InfeasibleK(k, result)
    return result


def rainbow_violation(families: list[Family], cap: int = RAINBOW_CAP):
    """First pairwise-disjoint rainbow selection (list of ids), ``None`` if none.

    Returns ``False`` when the product of class sizes exceeds ``cap`` and the
    check was skipped.
    """
    sizes = [len(f) for f in families]
    total = 1
    for s in sizes:
        total *= s
    if total == 0:
        return []
    if total > cap:
        return False
    sets = [s for f in families for s in f.sets]
    offsets = np.cumsum([0] + sizes)
    n = len(sets)
    meet = [[False] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if intersects(sets[a], sets[b]):
                meet[a][b] = meet[b][a] = True

    # depth-first over classes, pruning as soon as two chosen sets meet
    chosen: list[int] = []

    def extend(c: int):
        if c == len(families):
            return [sets[i].id for i in chosen]
        for i in range(offsets[c], offsets[c + 1]):
            if any(meet[i][j] for j in chosen):
                continue
            chosen.append(i)
            found = extend(c + 1)
            if found:
                return found
            chosen.pop()
        return None

    return extend(0)


def solve_colorful(
    families: list[Family],
    check_rainbow: bool = True,
    n_max: int = DEFAULT_N_MAX,
    n_start: int = DEFAULT_N_START,
    max_grid_points: int = DEFAULT_MAX_GRID_POINTS,
    margin=DEFAULT_MARGIN,
    eps: float = EPS,
    budget: int = DEFAULT_NODE_BUDGET,
):
    """Colour class index ``j`` (1-based) and a verified ``k``-line transversal of it.

    ``families`` holds ``2k`` classes such that every rainbow selection has
    two intersecting members.  Returns ``(j, transversal, rainbow_checked)``.
    """
    if len(families) < 2 or len(families) % 2:
        raise ValueError("solve_colorful needs an even number (>= 2) of colour classes")
    k = len(families) // 2
    rainbow_checked = False
    if check_rainbow:
        bad = rainbow_violation(families)
        if bad:
            raise RainbowViolation(bad)
        if bad == []:
            # some class is empty: it is pierced by zero lines
            j = next(i for i, f in enumerate(families) if len(f) == 0)
            return j + 1, LineTransversal((), {}, COMBINATORIAL, None, k), True
        rainbow_checked = bad is None
        if not rainbow_checked:
            log.warning("rainbow condition not checked: too many selections")
    exact_fams = [f.exact() for f in families]
    union = Family(tuple(s for f in exact_fams for s in f.sets))
    norm = normalize_to_disk(union, margin)
    groups = []
    pos = 0
    for f in exact_fams:
        groups.append(norm.sets[pos : pos + len(f)])
        pos += len(f)
    evaluated = 0
    for x, j, evaluated in _grid_search(groups, 2 * k, n_start, n_max, max_grid_points, eps):
        chords = _accept(groups[j], x)
        if chords is None:
            continue
        lines = tuple(norm.line_to_original(ln) for ln in chords)
        cert = verify_line_transversal(exact_fams[j], lines)
        if cert.ok:
            return j + 1, LineTransversal(lines, cert.assignment, KKM_SEARCH, x, k, None, evaluated), rainbow_checked
    for j, f in enumerate(exact_fams):
        lines = tuple(combinatorial_lines(f, budget))
        if len(lines) <= k:
            cert = verify_line_transversal(f, lines)
            return j + 1, LineTransversal(lines, cert.assignment, COMBINATORIAL, None, k, None, evaluated), rainbow_checked
    raise InfeasibleK(k - 1, LineTransversal((), {}, COMBINATORIAL, None, k))
