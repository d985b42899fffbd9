"""Deterministic SVG drawings of families, chord systems, and transversals.

Everything is drawn in the normalized frame (unit circle).  Regions are
painted from the last index down to the first, so the colour visible at a
point is that of the least region holding it, which is its region label.
"""
from __future__ import annotations

import math
from pathlib import Path

from .config_space import ChordSystem
from .geometry import Family, Line2, Point2, is_normalized, normalize_to_disk

PALETTE = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00",
    "#a65628", "#f781bf", "#999999", "#66c2a5", "#fc8d62",
]
CIRCLE_SEGMENTS = 256


def _f(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _clip(poly: list[tuple[float, float]], a, b, keep: int) -> list[tuple[float, float]]:
    """Sutherland-Hodgman clip of ``poly`` to the side ``keep`` of line ``ab``."""

    def side(p):
        return keep * ((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]))

    out = []
    for i in range(len(poly)):
        p, q = poly[i], poly[(i + 1) % len(poly)]
        sp, sq = side(p), side(q)
        if sp >= 0:
            out.append(p)
        if (sp >= 0) != (sq >= 0):
            w = sp / (sp - sq)
            out.append((p[0] + (q[0] - p[0]) * w, p[1] + (q[1] - p[1]) * w))
    return out


def region_polygons(cs: ChordSystem) -> dict[int, list[tuple[float, float]]]:
    """Float polygons approximating ``P_i`` for the nonempty regions."""
    disk = [
        (math.cos(2 * math.pi * j / CIRCLE_SEGMENTS), math.sin(2 * math.pi * j / CIRCLE_SEGMENTS))
        for j in range(CIRCLE_SEGMENTS)
    ]
    out = {}
    for i in range(1, cs.m + 1):
        cons = cs.region_constraints(i)
        if cons is None:
            continue
        poly = disk
        for c, ref in cons:
            ln = cs.chords[c]
            poly = _clip(poly, ln.a.as_float(), ln.b.as_float(), ref)
            if len(poly) < 3:
                break
        if len(poly) >= 3:
            out[i] = poly
    return out


def _line_in_view(a, b, r: float = 1.15):
    """Segment of the line ``ab`` inside the disk of radius ``r``, or None."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    qa = dx * dx + dy * dy
    if qa == 0:
        return None
    qb = 2 * (a[0] * dx + a[1] * dy)
    qc = a[0] ** 2 + a[1] ** 2 - r * r
    disc = qb * qb - 4 * qa * qc
    if disc <= 0:
        return None
    sq = math.sqrt(disc)
    t0, t1 = (-qb - sq) / (2 * qa), (-qb + sq) / (2 * qa)
    return (a[0] + t0 * dx, a[1] + t0 * dy), (a[0] + t1 * dx, a[1] + t1 * dy)


def _points_attr(poly) -> str:
    return " ".join(f"{_f(x)},{_f(y)}" for x, y in poly)


def svg_string(
    fam: Family,
    chords: ChordSystem | None = None,
    lines: list[Line2] | None = None,
    points: list[Point2] | None = None,
    margin=0.1,
) -> str:
    """SVG document text; ``lines`` and ``points`` are in the family's original frame."""
    norm = fam if len(fam) == 0 or is_normalized(fam) else normalize_to_disk(fam, margin)
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.2 -1.2 2.4 2.4" width="600" height="600">',
        '<g transform="scale(1,-1)">',
        '<circle cx="0" cy="0" r="1" fill="none" stroke="#000" stroke-width="0.006"/>',
    ]
    if chords is not None:
        polys = region_polygons(chords)
        out.append('<g id="regions" fill-opacity="0.18" stroke="none">')
        for i in sorted(polys, reverse=True):
            out.append(f'<polygon data-region="{i}" fill="{PALETTE[(i - 1) % len(PALETTE)]}" points="{_points_attr(polys[i])}"/>')
        out.append("</g>")
        out.append('<g id="chords" stroke="#333" stroke-width="0.006">')
        for c, ln in enumerate(chords.chords):
            (ax, ay), (bx, by) = ln.a.as_float(), ln.b.as_float()
            out.append(f'<line data-chord="{c}" x1="{_f(ax)}" y1="{_f(ay)}" x2="{_f(bx)}" y2="{_f(by)}"/>')
        out.append("</g>")
    out.append('<g id="sets" fill="#1f4e79" fill-opacity="0.35" stroke="#1f4e79" stroke-width="0.005">')
    for s in norm.sets:
        pts = [p.as_float() for p in s.vertices]
        if len(pts) >= 3:
            out.append(f'<polygon data-id="{s.id}" points="{_points_attr(pts)}"/>')
        elif len(pts) == 2:
            (ax, ay), (bx, by) = pts
            out.append(f'<line data-id="{s.id}" x1="{_f(ax)}" y1="{_f(ay)}" x2="{_f(bx)}" y2="{_f(by)}" stroke-width="0.012"/>')
        else:
            (x, y) = pts[0]
            out.append(f'<circle data-id="{s.id}" cx="{_f(x)}" cy="{_f(y)}" r="0.01"/>')
    out.append("</g>")
    if lines:
        out.append('<g id="transversal-lines" stroke="#d62728" stroke-width="0.008">')
        for i, ln in enumerate(lines):
            a = norm.to_normalized(ln.a).as_float()
            b = norm.to_normalized(ln.b).as_float()
            seg = _line_in_view(a, b)
            if seg is None:
                continue
            (x1, y1), (x2, y2) = seg
            out.append(f'<line data-line="{i}" x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}"/>')
        out.append("</g>")
    if points:
        out.append('<g id="transversal-points" fill="#d62728">')
        for i, p in enumerate(points):
            x, y = norm.to_normalized(p).as_float()
            out.append(f'<circle data-point="{i}" cx="{_f(x)}" cy="{_f(y)}" r="0.018"/>')
        out.append("</g>")
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(fam: Family, path, chords=None, lines=None, points=None, margin=0.1) -> None:
    Path(path).write_text(svg_string(fam, chords, lines, points, margin))
