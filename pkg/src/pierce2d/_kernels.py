"""Float hot loops: grid screening of chord systems and batched region labels.

Each kernel exists twice, a numba ``@njit`` loop and a vectorized numpy
version with the same signature.  Set ``PIERCE2D_NO_NUMBA=1`` to force the
numpy path (also used when numba is not importable).
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("PIERCE2D_NO_NUMBA", "") not in ("1", "true", "yes")

TWO_PI = 2.0 * np.pi


def chord_endpoints_np(cum: np.ndarray) -> np.ndarray:
    """(G, m+1) cumulative parameters -> (G, m/2, 4) chord endpoint coordinates."""
    m = cum.shape[1] - 1
    h = m // 2
    ang = TWO_PI * cum[:, :m]
    fx, fy = np.cos(ang), np.sin(ang)
    out = np.empty((cum.shape[0], h, 4))
    out[:, :, 0] = fx[:, :h]
    out[:, :, 1] = fy[:, :h]
    out[:, :, 2] = fx[:, h:]
    out[:, :, 3] = fy[:, h:]
    return out


def grid_hits_np(cum, verts, nverts, eps):
    """hits[g, s]: set ``s`` meets some chord of grid point ``g`` (within eps)."""
    ch = chord_endpoints_np(cum)
    ax, ay, bx, by = ch[..., 0], ch[..., 1], ch[..., 2], ch[..., 3]
    dx, dy = bx - ax, by - ay
    live = (dx * dx + dy * dy) > 1e-24  # point-chords lie on the circle, outside every set
    vx = verts[None, None, :, :, 0]
    vy = verts[None, None, :, :, 1]
    side = dx[..., None, None] * (vy - ay[..., None, None]) - dy[..., None, None] * (vx - ax[..., None, None])
    valid = np.arange(verts.shape[1])[None, :] < nverts[:, None]
    valid = valid[None, None]
    pos = np.any((side > eps) & valid, axis=3)
    neg = np.any((side < -eps) & valid, axis=3)
    zero = np.any((np.abs(side) <= eps) & valid, axis=3)
    meets = (zero | (pos & neg)) & live[..., None]
    return np.any(meets, axis=1)


def region_labels_np(px, py, chords, live, ref_chord, ref_sign, empty, eps):
    """Label each point 0 (on a chord) or the least region index 1..m containing it."""
    ax, ay, bx, by = chords[:, 0], chords[:, 1], chords[:, 2], chords[:, 3]
    side = (bx - ax)[None, :] * (py[:, None] - ay[None, :]) - (by - ay)[None, :] * (px[:, None] - ax[None, :])
    sgn = np.where(side > eps, 1, np.where(side < -eps, -1, 0))
    on_l = np.any((sgn == 0) & live[None, :], axis=1)
    m = ref_chord.shape[0]
    labels = np.zeros(px.shape[0], dtype=np.int64)
    todo = ~on_l
    for i in range(m):
        if empty[i]:
            continue
        inside = np.ones(px.shape[0], dtype=bool)
        for j in range(2):
            c = ref_chord[i, j]
            if c >= 0:
                inside &= sgn[:, c] == ref_sign[i, j]
        hit = todo & inside
        labels[hit] = i + 1
        todo &= ~hit
    labels[todo] = -1
    return labels


if HAVE_NUMBA:

    @njit(cache=True)
    def _grid_hits_nb(cum, verts, nverts, eps):
        g_count = cum.shape[0]
        m = cum.shape[1] - 1
        h = m // 2
        n = verts.shape[0]
        hits = np.zeros((g_count, n), dtype=np.bool_)
        ax = np.empty(h)
        ay = np.empty(h)
        dx = np.empty(h)
        dy = np.empty(h)
        for g in range(g_count):
            for c in range(h):
                a = TWO_PI * cum[g, c]
                b = TWO_PI * cum[g, c + h]
                ax[c] = np.cos(a)
                ay[c] = np.sin(a)
                dx[c] = np.cos(b) - ax[c]
                dy[c] = np.sin(b) - ay[c]
            for s in range(n):
                found = False
                for c in range(h):
                    if dx[c] * dx[c] + dy[c] * dy[c] <= 1e-24:
                        continue
                    pos = False
                    neg = False
                    for v in range(nverts[s]):
                        side = dx[c] * (verts[s, v, 1] - ay[c]) - dy[c] * (verts[s, v, 0] - ax[c])
                        if side > eps:
                            pos = True
                        elif side < -eps:
                            neg = True
                        else:
                            pos = True
                            neg = True
                        if pos and neg:
                            break
                    if pos and neg:
                        found = True
                        break
                hits[g, s] = found
        return hits

    @njit(cache=True)
    def _region_labels_nb(px, py, chords, live, ref_chord, ref_sign, empty, eps):
        n = px.shape[0]
        h = chords.shape[0]
        m = ref_chord.shape[0]
        labels = np.empty(n, dtype=np.int64)
        sg = np.empty(h, dtype=np.int64)
        for k in range(n):
            on_l = False
            for c in range(h):
                side = (chords[c, 2] - chords[c, 0]) * (py[k] - chords[c, 1]) - (chords[c, 3] - chords[c, 1]) * (
                    px[k] - chords[c, 0]
                )
                if side > eps:
                    sg[c] = 1
                elif side < -eps:
                    sg[c] = -1
                else:
                    sg[c] = 0
                    if live[c]:
                        on_l = True
            if on_l:
                labels[k] = 0
                continue
            lab = -1
            for i in range(m):
                if empty[i]:
                    continue
                ok = True
                for j in range(2):
                    c = ref_chord[i, j]
                    if c >= 0 and sg[c] != ref_sign[i, j]:
                        ok = False
                if ok:
                    lab = i + 1
                    break
            labels[k] = lab
        return labels


def grid_hits(cum, verts, nverts, eps=1e-9, use_numba=None):
    use = USE_NUMBA if use_numba is None else (use_numba and HAVE_NUMBA)
    cum = np.ascontiguousarray(cum, dtype=np.float64)
    verts = np.ascontiguousarray(verts, dtype=np.float64)
    nverts = np.ascontiguousarray(nverts, dtype=np.int64)
    if use:
        return _grid_hits_nb(cum, verts, nverts, eps)
    return grid_hits_np(cum, verts, nverts, eps)


def region_labels(px, py, chords, live, ref_chord, ref_sign, empty, eps=1e-9, use_numba=None):
    use = USE_NUMBA if use_numba is None else (use_numba and HAVE_NUMBA)
    args = (
        np.ascontiguousarray(px, dtype=np.float64),
        np.ascontiguousarray(py, dtype=np.float64),
        np.ascontiguousarray(chords, dtype=np.float64),
        np.ascontiguousarray(live, dtype=np.bool_),
        np.ascontiguousarray(ref_chord, dtype=np.int64),
        np.ascontiguousarray(ref_sign, dtype=np.int64),
        np.ascontiguousarray(empty, dtype=np.bool_),
        float(eps),
    )
    if use:
        return _region_labels_nb(*args)
    return region_labels_np(*args)


def pack_vertices(sets) -> tuple[np.ndarray, np.ndarray]:
    """Pad the float vertex lists of ``sets`` into a (n, V, 2) array."""
    n = len(sets)
    vmax = max((len(s.vertices) for s in sets), default=1)
    verts = np.zeros((n, vmax, 2))
    nverts = np.zeros(n, dtype=np.int64)
    for i, s in enumerate(sets):
        nverts[i] = len(s.vertices)
        for j, p in enumerate(s.vertices):
            verts[i, j] = (float(p.x), float(p.y))
    return verts, nverts
