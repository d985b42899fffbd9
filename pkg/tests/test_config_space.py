from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pierce2d import _kernels
from pierce2d.config_space import (
    ON_L,
    chord_system,
    circle_point,
    cover_label,
    region_index,
    region_index_recursive,
    region_indices,
    region_indices_recursive,
)
from pierce2d.geometry import GeometryError, Point2, family, line_meets_set
from strategies import square


def P(x, y):
    return Point2(F(x), F(y))


# -- chord_system ------------------------------------------------------------


def test_quarter_points_give_diameters():
    cs = chord_system([F(1, 4)] * 4)
    assert cs.f == (P(1, 0), P(0, 1), P(-1, 0), P(0, -1))
    assert {frozenset(c) for c in cs.chords} == {frozenset({P(1, 0), P(-1, 0)}), frozenset({P(0, 1), P(0, -1)})}


def test_half_points_give_x_axis():
    cs = chord_system([F(1, 2), F(1, 2)])
    assert cs.f == (P(1, 0), P(-1, 0))
    assert len(cs.chords) == 1


def test_zero_coordinate_collapses_chord():
    cs = chord_system([F(0), F(1)])
    assert cs.f == (P(1, 0), P(1, 0))
    assert cs.chords[0].degenerate


def test_simplex_validation():
    with pytest.raises(GeometryError):
        chord_system([F(1, 2), F(1, 3)])
    with pytest.raises(GeometryError):
        chord_system([F(1, 3)] * 3)
    with pytest.raises(GeometryError):
        chord_system([F(3, 2), F(-1, 2)])


def test_chords_pair_antipodal_indices():
    for m in (2, 4, 6, 8):
        cs = chord_system([F(1, m)] * m)
        h = m // 2
        for i in range(h):
            assert cs.chords[i] == (cs.f[i], cs.f[i + h])
            assert cs.chord_of(i) == cs.chord_of(i + h) == i


@given(st.fractions(0, 1))
def test_exact_circle_points_on_circle(t):
    p = circle_point(t, exact=True)
    assert p.x * p.x + p.y * p.y == 1
    fx, fy = circle_point(t)
    assert abs(float(p.x) - fx) < 1e-9 and abs(float(p.y) - fy) < 1e-9


def test_exact_circle_points_mirror_symmetric():
    for k in range(1, 40):
        t = F(k, 41)
        a, b = circle_point(t, True), circle_point(1 - t, True)
        assert (a.x, a.y) == (b.x, -b.y)


# -- region_index --------------------------------------------------------------


def test_region_index_examples():
    cs = chord_system([F(1, 2), F(1, 2)])
    assert region_index(P(0, F(1, 2)), cs) == 1
    assert region_index(P(0, F(-1, 2)), cs) == 2
    assert region_index(P(F(3, 10), 0), cs) == ON_L


def test_region_index_rejects_outside():
    with pytest.raises(GeometryError):
        region_index(P(1, 0), chord_system([F(1, 2), F(1, 2)]))


simplex_points = st.integers(1, 4).flatmap(
    lambda h: st.lists(st.integers(0, 6), min_size=2 * h, max_size=2 * h)
    .filter(lambda v: sum(v) > 0)
    .map(lambda v: tuple(F(c, sum(v)) for c in v))
)
disk_points = st.tuples(st.integers(-90, 90), st.integers(-90, 90)).filter(lambda v: v[0] ** 2 + v[1] ** 2 < 8100).map(
    lambda v: P(F(v[0], 91), F(v[1], 91))
)


@given(simplex_points, disk_points)
def test_region_index_total_and_matches_recursion(x, p):
    cs = chord_system(x)
    i = region_index(p, cs)
    assert i == region_index_recursive(p, cs)
    assert i == ON_L or x[i - 1] > 0


@given(simplex_points)
def test_float_kernels_agree(x):
    rng = np.random.default_rng(0)
    r = np.sqrt(rng.uniform(0, 0.99, 2000))
    th = rng.uniform(0, 2 * np.pi, 2000)
    pts = np.stack([r * np.cos(th), r * np.sin(th)], axis=1)
    cs = chord_system([float(c) for c in x])
    a = region_indices(pts, cs, use_numba=False)
    assert (a >= 0).all()
    assert all(a[a > 0] <= cs.m) and all(x[i - 1] > 0 for i in set(a[a > 0].tolist()))
    masks = region_indices_recursive(pts, cs)
    assert (masks.sum(axis=0) == (a > 0)).all()
    assert (np.where(a > 0, masks.argmax(axis=0) + 1, 0) == a).all()
    if _kernels.HAVE_NUMBA:
        assert (region_indices(pts, cs, use_numba=True) == a).all()


# -- cover_label -------------------------------------------------------------

RIGHT = square("right", F("0.4"), F("-0.1"), F("0.6"), F("0.1"))
LEFT = square("left", F("-0.6"), F("-0.1"), F("-0.4"), F("0.1"))


def test_cover_label_pierced_by_diameter():
    assert cover_label([F(1, 2), F(1, 2)], family([RIGHT, LEFT])) is None


def test_cover_label_missed_by_short_chord():
    assert cover_label([F(1, 4), F(3, 4)], family([RIGHT, LEFT])) == (2, "right")


def test_cover_label_center_square():
    fam = family([square("c", F("-0.2"), F("-0.2"), F("0.2"), F("0.2"))])
    assert cover_label([F(1, 2), F(1, 2)], fam) is None


def test_cover_label_requires_normalized():
    with pytest.raises(GeometryError):
        cover_label([F(1, 2), F(1, 2)], family([square("big", -2, -2, 2, 2)]))


@given(
    st.lists(st.integers(0, 5), min_size=4, max_size=4).filter(lambda v: sum(v) > 0 and 0 in v),
    st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=1, max_size=5),
)
def test_cover_label_respects_faces(v, centers):
    x = [F(c, sum(v)) for c in v]
    sets = [square(f"s{j}", F(a - 1, 10), F(b - 1, 10), F(a + 1, 10), F(b + 1, 10)) for j, (a, b) in enumerate(centers)]
    fam = family(sets)
    lab = cover_label(x, fam)
    cs = chord_system(x)
    if lab is None:
        assert all(any(line_meets_set(c, s) for c in cs.chords) for s in fam.sets)
    else:
        assert x[lab[0] - 1] > 0
