import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from normcompress.planegeom import (
    POINT, POLYGON, SEGMENT, HalfPlane, Polygon, ccw_order, convex_distance, convex_hausdorff,
    convex_hull, grid_distance, hausdorff, intersect_halfplanes, intersect_polygons,
    point_in_polygon, segment_intersection, segment_polygon_distance, signed_distance,
)
from oracles import seg_dist


def test_hull_degenerate_kinds():
    assert convex_hull([]).is_empty
    assert convex_hull([1 + 1j, 1 + 1j]).kind == POINT
    seg = convex_hull([0, 1, 2, 0.5])
    assert seg.kind == SEGMENT
    assert sorted(seg.vertices.real) == [0, 2]
    sq = convex_hull([1, 1j, -1, -1j, 0, 0.2j])
    assert sq.kind == POLYGON and len(sq) == 4
    assert sq.area == pytest.approx(2.0)


def test_square_halfplanes_and_support():
    sq = convex_hull([1, 1j, -1, -1j])
    n, c = sq.halfplanes()
    np.testing.assert_allclose(c, np.full(4, 1 / np.sqrt(2)))
    assert sq.support(0.0) == pytest.approx(1.0)
    assert sq.support(np.pi / 4) == pytest.approx(1 / np.sqrt(2))


def test_halfplane_intersection_square(backend):
    th = np.pi / 2 * np.arange(4)
    p = intersect_halfplanes(thetas=th, offsets=np.ones(4))
    assert p.kind == POLYGON
    assert p.area == pytest.approx(4.0)
    planes = [HalfPlane(t, 1.0) for t in th] + [HalfPlane(0.0, -2.0)]
    assert intersect_halfplanes(planes).is_empty


def test_halfplanes_to_point_and_segment(backend):
    th = np.pi / 2 * np.arange(4)
    pt = intersect_halfplanes(thetas=th, offsets=np.array([1.0, 0.0, -1.0, 0.0]))
    assert pt.kind == POINT and abs(pt.vertices[0] - 1) < 1e-12
    seg = intersect_halfplanes(thetas=th, offsets=np.array([1.0, 0.0, 1.0, 0.0]))
    assert seg.kind == SEGMENT


def test_segment_intersection_cases():
    assert segment_intersection(-1, 1, -1j, 1j).kind == "point"
    assert segment_intersection(0, 1, 1j, 1 + 1j).kind == "parallel"
    assert segment_intersection(0, 2, 1, 3).kind == "overlap"
    assert segment_intersection(0, 1, 2 + 1j, 2 - 1j).kind == "disjoint"


def test_intersect_polygons_degenerate():
    sq = convex_hull([1, 1j, -1, -1j])
    assert intersect_polygons(sq, convex_hull([0])).kind == POINT
    assert intersect_polygons(sq, convex_hull([5])).is_empty
    cut = intersect_polygons(sq, convex_hull([-2, 2]))
    assert cut.kind == SEGMENT and abs(abs(cut.vertices[1] - cut.vertices[0]) - 2) < 1e-12
    assert intersect_polygons(convex_hull([-1, 1]), convex_hull([-1j, 1j])).kind == POINT


def test_distances():
    sq = convex_hull([1, 1j, -1, -1j])
    d = signed_distance(sq, [0, 2, 0.5 + 0.5j])
    assert d[0] == pytest.approx(-1 / np.sqrt(2))
    assert d[1] == pytest.approx(1.0)
    assert abs(d[2]) < 1e-15
    assert point_in_polygon(0.5 + 0.5j, sq) == "boundary"
    assert convex_distance(sq, convex_hull([3, 3 + 1j])) == pytest.approx(2.0)
    assert convex_distance(sq, convex_hull([0.1, 0.2])) == 0.0


def test_segment_polygon_distance_against_oracle():
    rng = np.random.default_rng(3)
    tri = convex_hull([0, 1, 1j])
    a = rng.uniform(-2, 2, 300) + 1j * rng.uniform(-2, 2, 300)
    b = rng.uniform(-2, 2, 300) + 1j * rng.uniform(-2, 2, 300)
    got = segment_polygon_distance(a, b, tri)
    for i in range(300):
        s = np.linspace(0, 1, 4001)
        pts = a[i] + s * (b[i] - a[i])
        ref = max(np.min(signed_distance(tri, pts)), 0.0)
        assert got[i] <= ref + 1e-12
        assert got[i] >= ref - abs(b[i] - a[i]) / 4000


def test_hausdorff_and_convex_hausdorff():
    a = np.array([0, 1, 1j])
    assert hausdorff(a, a) == (0.0, 0.0, 0.0)
    d_ab, d_ba, d = hausdorff([0], [0, 3])
    assert (d_ab, d_ba, d) == (0.0, 3.0, 3.0)
    p = convex_hull([1, 1j, -1, -1j])
    q = convex_hull([2, 2j, -2, -2j])
    assert convex_hausdorff(p, q) == pytest.approx(1.0)
    assert convex_hausdorff(convex_hull([0, 1]), convex_hull([0, 1 + 1j])) == pytest.approx(1.0)


def test_grid_distance_and_order():
    z = np.array([1, 1j, -1, -1j])
    assert grid_distance(z, 0.0) == 0.0
    assert grid_distance(z, 0.25 + 0.25j) == pytest.approx(0.25)
    perm = ccw_order(z[[2, 0, 3, 1]])
    ordered = z[[2, 0, 3, 1]][perm]
    assert np.all(np.diff(np.unwrap(np.angle(ordered))) > 0)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5)), min_size=1, max_size=25))
def test_hull_contains_inputs(pts):
    z = np.array([complex(x, y) for x, y in pts])
    hull = convex_hull(z)
    assert np.all(signed_distance(hull, z) <= 1e-9)
    if hull.kind == POLYGON:
        v = hull.vertices
        turn = np.imag(np.conj(np.roll(v, -1) - v) * (np.roll(v, -2) - np.roll(v, -1)))
        assert np.all(turn > 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_intersection_is_common_subset(seed):
    rng = np.random.default_rng(seed)
    a = convex_hull(rng.standard_normal(6) + 1j * rng.standard_normal(6))
    b = convex_hull(rng.standard_normal(6) + 1j * rng.standard_normal(6))
    c = intersect_polygons(a, b)
    if not c.is_empty:
        assert np.all(signed_distance(a, c.vertices) <= 1e-9)
        assert np.all(signed_distance(b, c.vertices) <= 1e-9)
    else:
        assert convex_distance(a, b) >= 0
