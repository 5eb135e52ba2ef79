"""Planar convex geometry with points stored as complex numbers.

A :class:`Polygon` is a closed convex set given by its counterclockwise
vertices. Degenerate sets (empty, a point, a segment) are ordinary values
tagged by ``kind``; Hermitian numerical ranges are intervals and many of the
matching-eigenvalue sets are segments, so they show up constantly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.spatial import cKDTree

from ._backend import kernels
from .config import TOL
from .errors import PreconditionError

EMPTY, POINT, SEGMENT, POLYGON = "empty", "point", "segment", "polygon"


def cross(a, b):
    """z-component of the planar cross product of complex numbers a and b."""
    return (np.conj(a) * b).imag


@dataclass(frozen=True, eq=False)
class Polygon:
    vertices: np.ndarray
    kind: str

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=np.complex128).ravel()
        object.__setattr__(self, "vertices", v)
        expected = {0: EMPTY, 1: POINT, 2: SEGMENT}.get(len(v), POLYGON)
        if self.kind != expected:
            raise ValueError(f"kind {self.kind!r} does not match {len(v)} vertices")

    @classmethod
    def empty(cls) -> "Polygon":
        return cls(np.zeros(0, dtype=np.complex128), EMPTY)

    @classmethod
    def from_points(cls, points) -> "Polygon":
        return convex_hull(points)

    @property
    def is_empty(self) -> bool:
        return self.kind == EMPTY

    def __len__(self):
        return len(self.vertices)

    @property
    def area(self) -> float:
        if self.kind != POLYGON:
            return 0.0
        v = self.vertices
        return 0.5 * float(np.sum(cross(v, np.roll(v, -1))))

    @property
    def diameter(self) -> float:
        v = self.vertices
        if len(v) < 2:
            return 0.0
        return float(np.max(np.abs(v[:, None] - v[None, :])))

    @property
    def centroid(self) -> complex:
        if self.is_empty:
            raise PreconditionError("empty polygon has no centroid")
        return complex(np.mean(self.vertices))

    def edges(self):
        """(start, end) vertex arrays for each boundary edge."""
        v = self.vertices
        if self.kind == SEGMENT:
            return v[:1], v[1:]
        return v, np.roll(v, -1)

    def halfplanes(self):
        """Outward unit normals and offsets with P = {w : Re(conj(n) w) <= c}."""
        if self.kind != POLYGON:
            raise PreconditionError("half-plane form needs a two-dimensional polygon")
        a, b = self.edges()
        d = b - a
        n = -1j * d / np.abs(d)
        return n, (np.conj(n) * a).real

    def support(self, theta):
        """max over the set of Re(exp(-i theta) w)."""
        if self.is_empty:
            return np.full(np.shape(theta), -np.inf)
        th = np.asarray(theta, dtype=float)
        return np.max((np.exp(-1j * th)[..., None] * self.vertices).real, axis=-1)

    def map(self, alpha=0.0, beta=1.0) -> "Polygon":
        """Image under w -> alpha + beta * w."""
        return convex_hull(alpha + beta * self.vertices)


class HalfPlane(NamedTuple):
    """The set exp(i theta) * {z : Re z <= c}."""

    theta: float
    c: float

    @property
    def normal(self) -> complex:
        return complex(np.exp(1j * self.theta))

    def contains(self, p, tol=0.0):
        return (np.conj(self.normal) * np.asarray(p)).real <= self.c + tol


def convex_hull(points, tol=TOL.collinear) -> Polygon:
    """Counterclockwise convex hull (Andrew's monotone chain).

    Interior, duplicate and collinear points are dropped; a collinear input
    collapses to the segment between its extreme points.
    """
    pts = np.asarray(points, dtype=np.complex128).ravel()
    if pts.size == 0:
        return Polygon.empty()
    order = np.lexsort((pts.imag, pts.real))
    pts = pts[order]
    uniq = [pts[0]]
    for p in pts[1:]:
        if abs(p - uniq[-1]) > tol:
            uniq.append(p)
    if len(uniq) == 1:
        return Polygon(np.array(uniq), POINT)

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-1] - out[-2], p - out[-2]) <= tol:
                out.pop()
            out.append(p)
        return out

    lower = chain(uniq)
    upper = chain(reversed(uniq))
    hull = lower[:-1] + upper[:-1]
    if len(hull) <= 2:
        ends = np.array([uniq[0], uniq[-1]])
        return Polygon(ends, SEGMENT)
    return Polygon(np.array(hull), POLYGON)


def _normalize(verts, diameter_tol=TOL.geometry, area_tol=TOL.empty_area) -> Polygon:
    verts = np.asarray(verts, dtype=np.complex128)
    if len(verts) == 0:
        return Polygon.empty()
    diam = float(np.max(np.abs(verts[:, None] - verts[None, :]))) if len(verts) > 1 else 0.0
    if diam < diameter_tol:
        return Polygon(np.array([verts.mean()]), POINT)
    hull = convex_hull(verts)
    if hull.kind == POLYGON and (hull.area < area_tol or _width(hull) < diameter_tol):
        d = np.abs(hull.vertices[:, None] - hull.vertices[None, :])
        i, j = np.unravel_index(np.argmax(d), d.shape)
        return convex_hull(hull.vertices[[i, j]])
    return hull


def _width(poly: Polygon) -> float:
    """Smallest distance between a pair of parallel supporting lines."""
    a, b = poly.edges()
    d = (b - a) / np.abs(b - a)
    h = np.abs(cross(d[:, None], poly.vertices[None, :] - a[:, None]))
    return float(np.min(np.max(h, axis=1)))


def bounding_square(radius) -> np.ndarray:
    r = float(radius)
    return r * np.array([1 - 1j, 1 + 1j, -1 + 1j, -1 - 1j])


def intersect_halfplanes(planes: Sequence[HalfPlane] | None = None, *, thetas=None, offsets=None,
                         bound=None, slack=TOL.clip) -> Polygon:
    """Intersection of half-planes exp(i theta){Re z <= c}, clipped to a square.

    Either pass ``planes`` or the parallel arrays ``thetas``/``offsets``. The
    clipping square has half-width ``bound``; when omitted it defaults to
    ``4 * max(1, max |c|)``, which contains every bounded intersection whose
    planes support a set inside the disk of radius max |c|.
    """
    if planes is not None:
        thetas = np.array([p.theta for p in planes], dtype=float)
        offsets = np.array([p.c for p in planes], dtype=float)
    thetas = np.asarray(thetas, dtype=float)
    offsets = np.asarray(offsets, dtype=float)
    if bound is None:
        if len(offsets) < 3:
            raise PreconditionError("need at least three half-planes or an explicit bound")
        bound = 4.0 * max(1.0, float(np.max(np.abs(offsets))))
    verts = kernels.clip_convex(bounding_square(bound), np.exp(1j * thetas), offsets, slack)
    return _normalize(verts)


class SegmentIntersection(NamedTuple):
    kind: str              # "point", "disjoint", "parallel" or "overlap"
    point: complex | None  # crossing point, or the overlap midpoint
    overlap: tuple | None  # overlap endpoints for collinear segments


def segment_intersection(p1, p2, p3, p4, tol=TOL.collinear) -> SegmentIntersection:
    """Intersection of the closed segments [p1, p2] and [p3, p4]."""
    p1, p2, p3, p4 = (complex(p) for p in (p1, p2, p3, p4))
    d1 = p2 - p1
    d2 = p4 - p3
    denom = cross(d1, d2)
    scale = max(abs(d1) * abs(d2), 1e-300)
    if abs(denom) <= tol * scale:
        if abs(cross(d1, p3 - p1)) > tol * max(abs(d1), 1e-300) * max(1.0, abs(p3 - p1)):
            return SegmentIntersection("parallel", None, None)
        # collinear: overlap along the common direction
        axis = d1 if abs(d1) > 0 else d2
        if abs(axis) == 0:
            if abs(p1 - p3) <= tol:
                return SegmentIntersection("point", p1, None)
            return SegmentIntersection("parallel", None, None)
        u = axis / abs(axis)
        s = sorted([(np.conj(u) * (p - p1)).real for p in (p1, p2)])
        r = sorted([(np.conj(u) * (p - p1)).real for p in (p3, p4)])
        lo, hi = max(s[0], r[0]), min(s[1], r[1])
        if lo > hi + tol:
            return SegmentIntersection("parallel", None, None)
        a, b = p1 + u * lo, p1 + u * hi
        if abs(b - a) <= tol:
            return SegmentIntersection("point", (a + b) / 2, None)
        return SegmentIntersection("overlap", (a + b) / 2, (a, b))
    w = p3 - p1
    s = cross(w, d2) / denom
    t = cross(w, d1) / denom
    eps = tol
    if -eps <= s <= 1 + eps and -eps <= t <= 1 + eps:
        return SegmentIntersection("point", p1 + min(max(s, 0.0), 1.0) * d1, None)
    return SegmentIntersection("disjoint", None, None)


def point_segment_distance(p, a, b):
    """Distance from points p to segments [a, b] (broadcasting)."""
    p = np.asarray(p, dtype=np.complex128)
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    d = b - a
    dd = np.abs(d) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(dd > 0, (np.conj(d) * (p - a)).real / np.where(dd > 0, dd, 1.0), 0.0)
    s = np.clip(s, 0.0, 1.0)
    return np.abs(p - (a + s * d))


def signed_distance(poly: Polygon, points) -> np.ndarray:
    """Euclidean distance to the polygon, negative inside two-dimensional polygons."""
    pts = np.atleast_1d(np.asarray(points, dtype=np.complex128))
    if poly.is_empty:
        return np.full(pts.shape, np.inf)
    if poly.kind == POINT:
        return np.abs(pts - poly.vertices[0])
    a, b = poly.edges()
    dist = np.min(point_segment_distance(pts[:, None], a[None, :], b[None, :]), axis=1)
    if poly.kind == SEGMENT:
        return dist
    n, c = poly.halfplanes()
    inside = np.all((np.conj(n)[None, :] * pts[:, None]).real <= c[None, :], axis=1)
    return np.where(inside, -dist, dist)


def point_in_polygon(p, poly: Polygon, tol=TOL.geometry) -> str:
    """Classify p as "inside", "boundary" or "outside" with a boundary band of width tol."""
    d = float(signed_distance(poly, [p])[0])
    if abs(d) <= tol:
        return "boundary"
    return "inside" if d < 0 else "outside"


def _clip_by(loop: Polygon, container: Polygon, slack) -> Polygon:
    n, c = container.halfplanes()
    return _normalize(kernels.clip_convex(loop.vertices, n, c, slack))


def intersect_polygons(a: Polygon, b: Polygon, slack=TOL.clip) -> Polygon:
    """Intersection of two convex (possibly degenerate) polygons."""
    if a.is_empty or b.is_empty:
        return Polygon.empty()
    if b.kind == POLYGON:
        return _clip_by(a, b, slack)
    if a.kind == POLYGON:
        return _clip_by(b, a, slack)
    if a.kind == POINT or b.kind == POINT:
        pt, other = (a, b) if a.kind == POINT else (b, a)
        if float(signed_distance(other, pt.vertices)[0]) <= max(slack, TOL.collinear):
            return Polygon(pt.vertices.copy(), POINT)
        return Polygon.empty()
    hit = segment_intersection(a.vertices[0], a.vertices[1], b.vertices[0], b.vertices[1])
    if hit.kind == "point":
        return Polygon(np.array([hit.point]), POINT)
    if hit.kind == "overlap":
        return convex_hull(list(hit.overlap))
    return Polygon.empty()


def convex_distance(a: Polygon, b: Polygon, slack=TOL.clip) -> float:
    """Euclidean distance between two convex sets (0 when they meet)."""
    if a.is_empty or b.is_empty:
        return np.inf
    if not intersect_polygons(a, b, slack).is_empty:
        return 0.0
    return float(min(np.min(signed_distance(b, a.vertices)), np.min(signed_distance(a, b.vertices))))


def segment_polygon_distance(seg_a, seg_b, poly: Polygon) -> np.ndarray:
    """Distance from each segment [seg_a[i], seg_b[i]] to a convex polygon."""
    sa = np.atleast_1d(np.asarray(seg_a, dtype=np.complex128))
    sb = np.atleast_1d(np.asarray(seg_b, dtype=np.complex128))
    sa, sb = np.broadcast_arrays(sa, sb)
    if poly.is_empty:
        return np.full(sa.shape, np.inf)
    # vertex-to-other-set distances; exact whenever the sets are disjoint
    d_end = np.minimum(np.abs(signed_distance(poly, sa)), np.abs(signed_distance(poly, sb)))
    d_end = np.where(
        (signed_distance(poly, sa) <= 0) | (signed_distance(poly, sb) <= 0), 0.0, d_end)
    d_vert = np.min(point_segment_distance(poly.vertices[None, :], sa[:, None], sb[:, None]), axis=1)
    dist = np.minimum(d_end, d_vert)
    if poly.kind == POLYGON:
        # Cyrus-Beck: does the segment cross the polygon?
        n, c = poly.halfplanes()
        d = sb - sa
        num = c[None, :] - (np.conj(n)[None, :] * sa[:, None]).real
        den = (np.conj(n)[None, :] * d[:, None]).real
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = num / den
        lo = np.max(np.where(den < 0, ratio, -np.inf), axis=1, initial=0.0)
        hi = np.min(np.where(den > 0, ratio, np.inf), axis=1, initial=1.0)
        parallel_ok = np.all((den != 0) | (num >= 0), axis=1)
        crosses = parallel_ok & (lo <= hi)
    else:
        p, q = poly.vertices[0], poly.vertices[-1]
        d1 = sb - sa
        d2 = q - p
        denom = cross(d1, d2)
        w = p - sa
        with np.errstate(divide="ignore", invalid="ignore"):
            s = cross(w, d2) / denom
            t = cross(w, d1) / denom
        crosses = (denom != 0) & (s >= 0) & (s <= 1) & (t >= 0) & (t <= 1)
    return np.where(crosses, 0.0, dist)


def hausdorff(a, b):
    """One-sided and symmetric Hausdorff distances between finite point sets.

    Returns ``(d(A, B), d(B, A), d_H)`` where ``d(A, B)`` is the largest
    distance from a point of A to its nearest point of B. Points may be given
    as complex numbers or as rows of a real array.
    """
    pa = _as_rows(a)
    pb = _as_rows(b)
    if len(pa) == 0 or len(pb) == 0:
        raise PreconditionError("Hausdorff distance needs two nonempty point sets")
    dab = float(np.max(cKDTree(pb).query(pa)[0]))
    dba = float(np.max(cKDTree(pa).query(pb)[0]))
    return dab, dba, max(dab, dba)


def _as_rows(x) -> np.ndarray:
    arr = np.asarray(x)
    if np.iscomplexobj(arr) or arr.ndim == 1:
        arr = np.asarray(arr, dtype=np.complex128).ravel()
        return np.column_stack([arr.real, arr.imag])
    return np.asarray(arr, dtype=float)


def sample_boundary(poly: Polygon, spacing: float) -> np.ndarray:
    """Points along the boundary of a polygon at most ``spacing`` apart."""
    if poly.is_empty:
        return np.zeros(0, dtype=np.complex128)
    if poly.kind == POINT:
        return poly.vertices.copy()
    a, b = poly.edges()
    out = []
    for p, q in zip(a, b):
        m = max(1, int(np.ceil(abs(q - p) / spacing)))
        out.append(p + (q - p) * np.arange(m) / m)
    if poly.kind == SEGMENT:
        out.append(poly.vertices[1:])
    return np.concatenate(out)


def grid_distance(z, p) -> float:
    """Distance from p to the union of all segments [z_i, z_j]."""
    z = np.asarray(z, dtype=np.complex128)
    i, j = np.triu_indices(len(z), 1)
    return float(np.min(point_segment_distance(complex(p), z[i], z[j])))


def _normal_directions(poly: Polygon) -> np.ndarray:
    if poly.kind in (EMPTY, POINT):
        return np.zeros(0)
    a, b = poly.edges()
    ang = np.angle(-1j * (b - a))
    if poly.kind == SEGMENT:
        ang = np.concatenate([ang, ang + np.pi])
    return ang


def convex_hausdorff(p: Polygon, q: Polygon) -> float:
    """Exact Hausdorff distance between two convex sets via support functions.

    Between consecutive edge normals of either set the support difference is
    |v - w| cos(θ - arg(v - w)) for fixed active vertices v, w, so its extrema
    lie at edge normals or at arg(v - w) (+ π).
    """
    if p.is_empty and q.is_empty:
        return 0.0
    if p.is_empty or q.is_empty:
        return np.inf
    diff = (p.vertices[:, None] - q.vertices[None, :]).ravel()
    cand = np.concatenate([
        _normal_directions(p), _normal_directions(q),
        np.angle(diff), np.angle(diff) + np.pi,
        np.linspace(0, 2 * np.pi, 64, endpoint=False),
    ])
    return float(np.max(np.abs(p.support(cand) - q.support(cand))))


def ccw_order(z) -> np.ndarray:
    """Permutation listing the points counterclockwise around their centroid.

    The cycle starts at input index 0, so counterclockwise input comes back
    as the identity.
    """
    z = np.asarray(z, dtype=np.complex128)
    ang = np.mod(np.angle(z - z.mean()), 2 * np.pi)
    perm = np.argsort(ang, kind="stable")
    return np.roll(perm, -int(np.flatnonzero(perm == 0)[0]))


def all_extreme(z, tol=TOL.collinear) -> bool:
    """True when every point is a vertex of the convex hull of the set."""
    z = np.asarray(z, dtype=np.complex128)
    return len(convex_hull(z, tol)) == len(z)
