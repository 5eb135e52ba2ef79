"""The matching-eigenvalue set B(a) of a normal matrix M = diag(z).

B(a) collects the b for which diag(a, b) is a 2x2 compression of M. Writing
u = sqrt(t) for a weight vector t in the fiber

    C(a) = {t in the simplex : sum t_j z_j = a},

every b arises as sum |w_j|^2 z_j for a unit w orthogonal to u, u*Re z and
u*Im z. This module computes the fiber, the exact descriptions available for
N = 3, 4 and 5, and a Monte Carlo sampler that works for any N.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.spatial import cKDTree

from .config import TOL, make_rng
from .errors import BoundaryAmbiguous, GenericityError, PreconditionError
from .hrnr import lambda_k_normal
from .numkit import project_out_batch
from .planegeom import (
    Polygon, POINT, POLYGON, SEGMENT, all_extreme, ccw_order, convex_hull, cross,
    grid_distance, hausdorff, point_segment_distance, segment_intersection,
    signed_distance,
)

LOCATION_TOL = 1e-10
AMBIGUITY_FACTOR = 100.0
ILL_CONDITIONED = 1e6


def _spectrum(z) -> np.ndarray:
    z = np.asarray(z, dtype=np.complex128).ravel()
    if not np.all(np.isfinite(z)):
        raise PreconditionError("spectrum has non-finite entries")
    return z


def _triple_matrix(z, idx) -> np.ndarray:
    p = z[list(idx)]
    return np.array([np.ones(3), p.real, p.imag])


def _det_tol(z) -> float:
    return TOL.collinear * max(1.0, float(np.max(np.abs(z))) ** 2)


def check_generic(z):
    """Raise GenericityError if some three eigenvalues are collinear."""
    z = _spectrum(z)
    tol = _det_tol(z)
    for idx in combinations(range(len(z)), 3):
        if abs(np.linalg.det(_triple_matrix(z, idx))) <= tol:
            raise GenericityError(f"eigenvalues {idx} are collinear", idx)


@dataclass(frozen=True, eq=False)
class SimplexPoint:
    t: np.ndarray
    triple: tuple | None = None

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float).ravel()
        if np.any(t < 0) or abs(t.sum() - 1.0) > 1e-12:
            raise PreconditionError("weights must be nonnegative and sum to one")
        object.__setattr__(self, "t", t)

    @property
    def support(self) -> tuple:
        return tuple(int(j) for j in np.flatnonzero(self.t > TOL.support))

    def image(self, z) -> complex:
        return complex(np.dot(self.t, _spectrum(z)))


@dataclass(frozen=True, eq=False)
class FiberPolytope:
    """C(a) through its extreme points, each supported on an eigenvalue triple."""

    a: complex
    z: np.ndarray
    points: tuple

    @property
    def matrix(self) -> np.ndarray:
        return np.array([p.t for p in self.points])

    @property
    def triples(self) -> list:
        return [p.triple for p in self.points]

    def __len__(self):
        return len(self.points)


def fiber_extreme_points(z, a) -> FiberPolytope:
    """Extreme points t(i,j,l) of the fiber C(a)."""
    z = _spectrum(z)
    a = complex(a)
    n = len(z)
    if n < 3:
        raise PreconditionError("need at least three eigenvalues")
    tol = _det_tol(z)
    rhs = np.array([1.0, a.real, a.imag])
    found = []
    for idx in combinations(range(n), 3):
        mat = _triple_matrix(z, idx)
        if abs(np.linalg.det(mat)) <= tol:
            raise GenericityError(f"eigenvalues {idx} are collinear", idx)
        sol = np.linalg.solve(mat, rhs)
        if np.any(sol < -TOL.support):
            continue
        t = np.zeros(n)
        t[list(idx)] = np.clip(sol, 0.0, None)
        t /= t.sum()
        if any(np.max(np.abs(t - f.t)) <= 1e-10 for f in found):
            continue
        found.append(SimplexPoint(t, idx))
    if not found:
        raise PreconditionError(f"a = {a} lies outside the convex hull of the spectrum")
    return FiberPolytope(a, z, tuple(found))


@dataclass(frozen=True)
class LipschitzReport:
    K: float
    triple: tuple
    ill_conditioned: bool


def fiber_lipschitz_constant(z) -> LipschitzReport:
    """max ||T^{-1}|| over eigenvalue triples, the modulus of continuity of a -> C(a)."""
    z = _spectrum(z)
    tol = _det_tol(z)
    best, arg = -1.0, None
    for idx in combinations(range(len(z)), 3):
        mat = _triple_matrix(z, idx)
        if abs(np.linalg.det(mat)) <= tol:
            raise GenericityError(f"eigenvalues {idx} are collinear", idx)
        k = 1.0 / np.linalg.svd(mat, compute_uv=False)[-1]
        if k > best:
            best, arg = k, idx
    return LipschitzReport(float(best), arg, bool(best > ILL_CONDITIONED))


def fiber_hausdorff(f: FiberPolytope, g: FiberPolytope) -> float:
    """Hausdorff distance between the extreme-point sets of two fibers."""
    return hausdorff(f.matrix, g.matrix)[2]


def cell_signature(z, a) -> tuple:
    """Side of every line z_i z_j that a lies on; equal signatures share a grid cell."""
    z = _spectrum(z)
    i, j = np.triu_indices(len(z), 1)
    s = np.sign(cross(z[j] - z[i], complex(a) - z[i]))
    return tuple(int(v) for v in s)


# ---------------------------------------------------------------- the curve


def _null_weights(x, y, r):
    """Scaled weights r(1-r)(x-y)^2 / ((1-r)x + r y), exact at the endpoints."""
    r = np.asarray(r, dtype=float)[..., None]
    d2 = (x - y) ** 2
    den = (1 - r) * x + r * y
    with np.errstate(divide="ignore", invalid="ignore"):
        w = r * (1 - r) * d2 / den
    w = np.where(x == 0, (1 - r) * y, w)
    w = np.where(y == 0, r * x, w)
    return w


@dataclass(frozen=True, eq=False)
class CurveTrace:
    """The rational curve b(r), 0 <= r <= 1, joining z4 (r = 0) to z3 (r = 1).

    ``z`` holds the quadrilateral relabelled so that a lies in the quadrant
    at the side [z[0], z[1]]; ``labels`` maps back to the caller's indices.
    """

    z: np.ndarray
    x: np.ndarray
    y: np.ndarray
    labels: tuple
    r: np.ndarray
    points: np.ndarray
    endpoint_tags: tuple = field(default=("z4", "z3"))

    def evaluate(self, r) -> np.ndarray:
        w = _null_weights(self.x, self.y, r)
        return (w @ self.z) / w.sum(axis=-1)

    @property
    def q(self) -> complex:
        hit = segment_intersection(self.z[0], self.z[2], self.z[1], self.z[3])
        return complex(hit.point)

    def distance(self, points, iterations=80) -> np.ndarray:
        """Euclidean distance to the curve: grid search then golden-section refinement."""
        pts = np.atleast_1d(np.asarray(points, dtype=np.complex128)).ravel()
        if len(pts) == 0:
            return np.zeros(0)
        grid = self.points
        idx = np.empty(len(pts), dtype=np.int64)
        for s in range(0, len(pts), 2048):
            blk = pts[s:s + 2048]
            idx[s:s + 2048] = np.argmin(np.abs(blk[:, None] - grid[None, :]), axis=1)
        lo = self.r[np.maximum(idx - 1, 0)]
        hi = self.r[np.minimum(idx + 1, len(self.r) - 1)]
        g = (np.sqrt(5.0) - 1) / 2
        c = hi - g * (hi - lo)
        d = lo + g * (hi - lo)
        fc = np.abs(self.evaluate(c) - pts)
        fd = np.abs(self.evaluate(d) - pts)
        for _ in range(iterations):
            left = fc < fd
            hi = np.where(left, d, hi)
            lo = np.where(left, lo, c)
            c = hi - g * (hi - lo)
            d = lo + g * (hi - lo)
            fc = np.abs(self.evaluate(c) - pts)
            fd = np.abs(self.evaluate(d) - pts)
        return np.minimum(np.minimum(fc, fd), np.abs(grid[idx] - pts))


def _locate_quadrant(zc, q, a):
    # smallest inward margin of a in each triangle (zc[i], zc[i+1], q)
    out = []
    for i in range(4):
        tri = (zc[i], zc[(i + 1) % 4], q)
        m = min(cross(tri[(e + 1) % 3] - tri[e], a - tri[e]) / abs(tri[(e + 1) % 3] - tri[e])
                for e in range(3))
        out.append(float(m))
    return np.array(out)


def _barycentric(p3, a) -> np.ndarray:
    mat = np.array([np.ones(3), p3.real, p3.imag])
    return np.linalg.solve(mat, np.array([1.0, a.real, a.imag]))


def b_curve(z4, a, m=512, labels=None) -> CurveTrace:
    """Trace b(r) for a strictly inside one quadrant of the quadrilateral z4."""
    z4 = _spectrum(z4)
    if len(z4) != 4:
        raise PreconditionError("b_curve needs exactly four eigenvalues")
    a = complex(a)
    labels = tuple(range(4)) if labels is None else tuple(labels)
    perm = ccw_order(z4)
    zc = z4[perm]
    hit = segment_intersection(zc[0], zc[2], zc[1], zc[3])
    if hit.kind != "point" or not all_extreme(zc):
        raise PreconditionError("eigenvalues are not in convex position")
    q = complex(hit.point)
    margins = _locate_quadrant(zc, q, a)
    i = int(np.argmax(margins))
    if margins[i] <= LOCATION_TOL:
        raise PreconditionError(
            f"a = {a} is not strictly inside a quadrant (margin {margins[i]:.3e}); use the case analysis")
    order = [(i + j) % 4 for j in range(4)]
    p = zc[order]
    x = np.zeros(4)
    y = np.zeros(4)
    x[[0, 1, 2]] = _barycentric(p[[0, 1, 2]], a)
    y[[0, 1, 3]] = _barycentric(p[[0, 1, 3]], a)
    r = np.linspace(0.0, 1.0, m + 1)
    w = _null_weights(x, y, r)
    pts = (w @ p) / w.sum(axis=-1)
    lab = tuple(labels[int(perm[j])] for j in order)
    return CurveTrace(p, x, y, lab, r, pts, (f"z{lab[3]}", f"z{lab[2]}"))


def null_point(z, t) -> complex:
    """b_t for a weight vector with exactly four positive entries."""
    z = _spectrum(z)
    s = np.flatnonzero(np.asarray(t) > TOL.support)
    if len(s) != 4:
        raise PreconditionError("null_point needs a support of size four")
    mat = np.array([np.ones(4), z[s].real, z[s].imag])
    v = np.array([(-1) ** j * np.linalg.det(np.delete(mat, j, axis=1)) for j in range(4)])
    wts = v ** 2 / np.asarray(t)[s]
    return complex(wts @ z[s] / wts.sum())


# ------------------------------------------------------------- descriptions


class Wedge:
    """The fan swept by the segments [apex, b(r)], 0 <= r <= 1."""

    def __init__(self, apex, curve: CurveTrace, resolution=4096):
        self.apex = complex(apex)
        self.curve = curve
        rr = np.linspace(0.0, 1.0, resolution + 1)
        bb = curve.evaluate(rr)
        mid = curve.evaluate(0.5) - self.apex
        self._ref = np.conj(mid) / abs(mid)
        self._r = rr
        self._phi = np.angle((bb - self.apex) * self._ref)
        step = np.diff(self._phi)
        self._monotone = 1 if np.all(step > 0) else (-1 if np.all(step < 0) else 0)

    def _angle(self, r):
        return np.angle((self.curve.evaluate(r) - self.apex) * self._ref)

    def _inside(self, pts) -> np.ndarray:
        v = pts - self.apex
        psi = np.angle(v * self._ref)
        rho = np.abs(v)
        inside = rho == 0
        phi = self._phi
        if self._monotone:
            return inside | self._inside_monotone(psi, rho)
        for s in range(0, len(pts), 512):
            sl = slice(s, s + 512)
            sg = np.sign(phi[None, :] - psi[sl, None])
            change = sg[:, :-1] * sg[:, 1:] <= 0
            pi, ji = np.nonzero(change)
            if len(pi) == 0:
                continue
            lo = self._r[ji].copy()
            hi = self._r[ji + 1].copy()
            target = psi[sl][pi]
            flo = self._phi[ji] - target
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                fm = self._angle(mid) - target
                same = np.sign(fm) == np.sign(flo)
                lo = np.where(same, mid, lo)
                flo = np.where(same, fm, flo)
                hi = np.where(same, hi, mid)
            reach = np.abs(self.curve.evaluate(0.5 * (lo + hi)) - self.apex)
            ok = rho[sl][pi] <= reach
            hit = np.zeros(len(psi[sl]), dtype=bool)
            np.logical_or.at(hit, pi, ok)
            inside[sl] |= hit
        return inside

    def _inside_monotone(self, psi, rho):
        sgn = self._monotone
        phi = sgn * self._phi
        key = sgn * psi
        ok = (key >= phi[0]) & (key <= phi[-1])
        j = np.clip(np.searchsorted(phi, key[ok]), 1, len(phi) - 1)
        lo, hi = self._r[j - 1], self._r[j]
        target = key[ok]
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            below = sgn * self._angle(mid) < target
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        reach = np.abs(self.curve.evaluate(0.5 * (lo + hi)) - self.apex)
        out = np.zeros(len(psi), dtype=bool)
        out[ok] = rho[ok] <= reach
        return out

    def distance(self, points) -> np.ndarray:
        pts = np.atleast_1d(np.asarray(points, dtype=np.complex128)).ravel()
        out = np.zeros(len(pts))
        inside = self._inside(pts)
        rest = ~inside
        if rest.any():
            p = pts[rest]
            b0, b1 = self.curve.points[0], self.curve.points[-1]
            d = np.minimum(point_segment_distance(p, self.apex, b0), point_segment_distance(p, self.apex, b1))
            out[rest] = np.minimum(d, self.curve.distance(p))
        return out

    def contains(self, points, tol=1e-8) -> np.ndarray:
        return self.distance(points) <= tol


def _component_distance(comp, pts) -> np.ndarray:
    if isinstance(comp, Polygon):
        return np.maximum(signed_distance(comp, pts), 0.0)
    if isinstance(comp, (CurveTrace, Wedge)):
        return comp.distance(pts)
    cloud = np.asarray(comp, dtype=np.complex128)
    tree = cKDTree(np.column_stack([cloud.real, cloud.imag]))
    return tree.query(np.column_stack([pts.real, pts.imag]))[0]


@dataclass(eq=False)
class BDescription:
    """B(a) (or a piece B(a, t)) as a union of simple components.

    kind is one of: empty, point, segment, polygon, triangle-case, curve,
    T-shape, diagonal-cross, wedge-union, cloud.
    """

    kind: str
    components: list
    meta: dict = field(default_factory=dict)

    @property
    def is_empty(self) -> bool:
        return self.kind == "empty" or not self.components

    def _inside_monotone(self, psi, rho):
        sgn = self._monotone
        phi = sgn * self._phi
        key = sgn * psi
        ok = (key >= phi[0]) & (key <= phi[-1])
        j = np.clip(np.searchsorted(phi, key[ok]), 1, len(phi) - 1)
        lo, hi = self._r[j - 1], self._r[j]
        target = key[ok]
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            below = sgn * self._angle(mid) < target
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        reach = np.abs(self.curve.evaluate(0.5 * (lo + hi)) - self.apex)
        out = np.zeros(len(psi), dtype=bool)
        out[ok] = rho[ok] <= reach
        return out

    def distance(self, points) -> np.ndarray:
        pts = np.atleast_1d(np.asarray(points, dtype=np.complex128)).ravel()
        if self.is_empty:
            return np.full(len(pts), np.inf)
        out = np.zeros(len(pts))
        todo = np.ones(len(pts), dtype=bool)
        if self.kind == "wedge-union":
            for c in self.components:
                todo &= ~c._inside(pts)
        if todo.any():
            out[todo] = np.min([_component_distance(c, pts[todo]) for c in self.components], axis=0)
        return out

    def contains(self, points, tol=1e-8) -> np.ndarray:
        return self.distance(points) <= tol


def _hull_description(points, kind=None) -> BDescription:
    poly = convex_hull(points)
    return BDescription(kind or poly.kind, [poly])


def _segment(p, q) -> Polygon:
    return convex_hull([p, q])


def b_of_a_N3(z3, a, tol=LOCATION_TOL) -> BDescription:
    """B(a) for three eigenvalues: a side, a vertex, or empty."""
    z = _spectrum(z3)
    if len(z) != 3:
        raise PreconditionError("b_of_a_N3 needs exactly three eigenvalues")
    check_generic(z)
    a = complex(a)
    for k in range(3):
        if abs(a - z[k]) <= tol:
            others = [z[j] for j in range(3) if j != k]
            return BDescription("segment", [_segment(*others)], {"case": "vertex", "index": k})
    for k in range(3):
        i, j = [m for m in range(3) if m != k]
        if point_segment_distance(a, z[i], z[j]) <= tol:
            return BDescription("point", [Polygon(np.array([z[k]]), POINT)], {"case": "side", "index": k})
    return BDescription("empty", [], {"case": "interior-or-outside"})


def _band(d, tol, what):
    if d <= tol:
        return True
    if d <= AMBIGUITY_FACTOR * tol:
        raise BoundaryAmbiguous(f"a is {d:.3e} from {what}, inside the ambiguity band ({tol:g}, {AMBIGUITY_FACTOR * tol:g}]")
    return False


def b_of_a_N4(z4, a, m=512, tol=LOCATION_TOL) -> BDescription:
    """Exact B(a) for four eigenvalues in convex position."""
    z = _spectrum(z4)
    if len(z) != 4:
        raise PreconditionError("b_of_a_N4 needs exactly four eigenvalues")
    check_generic(z)
    if not all_extreme(z):
        raise PreconditionError("eigenvalues are not in convex position")
    a = complex(a)
    perm = ccw_order(z)
    zc = z[perm]
    q = complex(segment_intersection(zc[0], zc[2], zc[1], zc[3]).point)
    lab = [int(p) for p in perm]
    for i in range(4):
        if _band(abs(a - zc[i]), tol, f"z{lab[i]}"):
            others = [zc[(i + j) % 4] for j in (1, 2, 3)]
            return BDescription("triangle-case", [convex_hull(others)], {"case": "vertex", "index": lab[i]})
    if _band(abs(a - q), tol, "the diagonal intersection"):
        return BDescription("diagonal-cross", [_segment(zc[0], zc[2]), _segment(zc[1], zc[3])],
                            {"case": "q", "q": q})
    sd = float(signed_distance(convex_hull(zc), [a])[0])
    if sd > 0 and not _band(sd, tol, "the boundary of W(M)"):
        return BDescription("empty", [], {"case": "outside"})
    for i in range(4):
        if _band(float(point_segment_distance(a, zc[i], zc[(i + 1) % 4])), tol, "a side"):
            return BDescription("segment", [_segment(zc[(i + 2) % 4], zc[(i + 3) % 4])],
                                {"case": "side", "side": (lab[i], lab[(i + 1) % 4])})
    for i in range(4):
        if _band(float(point_segment_distance(a, zc[i], q)), tol, "a diagonal"):
            comps = [_segment(zc[(i + 1) % 4], zc[(i + 3) % 4]), _segment(q, zc[(i + 2) % 4])]
            return BDescription("T-shape", comps, {"case": "half-diagonal", "vertex": lab[i], "q": q})
    curve = b_curve(z, a, m)
    return BDescription("curve", [curve], {"case": "quadrant", "q": q})


def b_of_a_t(z, t, a, n_samples=2000, seed=0) -> BDescription:
    """B(a, t) for one weight vector t in the fiber C(a)."""
    z = _spectrum(z)
    t = np.asarray(t.t if isinstance(t, SimplexPoint) else t, dtype=float).ravel()
    if len(t) != len(z) or np.any(t < -TOL.support) or abs(t.sum() - 1) > 1e-10 or abs(t @ z - complex(a)) > 1e-10:
        raise PreconditionError("t is not in the fiber C(a)")
    sup = t > TOL.support
    rest = list(z[~sup])
    size = int(sup.sum())
    if size <= 3:
        if not rest:
            return BDescription("empty", [], {"support": size})
        d = _hull_description(rest)
        d.meta["support"] = size
        return d
    if size == 4:
        d = _hull_description([null_point(z, t)] + rest)
        d.meta["support"] = size
        return d
    rng = make_rng(seed)
    tt = np.repeat(np.clip(t, 0, None)[None], n_samples, axis=0)
    b, _, _ = _draw_b(z, tt, rng)
    return BDescription("cloud", [b], {"support": size, "samples": n_samples, "seed": seed})


def starfish(z5, a, m=512) -> BDescription:
    """The union of the five wedges [z_k, beta_k(r)] for five eigenvalues and a in Λ_2."""
    z = _spectrum(z5)
    if len(z) != 5:
        raise PreconditionError("starfish needs exactly five eigenvalues")
    check_generic(z)
    if not all_extreme(z):
        raise PreconditionError("eigenvalues are not all extreme")
    a = complex(a)
    perm = ccw_order(z)
    zc = z[perm]
    inner = lambda_k_normal(zc, 2)
    sd = float(signed_distance(inner, [a])[0]) if not inner.is_empty else np.inf
    if not sd < -LOCATION_TOL:
        raise PreconditionError(f"a = {a} is not strictly inside the inner pentagon (signed distance {sd:.3e})")
    wedges = []
    for k in range(5):
        idx = [(k + j) % 5 for j in range(1, 5)]
        curve = b_curve(zc[idx], a, m, labels=[int(perm[j]) for j in idx])
        wedges.append(Wedge(zc[k], curve))
    return BDescription("wedge-union", wedges, {"apexes": [int(p) for p in perm], "inner": inner})


# ----------------------------------------------------------------- sampling


def _draw_b(z, t, rng):
    u = np.sqrt(np.clip(t, 0.0, None))
    cons = np.stack([u, u * z.real, u * z.imag], axis=2)
    n, dim = t.shape
    g = (rng.standard_normal((n, dim)) + 1j * rng.standard_normal((n, dim))) / np.sqrt(2.0)
    w = project_out_batch(cons, g)
    nrm = np.linalg.norm(w, axis=1)
    if np.any(nrm <= TOL.drop):
        raise PreconditionError("the admissible complement for w is zero-dimensional")
    w = w / nrm[:, None]
    return (np.abs(w) ** 2) @ z, u.astype(np.complex128), w


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Sampled points b of B(a) with the weights and witness vectors behind them."""

    z: np.ndarray
    a: complex
    points: np.ndarray
    t: np.ndarray
    u: np.ndarray
    w: np.ndarray
    seed: object = None

    def __len__(self):
        return len(self.points)

    def witness_residuals(self) -> dict:
        z, u, w = self.z, self.u, self.w
        uw = np.abs(np.einsum("bi,bi->b", u.conj(), w))
        norms = np.maximum(np.abs(np.linalg.norm(u, axis=1) - 1), np.abs(np.linalg.norm(w, axis=1) - 1))
        mu_w = np.abs(np.einsum("bi,bi->b", w.conj(), z * u))
        mw_u = np.abs(np.einsum("bi,bi->b", u.conj(), z * w))
        aa = np.abs(np.einsum("bi,bi->b", u.conj(), z * u) - self.a)
        bb = np.abs(np.einsum("bi,bi->b", w.conj(), z * w) - self.points)
        return {
            "orthogonality": float(uw.max()), "norm": float(norms.max()),
            "mu_w": float(mu_w.max()), "mw_u": float(mw_u.max()),
            "a": float(aa.max()), "b": float(bb.max()),
        }

    def witness(self, i) -> np.ndarray:
        """The 2-column frame (u, w) of sample i."""
        return np.column_stack([self.u[i], self.w[i]])


def sample_b_of_a(z, a, n_samples=10000, seed=0, fiber: FiberPolytope | None = None) -> PointCloud:
    """Monte Carlo points of B(a), each with a verifiable witness (u, w)."""
    z = _spectrum(z)
    if len(z) < 4:
        raise PreconditionError("sampling B(a) needs at least four eigenvalues")
    fiber = fiber or fiber_extreme_points(z, a)
    ext = fiber.matrix
    rng = make_rng(seed)
    lam = rng.dirichlet(np.ones(len(ext)), size=n_samples)
    t = lam @ ext
    b, u, w = _draw_b(z, t, rng)
    return PointCloud(z, complex(a), b, t, u, w, seed if not isinstance(seed, np.random.Generator) else None)


# ---------------------------------------------------------------- continuity


@dataclass(frozen=True)
class ProbeRow:
    a_n: complex
    step: float
    forward: float       # sup over B(a_n) of the distance to B(a)
    backward: float      # sup over B(a) of the distance to B(a_n)
    hausdorff: float
    grid_distance: float
    forward_exact: float  # distance of the B(a_n) cloud to the exact B(a) (nan if unknown)


@dataclass(frozen=True)
class ContinuityReport:
    a: complex
    grid_distance: float
    on_grid: bool
    n_samples: int
    seed: int
    rows: tuple


def continuity_probe(z, a, sequence, n_samples=4000, seed=0) -> ContinuityReport:
    """Cloud estimates of one-sided and full Hausdorff distances between B(a_n) and B(a).

    Every cloud is drawn from the same seed, so nearby a give coupled samples
    and the estimates reflect the sets rather than sampling noise. Where an
    exact description of B(a) (or, for five eigenvalues, the starfish inside
    it) is available, the one-sided distance is also measured against it,
    which removes the bias of comparing two finite clouds.
    """
    z = _spectrum(z)
    a = complex(a)
    base = sample_b_of_a(z, a, n_samples, seed).points
    exact = exact_description(z, a)
    rows = []
    for an in sequence:
        an = complex(an)
        cloud = sample_b_of_a(z, an, n_samples, seed).points
        fwd, bwd, dh = hausdorff(cloud, base)
        fe = float(np.max(exact.distance(cloud))) if exact is not None else float("nan")
        rows.append(ProbeRow(an, abs(an - a), fwd, bwd, dh, grid_distance(z, an), fe))
    gd = grid_distance(z, a)
    return ContinuityReport(a, gd, gd < TOL.grid, n_samples, seed, tuple(rows))


def exact_description(z, a):
    """The exact B(a) for N = 3 or 4, the starfish for N = 5, else None.

    Returns None as well when a sits where no closed form applies.
    """
    z = _spectrum(z)
    try:
        if len(z) == 3:
            return b_of_a_N3(z, a)
        if len(z) == 4:
            return b_of_a_N4(z, a)
        if len(z) == 5:
            return starfish(z, a)
    except PreconditionError:
        return None
    return None
