"""Numerical ranges of 2x2 compressions, which are filled ellipses.

For a 2x2 matrix X the numerical range is the ellipse with the eigenvalues
as foci and minor axis sqrt(|X|_F^2 - |l1|^2 - |l2|^2), the off-diagonal
modulus of any triangular form of X.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .bset import fiber_extreme_points
from .config import make_rng
from .errors import PreconditionError
from .numkit import project_out_batch
from .planegeom import POLYGON, Polygon, convex_hull


@dataclass(frozen=True)
class Ellipse:
    foci: tuple
    minor_axis: float

    @property
    def center(self) -> complex:
        return (self.foci[0] + self.foci[1]) / 2

    @property
    def focal_distance(self) -> float:
        return abs(self.foci[1] - self.foci[0])

    @property
    def major_axis(self) -> float:
        return float(np.hypot(self.minor_axis, self.focal_distance))

    @property
    def rotation(self) -> float:
        d = self.foci[1] - self.foci[0]
        return float(np.angle(d)) if d != 0 else 0.0

    @property
    def is_degenerate(self) -> bool:
        return self.minor_axis == 0

    def support(self, theta) -> np.ndarray:
        th = np.asarray(theta, dtype=float)
        sa, sb = self.major_axis / 2, self.minor_axis / 2
        phi = th - self.rotation
        return (np.exp(-1j * th) * self.center).real + np.sqrt((sa * np.cos(phi)) ** 2 + (sb * np.sin(phi)) ** 2)

    def boundary(self, n=256) -> np.ndarray:
        s = 2 * np.pi * np.arange(n) / n
        sa, sb = self.major_axis / 2, self.minor_axis / 2
        return self.center + np.exp(1j * self.rotation) * (sa * np.cos(s) + 1j * sb * np.sin(s))

    def focal_excess(self, points) -> np.ndarray:
        """|p - f1| + |p - f2| - major axis: zero on the boundary, negative inside."""
        p = np.asarray(points, dtype=np.complex128)
        return np.abs(p - self.foci[0]) + np.abs(p - self.foci[1]) - self.major_axis


def numerical_range_ellipse(x) -> Ellipse:
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (2, 2):
        raise PreconditionError(f"expected a 2x2 matrix, got shape {x.shape}")
    half = (x[0, 0] + x[1, 1]) / 2
    det = x[0, 0] * x[1, 1] - x[0, 1] * x[1, 0]
    root = np.sqrt(half * half - det)
    l1, l2 = complex(half + root), complex(half - root)
    minor2 = float(np.sum(np.abs(x) ** 2)) - abs(l1) ** 2 - abs(l2) ** 2
    return Ellipse((l1, l2), float(np.sqrt(max(minor2, 0.0))))


def ellipse_polygon_gap(e: Ellipse, poly: Polygon, n_dirs=256) -> float:
    """Distance between an ellipse and a convex set, 0 when they meet.

    The distance between two convex sets is the largest separating gap
    min_P <p, u> - max_E <e, u> over unit directions u; it is scanned on a
    grid and polished with a bounded scalar search.
    """
    if poly.is_empty:
        return np.inf

    def gap(th):
        return -poly.support(np.asarray(th) + np.pi) - e.support(th)

    th = 2 * np.pi * np.arange(n_dirs) / n_dirs
    g = gap(th)
    i = int(np.argmax(g))
    step = 2 * np.pi / n_dirs
    res = minimize_scalar(lambda t: -float(gap(t)), bounds=(th[i] - step, th[i] + step),
                          method="bounded", options={"xatol": 1e-12})
    best = max(float(g[i]), -float(res.fun))
    return max(best, 0.0)


def ellipse_meets(e: Ellipse, poly: Polygon, tol=1e-8) -> bool:
    return ellipse_polygon_gap(e, poly) <= tol


def ellipse_inside(e: Ellipse, poly: Polygon, tol=1e-8) -> bool:
    """True when the ellipse lies in the convex polygon (exact via edge supports)."""
    if poly.kind != POLYGON:
        raise PreconditionError("containment needs a two-dimensional polygon")
    n, c = poly.halfplanes()
    return bool(np.all(e.support(np.angle(n)) <= c + tol))


def williams_tangency_check(z3, e: Ellipse, tol=1e-8) -> bool:
    """The ellipse touches all three sides of the triangle from inside."""
    tri = convex_hull(np.asarray(z3, dtype=np.complex128))
    if tri.kind != POLYGON or len(tri) != 3:
        raise PreconditionError("need a non-degenerate triangle")
    n, c = tri.halfplanes()
    return bool(np.all(np.abs(e.support(np.angle(n)) - c) <= tol))


def sample_eigenvalue_pinned_compressions(z, a, n=200, seed=0, return_matrices=False):
    """Random 2x2 compressions of diag(z) having a as an eigenvalue.

    u = sqrt(t) for t drawn in the fiber C(a) as in the B(a) sampler; w is
    uniform on the unit sphere orthogonal to u and to M u, which makes the
    compression upper triangular in the basis (u, w) with a in the corner.
    This is one natural distribution on such compressions, not a canonical one.
    """
    z = np.asarray(z, dtype=np.complex128).ravel()
    if len(z) < 3:
        raise PreconditionError("need at least three eigenvalues")
    ext = fiber_extreme_points(z, a).matrix
    rng = make_rng(seed)
    t = rng.dirichlet(np.ones(len(ext)), size=n) @ ext
    u = np.sqrt(np.clip(t, 0.0, None)).astype(np.complex128)
    cons = np.stack([u, z * u], axis=2)
    g = (rng.standard_normal((n, len(z))) + 1j * rng.standard_normal((n, len(z)))) / np.sqrt(2.0)
    w = project_out_batch(cons, g)
    nrm = np.linalg.norm(w, axis=1)
    if np.any(nrm <= 1e-12):
        raise PreconditionError("the admissible complement for w is zero-dimensional")
    w /= nrm[:, None]
    mats = np.zeros((n, 2, 2), dtype=np.complex128)
    mats[:, 0, 0] = np.einsum("bi,bi->b", u.conj(), z * u)
    mats[:, 0, 1] = np.einsum("bi,bi->b", u.conj(), z * w)
    mats[:, 1, 0] = np.einsum("bi,bi->b", w.conj(), z * u)
    mats[:, 1, 1] = np.einsum("bi,bi->b", w.conj(), z * w)
    ellipses = [numerical_range_ellipse(m) for m in mats]
    if return_matrices:
        return ellipses, mats
    return ellipses
