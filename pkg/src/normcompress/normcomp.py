"""Constructing and checking normal compressions of M = diag(z).

The constructors return a :class:`~normcompress.numkit.Frame` F whose
compression F* M F is the requested diagonal matrix, and every one of them
re-verifies the result before returning.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .bset import b_curve, check_generic
from .config import TOL
from .errors import BudgetExceeded, PreconditionError, VerificationError
from .hrnr import lambda_k_normal
from .numkit import Frame, compress, hermitian_eigenvalues, orthonormal_complement_basis
from .planegeom import (
    all_extreme, ccw_order, convex_distance, convex_hull, cross, segment_polygon_distance,
    signed_distance,
)

PARTITION_TOL = 1e-10
WITNESS_TOL = 1e-9
MAX_BLOCK = 14


def _spectrum(z) -> np.ndarray:
    return np.asarray(z, dtype=np.complex128).ravel()


def barycentric_weights(points, target, tol=PARTITION_TOL) -> np.ndarray:
    """Least-norm nonnegative weights t with sum t = 1 and sum t p = target.

    The optimum is the least-norm solution of the equality system restricted
    to its own support, so it is the smallest-norm feasible candidate among
    all supports.
    """
    p = _spectrum(points)
    target = complex(target)
    m = len(p)
    if m == 0:
        raise PreconditionError("empty block")
    if m > MAX_BLOCK:
        raise BudgetExceeded(f"block of {m} points exceeds the support-enumeration limit {MAX_BLOCK}")
    dist = float(max(signed_distance(convex_hull(p), [target])[0], 0.0))
    if dist > tol:
        raise PreconditionError(f"target {target} is {dist:.3e} outside the block hull", )
    mat = np.array([np.ones(m), p.real, p.imag])
    rhs = np.array([1.0, target.real, target.imag])
    scale = max(1.0, float(np.max(np.abs(p))))
    best, best_norm = None, np.inf
    for size in range(1, m + 1):
        for s in combinations(range(m), size):
            sub = mat[:, s]
            sol = np.linalg.pinv(sub) @ rhs
            if np.any(sol < -1e-14) or np.linalg.norm(sub @ sol - rhs) > tol * scale:
                continue
            nrm = float(sol @ sol)
            if nrm < best_norm - 1e-15:
                t = np.zeros(m)
                t[list(s)] = np.clip(sol, 0.0, None)
                best, best_norm = t / t.sum(), nrm
    if best is None:
        raise PreconditionError(f"no nonnegative barycentric representation of {target}")
    return best


@dataclass(frozen=True, eq=False)
class PartitionWitness:
    partition: tuple
    weights: tuple
    frame: Frame
    compression: np.ndarray
    residual: float


def construct_partition_compression(z, partition, targets, tol=PARTITION_TOL) -> PartitionWitness:
    """diag(c) as a compression of diag(z) from disjoint blocks J_i with c_i in conv z[J_i].

    Column i of the frame is sum_j sqrt(t_ij) e_j over the block J_i.
    """
    z = _spectrum(z)
    n = len(z)
    blocks = [tuple(int(j) for j in blk) for blk in partition]
    targets = _spectrum(targets)
    if len(blocks) != len(targets):
        raise PreconditionError("need one target per block")
    flat = [j for blk in blocks for j in blk]
    if len(set(flat)) != len(flat) or any(not 0 <= j < n for j in flat):
        raise PreconditionError("blocks must be disjoint subsets of the eigenvalue indices")
    cols, weights = [], []
    for i, (blk, c) in enumerate(zip(blocks, targets)):
        if not blk:
            raise PreconditionError(f"block {i} is empty")
        hull = convex_hull(z[list(blk)])
        dist = float(max(signed_distance(hull, [c])[0], 0.0))
        if dist > tol:
            raise PreconditionError(f"block {i}: target {complex(c)} is {dist:.3e} from conv of its eigenvalues")
        t = barycentric_weights(z[list(blk)], c, tol)
        col = np.zeros(n, dtype=np.complex128)
        col[list(blk)] = np.sqrt(t)
        cols.append(col)
        weights.append(t)
    frame = Frame(np.column_stack(cols))
    comp = compress(np.diag(z), frame)
    residual = float(np.linalg.norm(comp - np.diag(targets)))
    if residual > tol:
        raise VerificationError(f"partition compression residual {residual:.3e}", residual)
    return PartitionWitness(tuple(blocks), tuple(weights), frame, comp, residual)


# -------------------------------------------------------------- Hermitian


def interlacing_check(a, b, tol=TOL.eig_compare) -> bool:
    """a_j <= b_j <= a_{N-k+j} for all j, with a and b ascending."""
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    n, k = len(a), len(b)
    if k > n:
        raise PreconditionError(f"k = {k} exceeds N = {n}")
    if np.any(np.diff(a) < -tol) or np.any(np.diff(b) < -tol):
        raise PreconditionError("both lists must be sorted ascending")
    return bool(np.all(a[:k] - tol <= b) and np.all(b <= a[n - k:] + tol))


def construct_interlacing_compression(a, b, tol=1e-8) -> Frame:
    """An (N-1)-frame F with eig(F* diag(a) F) = b, for strictly interlacing b."""
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    n = len(a)
    if len(b) != n - 1 or n < 2:
        raise PreconditionError("need N values a and N-1 values b")
    merged = np.empty(2 * n - 1)
    merged[0::2] = a
    merged[1::2] = b
    if not np.all(np.diff(merged) > 0):
        raise PreconditionError("a and b must interlace strictly")
    v2 = np.empty(n)
    for j in range(n):
        v2[j] = np.prod(b - a[j]) / np.prod(np.delete(a, j) - a[j])
    if np.any(v2 <= 0):
        raise VerificationError("nonpositive weight despite strict interlacing")
    v = np.sqrt(v2 / v2.sum())
    frame = orthonormal_complement_basis([v])
    eig = hermitian_eigenvalues(compress(np.diag(a), frame))
    err = float(np.max(np.abs(eig - b)))
    if err > tol:
        raise VerificationError(f"compression eigenvalues miss the targets by {err:.3e}", err)
    return frame


def fanpall_collinear_alternating(z, c, tol=1e-9) -> bool:
    """True when z and c lie on one line and alternate z, c, z, ..., z along it."""
    z = _spectrum(z)
    c = _spectrum(c)
    if len(c) != len(z) - 1:
        raise PreconditionError("need N values z and N-1 values c")
    if np.min(np.abs(z[:, None] - c[None, :])) <= 1e-10:
        raise PreconditionError("z and c share an element")
    pts = np.concatenate([z, c])
    centre = pts.mean()
    d = pts - centre
    # principal direction of the 2x2 scatter matrix in closed form
    phi = 0.5 * np.angle(np.sum(d * d))
    direction = np.exp(1j * phi)
    if np.max(np.abs(cross(direction, d))) > tol:
        return False
    s = (np.conj(direction) * d).real
    tags = np.concatenate([np.zeros(len(z)), np.ones(len(c))])[np.argsort(s, kind="stable")]
    return bool(np.array_equal(tags, np.arange(len(pts)) % 2))


# ---------------------------------------------------------- necessary test


def necessary_condition_check(c, z, tol=TOL.geometry, max_subsets=200_000):
    """conv{c} meets conv{z_j : j in J} for every |J| = N - k + 1.

    Returns (True, None) or (False, J) with the first violating J.
    """
    c = _spectrum(c)
    z = _spectrum(z)
    n, k = len(z), len(c)
    if n > 20:
        raise BudgetExceeded(f"N = {n} exceeds 20")
    if not 1 <= k <= n:
        raise PreconditionError(f"need 1 <= k <= N, got k = {k}")
    size = n - k + 1
    if comb(n, size) > max_subsets:
        raise BudgetExceeded(f"{comb(n, size)} subsets exceed the budget of {max_subsets}")
    hull_c = convex_hull(c)
    for idx in combinations(range(n), size):
        if convex_distance(hull_c, convex_hull(z[list(idx)])) > tol:
            return False, idx
    return True, None


def necessary_condition_pairs(a, b, z, tol=TOL.geometry) -> np.ndarray:
    """Vectorized k = 2 check: segment [a, b_i] meets every hull of N-1 eigenvalues.

    Returns the largest distance from each segment to any such hull; the check
    passes where the value is at most tol.
    """
    z = _spectrum(z)
    b = np.atleast_1d(_spectrum(b))
    worst = np.zeros(len(b))
    for skip in range(len(z)):
        hull = convex_hull(np.delete(z, skip))
        worst = np.maximum(worst, segment_polygon_distance(complex(a), b, hull))
    return worst


# ------------------------------------------------------------- rank two


def _check_witness(z, frame, a, b, tol):
    comp = compress(np.diag(z), frame)
    residual = float(np.linalg.norm(comp - np.diag([a, b])))
    if residual > tol:
        raise VerificationError(f"witness residual {residual:.3e} exceeds {tol:g}", residual)
    return residual


def _in_hull(points, p, tol=PARTITION_TOL) -> bool:
    return float(signed_distance(convex_hull(points), [p])[0]) <= tol


def _partition_route(zc, a, b):
    n = len(zc)
    if n % 2 == 0:
        options = [(tuple(range(0, n, 2)), tuple(range(1, n, 2)))]
    else:
        options = []
        for r in range(n):
            e = tuple(sorted((r + 1 + 2 * i) % n for i in range((n - 1) // 2)))
            o = tuple(sorted(set(range(n)) - set(e)))
            options += [(e, o), (o, e)]
    for ja, jb in options:
        if _in_hull(zc[list(ja)], a) and _in_hull(zc[list(jb)], b):
            return construct_partition_compression(zc, [ja, jb], [a, b]).frame.columns
    return None


def _wedge_route(zc, a, b, m=2000):
    """Five eigenvalues: b = s b(r) + (1 - s) z_k inside the wedge at z_k."""
    report = []
    for k in range(5):
        idx = [(k + j) % 5 for j in range(1, 5)]
        try:
            curve = b_curve(zc[idx], a, m, labels=idx)
        except PreconditionError as exc:
            report.append(f"k={k}: {exc}")
            continue
        apex = zc[k]
        v = b - apex
        f = cross(curve.points - apex, v)
        hits = np.flatnonzero(np.sign(f[:-1]) * np.sign(f[1:]) <= 0)
        best_gap = np.inf
        for h in hits:
            lo, hi = curve.r[h], curve.r[h + 1]
            flo = f[h]
            if flo == 0:
                hi = lo
            for _ in range(200):
                if hi - lo <= 1e-16:
                    break
                mid = 0.5 * (lo + hi)
                fm = cross(curve.evaluate(mid) - apex, v)
                if np.sign(fm) == np.sign(flo):
                    lo, flo = mid, fm
                else:
                    hi = mid
            r = 0.5 * (lo + hi)
            br = complex(curve.evaluate(r))
            if abs(br - apex) == 0 or (np.conj(br - apex) * v).real < 0:
                continue
            s = abs(v) / abs(br - apex)
            if s > 1 + 1e-12:
                best_gap = min(best_gap, abs(v) - abs(br - apex))
                continue
            s = min(s, 1.0)
            if not 0 < r < 1:
                continue
            t = (1 - r) * curve.x + r * curve.y
            u = np.zeros(5, dtype=np.complex128)
            wt = np.zeros(5, dtype=np.complex128)
            lab = list(curve.labels)
            u[lab] = np.sqrt(t)
            wt[lab] = (curve.x - curve.y) / np.sqrt(t)
            wt /= np.linalg.norm(wt)
            e = np.zeros(5, dtype=np.complex128)
            e[k] = 1.0
            w = np.sqrt(s) * wt + np.sqrt(1 - s) * e
            return np.column_stack([u, w])
        report.append(f"k={k}: b is {best_gap:.3e} beyond the wedge" if hits.size else f"k={k}: b outside the wedge angle")
    raise PreconditionError("wedge decomposition failed: " + "; ".join(report))


def construct_rank2_witness(z, a, b, tol=WITNESS_TOL) -> Frame:
    """A frame (u, w) with u* M u = a, w* M w = b and u* M w = w* M u = 0.

    Requires distinct eigenvalues that are all extreme points of their hull,
    and a, b in Λ_2.
    """
    z = _spectrum(z)
    a, b = complex(a), complex(b)
    n = len(z)
    if n < 4:
        raise PreconditionError("need at least four eigenvalues")
    if np.min(np.abs(z[:, None] - z[None, :]) + np.eye(n)) <= 1e-10:
        raise PreconditionError("eigenvalues must be distinct")
    if not all_extreme(z):
        raise PreconditionError("every eigenvalue must be an extreme point of the hull")
    perm = ccw_order(z)
    zc = z[perm]
    inner = lambda_k_normal(zc, 2)
    for name, p in (("a", a), ("b", b)):
        d = float(signed_distance(inner, [p])[0]) if not inner.is_empty else np.inf
        if d > PARTITION_TOL:
            raise PreconditionError(f"{name} = {p} lies {d:.3e} outside Λ_2")
    cols = None
    if n == 5:
        try:
            cols = _wedge_route(zc, a, b)
        except PreconditionError:
            # a on the inner boundary, where the curve is undefined: try the
            # symmetric problem, then any two-block partition
            try:
                cols = _wedge_route(zc, b, a)[:, ::-1]
            except PreconditionError:
                cols = _any_partition(zc, a, b)
    else:
        cols = _partition_route(zc, a, b)
        if cols is None:
            cols = _any_partition(zc, a, b)
    if cols is None:
        raise PreconditionError("no construction route applies")
    full = np.zeros_like(cols)
    full[perm] = cols
    frame = Frame(full)
    _check_witness(z, frame, a, b, tol)
    return frame


def _any_partition(zc, a, b):
    n = len(zc)
    for size in range(1, n):
        for ja in combinations(range(n), size):
            rest = [j for j in range(n) if j not in ja]
            for sb in range(1, len(rest) + 1):
                for jb in combinations(rest, sb):
                    if _in_hull(zc[list(ja)], a) and _in_hull(zc[list(jb)], b):
                        return construct_partition_compression(zc, [ja, jb], [a, b]).frame.columns
    return None


def witness_residual(z, frame: Frame, a, b) -> float:
    comp = compress(np.diag(_spectrum(z)), frame)
    return float(np.linalg.norm(comp - np.diag([complex(a), complex(b)])))
