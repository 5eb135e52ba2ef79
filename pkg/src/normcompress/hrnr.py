"""Higher-rank numerical ranges Λ_k(M).

Three independent routes:

* :func:`lambda_k_lisze` intersects the half-planes
  ``exp(iθ){Re z <= λ_{N-k+1}(Re(exp(-iθ) M))}`` over a θ-grid; it works for
  any square matrix and returns an outer approximation.
* :func:`lambda_k_normal` intersects the convex hulls of all
  (N-k+1)-subsets of the eigenvalues of a normal matrix; it is exact.
* :func:`lambda_k_hermitian` is the closed form ``[a_k, a_{N-k+1}]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .config import TOL
from .errors import BudgetExceeded, PreconditionError
from .numkit import as_matrix, hermitian_eigenvalues_batch
from .planegeom import Polygon, convex_hull, intersect_halfplanes, intersect_polygons

MAX_SUBSETS = 200_000


@dataclass(frozen=True)
class SweepConfig:
    n_theta: int = 4096
    refinement: str = "adaptive"    # "none" or "adaptive"
    refine_tol: float = 1e-6
    max_depth: int = 12

    def __post_init__(self):
        if self.n_theta < 16:
            raise PreconditionError(f"n_theta must be at least 16, got {self.n_theta}")
        if self.refinement not in ("none", "adaptive"):
            raise PreconditionError(f"unknown refinement mode {self.refinement!r}")


def support_values(m, k, thetas) -> np.ndarray:
    """λ_{N-k+1} of Re(exp(-iθ) M) for each θ, i.e. the offset of H(M, θ)."""
    m = as_matrix(m)
    n = m.shape[0]
    ph = np.exp(-1j * np.asarray(thetas, dtype=float))[:, None, None]
    stack = (ph * m[None] + np.conj(ph) * m.conj().T[None]) / 2
    vals = hermitian_eigenvalues_batch(stack)
    return vals[:, n - k]


def _refine(m, k, thetas, offsets, cfg):
    # Bisect angular gaps where the outer approximation overshoots the true
    # support value at the midpoint by more than refine_tol. Only gaps that
    # were split in the previous round need to be looked at again.
    th = np.asarray(thetas, dtype=float)
    cs = np.asarray(offsets, dtype=float)
    check = np.ones(len(th), dtype=bool)
    for _ in range(cfg.max_depth):
        idx = np.flatnonzero(check)
        if len(idx) == 0:
            break
        nxt = (idx + 1) % len(th)
        t0, t1 = th[idx], th[nxt]
        t1 = np.where(t1 <= t0, t1 + 2 * np.pi, t1)
        mid = (t0 + t1) / 2
        half = (t1 - t0) / 2
        # support of the wedge cut by two adjacent lines, in the mid direction
        with np.errstate(divide="ignore", invalid="ignore"):
            predicted = (cs[idx] + cs[nxt]) / (2 * np.cos(half))
        actual = support_values(m, k, mid)
        bad = np.abs(predicted - actual) > cfg.refine_tol
        if not bad.any():
            break
        th = np.concatenate([th, mid[bad] % (2 * np.pi)])
        cs = np.concatenate([cs, actual[bad]])
        is_new = np.concatenate([np.zeros(len(th) - bad.sum(), dtype=bool), np.ones(bad.sum(), dtype=bool)])
        order = np.argsort(th, kind="stable")
        th, cs, is_new = th[order], cs[order], is_new[order]
        check = is_new | np.roll(is_new, -1)
    return th, cs


def lambda_k_lisze(m, k, cfg: SweepConfig | None = None) -> Polygon:
    """Outer approximation of Λ_k(M) from the half-plane formula.

    Converges to Λ_k(M) as the θ-grid is refined; the empty set is a legal
    result.
    """
    cfg = cfg or SweepConfig()
    m = as_matrix(m)
    n = m.shape[0]
    if not 1 <= k <= n:
        raise PreconditionError(f"k must satisfy 1 <= k <= {n}, got {k}")
    thetas = 2 * np.pi * np.arange(cfg.n_theta) / cfg.n_theta
    offsets = support_values(m, k, thetas)
    if cfg.refinement == "adaptive":
        thetas, offsets = _refine(m, k, thetas, offsets, cfg)
    bound = 4.0 * max(float(np.linalg.norm(m)), 1e-12)
    return intersect_halfplanes(thetas=thetas, offsets=offsets, bound=bound)


def lambda_k_normal(z, k, max_subsets=MAX_SUBSETS) -> Polygon:
    """Exact Λ_k of a normal matrix with eigenvalues z: ⋂ conv{z_j : j ∈ J}, |J| = N-k+1."""
    z = np.asarray(z, dtype=np.complex128).ravel()
    n = len(z)
    if not 1 <= k <= n:
        raise PreconditionError(f"k must satisfy 1 <= k <= {n}, got {k}")
    if n > 20:
        raise BudgetExceeded(f"N={n} exceeds the subset-enumeration limit of 20")
    size = n - k + 1
    count = comb(n, size)
    if count > max_subsets:
        raise BudgetExceeded(f"{count} subsets of size {size} exceed the budget of {max_subsets}")
    result = None
    for idx in combinations(range(n), size):
        hull = convex_hull(z[list(idx)])
        result = hull if result is None else intersect_polygons(result, hull)
        if result.is_empty:
            break
    return result


def lambda_k_hermitian(a, k):
    """Λ_k of a Hermitian matrix with ascending eigenvalues a: (a_k, a_{N-k+1}) or None."""
    a = np.asarray(a, dtype=float).ravel()
    n = len(a)
    if not 1 <= k <= n:
        raise PreconditionError(f"k must satisfy 1 <= k <= {n}, got {k}")
    if np.any(np.diff(a) < 0):
        raise PreconditionError("eigenvalues must be sorted ascending")
    lo, hi = a[k - 1], a[n - k]
    if hi < lo:
        return None
    return float(lo), float(hi)


def circumradius(poly: Polygon, center=0.0) -> float:
    if poly.is_empty:
        raise PreconditionError("empty polygon")
    return float(np.max(np.abs(poly.vertices - center)))
