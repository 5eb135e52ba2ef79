"""Shared tolerances and the random number generator used across the package."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np


@dataclass(frozen=True)
class Tolerances:
    orthonormal: float = 1e-10
    hermitian: float = 1e-10
    geometry: float = 1e-9
    collinear: float = 1e-12     # cross-product threshold for hull collapse
    drop: float = 1e-12          # Gram-Schmidt drop tolerance
    support: float = 1e-12       # t_j above this counts as a positive component
    clip: float = 1e-12          # slack when clipping polygons by half-planes
    jacobi: float = 1e-13        # off-diagonal Frobenius norm at convergence
    eig_compare: float = 1e-12   # interlacing comparisons
    grid: float = 1e-9           # distance below which a point is "on the grid"
    empty_area: float = 1e-18

    def as_dict(self) -> dict:
        return asdict(self)


TOL = Tolerances()


def make_rng(seed=None) -> np.random.Generator:
    """Return a PCG64-backed generator.

    PCG64 is numpy's documented default bit generator; its output stream for
    a given integer seed is identical on every platform, which keeps CSV
    outputs reproducible byte for byte. An existing Generator is passed
    through unchanged so callers can thread one generator through several
    calls.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))
