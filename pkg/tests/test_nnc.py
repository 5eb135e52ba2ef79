import numpy as np
import pytest

from normcompress.nnc import (
    Ellipse, ellipse_inside, ellipse_meets, ellipse_polygon_gap, numerical_range_ellipse,
    sample_eigenvalue_pinned_compressions, williams_tangency_check,
)
from normcompress.numkit import hermitian_eigenvalues_batch
from normcompress.planegeom import convex_hull


def test_nilpotent_disk():
    e = numerical_range_ellipse([[0, 1], [0, 0]])
    assert e.foci == (0, 0) and e.minor_axis == pytest.approx(1.0)
    np.testing.assert_allclose(e.support(np.linspace(0, 6, 7)), 0.5)


def test_normal_segment():
    e = numerical_range_ellipse(np.diag([1 + 1j, -2.0]))
    assert e.minor_axis == 0 and e.is_degenerate
    assert set(np.round(e.foci, 12)) == {1 + 1j, -2}
    assert e.major_axis == pytest.approx(abs(3 + 1j))


def test_support_function_oracle():
    rng = np.random.default_rng(3)
    x = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    e = numerical_range_ellipse(x)
    th = 2 * np.pi * np.arange(1000) / 1000
    ph = np.exp(-1j * th)[:, None, None]
    h = (ph * x + np.conj(ph) * x.conj().T) / 2
    assert np.abs(hermitian_eigenvalues_batch(h)[:, -1] - e.support(th)).max() < 1e-8
    # boundary points x*Xx from top eigenvectors lie on the parametrized ellipse
    v = np.linalg.eigh(h)[1][:, :, -1]
    pts = np.einsum("bi,ij,bj->b", v.conj(), x, v)
    assert np.abs(e.focal_excess(pts)).max() < 1e-8
    assert np.abs(e.focal_excess(e.boundary(1000))).max() < 1e-12


def steiner_inellipse(z3):
    # foci at the critical points of prod (x - z_k); semi-minor^2 is the
    # product of the focal distances to any tangent line
    p = np.poly(z3)
    f = np.roots(np.polyder(p))
    n, c = convex_hull(z3).halfplanes()
    d = [(np.conj(n[0]) * fk).real - c[0] for fk in f]
    return Ellipse(tuple(f), 2 * np.sqrt(d[0] * d[1]))


def test_williams_tangency():
    z3 = np.array([0, 1, 1j])
    assert williams_tangency_check(z3, steiner_inellipse(z3))
    assert not williams_tangency_check(z3, Ellipse(((1 + 1j) / 3,) * 2, 0.1))
    assert not williams_tangency_check(z3, Ellipse(((1 + 1j) / 3,) * 2, 1.0))


def test_gap_and_containment():
    sq = convex_hull([1, 1j, -1, -1j])
    e = Ellipse((3, 3), 1.0)  # disk radius 1/2 at 3
    assert ellipse_polygon_gap(e, sq) == pytest.approx(1.5, abs=1e-10)
    assert not ellipse_meets(e, sq)
    assert ellipse_meets(Ellipse((0.5, 0.5), 0.2), sq)
    assert ellipse_inside(Ellipse((0, 0), 1.0), sq)
    assert not ellipse_inside(Ellipse((0, 0), 1.6), sq)


def test_pinned_sampler(square):
    els, mats = sample_eigenvalue_pinned_compressions(square, 0, 300, seed=5, return_matrices=True)
    assert np.abs(mats[:, 1, 0]).max() < 1e-12
    for e in els:
        assert min(abs(e.foci[0]), abs(e.foci[1])) < 1e-10
    w = convex_hull(square)
    tris = [convex_hull(np.delete(square, k)) for k in range(4)]
    assert all(ellipse_inside(e, w) for e in els)
    assert all(ellipse_meets(e, t) for e in els for t in tris)
    again = sample_eigenvalue_pinned_compressions(square, 0, 300, seed=5)
    assert [e.foci for e in again] == [e.foci for e in els]
